"""
How small a k' could be seen?
=============================

Minimum detectable k' versus detector jitter and photon count, for the
lunar baseline and for a much longer astrophysical one.
"""

import sys

from vacdisp import (BeamPair, DetectorModel, PulseModel, RangingScenario, earth_moon_path,
                     min_detectable_kprime, sensitivity_sweep)


def scenario(length):
    return RangingScenario(earth_moon_path(length=length), BeamPair.doubled(1064e-9),
                           PulseModel(0.0, 1.0), DetectorModel(60e-12), shots=10_000)


lunar = scenario(7.688e8)
rep = sensitivity_sweep(lunar, [30e-12, 60e-12, 120e-12], [1e3, 1e4, 1e5], z=1)
rep.write_csv(sys.stdout)

# 60 ps and 10^4 photons per color put k' ~ 1 right at the edge
print(f"lunar, 60 ps, 1e4 photons: k'_min = {min_detectable_kprime(lunar):.3f}")

# the signal grows linearly with distance
print(f"10^19 m baseline:          k'_min = {min_detectable_kprime(scenario(1e19)):.3e}")

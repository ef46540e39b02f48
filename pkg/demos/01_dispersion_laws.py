"""
Refractivity of the candidate media
===================================

Compare the quadratic vacuum law with the two media that also sit on a
lunar ranging path: solar-wind plasma and sea-level air.
"""

import numpy as np

from vacdisp import (CauchyAir, ColdPlasma, DiracSea, group_refractivity, omega_from_wavelength,
                     phase_refractivity, r_of_omega, validate_model)

# Photon energy over electron rest energy for the two colors of a doubled Nd:YAG laser
for lam in (1064e-9, 532e-9):
    w = omega_from_wavelength(lam)
    print(f"{lam * 1e9:6.0f} nm  omega = {w:.4e} rad/s  r = {r_of_omega(w):.4e}")

# Phase and group refractivity.  The vacuum term has group = 3 x phase, the
# plasma flips sign between phase and group, and air dwarfs both.
models = {"vacuum k'=1": DiracSea(1.0), "solar wind": ColdPlasma(7e6), "air": CauchyAir()}
w = omega_from_wavelength(532e-9)
for name, m in models.items():
    print(f"{name:12s} n-1 = {phase_refractivity(m, w): .4e}   n_g-1 = {group_refractivity(m, w): .4e}")

# The vacuum law scales as omega**2 ...
ws = np.geomspace(1e14, 1e16, 5)
print("rho(2w)/rho(w):", phase_refractivity(DiracSea(), 2 * ws) / phase_refractivity(DiracSea(), ws))

# ... and stays finite at zero frequency, unlike a plasma, whose polarizability
# diverges there.  A vacuum that insulates needs the former.
band = (omega_from_wavelength(1064e-9), omega_from_wavelength(532e-9))
for name, m in models.items():
    rep = validate_model(m, band)
    print(f"{name:12s} finite at omega->0: {rep.finite_at_zero}, cutoff {rep.plasma_cutoff:.3e} rad/s")

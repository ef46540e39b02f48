"""
Two-color delays over an Earth-Moon round trip
==============================================

The observable is the arrival-time difference between 532 nm and 1064 nm
photons fired together.  Here it is split into vacuum signal, plasma and
atmosphere contributions.
"""

from vacdisp import BeamPair, differential_delay, earth_moon_path, kprime_sensitivity, time_of_flight
from vacdisp.propagation import confounder_delay

beams = BeamPair.doubled(1064e-9)

vacuum = earth_moon_path(k_prime=1.0)
geo, excess = time_of_flight(vacuum, beams.omega_high)
print(f"geometric round trip      {geo:.6f} s")
print(f"vacuum excess at 532 nm   {excess:.4e} s")
print(f"differential (k'=1)       {differential_delay(vacuum, beams):.4e} s")

# Add air columns at both ends and solar-wind plasma along the way.
full = earth_moon_path(k_prime=1.0, atmosphere=True, plasma=True)
plasma_only = confounder_delay(earth_moon_path(plasma=True), beams)
print(f"plasma differential       {plasma_only:.3e} s")
print(f"atmosphere + plasma       {confounder_delay(full, beams):.4e} s")

# The k' slope is unaffected by confounders; they only shift the intercept.
print(f"d(delta t)/dk'            {kprime_sensitivity(full, beams):.4e} s")

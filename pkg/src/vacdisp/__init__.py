"""Simulate and bound a frequency-dependent speed of light in vacuum
with two-color lunar laser ranging."""

__version__ = "0.1.0"

from .physconst import (CODATA_2018, PhysicalConstants, codata_constants,
                        omega_from_wavelength, r_of_omega, wavelength_from_omega)
from .dispersion import (BelowPlasmaCutoff, CauchyAir, ColdPlasma, Composite, Constant,
                         DiracSea, group_refractivity, phase_refractivity,
                         refractivity_derivative, validate_model)
from .propagation import (BeamPair, NoDiracSeaSegment, OpticalPath, PathSegment,
                          differential_delay, earth_moon_path, excess_delay,
                          kprime_sensitivity, time_of_flight)
from .montecarlo import (DetectorModel, EmptySession, EventSet, PulseModel, RangingScenario,
                         session_summary, simulate_session)
from .inference import (estimate_differential_delay, infer_kprime, min_detectable_kprime,
                        sensitivity_sweep)

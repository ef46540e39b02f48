"""Physical constants and frequency conversions.

Everything downstream works in SI with angular frequencies in rad/s and
vacuum wavelengths in m.  The constant set is frozen at CODATA 2018, so
results do not drift with whatever CODATA release the installed scipy
happens to ship.
"""

import math
from dataclasses import dataclass, fields

__all__ = [
    "PhysicalConstants",
    "CODATA_2018",
    "codata_constants",
    "omega_from_wavelength",
    "wavelength_from_omega",
    "r_of_omega",
]

_PLANCK_2018 = 6.62607015e-34  # J s, exact


@dataclass(frozen=True)
class PhysicalConstants:
    c: float
    hbar: float
    electron_rest_energy: float
    alpha: float
    elementary_charge: float
    vacuum_permittivity: float
    electron_mass: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{f.name} must be finite and positive, got {value!r}")

    def alpha_si(self):
        """Fine structure constant rebuilt from e, eps0, hbar and c."""
        e = self.elementary_charge
        return e * e / (4 * math.pi * self.vacuum_permittivity * self.hbar * self.c)

    def check_consistency(self, alpha_rtol=1e-9, energy_rtol=1e-12):
        """Raise ValueError if the stored set is not self-consistent."""
        if abs(self.alpha_si() / self.alpha - 1) > alpha_rtol:
            raise ValueError("alpha disagrees with e^2/(4 pi eps0 hbar c)")
        mc2 = self.electron_mass * self.c**2
        if abs(mc2 / self.electron_rest_energy - 1) > energy_rtol:
            raise ValueError("electron_rest_energy disagrees with m_e c^2")

    def replace(self, **changes):
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        unknown = set(changes) - set(values)
        if unknown:
            raise KeyError(f"unknown constant(s): {sorted(unknown)}")
        values.update(changes)
        return PhysicalConstants(**values)


CODATA_2018 = PhysicalConstants(
    c=299792458.0,
    hbar=_PLANCK_2018 / (2 * math.pi),
    electron_rest_energy=9.1093837015e-31 * 299792458.0**2,
    alpha=7.2973525693e-3,
    elementary_charge=1.602176634e-19,
    vacuum_permittivity=8.8541878128e-12,
    electron_mass=9.1093837015e-31,
)


def codata_constants():
    """Return the CODATA 2018 constant set (same object on every call)."""
    return CODATA_2018


def _positive(name, value):
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value!r}")


def omega_from_wavelength(wavelength, constants=CODATA_2018):
    """Angular frequency (rad/s) of light with vacuum wavelength in m."""
    _positive("wavelength", wavelength)
    return 2 * math.pi * constants.c / wavelength


def wavelength_from_omega(omega, constants=CODATA_2018):
    """Vacuum wavelength (m) for an angular frequency in rad/s."""
    _positive("omega", omega)
    return 2 * math.pi * constants.c / omega


def r_of_omega(omega, constants=CODATA_2018):
    """Photon energy over electron rest energy, hbar*omega / (m_e c^2)."""
    return constants.hbar * omega / constants.electron_rest_energy

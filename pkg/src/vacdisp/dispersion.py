"""Refractivity laws rho(omega) = n(omega) - 1 and their frequency derivatives.

Media are tenuous, so the code carries the refractivity (the excess of the
index over one) instead of the index itself.  The vacuum term of interest
sits near 1e-13, which would keep only about three significant digits if
it were added to 1.

Every law is written in terms of omega**2 (or the squared photon-energy
ratio, or 1/lambda**2), so it is even in omega.  The formulas use plain
arithmetic and therefore accept floats, numpy arrays or mpmath numbers.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .physconst import CODATA_2018, r_of_omega

__all__ = [
    "BelowPlasmaCutoff",
    "DiracSea",
    "ColdPlasma",
    "CauchyAir",
    "Constant",
    "Composite",
    "ValidationReport",
    "MAX_ABS_REFRACTIVITY",
    "phase_refractivity",
    "refractivity_derivative",
    "group_refractivity",
    "group_refractivity_difference",
    "plasma_frequency",
    "validate_model",
    "with_kprime",
    "dirac_sea_only",
    "has_dirac_sea",
]

# |n - 1| bound for every medium handled here; larger values point at a unit mistake.
MAX_ABS_REFRACTIVITY = 1e-2


class BelowPlasmaCutoff(ValueError):
    """The beam frequency does not exceed the plasma frequency of a medium."""

    def __init__(self, omega, omega_p, segment=None):
        self.omega = omega
        self.omega_p = omega_p
        self.segment = segment
        where = "" if segment is None else f" in segment {segment}"
        super().__init__(
            f"omega = {float(np.min(omega)):.6e} rad/s is at or below the plasma "
            f"cutoff {float(omega_p):.6e} rad/s{where}; the wave does not propagate"
        )


@dataclass(frozen=True)
class DiracSea:
    """Quadratic vacuum law rho = k' * alpha * (hbar omega / m_e c^2)**2."""

    k_prime: float = 1.0

    finite_at_zero = True

    def phase(self, omega, const):
        r = r_of_omega(omega, const)
        return self.k_prime * const.alpha * (r * r)

    def derivative(self, omega, const):
        r = r_of_omega(omega, const)
        return 2 * self.k_prime * const.alpha * r * (const.hbar / const.electron_rest_energy)

    def group(self, omega, const):
        r = r_of_omega(omega, const)
        return 3 * self.k_prime * const.alpha * (r * r)

    def group_difference(self, omega_a, omega_b, const):
        ra = r_of_omega(omega_a, const)
        rb = r_of_omega(omega_b, const)
        return 3 * self.k_prime * const.alpha * ((rb - ra) * (rb + ra))

    def cutoff_squared(self, const):
        return 0.0


@dataclass(frozen=True)
class ColdPlasma:
    """Unmagnetized cold electron plasma, n = sqrt(1 - omega_p**2 / omega**2)."""

    electron_density: float

    def __post_init__(self):
        if not self.electron_density >= 0:
            raise ValueError("electron_density must be >= 0")

    @property
    def finite_at_zero(self):
        # a conductor: the polarizability blows up as omega -> 0
        return self.electron_density == 0

    def cutoff_squared(self, const):
        e = const.elementary_charge
        return self.electron_density * e * e / (const.vacuum_permittivity * const.electron_mass)

    def _ratio(self, omega, const):
        wp2 = self.cutoff_squared(const)
        if np.any(omega * omega <= wp2):
            raise BelowPlasmaCutoff(omega, math.sqrt(wp2))
        x = wp2 / (omega * omega)
        return x, (1 - x) ** 0.5

    # sqrt(1 - x) - 1 and friends are rewritten to avoid cancellation at x ~ 1e-21
    def phase(self, omega, const):
        x, s = self._ratio(omega, const)
        return -x / (1 + s)

    def derivative(self, omega, const):
        x, s = self._ratio(omega, const)
        return x / (omega * s)

    def group(self, omega, const):
        x, s = self._ratio(omega, const)
        return x / (s * (1 + s))

    def group_difference(self, omega_a, omega_b, const):
        return self.group(omega_b, const) - self.group(omega_a, const)


@dataclass(frozen=True)
class CauchyAir:
    """Two-term Cauchy law rho = a * (1 + b / lambda_um**2).

    The defaults are a dry sea-level air fit; ``b_coeff`` is in um**2.
    """

    a_coeff: float = 2.726e-4
    b_coeff: float = 7.52e-3

    finite_at_zero = True

    def __post_init__(self):
        if not (self.a_coeff >= 0 and self.b_coeff >= 0):
            raise ValueError("Cauchy coefficients must be >= 0")

    @staticmethod
    def _k2(const):
        # (omega * lambda_um)**2, i.e. (2 pi c / 1 um)**2
        k = 2 * math.pi * const.c * 1e6
        return k * k

    def phase(self, omega, const):
        return self.a_coeff + self.a_coeff * self.b_coeff * (omega * omega) / self._k2(const)

    def derivative(self, omega, const):
        return 2 * self.a_coeff * self.b_coeff * omega / self._k2(const)

    def group(self, omega, const):
        return self.a_coeff + 3 * self.a_coeff * self.b_coeff * (omega * omega) / self._k2(const)

    def group_difference(self, omega_a, omega_b, const):
        ab3 = 3 * self.a_coeff * self.b_coeff
        return ab3 * ((omega_b - omega_a) * (omega_b + omega_a)) / self._k2(const)

    def cutoff_squared(self, const):
        return 0.0


@dataclass(frozen=True)
class Constant:
    refractivity: float = 0.0

    finite_at_zero = True

    def phase(self, omega, const):
        return self.refractivity + 0 * omega

    def derivative(self, omega, const):
        return 0 * omega

    def group(self, omega, const):
        return self.refractivity + 0 * omega

    def group_difference(self, omega_a, omega_b, const):
        return 0 * omega_a

    def cutoff_squared(self, const):
        return 0.0


@dataclass(frozen=True)
class Composite:
    """Sum of tenuous media sharing one segment. Nested composites are flattened."""

    parts: tuple = field(default_factory=tuple)

    def __post_init__(self):
        flat = []
        for p in self.parts:
            flat.extend(p.parts if isinstance(p, Composite) else [p])
        if not flat:
            raise ValueError("Composite needs at least one part")
        object.__setattr__(self, "parts", tuple(flat))

    @property
    def finite_at_zero(self):
        return all(p.finite_at_zero for p in self.parts)

    def _sum(self, method, *args):
        total = 0
        for p in self.parts:
            total = total + getattr(p, method)(*args)
        return total

    def phase(self, omega, const):
        return self._sum("phase", omega, const)

    def derivative(self, omega, const):
        return self._sum("derivative", omega, const)

    def group(self, omega, const):
        return self._sum("group", omega, const)

    def group_difference(self, omega_a, omega_b, const):
        return self._sum("group_difference", omega_a, omega_b, const)

    def cutoff_squared(self, const):
        return max(p.cutoff_squared(const) for p in self.parts)


def _check_omega(omega):
    if not np.all(omega > 0):
        raise ValueError("angular frequency must be positive")


def phase_refractivity(model, omega, constants=CODATA_2018):
    """Phase refractivity n - 1 of ``model`` at angular frequency ``omega``.

    Raises
    ------
    BelowPlasmaCutoff
        If a plasma component is evanescent at ``omega``.
    """
    _check_omega(omega)
    return model.phase(omega, constants)


def refractivity_derivative(model, omega, constants=CODATA_2018):
    """Analytic d(n - 1)/d(omega), per rad/s."""
    _check_omega(omega)
    return model.derivative(omega, constants)


def group_refractivity(model, omega, constants=CODATA_2018):
    """Group refractivity n_g - 1 = (n - 1) + omega * dn/domega."""
    _check_omega(omega)
    return model.group(omega, constants)


def group_refractivity_difference(model, omega_a, omega_b, constants=CODATA_2018):
    """n_g(omega_b) - n_g(omega_a), evaluated without cancellation of common terms."""
    _check_omega(omega_a)
    _check_omega(omega_b)
    return model.group_difference(omega_a, omega_b, constants)


def plasma_frequency(model, constants=CODATA_2018):
    """Largest plasma frequency (rad/s) present in ``model``; 0 if none."""
    return math.sqrt(model.cutoff_squared(constants))


@dataclass
class ValidationReport:
    finite_at_zero: bool
    divergences: list
    plasma_cutoff: float
    band_above_cutoff: bool
    refractivity_in_range: bool
    max_abs_refractivity: float

    @property
    def ok(self):
        return self.band_above_cutoff and self.refractivity_in_range


def _leaves(model):
    return model.parts if isinstance(model, Composite) else (model,)


def validate_model(model, omega_band, constants=CODATA_2018, samples=64):
    """Check a model against physical sanity conditions over a frequency band.

    Reports whether the refractivity stays finite as omega -> 0 (an insulating
    vacuum requires it; a plasma fails), whether the whole band propagates,
    and whether |n - 1| and |n_g - 1| stay below ``MAX_ABS_REFRACTIVITY``.
    Never raises for physics reasons.
    """
    lo, hi = omega_band
    if not (0 < lo <= hi):
        raise ValueError("omega_band must be an ordered pair of positive frequencies")

    divergences = [
        f"{type(p).__name__}: refractivity diverges as omega -> 0"
        for p in _leaves(model)
        if not p.finite_at_zero
    ]
    cutoff = plasma_frequency(model, constants)
    above = lo > cutoff

    max_abs = math.nan
    in_range = False
    if above:
        grid = np.geomspace(lo, hi, samples) if hi > lo else np.array([lo])
        rho = np.concatenate([
            np.atleast_1d(model.phase(grid, constants)),
            np.atleast_1d(model.group(grid, constants)),
        ])
        max_abs = float(np.max(np.abs(rho)))
        in_range = max_abs < MAX_ABS_REFRACTIVITY

    return ValidationReport(
        finite_at_zero=model.finite_at_zero,
        divergences=divergences,
        plasma_cutoff=cutoff,
        band_above_cutoff=above,
        refractivity_in_range=in_range,
        max_abs_refractivity=max_abs,
    )


def with_kprime(model, k_prime):
    """Copy of ``model`` with every DiracSea coefficient replaced by ``k_prime``."""
    if isinstance(model, DiracSea):
        return DiracSea(k_prime)
    if isinstance(model, Composite):
        return Composite(tuple(with_kprime(p, k_prime) for p in model.parts))
    return model


def has_dirac_sea(model):
    return any(isinstance(p, DiracSea) for p in _leaves(model))


def dirac_sea_only(model, k_prime=1.0):
    """Keep only the DiracSea parts of ``model`` (at ``k_prime``); None if there are none."""
    n = sum(isinstance(p, DiracSea) for p in _leaves(model))
    if n == 0:
        return None
    if n == 1:
        return DiracSea(k_prime)
    return Composite(tuple(DiracSea(k_prime) for _ in range(n)))

"""Independent high-precision delay evaluation used as a brute-force oracle."""

import mpmath

from vacdisp.dispersion import CauchyAir, ColdPlasma, Composite, Constant, DiracSea
from vacdisp.physconst import CODATA_2018 as K


def group_index_excess(model, omega):
    """n_g - 1 from first principles, in 60-digit arithmetic."""
    w = mpmath.mpf(omega)
    if isinstance(model, Composite):
        return sum(group_index_excess(p, omega) for p in model.parts)
    if isinstance(model, DiracSea):
        rho = lambda x: model.k_prime * K.alpha * (mpmath.mpf(K.hbar) * x / K.electron_rest_energy) ** 2
    elif isinstance(model, ColdPlasma):
        wp2 = (mpmath.mpf(model.electron_density) * mpmath.mpf(K.elementary_charge) ** 2
               / (mpmath.mpf(K.vacuum_permittivity) * K.electron_mass))
        rho = lambda x: mpmath.sqrt(1 - wp2 / x**2) - 1
    elif isinstance(model, CauchyAir):
        lam_um = lambda x: 2 * mpmath.pi * K.c / x * mpmath.mpf(10) ** 6
        rho = lambda x: model.a_coeff * (1 + model.b_coeff / lam_um(x) ** 2)
    elif isinstance(model, Constant):
        rho = lambda x: mpmath.mpf(model.refractivity)
    else:
        raise TypeError(model)
    # n_g - 1 = d(omega (n - 1))/d omega
    return mpmath.diff(lambda x: x * rho(x), w)


def differential_delay(segments, omega_low, omega_high):
    """sum over (length, model) of L * (n_g(high) - n_g(low)) / c, as a float."""
    with mpmath.workdps(60):
        total = mpmath.mpf(0)
        for length, model in segments:
            d = group_index_excess(model, omega_high) - group_index_excess(model, omega_low)
            total += mpmath.mpf(length) * d
        return float(total / K.c)


def excess_delay(segments, omega):
    with mpmath.workdps(60):
        total = sum(mpmath.mpf(L) * group_index_excess(m, omega) for L, m in segments)
        return float(total / K.c)

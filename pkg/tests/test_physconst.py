import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from vacdisp.physconst import (
    CODATA_2018,
    PhysicalConstants,
    codata_constants,
    omega_from_wavelength,
    r_of_omega,
    wavelength_from_omega,
)


def test_codata_2018_values():
    k = codata_constants()
    assert k is codata_constants()
    assert k.c == 299792458.0
    assert k.alpha == 7.2973525693e-3
    assert k.elementary_charge == 1.602176634e-19
    assert_allclose(k.hbar, 1.054571817e-34, rtol=1e-9)


def test_internal_consistency():
    k = codata_constants()
    k.check_consistency()
    assert abs(k.alpha_si() / k.alpha - 1) < 1e-9
    assert abs(k.electron_mass * k.c**2 / k.electron_rest_energy - 1) < 1e-12


def test_inconsistent_set_is_caught():
    bad = CODATA_2018.replace(alpha=7.2973525643e-3 * 1.001)
    with pytest.raises(ValueError):
        bad.check_consistency()


def test_constants_must_be_positive():
    with pytest.raises(ValueError):
        CODATA_2018.replace(c=-1.0)
    with pytest.raises(KeyError):
        CODATA_2018.replace(planck=1.0)
    assert isinstance(CODATA_2018.replace(c=3e8), PhysicalConstants)


def test_omega_from_wavelength():
    # 2 pi c / lambda evaluated by hand
    assert_allclose(omega_from_wavelength(532e-9), 3.5407e15, rtol=1e-4)
    assert_allclose(omega_from_wavelength(1064e-9), 3.5407e15 / 2, rtol=1e-4)
    assert omega_from_wavelength(1064e-9) == omega_from_wavelength(532e-9) / 2


@pytest.mark.parametrize("lam", [200e-9, 532e-9, 1064e-9, 1.55e-6, 1.0])
def test_wavelength_round_trip(lam):
    assert_allclose(wavelength_from_omega(omega_from_wavelength(lam)), lam, rtol=1e-15)


@pytest.mark.parametrize("bad", [0.0, -1e-9])
def test_nonpositive_rejected(bad):
    with pytest.raises(ValueError):
        omega_from_wavelength(bad)
    with pytest.raises(ValueError):
        wavelength_from_omega(bad)


def test_r_of_omega():
    # photon energy in eV: hc = 1239.84198433 eV nm / 532 nm, over 510998.95 eV
    expected = 1239.84198433 / 532 / 510998.95000
    assert_allclose(r_of_omega(omega_from_wavelength(532e-9)), expected, rtol=1e-8)
    assert_allclose(r_of_omega(omega_from_wavelength(532e-9)), 4.5608e-6, rtol=1e-4)
    assert_allclose(r_of_omega(omega_from_wavelength(1064e-9)), 2.2804e-6, rtol=1e-4)
    assert r_of_omega(0.0) == 0.0


def test_r_is_linear_and_increasing():
    w = np.geomspace(1e10, 1e18, 50)
    r = r_of_omega(w)
    assert np.all(np.diff(r) > 0)
    assert_allclose(r_of_omega(2 * w), 2 * r, rtol=2e-16)
    assert r_of_omega(1e15) == r_of_omega(1e15)
    assert math.isfinite(r_of_omega(1e15))

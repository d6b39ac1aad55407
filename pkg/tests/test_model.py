import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpbnr.model import (
    ConfigurationError,
    Constant,
    DeviceParams,
    ModelParams,
    Sinusoidal,
    Zero,
    cat_coefficients,
    check_profile,
    detuning_value,
    device_to_model,
    effective_frequencies,
    minimal_n_max,
    truncation_tail,
)


def mp_cat(alpha, n_max, dps=50):
    """Cat coefficients from the Fock expansion of eta(|a> + |-a>) in high precision."""
    with mpmath.workdps(dps):
        a = mpmath.mpf(alpha)
        eta = 1 / mpmath.sqrt(2 + 2 * mpmath.exp(-2 * a * a))
        return [eta * mpmath.exp(-a * a / 2) * (a ** n + (-a) ** n) / mpmath.sqrt(mpmath.factorial(n))
                for n in range(n_max + 1)]


def test_alpha_zero_is_vacuum():
    cat = cat_coefficients(0.0, 4)
    assert list(cat.coeffs) == [1.0, 0.0, 0.0, 0.0, 0.0]
    assert cat.eta == 0.5


def test_odd_coefficients_vanish_exactly():
    cat = cat_coefficients(5.0, 75)
    assert np.all(cat.coeffs[1::2] == 0.0)


def test_normalization_against_high_precision_sum():
    cat = cat_coefficients(5.0, 75)
    ref = mp_cat(5.0, 75)
    with mpmath.workdps(50):
        total = mpmath.fsum(c * c for c in ref)
    assert abs(float(total) - 1.0) < 1e-12
    assert abs(math.fsum(cat.coeffs ** 2) - 1.0) < 1e-12
    np.testing.assert_allclose(cat.coeffs, [float(c) for c in ref], rtol=1e-12, atol=1e-300)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 3.0, 5.0])
def test_normalization_window(alpha):
    cat = cat_coefficients(alpha, minimal_n_max(alpha))
    total = math.fsum(cat.coeffs ** 2)
    # upper edge allows a few ulps of rounding in the summed squares
    assert 1.0 - 1e-12 <= total <= 1.0 + 1e-14


def test_default_truncation_for_alpha_5():
    assert minimal_n_max(5.0) == 75
    assert truncation_tail(5.0, 75) < 1e-12
    assert ModelParams(alpha=5.0).n_max == 75


def test_truncation_tail_matches_high_precision():
    ref = mp_cat(5.0, 200)
    with mpmath.workdps(50):
        tail = float(mpmath.fsum(c * c for c in ref[61:]))
    assert truncation_tail(5.0, 60) == pytest.approx(tail, rel=1e-10)


def test_insufficient_truncation_names_minimum():
    with pytest.raises(ConfigurationError, match="n_max >= 75"):
        cat_coefficients(5.0, 40)
    with pytest.raises(ConfigurationError):
        ModelParams(alpha=5.0, n_max=40)


@given(alpha=st.floats(0.0, 6.0), extra=st.integers(1, 20))
@settings(max_examples=40, deadline=None)
def test_monotone_truncation(alpha, extra):
    n = minimal_n_max(alpha)
    small = cat_coefficients(alpha, n).coeffs
    big = cat_coefficients(alpha, n + extra).coeffs
    assert np.array_equal(big[: n + 1], small)
    assert np.all(big[1::2] == 0.0)


def test_detuning_values():
    assert detuning_value(Zero(), 7.3) == 0.0
    assert detuning_value(Constant(10.0), 123.4) == 10.0
    assert detuning_value(Sinusoidal(20.0, 0.1), 0.0) == 0.0
    t = np.linspace(0, 5, 11)
    np.testing.assert_array_equal(detuning_value(Zero(), t), np.zeros(11))
    np.testing.assert_array_equal(detuning_value(Constant(3.0), t), np.full(11, 3.0))


@pytest.mark.parametrize("profile", [Zero(), Constant(7.0), Sinusoidal(20.0, 0.5)])
def test_detuning_integral_matches_quadrature(profile):
    from scipy.integrate import quad

    for t in (0.3, 2.0, 11.0):
        ref, _ = quad(lambda s: detuning_value(profile, s), 0.0, t, epsabs=1e-13, limit=200)
        assert profile.integral(t) == pytest.approx(ref, abs=1e-10)


def test_effective_frequencies():
    p = ModelParams(omega=2000.0, omega0=2000.0)
    assert effective_frequencies(p, Zero(), 3.0) == (2000.0, 1.0)
    w, lam = effective_frequencies(p, Constant(20.0), 0.0)
    assert w == 2020.0 and lam == pytest.approx(1.01, abs=1e-15)
    w, lam = effective_frequencies(p, Sinusoidal(20.0, 0.5), math.pi)
    assert w == pytest.approx(2020.0, abs=1e-12)
    assert lam == pytest.approx(1.01, abs=1e-15)


@given(t=st.floats(0.0, 1e4))
def test_zero_profile_is_identity(t):
    p = ModelParams(omega=1500.0, omega0=1400.0, alpha=1.0)
    assert effective_frequencies(p, Zero(), t) == (1500.0, 1.0)


def test_device_mapping():
    lam, w0 = device_to_model(DeviceParams(ej0=3.0, ec=2.0, ng=0.5, phi_x=0.2, b_field_times_length_times_x0=0.1))
    assert w0 == 0.0
    lam, _ = device_to_model(DeviceParams(ej0=3.0, ec=2.0, ng=0.7, phi_x=0.5, b_field_times_length_times_x0=0.1))
    assert lam == pytest.approx(0.0, abs=1e-15)
    lam, w0 = device_to_model(DeviceParams(ej0=1.0, ec=1.0, ng=1.0, phi_x=0.0, b_field_times_length_times_x0=0.01))
    assert lam == pytest.approx(-0.04, rel=1e-15)
    assert w0 == pytest.approx(4.0)
    with pytest.raises(ConfigurationError):
        DeviceParams(ej0=-1.0, ec=1.0, ng=0.0, phi_x=0.0, b_field_times_length_times_x0=0.0)


@pytest.mark.parametrize("kwargs", [dict(omega=0.0), dict(omega0=-1.0), dict(gamma=-0.1),
                                    dict(alpha=-1.0), dict(n_max=0), dict(lambda0=2.0)])
def test_invalid_params(kwargs):
    with pytest.raises(ConfigurationError):
        ModelParams(**kwargs)


def test_sinusoidal_regime_warning():
    p = ModelParams()
    with pytest.raises(ConfigurationError):
        Sinusoidal(20.0, 0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        check_profile(p, Sinusoidal(20.0, 0.1))
        check_profile(p, Sinusoidal(60.0, 20.0))
    with pytest.warns(UserWarning):
        check_profile(p, Sinusoidal(5.0, 10.0))

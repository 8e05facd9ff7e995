import math

import numpy as np
import pytest

from lymanfield.oscillatory import (
    AsymptoticTerm,
    EndpointData,
    FasterDecaySignal,
    QuadratureNonConvergence,
    cosine_integral,
    fourier_integral,
    ibp_asymptotic,
    sine_integral,
)


def _exp_poly(a):
    return lambda q: q**a * np.exp(-q) + 0j


def test_exponential_sine_cosine_closed_forms():
    for rp in (1.0, 10.0, 1e3):
        s = sine_integral(_exp_poly(0), rp, tol=1e-12)
        c = cosine_integral(_exp_poly(0), rp, tol=1e-12)
        assert abs(s.value - rp / (1.0 + rp * rp)) < 1e-10
        assert abs(c.value - 1.0 / (1.0 + rp * rp)) < 1e-10


def test_zero_integrand():
    res = fourier_integral(lambda q: np.zeros_like(q, dtype=complex), 37.0)
    assert res.value == 0.0


@pytest.mark.parametrize("a", [0, 1, 2])
def test_power_exponential_family(a):
    # int q^a e^{-q} e^{i w q} dq = Gamma(a+1)/(1 - i w)^{a+1}
    for w in (1.0, 3.0, 30.0, 300.0, 1e4):
        exact = math.gamma(a + 1) / (1.0 - 1j * w) ** (a + 1)
        got = fourier_integral(_exp_poly(a), w, tol=1e-12)
        assert abs(got.value - exact) < 1e-11


def test_negative_frequency_is_conjugate_for_real_integrand():
    got_p = fourier_integral(_exp_poly(1), 25.0, tol=1e-12).value
    got_m = fourier_integral(_exp_poly(1), -25.0, tol=1e-12).value
    assert abs(got_m - np.conj(got_p)) < 1e-12


def test_quasi_pole_handling():
    # S with the resonance factor 1/(A + i(B - q)); reference by direct
    # adaptive quadrature at a frequency low enough for scipy to resolve
    A, B = 0.05, 0.3
    S = lambda q: np.exp(-q) / (A + 1j * (B - q))
    from scipy.integrate import quad

    w = 40.0
    ref_re = quad(lambda q: (S(q) * np.exp(1j * w * q)).real, 0, 60,
                  limit=2000)[0]
    ref_im = quad(lambda q: (S(q) * np.exp(1j * w * q)).imag, 0, 60,
                  limit=2000)[0]
    got = fourier_integral(S, w, tol=1e-11, pole=(B, A))
    assert abs(got.value - (ref_re + 1j * ref_im)) < 1e-8


def test_tolerance_tightening_stays_within_estimate():
    S = _exp_poly(1)
    loose = fourier_integral(S, 120.0, tol=1e-8)
    tight = fourier_integral(S, 120.0, tol=1e-13)
    assert abs(loose.value - tight.value) <= max(loose.error_estimate, 1e-13)


def test_panel_cap_doubling_within_estimate():
    S = _exp_poly(2)
    base = fourier_integral(S, 75.0, tol=1e-11, max_panels=4000)
    double = fourier_integral(S, 75.0, tol=1e-11, max_panels=8000)
    assert abs(base.value - double.value) <= max(base.error_estimate, 1e-15)


def test_nonconvergence_carries_partial_result():
    slow = lambda q: (1.0 + q) ** -1.05 + 0j  # barely integrable tail
    with pytest.raises(QuadratureNonConvergence) as info:
        fourier_integral(slow, 50.0, tol=1e-14, max_panels=8)
    assert np.isfinite(info.value.error_estimate)
    assert info.value.panels_used >= 8


# --- integration-by-parts evaluator ---------------------------------------

def test_ibp_sine_leading():
    term = ibp_asymptotic(EndpointData((1.0,), "sine"), 100.0)
    assert term == AsymptoticTerm(0.01, -1)


def test_ibp_cosine_leading():
    term = ibp_asymptotic(EndpointData((0.0, 2.0), "cosine"), 10.0)
    assert term.value == pytest.approx(-0.02)
    assert term.power == -2


def test_ibp_sine_second_order():
    # R(0)=0, R''(0)=6: the surviving boundary term is -R''(0)/r'^3
    # (oracle: int q e^{-q} sin(q r') dq = 2 r'/(1+r'^2)^2 ~ +2/r'^3 with
    # R''(0) = -2)
    term = ibp_asymptotic(EndpointData((0.0, 0.0, 6.0), "sine"), 10.0)
    assert term.value == pytest.approx(-6e-3)
    assert term.power == -3


def test_ibp_matches_numeric_family():
    # S = e^{-q}: sine integral r'/(1+r'^2) = (1/r')(1 - r'^-2 + ...)
    for rp in (30.0, 100.0, 300.0):
        num = sine_integral(_exp_poly(0), rp, tol=1e-13).value
        lead = ibp_asymptotic(EndpointData((1.0,), "sine"), rp)
        assert lead.power == -1
        ratio = num.real / lead.value.real
        # next term sits two powers down for this integrand
        assert (1.0 - ratio) * rp * rp == pytest.approx(1.0, rel=0.05)


def test_ibp_matches_numeric_family_second_order():
    # S = q e^{-q}: R(0) = 0, R''(0) = -2; exact value 2 r'/(1+r'^2)^2
    for rp in (30.0, 100.0):
        num = sine_integral(_exp_poly(1), rp, tol=1e-13).value
        lead = ibp_asymptotic(EndpointData((0.0, 1.0, -2.0), "sine"), rp)
        assert lead.power == -3
        assert num.real / lead.value.real == pytest.approx(1.0, rel=5.0 / rp**2 + 1e-3)


def test_ibp_cosine_matches_numeric():
    # S = q e^{-q}: cosine integral (1-r'^2)/(1+r'^2)^2 ~ -1/r'^2
    for rp in (30.0, 100.0):
        num = cosine_integral(_exp_poly(1), rp, tol=1e-13).value
        lead = ibp_asymptotic(EndpointData((0.0, 1.0), "cosine"), rp)
        assert lead.power == -2
        assert num.real / lead.value.real == pytest.approx(1.0, rel=6.0 / rp**2)


def test_ibp_all_zero_signals_faster_decay():
    with pytest.raises(FasterDecaySignal):
        ibp_asymptotic(EndpointData((0.0, 0.0, 0.0), "sine"), 10.0)
    with pytest.raises(FasterDecaySignal):
        # cosine parity never looks at even entries
        ibp_asymptotic(EndpointData((5.0,), "cosine"), 10.0)


def test_endpoint_data_validation():
    with pytest.raises(ValueError):
        EndpointData((), "sine")
    with pytest.raises(ValueError):
        EndpointData((1.0,), "tangent")
    with pytest.raises(ValueError):
        ibp_asymptotic(EndpointData((1.0,), "sine"), 0.0)

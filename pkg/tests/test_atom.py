import math

import numpy as np
import pytest
from scipy.integrate import quad

from lymanfield.atom import (
    DimensionlessParams,
    excited_wavefunction,
    from_dimensionless,
    ground_wavefunction,
    make_atom_params,
    to_dimensionless,
)


def test_derived_scales(atom0):
    assert atom0.r_B == atom0.hbar / (atom0.alpha * atom0.m * atom0.c)
    assert atom0.K == 3.0 / (2.0 * atom0.r_B)
    assert atom0.E_g == 0.0
    ratio = atom0.omega_a / atom0.cK
    assert abs(ratio - atom0.alpha / 4.0) < 1e-14 * (atom0.alpha / 4.0)


def test_bohr_frequency_magnitude(atom0):
    # Lyman-alpha angular frequency, order 1.55e16 rad/s
    assert 1.5e16 < atom0.omega_a < 1.6e16


@pytest.mark.parametrize("m_e", [-1, 0, 1])
def test_valid_m_e(m_e):
    assert make_atom_params(m_e).m_e_qn == m_e


@pytest.mark.parametrize("m_e", [-2, 2, 5])
def test_invalid_m_e(m_e):
    with pytest.raises(ValueError):
        make_atom_params(m_e)


def test_ground_wavefunction_values(atom0):
    assert ground_wavefunction(atom0, 0.0) == pytest.approx(
        1.0 / math.sqrt(math.pi * atom0.r_B**3)
    )
    assert ground_wavefunction(atom0, 80.0 * atom0.r_B) < 1e-30 * ground_wavefunction(
        atom0, 0.0
    )
    with pytest.raises(ValueError):
        ground_wavefunction(atom0, -1.0)


def test_ground_norm_quadrature(atom0):
    norm = quad(
        lambda r: 4.0 * math.pi * r * r * ground_wavefunction(atom0, r) ** 2,
        0.0,
        50.0 * atom0.r_B,
        limit=200,
    )[0]
    assert abs(norm - 1.0) < 1e-9


@pytest.mark.parametrize("m_e", [-1, 0, 1])
def test_excited_norm_quadrature(atom0, m_e):
    # separable 3D quadrature: radial x angular
    radial = quad(
        lambda r: r * r * (r / atom0.r_B) ** 2 * math.exp(-r / atom0.r_B),
        0.0,
        60.0 * atom0.r_B,
        limit=200,
    )[0]
    angular = quad(
        lambda th: 2.0
        * math.pi
        * math.sin(th)
        * abs(
            excited_wavefunction(atom0, atom0.r_B, th, 0.7, m_e)
            / math.exp(-0.5)
        )
        ** 2,
        0.0,
        math.pi,
        limit=200,
    )[0]
    assert abs(radial * angular - 1.0) < 1e-9


def test_excited_nodes(atom0):
    # cos(pi/2) = 0 for m_e = 0 (up to the float representation of pi/2);
    # sin(0) = 0 exactly for m_e = +-1
    scale = 1.0 / math.sqrt(math.pi * atom0.r_B**3)
    for r in (0.5 * atom0.r_B, 3.0 * atom0.r_B):
        assert abs(excited_wavefunction(atom0, r, math.pi / 2.0, 1.3, 0)) < 1e-15 * scale
        assert excited_wavefunction(atom0, r, 0.0, 1.3, 1) == 0.0
        assert excited_wavefunction(atom0, r, 0.0, 1.3, -1) == 0.0
    with pytest.raises(ValueError):
        excited_wavefunction(atom0, atom0.r_B, 0.1, 0.0, 3)


def test_to_dimensionless_definitions(atom0):
    gamma = 2.0 * atom0.cK * 0.05
    dp = to_dimensionless(atom0, gamma, 0.0, 0.0, atom0.r_B)
    assert dp.A == 0.05
    assert dp.p == 0.0
    assert dp.B == pytest.approx(atom0.omega_a / atom0.cK, rel=1e-15)
    with pytest.raises(ValueError):
        to_dimensionless(atom0, -1.0, 0.0, 0.0, atom0.r_B)


def test_round_trip(atom0):
    gamma, delta, t, r = 6.3e8, -2.7e10, 4.2e-9, 1.7e-7
    dp = to_dimensionless(atom0, gamma, delta, t, r)
    back = from_dimensionless(atom0, dp)
    for got, want in zip(back, (gamma, delta, t, r)):
        assert abs(got - want) <= 1e-12 * abs(want)


def test_dimensionless_validation():
    with pytest.raises(ValueError):
        DimensionlessParams(A=-0.1, B=0.3, p=1.0, r_prime=10.0)
    with pytest.raises(ValueError):
        DimensionlessParams(A=0.1, B=0.0, p=1.0, r_prime=10.0)
    with pytest.raises(ValueError):
        DimensionlessParams(A=0.1, B=0.3, p=-1.0, r_prime=10.0)
    with pytest.raises(ValueError):
        DimensionlessParams(A=0.1, B=0.3, p=1.0, r_prime=0.0)


def test_wavefunction_broadcasting(atom0):
    r = np.linspace(0.0, 5.0, 7) * atom0.r_B
    assert ground_wavefunction(atom0, r).shape == (7,)
    vals = excited_wavefunction(atom0, r, 0.4, 0.2, 1)
    assert vals.shape == (7,)
    assert np.iscomplexobj(vals)

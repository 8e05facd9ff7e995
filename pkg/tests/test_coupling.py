import math

import numpy as np
import pytest

from lymanfield.coupling import CouplingFunction, coupling_overlap_oracle


@pytest.fixture(scope="module")
def coupling(atom0):
    return CouplingFunction(atom0)


def test_rho_zero_and_positive(coupling, atom0):
    assert coupling.rho(0.0) == 0.0
    k = np.linspace(1e-3, 6.0, 400) * atom0.K
    vals = coupling.rho(k)
    assert np.all(vals > 0.0)
    with pytest.raises(ValueError):
        coupling.rho(-1.0)


def test_rho_single_interior_maximum(coupling, atom0):
    # rho ~ q^{1/2} (1+q^2)^{-2}: stationarity gives 1 + q^2 = 8 q^2, i.e.
    # q* = 1/sqrt(7); cross-checked by a dense grid maximum
    q = np.linspace(1e-4, 5.0, 200001)
    vals = coupling.rho(q * atom0.K)
    q_star = q[np.argmax(vals)]
    assert q_star == pytest.approx(1.0 / math.sqrt(7.0), abs=5e-5)
    d = np.diff(vals)
    sign_changes = np.sum(np.diff(np.sign(d)) != 0)
    assert sign_changes == 1


def test_selection_rule(coupling, atom0):
    k = 0.7 * atom0.K
    assert np.all(coupling.rho_jm(k, 2, 0) == 0.0)
    assert np.all(coupling.rho_jm(k, 1, 1) == 0.0)  # m_e = 0 atom
    assert coupling.rho_jm(k, 1, 0) == coupling.rho(k)


def test_rho_tilde_zero_and_tail(coupling, atom0):
    assert coupling.rho_tilde(0.0) == 0.0
    # |rho_tilde|^2 ~ C omega^{-7}: log-log slope oracle far out on the tail
    w1, w2 = 2e3 * atom0.cK, 2e4 * atom0.cK
    s1 = float(coupling.rho_tilde(w1)) ** 2
    s2 = float(coupling.rho_tilde(w2)) ** 2
    slope = math.log(s2 / s1) / math.log(w2 / w1)
    assert slope == pytest.approx(-7.0, abs=1e-5)


def test_gamma_consistency(coupling, atom0, hydrogen):
    lhs = 2.0 * math.pi * float(coupling.rho_tilde(atom0.omega_a)) ** 2
    assert lhs == pytest.approx(hydrogen.gamma_a, rel=4e-16)


@pytest.mark.slow
def test_overlap_oracle_matches_rho(atom0, coupling):
    for q in (0.2, math.sqrt(3.0 / 5.0), 2.0):
        k = q * atom0.K
        oracle = coupling_overlap_oracle(atom0, k, lam=+1)
        assert oracle / float(coupling.rho(k)) == pytest.approx(1.0, abs=1e-4)


@pytest.mark.slow
def test_overlap_oracle_helicity_and_selection(atom0, coupling):
    k = 0.7746 * atom0.K
    plus = coupling_overlap_oracle(atom0, k, lam=+1)
    minus = coupling_overlap_oracle(atom0, k, lam=-1)
    assert plus == pytest.approx(minus, rel=1e-10)
    scale = float(coupling.rho(k))
    wrong_m = coupling_overlap_oracle(atom0, k, lam=+1, M=1)
    assert wrong_m < 1e-10 * scale
    wrong_j = coupling_overlap_oracle(atom0, k, lam=+1, J=2)
    assert wrong_j == 0.0


@pytest.mark.slow
@pytest.mark.parametrize("m_e", [-1, 1])
def test_overlap_oracle_other_sublevels(m_e):
    from lymanfield.atom import make_atom_params

    atom = make_atom_params(m_e)
    coupling = CouplingFunction(atom)
    k = 0.5 * atom.K
    oracle = coupling_overlap_oracle(atom, k, lam=+1)
    assert oracle / float(coupling.rho(k)) == pytest.approx(1.0, abs=1e-4)

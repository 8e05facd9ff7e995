"""Interaction coefficient rho(k) of the 1s-2p minimal-coupling matrix element,
its Friedrichs-normalized form rho_tilde(omega), and a direct-overlap oracle.

rho(k) = (2/3)^{7/2} sqrt(alpha^5/pi) m c^2 (k/K)/sqrt(k) [1+(k/K)^2]^{-2},
real, >= 0, helicity-independent, and carrying the selection rule
delta_{J,1} delta_{M,m_e}. rho_tilde(omega) = sqrt(2/(c hbar^2)) rho(omega/c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .atom import AtomParams
from .harmonics import helicity_mode

__all__ = ["CouplingFunction", "coupling_overlap_oracle", "OverlapNonConvergence"]


class OverlapNonConvergence(RuntimeError):
    """Raised when the overlap quadrature fails its self-consistency check."""

    def __init__(self, message: str, value: float, error_estimate: float):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class CouplingFunction:
    """Pure formula object for the coupling of one atom."""

    params: AtomParams

    def rho(self, k) -> np.ndarray | float:
        """rho(k); units J m^{1/2} (energy times k-normalization)."""
        k = np.asarray(k, dtype=float)
        if np.any(k < 0):
            raise ValueError("k must be >= 0")
        a = self.params
        q = k / a.K
        with np.errstate(divide="ignore", invalid="ignore"):
            kern = np.where(k > 0, q / np.sqrt(np.where(k > 0, k, 1.0)), 0.0)
        val = (
            (2.0 / 3.0) ** 3.5
            * math.sqrt(a.alpha**5 / math.pi)
            * a.mc2
            * kern
            / (1.0 + q * q) ** 2
        )
        return float(val) if val.ndim == 0 else val

    def rho_jm(self, k, J: int, M: int):
        """rho with the selection rule: exactly 0 unless (J, M) = (1, m_e)."""
        if J != 1 or M != self.params.m_e_qn:
            return np.zeros_like(np.asarray(k, dtype=float))
        return self.rho(k)

    def rho_tilde(self, omega):
        """rho_tilde(omega) = sqrt(2/(c hbar^2)) rho(omega/c); units sqrt(rad/s)."""
        omega = np.asarray(omega, dtype=float)
        if np.any(omega < 0):
            raise ValueError("omega must be >= 0")
        a = self.params
        return math.sqrt(2.0 / (a.c * a.hbar**2)) * self.rho(omega / a.c)

    def gamma_scale(self) -> float:
        """Scale of Gamma(omega) = gamma_scale * u (1+u^2)^{-4}, u = omega/(cK)."""
        a = self.params
        return 4.0 * (2.0 / 3.0) ** 7 * a.alpha**5 * a.m**2 * a.c**3 / (a.hbar**2 * a.K)


def _excited_gradient_cartesian(atom: AtomParams, r, theta, phi, m_e_qn: int):
    """grad of the 2p wavefunction, Cartesian components, analytic."""
    rB = atom.r_B
    R = (r / rB) * np.exp(-r / (2.0 * rB))
    dR = (1.0 / rB) * (1.0 - r / (2.0 * rB)) * np.exp(-r / (2.0 * rB))
    if m_e_qn == 0:
        c0 = 1.0 / (4.0 * math.sqrt(2.0 * math.pi * rB**3))
        beta = c0 * np.cos(theta) + 0j
        dbeta_dth = -c0 * np.sin(theta) + 0j
        dbeta_dph = np.zeros_like(beta)
    else:
        c1 = 1.0 / (8.0 * math.sqrt(math.pi * rB**3))
        ex = np.exp(1j * m_e_qn * phi)
        beta = -m_e_qn * c1 * np.sin(theta) * ex
        dbeta_dth = -m_e_qn * c1 * np.cos(theta) * ex
        dbeta_dph = 1j * m_e_qn * beta
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    r_hat = np.stack([st * cp, st * sp, ct], axis=-1)
    t_hat = np.stack([ct * cp, ct * sp, -st], axis=-1)
    p_hat = np.stack([-sp, cp, np.zeros_like(phi)], axis=-1)
    return (
        (beta * dR)[..., None] * r_hat
        + (dbeta_dth * R / r)[..., None] * t_hat
        + (dbeta_dph * R / (r * st))[..., None] * p_hat
    )


def _overlap_magnitude(
    atom: AtomParams, k: float, lam: int, J: int, M: int, n_r: int, n_ang: int
) -> float:
    """|<g; psi_{k,J,M,lam}| p.A |e>| by product quadrature on a truncated ball.

    Radial domain [0, 40 r_B]: both orbitals carry e^{-r/(2 r_B)} or faster, so
    the truncated mass is < 1e-12 of the integral. Only J = 1 modes exist in
    this package; J != 1 requests return 0 by the mode's angular orthogonality,
    enforced here without evaluating anything.
    """
    if J != 1:
        return 0.0
    xr, wr = np.polynomial.legendre.leggauss(n_r)
    rmax = 40.0 * atom.r_B
    r = 0.5 * rmax * (xr + 1.0)
    wr = 0.5 * rmax * wr
    xt, wt = np.polynomial.legendre.leggauss(n_ang)
    th = np.arccos(xt)
    ph = np.linspace(0.0, 2.0 * math.pi, n_ang, endpoint=False)
    wph = 2.0 * math.pi / n_ang

    Rg, Tg, Pg = np.meshgrid(r, th, ph, indexing="ij")
    weight = (wr[:, None, None] * wt[None, :, None] * wph) * Rg**2
    phi_g = np.exp(-Rg / atom.r_B) / math.sqrt(math.pi * atom.r_B**3)
    psi = helicity_mode(k, M, lam, Rg, theta=Tg, phi=Pg)
    grad = _excited_gradient_cartesian(atom, Rg, Tg, Pg, atom.m_e_qn)
    overlap = np.sum(weight * phi_g * np.sum(np.conj(psi) * grad, axis=-1))
    # single-photon vector-potential weight sqrt(hbar/(2 eps0 omega_k)) with
    # e = sqrt(4 pi eps0 hbar c alpha) collapses to (hbar^2/m) sqrt(2 pi alpha/k)
    pref = (atom.hbar**2 / atom.m) * math.sqrt(2.0 * math.pi * atom.alpha / k)
    return pref * abs(overlap)


def coupling_overlap_oracle(
    atom: AtomParams,
    k: float,
    lam: int,
    J: int = 1,
    M: int | None = None,
    rtol: float = 1e-6,
) -> float:
    """Slow validation path: the p.A matrix element by direct 3D quadrature.

    Returns the magnitude for comparison against |rho(k)|. Convergence is
    checked by grid refinement; failure raises OverlapNonConvergence with the
    achieved estimate.
    """
    if k <= 0:
        raise ValueError("k must be > 0")
    if M is None:
        M = atom.m_e_qn
    coarse = _overlap_magnitude(atom, k, lam, J, M, n_r=192, n_ang=32)
    fine = _overlap_magnitude(atom, k, lam, J, M, n_r=288, n_ang=48)
    err = abs(fine - coarse)
    scale = max(abs(fine), 1e-300)
    if err > rtol * scale and err > 1e-14 * _overlap_scale(atom, k):
        raise OverlapNonConvergence(
            f"overlap quadrature did not converge at k={k:g}: "
            f"estimate {err:.3e} on value {fine:.6e}",
            value=fine,
            error_estimate=err,
        )
    return fine


def _overlap_scale(atom: AtomParams, k: float) -> float:
    """Natural magnitude of rho near its maximum, for absolute-zero tests."""
    return CouplingFunction(atom).rho(math.sqrt(3.0 / 5.0) * atom.K)

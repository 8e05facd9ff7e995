"""Closed-form spherical Bessel functions (L = 0, 1, 2), vector spherical
harmonics Y^L_{J=1,M}, and the helicity eigenmodes psi^(lambda)_{k,1,M}.

Vector values are numpy arrays of three complex Cartesian components; the
spherical-component view is a separate, explicitly named conversion. The
harmonics are built as Y^L_{1,M} = sum_{m,sigma} <L,m;1,sigma|1,M> Y_{L,m} e_sigma
with Condon-Shortley scalar harmonics and the spherical basis
e_{+-1} = -+(e_x +- i e_y)/sqrt(2), e_0 = e_z. This convention is locked by the
dot-product identities |Y^1_{1,0}|^2 = (3/8pi) sin^2(theta),
|Y^1_{1,+-1}|^2 = (3/16pi)(1+cos^2(theta)) and by the curl eigenrelation
curl psi^(lambda) = lambda k psi^(lambda), all covered in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import sph_harm_y

# crossover below which the truncated Taylor series replaces the closed form.
# The closed forms cancel like x^{-2} (j1) and x^{-4} (j2) near zero, so the
# hand-off points rise with L; the series tail keeps both sides well under
# 1e-13 relative at each crossover.
_SERIES_CROSSOVER = {0: 1e-2, 1: 0.35, 2: 1.2}
_SERIES_TERMS = 9
_ODD_DOUBLE_FACTORIAL = {0: 1.0, 1: 3.0, 2: 15.0}  # (2L+1)!! for L = 0,1,2


def spherical_bessel(L: int, x):
    """j_L(x) for L in {0,1,2}, stable at small x via a Taylor tail.

    j0 = sin x / x, j1 = sin x / x^2 - cos x / x, j2 = (3/x) j1 - j0.
    """
    if L not in (0, 1, 2):
        raise ValueError(f"L must be 0, 1 or 2, got {L}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("x must be >= 0")
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)

    small = x < _SERIES_CROSSOVER[L]
    if np.any(small):
        xs = x[small]
        y = xs * xs
        # j_L(x) = x^L/(2L+1)!! * sum_n (-y/2)^n / (n! (2L+3)(2L+5)...(2L+2n+1))
        series = np.ones_like(xs)
        term = np.ones_like(xs)
        for n in range(1, _SERIES_TERMS + 1):
            term = term * (-0.5 * y) / (n * (2 * L + 2 * n + 1))
            series += term
        out[small] = xs**L * series / _ODD_DOUBLE_FACTORIAL[L]
    big = ~small
    if np.any(big):
        xb = x[big]
        s, c = np.sin(xb), np.cos(xb)
        if L == 0:
            out[big] = s / xb
        elif L == 1:
            out[big] = s / xb**2 - c / xb
        else:
            out[big] = (3.0 / xb**2 - 1.0) * s / xb - 3.0 * c / xb**2
    return out[0] if scalar else out


@dataclass(frozen=True)
class AngularPoint:
    """A direction on the sphere; theta in [0, pi], phi in [0, 2 pi)."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValueError(f"phi must lie in [0, 2 pi), got {self.phi}")


# spherical basis vectors in the fixed Cartesian frame
E_SPHERICAL = {
    +1: np.array([-1.0, -1.0j, 0.0]) / math.sqrt(2.0),
    0: np.array([0.0, 0.0, 1.0], dtype=complex),
    -1: np.array([1.0, -1.0j, 0.0]) / math.sqrt(2.0),
}

# Clebsch-Gordan <L,m;1,sigma|1,M> for L = 0, 1, 2 (all we need at J = 1)
_CG: dict[tuple[int, int, int, int], float] = {(0, 0, s, s): 1.0 for s in (-1, 0, 1)}
_CG.update(
    {
        (1, 1, 0, 1): 1 / math.sqrt(2), (1, 0, 1, 1): -1 / math.sqrt(2),
        (1, 1, -1, 0): 1 / math.sqrt(2), (1, -1, 1, 0): -1 / math.sqrt(2),
        (1, 0, -1, -1): 1 / math.sqrt(2), (1, -1, 0, -1): -1 / math.sqrt(2),
        (2, 2, -1, 1): math.sqrt(3 / 5), (2, 1, 0, 1): -math.sqrt(3 / 10),
        (2, 0, 1, 1): math.sqrt(1 / 10),
        (2, 1, -1, 0): math.sqrt(3 / 10), (2, 0, 0, 0): -math.sqrt(2 / 5),
        (2, -1, 1, 0): math.sqrt(3 / 10),
        (2, 0, -1, -1): math.sqrt(1 / 10), (2, -1, 0, -1): -math.sqrt(3 / 10),
        (2, -2, 1, -1): math.sqrt(3 / 5),
    }
)


def clebsch_gordan_j1(L: int, m: int, sigma: int, M: int) -> float:
    """<L,m;1,sigma|1,M> for L in {0,1,2}."""
    if m + sigma != M:
        return 0.0
    return _CG.get((L, m, sigma, M), 0.0)


def vector_spherical_harmonic(L: int, M: int, pt: AngularPoint | None = None,
                              theta=None, phi=None) -> np.ndarray:
    """Y^L_{1,M}(theta, phi) as Cartesian components.

    Accepts either an AngularPoint or broadcastable theta/phi arrays; the
    result has shape (..., 3).
    """
    if L not in (0, 1, 2):
        raise ValueError(f"L must be 0, 1 or 2, got {L}")
    if M not in (-1, 0, 1):
        raise ValueError(f"M must be -1, 0 or 1, got {M}")
    if pt is not None:
        theta, phi = pt.theta, pt.phi
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    out = np.zeros(np.broadcast(theta, phi).shape + (3,), dtype=complex)
    for sigma in (-1, 0, 1):
        m = M - sigma
        if abs(m) > L:
            continue
        coef = clebsch_gordan_j1(L, m, sigma, M)
        if coef == 0.0:
            continue
        out += (coef * sph_harm_y(L, m, theta, phi))[..., None] * E_SPHERICAL[sigma]
    return out


def helicity_mode(k: float, M: int, lam: int, r, pt: AngularPoint | None = None,
                  theta=None, phi=None) -> np.ndarray:
    """Helicity eigenmode psi^(lambda)_{k,1,M} in Cartesian components.

    psi^(lambda) = (i/sqrt2) [ sqrt(2/3) psi^0 - sqrt(1/3) psi^2 - i lambda psi^1 ]
    with psi^L = sqrt(2/pi) k j_L(kr) Y^L_{1,M}. Delta-normalized in k.
    """
    if k <= 0:
        raise ValueError("k must be > 0")
    if lam not in (-1, 1):
        raise ValueError(f"lam must be +-1, got {lam}")
    if pt is not None:
        theta, phi = pt.theta, pt.phi
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    norm = math.sqrt(2.0 / math.pi) * k
    acc = 0.0
    for L, w in ((0, math.sqrt(2.0 / 3.0)), (2, -math.sqrt(1.0 / 3.0)), (1, -1j * lam)):
        radial = norm * spherical_bessel(L, k * r)
        acc = acc + w * np.asarray(radial)[..., None] * vector_spherical_harmonic(
            L, M, theta=theta, phi=phi
        )
    return (1j / math.sqrt(2.0)) * acc


def hermitian_dot(a: np.ndarray, b: np.ndarray):
    """conj(a) . b over the last axis."""
    return np.sum(np.conj(a) * b, axis=-1)


def cartesian_to_spherical_components(vec: np.ndarray, pt: AngularPoint) -> np.ndarray:
    """Project Cartesian components onto (r_hat, theta_hat, phi_hat)."""
    st, ct = math.sin(pt.theta), math.cos(pt.theta)
    sp, cp = math.sin(pt.phi), math.cos(pt.phi)
    r_hat = np.array([st * cp, st * sp, ct])
    t_hat = np.array([ct * cp, ct * sp, -st])
    p_hat = np.array([-sp, cp, 0.0])
    return np.stack(
        [vec @ r_hat, vec @ t_hat, vec @ p_hat], axis=-1
    )

"""Semi-infinite Fourier-type quadrature and endpoint asymptotics.

The single primitive is F(S, omega) = int_0^inf S(q) e^{i omega q} dq for a
smooth, decaying, complex-valued S and real omega of any magnitude or sign;
sine/cosine variants are thin wrappers by linearity. Strategy:

* |omega| below a threshold: the oscillation does not complete a period over
  the support, so plain adaptive quadrature is used.
* otherwise: the half-line is cut into half-period panels of length
  pi/|omega|; each panel is integrated with fixed 15-point Gauss-Legendre
  (the integrand is smooth within a half period) and the slowly decaying,
  sign-alternating panel series is summed with Wynn's epsilon algorithm.
  Summation order is fixed, so results are deterministic.
* when S carries a quasi-pole 1/(A + i(B - q)) with small A, panels inside
  |q - B| < 10 A are refined to width min(pi/|omega|, A/4), and the panel
  sequence is forced to cover the pole region directly whenever its
  exponentially damped contribution e^{-|omega| A} can still matter.

The integration-by-parts evaluator turns endpoint derivative data into the
leading algebraic term of the integral. With the 0-based derivative list
d_n = d^n R/dq^n |_0 and the recursions

    int R sin(q r') dq = R(0)/r' - (1/r'^2) int R'' sin(q r') dq
    int R cos(q r') dq = -(1/r') int R' sin(q r') dq

the first surviving term is, for the sine kernel with lowest even nonzero
d_n: (-1)^{n/2} d_n / r'^{n+1}, and for the cosine kernel with lowest odd
nonzero d_n: -(-1)^{(n-1)/2} d_n / r'^{n+1}. The dropped remainder is o(.)
by the Riemann-Lebesgue lemma.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import IntegrationWarning, quad

__all__ = [
    "OscillatoryResult",
    "EndpointData",
    "AsymptoticTerm",
    "QuadratureNonConvergence",
    "FasterDecaySignal",
    "fourier_integral",
    "sine_integral",
    "cosine_integral",
    "ibp_asymptotic",
]

# below this |omega| fewer than one period spans the decaying support
OSCILLATORY_MIN_FREQ = 2.0

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


class QuadratureNonConvergence(RuntimeError):
    """Panel cap reached; carries the partial value and its error estimate."""

    def __init__(self, message: str, value: complex, error_estimate: float,
                 panels_used: int):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
        self.panels_used = panels_used


class FasterDecaySignal(ValueError):
    """All supplied endpoint derivatives vanish: the integral decays faster
    than the listed orders, and no leading term can be quoted."""


@dataclass(frozen=True)
class OscillatoryResult:
    value: complex
    error_estimate: float
    panels_used: int


@dataclass(frozen=True)
class EndpointData:
    """Endpoint derivatives d^n R/dq^n |_{q=0}, n = 0..N, plus kernel parity."""

    derivatives: tuple
    parity: str  # 'sine' or 'cosine'

    def __post_init__(self) -> None:
        if len(self.derivatives) < 1:
            raise ValueError("derivatives list must not be empty")
        if self.parity not in ("sine", "cosine"):
            raise ValueError(f"parity must be 'sine' or 'cosine', got {self.parity!r}")


@dataclass(frozen=True)
class AsymptoticTerm:
    """One algebraic term value/r'^{-power} with its order tag (power < 0)."""

    value: complex
    power: int


def _wynn_epsilon(partial_sums: np.ndarray) -> tuple[complex, float]:
    """Limit estimate of a partial-sum sequence via the epsilon algorithm.

    Returns (estimate, error_estimate); the error is the spread of the last
    converged even columns. Division guards stop the table early rather than
    amplifying noise.
    """
    e_prev = np.zeros(len(partial_sums) + 1, dtype=complex)
    e_curr = np.asarray(partial_sums, dtype=complex)
    even_history = [e_curr[-1]]
    k = 0
    while len(e_curr) > 1:
        diff = e_curr[1:] - e_curr[:-1]
        bad = np.abs(diff) < 1e-305
        if np.any(bad):
            break
        e_next = e_prev[1:-1] + 1.0 / diff
        e_prev, e_curr = e_curr, e_next
        k += 1
        if k % 2 == 0 and len(e_curr) > 0:
            even_history.append(e_curr[-1])
        if not np.all(np.isfinite(e_curr)):
            even_history = even_history[:-1] if k % 2 == 0 else even_history
            break
    if len(even_history) == 1:
        return even_history[0], float("inf")
    best = even_history[-1]
    err = abs(even_history[-1] - even_history[-2])
    return best, err


def _panel_values(S: Callable, omega: float, edges: np.ndarray) -> np.ndarray:
    """Gauss-Legendre integrals of S e^{i omega q} on consecutive [edges] cells."""
    a = edges[:-1]
    b = edges[1:]
    mid = 0.5 * (a + b)[:, None]
    half = 0.5 * (b - a)[:, None]
    nodes = mid + half * _GL_NODES[None, :]
    flat = nodes.ravel()
    vals = np.asarray(S(flat), dtype=complex).reshape(nodes.shape)
    kernel = np.exp(1j * omega * nodes)
    return np.sum(vals * kernel * _GL_WEIGHTS[None, :], axis=1) * half[:, 0]


def _refine_edges(edges: np.ndarray, pole: tuple[float, float] | None) -> np.ndarray:
    """Subdivide panels that overlap the quasi-pole window to width A/4."""
    if pole is None:
        return edges
    center, width = pole
    lo, hi = center - 10.0 * width, center + 10.0 * width
    out = [edges[0]]
    for a, b in zip(edges[:-1], edges[1:]):
        if b > lo and a < hi and (b - a) > width / 4.0:
            n = int(math.ceil((b - a) / (width / 4.0)))
            out.extend(np.linspace(a, b, n + 1)[1:])
        else:
            out.append(b)
    return np.asarray(out)


def _plain_integral(S: Callable, omega: float, tol: float,
                    pole: tuple[float, float] | None) -> OscillatoryResult:
    """Low-frequency fallback: adaptive quadrature of the full integrand."""
    upper = 40.0
    points = None
    if pole is not None:
        upper = max(upper, pole[0] + 10.0 * pole[1] + 20.0)
        points = [max(pole[0] - 10.0 * pole[1], 0.0), pole[0], pole[0] + 10.0 * pole[1]]

    def f_re(q):
        return (np.asarray(S(q)) * np.exp(1j * omega * q)).real

    def f_im(q):
        return (np.asarray(S(q)) * np.exp(1j * omega * q)).imag

    kw = dict(limit=400, epsabs=tol / 4.0, epsrel=1e-12)
    re1, er1 = quad(f_re, 0.0, upper, points=points, **kw)
    im1, ei1 = quad(f_im, 0.0, upper, points=points, **kw)
    with warnings.catch_warnings():
        # the tail beyond `upper` carries < tol of the integral; QUADPACK's
        # slow-convergence complaint there is not actionable
        warnings.simplefilter("ignore", IntegrationWarning)
        re2, er2 = quad(f_re, upper, np.inf, **kw)
        im2, ei2 = quad(f_im, upper, np.inf, **kw)
    value = complex(re1 + re2, im1 + im2)
    return OscillatoryResult(value, er1 + er2 + ei1 + ei2, 0)


def fourier_integral(
    S: Callable,
    omega: float,
    tol: float = 1e-10,
    pole: tuple[float, float] | None = None,
    max_panels: int = 40000,
) -> OscillatoryResult:
    """int_0^inf S(q) e^{i omega q} dq.

    S must accept an ndarray of q >= 0 and return complex values; it must be
    smooth with an integrable tail. pole = (center, width) declares a factor
    1/(A + i(B - q)) with A = width, B = center so the engine can resolve it.
    Raises QuadratureNonConvergence beyond max_panels.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if abs(omega) < OSCILLATORY_MIN_FREQ:
        return _plain_integral(S, omega, tol, pole)

    h = math.pi / abs(omega)
    # force direct coverage through the pole region while its exponentially
    # damped contribution e^{-|omega| width} is above the noise floor
    n_head = 0
    if pole is not None and abs(omega) * pole[1] < 60.0:
        q_need = pole[0] + 10.0 * pole[1] + 2.0
        n_head = int(math.ceil(q_need / h))
    if n_head:
        head_edges = _refine_edges(np.arange(n_head + 1) * h, pole)
        head = np.sum(_panel_values(S, omega, head_edges))
        panels_used = len(head_edges) - 1
    else:
        head = 0.0 + 0.0j
        panels_used = 0

    block = 8
    min_tail_panels = 24
    partial = []
    total = head
    n = n_head
    best = None
    best_err = float("inf")
    while n - n_head < max_panels:
        edges = (n + np.arange(block + 1)) * h
        vals = _panel_values(S, omega, edges)
        for v in vals:
            total += v
            partial.append(total)
        n += block
        panels_used += block
        if len(partial) >= min_tail_panels:
            window = np.asarray(partial[-min(len(partial), 48):])
            stall = float(np.max(np.abs(window - window[-1])))
            if stall == 0.0:
                # terminated series (e.g. identically zero tail)
                return OscillatoryResult(window[-1], 0.0, panels_used)
            est, err = _wynn_epsilon(window)
            if err < max(tol, 1e-15 * abs(est)):
                return OscillatoryResult(est, err, panels_used)
            if err < best_err:
                best, best_err = est, err
    if best is None:
        window = np.asarray(partial)
        best, best_err = (_wynn_epsilon(window) if len(window) >= 4
                          else (total, abs(vals[-1])))
    if not math.isfinite(best_err):
        best_err = abs(vals[-1])
    raise QuadratureNonConvergence(
        f"no convergence after {panels_used} panels (|omega|={abs(omega):g}); "
        f"best estimate {best:.6e} +- {best_err:.2e}",
        value=best,
        error_estimate=best_err,
        panels_used=panels_used,
    )


def sine_integral(S: Callable, omega: float, **kw) -> OscillatoryResult:
    """int_0^inf S(q) sin(omega q) dq (omega > 0)."""
    plus = fourier_integral(S, omega, **kw)
    minus = fourier_integral(S, -omega, **kw)
    return OscillatoryResult(
        (plus.value - minus.value) / 2j,
        0.5 * (plus.error_estimate + minus.error_estimate),
        plus.panels_used + minus.panels_used,
    )


def cosine_integral(S: Callable, omega: float, **kw) -> OscillatoryResult:
    """int_0^inf S(q) cos(omega q) dq (omega > 0)."""
    plus = fourier_integral(S, omega, **kw)
    minus = fourier_integral(S, -omega, **kw)
    return OscillatoryResult(
        (plus.value + minus.value) / 2.0,
        0.5 * (plus.error_estimate + minus.error_estimate),
        plus.panels_used + minus.panels_used,
    )


def ibp_asymptotic(endpoint: EndpointData, r_prime: float) -> AsymptoticTerm:
    """Leading algebraic term of the sine/cosine integral from endpoint data.

    Only derivatives of the kernel's own parity enter (even for sine, odd for
    cosine); the first nonvanishing one sets the order. Raises
    FasterDecaySignal when every parity-matching derivative supplied is zero.
    """
    if r_prime <= 0:
        raise ValueError("r_prime must be > 0")
    d = endpoint.derivatives
    start = 0 if endpoint.parity == "sine" else 1
    for n in range(start, len(d), 2):
        dn = complex(d[n])
        if dn != 0.0:
            sign = (-1.0) ** ((n - start) // 2)
            if endpoint.parity == "cosine":
                sign = -sign
            return AsymptoticTerm(sign * dn / r_prime ** (n + 1), -(n + 1))
    raise FasterDecaySignal(
        f"all supplied {endpoint.parity}-parity derivatives vanish through "
        f"order {len(d) - 1}; the integral decays faster than r'^-{len(d)}"
    )

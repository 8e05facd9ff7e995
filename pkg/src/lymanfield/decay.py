"""Decay dynamics of the two-level atom coupled to the photon continuum.

Gamma(omega) = 2 pi |rho_tilde(omega)|^2 = gamma_scale * u (1+u^2)^{-4} with
u = omega/(cK); Delta(omega) is the principal-value shift integral; the
spectral density g(omega) is the exact Friedrichs-Lee weight whose Fourier
transform is the survival amplitude c0(t).

All spectral integrals run on peak-centered rescaled variables
(omega = Omega_a + Gamma_a x): at hydrogen parameters Gamma_a/omega_a ~ 4e-8
and naive global quadrature is infeasible. Synthetic parameter sets (A, B of
order unity in the Appendix-style scaled units) are first-class: construct
them with DecaySpectrum.synthetic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev
from scipy.integrate import IntegrationWarning, quad

from .atom import AtomParams, DimensionlessParams
from .coupling import CouplingFunction

__all__ = [
    "DecaySpectrum",
    "gamma_of_omega",
    "lamb_shift_delta",
    "spectral_density_g",
    "spectral_density_g_weak",
    "c0_exact",
    "c0_weak",
    "photon_amplitude_D",
    "norm_check",
]

# half-width of the peak-centered window, in units of Gamma_a
_PEAK_WINDOW = 1.2e4
# spectral support is cut at this many cK units; Gamma(omega) ~ u^-7 beyond
_U_CAP = 50.0


def _f_u(u):
    """Dimensionless line-shape factor u (1+u^2)^{-4}."""
    return u * (1.0 + u * u) ** -4


def _f_u_prime(u):
    return (1.0 - 7.0 * u * u) * (1.0 + u * u) ** -5


def _pv_shift_integral(u: float, window_scale: float = 1.0) -> float:
    """pv int_0^inf f_u(u')/(u - u') du' by symmetric-window subtraction.

    On [u-w, u+w] the singular part is integrated as
    (f(u') - f(u))/(u - u') (the exact log term vanishes by symmetry); plain
    adaptive quadrature covers the rest.
    """
    if u <= 0.0:
        val = 0.0
        for a, b in ((0.0, 1.0), (1.0, _U_CAP), (_U_CAP, np.inf)):
            val += quad(lambda up: _f_u(up) / (u - up), a, b, limit=300)[0]
        return val
    w = 0.5 * window_scale * min(u, 1.0)
    fu = _f_u(u)
    dfu = _f_u_prime(u)

    def regular(up):
        du = u - up
        if abs(du) < 1e-14 * max(u, 1.0):
            return -dfu
        return (_f_u(up) - fu) / du

    val = quad(regular, u - w, u + w, limit=300)[0]
    if u - w > 0.0:
        val += quad(lambda up: _f_u(up) / (u - up), 0.0, u - w, limit=300)[0]
    right_splits = sorted({u + w, max(1.0, 2.0 * u), _U_CAP})
    right_splits = [s for s in right_splits if s >= u + w]
    for a, b in zip(right_splits[:-1], right_splits[1:]):
        val += quad(lambda up: _f_u(up) / (u - up), a, b, limit=300)[0]
    val += quad(lambda up: _f_u(up) / (u - up), right_splits[-1], np.inf, limit=300)[0]
    return val


@dataclass
class DecaySpectrum:
    """Resonance data plus the coupling profile scale.

    Immutable in use: every evaluation is pure. gamma_a = Gamma(resonance),
    delta_a = Delta(resonance), omega_shifted = omega_a + delta_a.
    """

    omega_a: float
    cK: float
    gamma_scale: float
    gamma_a: float
    delta_a: float
    omega_shifted: float
    m_e_qn: int = 0
    atom: AtomParams | None = None
    label: str = "custom"
    g_samples: tuple | None = None
    _delta_cheb: chebyshev.Chebyshev | None = field(default=None, repr=False)

    @classmethod
    def hydrogen(cls, atom: AtomParams) -> "DecaySpectrum":
        coupling = CouplingFunction(atom)
        gs = coupling.gamma_scale()
        cK = atom.cK
        u_a = atom.omega_a / cK
        gamma_a = gs * _f_u(u_a)
        delta_a = gs / (2.0 * math.pi) * _pv_shift_integral(u_a)
        spec = cls(
            omega_a=atom.omega_a,
            cK=cK,
            gamma_scale=gs,
            gamma_a=gamma_a,
            delta_a=delta_a,
            omega_shifted=atom.omega_a + delta_a,
            m_e_qn=atom.m_e_qn,
            atom=atom,
            label="hydrogen",
        )
        spec._warn_if_strong()
        return spec

    @classmethod
    def synthetic(
        cls, A: float, B: float, m_e_qn: int = 0, atom: AtomParams | None = None
    ) -> "DecaySpectrum":
        """Spectrum pinned to scaled half-width A and shifted frequency B.

        The resonance is anchored exactly: Gamma_a = 2 A cK and
        Omega_a = B cK, with omega_a backed out through the shift integral so
        the whole solver stays self-consistent. Without an atom, cK = 1 and
        t, r are already p, r'.
        """
        if A <= 0 or B <= 0:
            raise ValueError("A and B must be positive")
        cK = atom.cK if atom is not None else 1.0
        gamma_a = 2.0 * A * cK
        omega_shifted = B * cK
        gs = gamma_a / _f_u(B)
        delta_a = gs / (2.0 * math.pi) * _pv_shift_integral(B)
        spec = cls(
            omega_a=omega_shifted - delta_a,
            cK=cK,
            gamma_scale=gs,
            gamma_a=gamma_a,
            delta_a=delta_a,
            omega_shifted=omega_shifted,
            m_e_qn=m_e_qn,
            atom=atom,
            label="synthetic",
        )
        spec._warn_if_strong()
        return spec

    @classmethod
    def from_constants(
        cls,
        atom: AtomParams,
        gamma_a: float,
        delta_a: float,
    ) -> "DecaySpectrum":
        """Rebuild a hydrogen spectrum from cached resonance constants.

        The profile scales are recomputed from closed forms; only the two
        expensive principal-value results are taken from the cache, so a
        warm rebuild is bit-identical to the cold computation.
        """
        coupling = CouplingFunction(atom)
        return cls(
            omega_a=atom.omega_a,
            cK=atom.cK,
            gamma_scale=coupling.gamma_scale(),
            gamma_a=gamma_a,
            delta_a=delta_a,
            omega_shifted=atom.omega_a + delta_a,
            m_e_qn=atom.m_e_qn,
            atom=atom,
            label="hydrogen",
        )

    def _warn_if_strong(self) -> None:
        if self.gamma_a / self.omega_shifted > 0.1:
            warnings.warn(
                f"strong coupling: Gamma_a/Omega_a = "
                f"{self.gamma_a / self.omega_shifted:.3g} > 0.1; the "
                "weak-coupling machinery is unreliable here",
                stacklevel=3,
            )

    # -- profile pieces ----------------------------------------------------
    def gamma(self, omega):
        omega = np.asarray(omega, dtype=float)
        return self.gamma_scale * _f_u(omega / self.cK)

    def rho_tilde_sq(self, omega):
        return self.gamma(omega) / (2.0 * math.pi)

    def delta(self, omega: float, window_scale: float = 1.0) -> float:
        return self.gamma_scale / (2.0 * math.pi) * _pv_shift_integral(
            omega / self.cK, window_scale
        )

    def _build_delta_interpolant(self, degree: int = 40) -> None:
        """Chebyshev fit of Delta over the peak window (g needs it densely)."""
        lo = max(self.omega_shifted - _PEAK_WINDOW * self.gamma_a, 1e-12 * self.cK)
        hi = min(self.omega_shifted + _PEAK_WINDOW * self.gamma_a, _U_CAP * self.cK)
        nodes = chebyshev.chebpts1(degree + 1)
        omegas = 0.5 * (hi - lo) * (nodes + 1.0) + lo
        vals = [self.delta(w) for w in omegas]
        self._delta_cheb = chebyshev.Chebyshev.fit(omegas, vals, degree, domain=[lo, hi])

    def delta_interp(self, omega):
        """Delta(omega) from the cached peak-window fit; exact pv outside it.

        The fit is built lazily on first use (CLI orchestration and the test
        suite are single-threaded at that point).
        """
        if self._delta_cheb is None:
            self._build_delta_interpolant()
        omega = np.asarray(omega, dtype=float)
        lo, hi = self._delta_cheb.domain
        inside = (omega >= lo) & (omega <= hi)
        out = np.empty(omega.shape, dtype=float)
        if np.any(inside):
            out[inside] = self._delta_cheb(omega[inside])
        if np.any(~inside):
            flat = omega[~inside].ravel()
            out[~inside] = np.reshape([self.delta(w) for w in flat],
                                      omega[~inside].shape)
        return out if out.ndim else float(out)

    def g(self, omega):
        """Exact spectral density (Lorentzian with running Gamma, Delta)."""
        omega = np.asarray(omega, dtype=float)
        gam = self.gamma(omega)
        det = omega - self.omega_a - self.delta_interp(omega)
        return gam / (2.0 * math.pi) / (det * det + 0.25 * gam * gam)

    def g_weak(self, omega):
        """Fixed-width Lorentzian g_w with Gamma_a, Delta_a frozen at resonance."""
        omega = np.asarray(omega, dtype=float)
        det = omega - self.omega_shifted
        return self.gamma_a / (2.0 * math.pi) / (det * det + 0.25 * self.gamma_a**2)

    def scaled_params(self, t: float, r: float) -> DimensionlessParams:
        """(A, B, p, r') for a physical or already-scaled (t, r)."""
        K = self.atom.K if self.atom is not None else self.cK  # cK=1 => K=1
        return DimensionlessParams(
            A=self.gamma_a / (2.0 * self.cK),
            B=self.omega_shifted / self.cK,
            p=self.cK * t,
            r_prime=K * r,
        )


# -- module-level operation wrappers ---------------------------------------

def gamma_of_omega(spectrum: DecaySpectrum, omega):
    """Gamma(omega) = 2 pi |rho_tilde(omega)|^2."""
    return spectrum.gamma(omega)


def lamb_shift_delta(
    spectrum: DecaySpectrum, omega: float, window_scale: float = 1.0,
    check: bool = False, rtol: float = 1e-8,
) -> float:
    """Principal-value shift Delta(omega).

    With check=True the window is halved and the two results compared;
    disagreement beyond rtol raises RuntimeError.
    """
    val = spectrum.delta(omega, window_scale)
    if check:
        val2 = spectrum.delta(omega, 0.5 * window_scale)
        if abs(val - val2) > rtol * max(abs(val), abs(val2), 1e-300):
            raise RuntimeError(
                f"pv window sensitivity at omega={omega:g}: {val!r} vs {val2!r}"
            )
    return val


def spectral_density_g(spectrum: DecaySpectrum, omega):
    return spectrum.g(omega)


def spectral_density_g_weak(spectrum: DecaySpectrum, omega):
    return spectrum.g_weak(omega)


def _peak_bounds(spectrum: DecaySpectrum, x_max: float) -> tuple[float, float]:
    gam = spectrum.gamma_a
    om = spectrum.omega_shifted
    x_lo = max(-x_max, -(om - 1e-12 * spectrum.cK) / gam)
    x_hi = min(x_max, (_U_CAP * spectrum.cK - om) / gam)
    return x_lo, x_hi


def c0_exact(spectrum: DecaySpectrum, t: float, x_max: float = _PEAK_WINDOW) -> complex:
    """Survival amplitude c0(t) = int_0^inf g(omega) e^{-i omega t} d omega.

    The carrier e^{-i Omega_a t} is factored out and the remainder integrated
    on the peak-centered variable x = (omega - Omega_a)/Gamma_a with
    oscillatory-weight quadrature; the neglected Lorentzian tail beyond the
    window is below 1/(pi x_max).
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    gam = spectrum.gamma_a
    om = spectrum.omega_shifted
    tau = gam * t
    x_lo, x_hi = _peak_bounds(spectrum, x_max)

    def g_x(x):
        return float(spectrum.g(om + gam * np.asarray(x))) * gam

    kw = dict(limit=3000, epsabs=1e-9, epsrel=1e-9)
    if tau == 0.0:
        re = quad(g_x, x_lo, x_hi, points=[0.0], limit=600)[0]
        im = 0.0
    else:
        re = quad(g_x, x_lo, x_hi, weight="cos", wvar=tau, **kw)[0]
        im = quad(g_x, x_lo, x_hi, weight="sin", wvar=tau, **kw)[0]
    return np.exp(-1j * om * t) * (re - 1j * im)


def g_norm(spectrum: DecaySpectrum, x_max: float = _PEAK_WINDOW) -> float:
    """int_0^inf g(omega) d omega, peak window plus explicit outer pieces."""
    gam = spectrum.gamma_a
    om = spectrum.omega_shifted
    x_lo, x_hi = _peak_bounds(spectrum, x_max)
    core = quad(lambda x: float(spectrum.g(om + gam * x)) * gam,
                x_lo, x_hi, points=[0.0], limit=600)[0]
    lo_edge = om + gam * x_lo
    hi_edge = om + gam * x_hi
    outer = 0.0
    with warnings.catch_warnings():
        # the outer wings hold < 1e-4 of the norm; QUADPACK's slow-convergence
        # complaint on the far Lorentzian tail is not actionable
        warnings.simplefilter("ignore", IntegrationWarning)
        if lo_edge > 1e-9 * spectrum.cK:
            outer += quad(lambda w: float(spectrum.g(w)), 0.0, lo_edge, limit=400)[0]
        outer += quad(lambda w: float(spectrum.g(w)), hi_edge,
                      _U_CAP * spectrum.cK, limit=400)[0]
    return core + outer


def c0_weak(spectrum: DecaySpectrum, t) -> complex:
    """Weisskopf-Wigner amplitude e^{-Gamma_a t/2} e^{-i(omega_a+Delta_a)t}."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    return np.exp(-0.5 * spectrum.gamma_a * t) * np.exp(-1j * spectrum.omega_shifted * t)


def photon_amplitude_D(spectrum: DecaySpectrum, omega, t: float):
    """Closed form of the photon amplitude density D_omega(t).

    D = -i rho_tilde(omega) (e^{-i omega t} - e^{-i Omega_a t - Gamma_a t/2})
        / (Gamma_a/2 + i(Omega_a - omega)).
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    omega = np.asarray(omega, dtype=float)
    gt = 0.5 * spectrum.gamma_a
    om = spectrum.omega_shifted
    rho = np.sqrt(spectrum.rho_tilde_sq(omega))
    num = np.exp(-1j * omega * t) - np.exp(-(1j * om + gt) * t)
    return -1j * rho * num / (gt + 1j * (om - omega))


def _d_abs2_integral(spectrum: DecaySpectrum, t: float, y_max: float = 4.0e3) -> float:
    """int_0^inf |D(omega, t)|^2 d omega on the variable y = (omega-Omega)/(Gamma/2)."""
    gt = 0.5 * spectrum.gamma_a
    om = spectrum.omega_shifted
    y_lo = max(-y_max, -(om - 1e-12 * spectrum.cK) / gt)
    y_hi = min(y_max, (_U_CAP * spectrum.cK - om) / gt)
    damp = math.exp(-gt * t)

    def lorentz_part(y):
        w = om + gt * y
        return float(spectrum.rho_tilde_sq(w)) / (gt * (1.0 + y * y))

    base = (1.0 + damp * damp) * quad(
        lorentz_part, y_lo, y_hi, points=[0.0], limit=800
    )[0]
    if t == 0.0:
        cosint = quad(lorentz_part, y_lo, y_hi, points=[0.0], limit=800)[0]
    else:
        cosint = quad(lorentz_part, y_lo, y_hi, weight="cos", wvar=gt * t,
                      limit=3000, epsabs=1e-10, epsrel=1e-9)[0]
    return base - 2.0 * damp * cosint


def norm_check(spectrum: DecaySpectrum, t: float) -> float:
    """|c0|^2 + int |D|^2 d omega with the weak-coupling pair of amplitudes."""
    surv = float(np.abs(c0_weak(spectrum, t)) ** 2)
    return surv + _d_abs2_integral(spectrum, t)

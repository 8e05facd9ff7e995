"""Invariant suite behind the 'validate' run mode.

Each check returns (name, passed, detail). The hydrogen set covers the
physical pipeline (rates, spectral normalization, wavefunctions); the
synthetic set exercises the far-field numerics at desk-feasible scales.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .atom import (
    DimensionlessParams,
    ground_wavefunction,
    excited_wavefunction,
    make_atom_params,
)
from .coupling import CouplingFunction
from .decay import DecaySpectrum, c0_exact, c0_weak, g_norm, lamb_shift_delta
from .farfield import F1_asymptotic, T_func, fit_power_law, t_from_endpoint_data
from .field import FieldPoint, FieldScan, compute_FL
from .harmonics import hermitian_dot, vector_spherical_harmonic
from .oscillatory import sine_integral, cosine_integral

__all__ = ["run_validation"]


def _check_gamma_closed_form(atom, spectrum):
    target = (2.0 / 3.0) ** 8 * atom.alpha**5 * atom.mc2 / atom.hbar
    rel = abs(spectrum.gamma_a - target) / target
    return rel < 1e-4, f"Gamma_a={spectrum.gamma_a:.9e}, closed form rel dev {rel:.2e}"


def _check_bohr_ratio(atom, spectrum):
    rel = abs(atom.omega_a / atom.cK - atom.alpha / 4.0) / (atom.alpha / 4.0)
    return rel < 1e-14, f"omega_a/(cK) vs alpha/4 rel dev {rel:.2e}"


def _check_wavefunction_norms(atom, spectrum):
    ng = quad(
        lambda r: 4.0 * math.pi * r**2 * ground_wavefunction(atom, r) ** 2,
        0.0, 40.0 * atom.r_B, limit=200,
    )[0]
    # |phi_e|^2 separates into a radial factor and |beta_0|^2
    radial = quad(
        lambda r: r**2 * (r / atom.r_B) ** 2 * math.exp(-r / atom.r_B),
        0.0, 60.0 * atom.r_B, limit=200,
    )[0]
    beta_sq = quad(
        lambda t: 2.0 * math.pi * math.sin(t)
        * abs(excited_wavefunction(atom, atom.r_B, t, 0.0, 0)) ** 2
        / ((atom.r_B / atom.r_B) ** 2 * math.exp(-1.0)),
        0.0, math.pi, limit=100,
    )[0]
    ne = radial * beta_sq
    ok = abs(ng - 1.0) < 1e-9 and abs(ne - 1.0) < 1e-9
    return ok, f"ground norm {ng:.12f}, excited norm {ne:.12f}"


def _check_rho_consistency(atom, spectrum):
    coupling = CouplingFunction(atom)
    lhs = 2.0 * math.pi * float(coupling.rho_tilde(atom.omega_a)) ** 2
    rhs = float(spectrum.gamma(atom.omega_a))
    return lhs == rhs or abs(lhs - rhs) <= 4e-16 * rhs, (
        f"2pi rho_tilde^2 = {lhs!r}, Gamma = {rhs!r}"
    )


def _check_pv_window(atom, spectrum):
    v1 = lamb_shift_delta(spectrum, spectrum.omega_a, window_scale=1.0)
    v2 = lamb_shift_delta(spectrum, spectrum.omega_a, window_scale=0.5)
    rel = abs(v1 - v2) / abs(v1)
    return rel < 1e-8, f"Delta_a window robustness rel dev {rel:.2e}"


def _check_g_norm(atom, spectrum):
    val = g_norm(spectrum)
    return abs(val - 1.0) < 1e-3, f"int g = {val:.6f}"


def _check_c0_zero(atom, spectrum):
    val = c0_exact(spectrum, 0.0)
    return abs(val - 1.0) < 1e-3, f"c0(0) = {val:.6f}"


def _check_c0_weak_agreement(atom, spectrum):
    worst = 0.0
    for gt in (0.5, 2.0, 5.0):
        t = gt / spectrum.gamma_a
        ex = abs(c0_exact(spectrum, t))
        wk = abs(c0_weak(spectrum, t))
        worst = max(worst, abs(ex - wk) / wk)
    return worst < 0.02, f"max |c0| rel dev vs exponential {worst:.2e}"


def _check_orthonormality(atom, spectrum):
    xs, ws = np.polynomial.legendre.leggauss(48)
    th = np.arccos(xs)
    ph = np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False)
    TH, PH = np.meshgrid(th, ph, indexing="ij")
    worst = 0.0
    basis = {
        (L, M): vector_spherical_harmonic(L, M, theta=TH, phi=PH)
        for L in (0, 1, 2) for M in (-1, 0, 1)
    }
    wgt = ws[:, None] * (2.0 * math.pi / len(ph))
    for (L1, M1), y1 in basis.items():
        for (L2, M2), y2 in basis.items():
            val = np.sum(wgt * hermitian_dot(y1, y2))
            want = 1.0 if (L1, M1) == (L2, M2) else 0.0
            worst = max(worst, abs(val - want))
    return worst < 1e-10, f"max orthonormality defect {worst:.2e}"


def _check_dot_products(atom, spectrum):
    rng = np.random.default_rng(7)
    worst = 0.0
    for theta in rng.uniform(0.05, math.pi - 0.05, 20):
        y = vector_spherical_harmonic(1, 0, theta=theta, phi=0.4)
        got = float(hermitian_dot(y, y).real)
        want = 3.0 / (8.0 * math.pi) * math.sin(theta) ** 2
        worst = max(worst, abs(got - want))
        y = vector_spherical_harmonic(1, 1, theta=theta, phi=1.1)
        got = float(hermitian_dot(y, y).real)
        want = 3.0 / (16.0 * math.pi) * (1.0 + math.cos(theta) ** 2)
        worst = max(worst, abs(got - want))
    return worst < 1e-12, f"max angular dot-product defect {worst:.2e}"


def _check_oscillatory_forms(atom, spectrum):
    worst = 0.0
    for rp in (1.0, 10.0, 1e3):
        s = sine_integral(lambda q: np.exp(-q) + 0j, rp, tol=1e-12)
        c = cosine_integral(lambda q: np.exp(-q) + 0j, rp, tol=1e-12)
        worst = max(worst, abs(s.value - rp / (1 + rp**2)))
        worst = max(worst, abs(c.value - 1.0 / (1 + rp**2)))
    return worst < 1e-10, f"max Fourier closed-form defect {worst:.2e}"


def _check_T_identities(atom, spectrum):
    worst0 = abs(T_func(DimensionlessParams(0.05, 0.3, 1e-300, 1.0)))
    worst = 0.0
    rng = np.random.default_rng(3)
    for p in rng.uniform(0.1, 30.0, 10):
        dp = DimensionlessParams(0.05, 0.3, float(p), 1.0)
        worst = max(worst, abs(T_func(dp) - t_from_endpoint_data(dp)))
    return worst0 < 1e-14 and worst < 1e-12, (
        f"|T(0)| = {worst0:.2e}, max reconstruction defect {worst:.2e}"
    )


def _check_fitter_sanity(atom, spectrum):
    r = np.logspace(3, 5, 12)
    scan = FieldScan(
        kind="radial", r=r, theta=np.full_like(r, 0.5 * math.pi), phi=0.0, t=5.0,
        mode="dimensionless", density=r**-6.0, error=np.zeros_like(r),
        ok=np.ones_like(r, dtype=bool),
    )
    fit = fit_power_law(scan)
    return abs(fit.exponent + 6.0) < 1e-12, f"exact r^-6 fit -> {fit.exponent:.14f}"


def _check_f1_asymptote(atom, spectrum):
    synth = DecaySpectrum.synthetic(0.05, 0.3)
    dp = DimensionlessParams(0.05, 0.3, 5.0, 1e3)
    point = FieldPoint(r=1e3, theta=0.5 * math.pi, phi=0.0, t=5.0)
    fl = compute_FL(point, synth, lam=+1, tol=1e-10)
    pred = F1_asymptotic(dp, lam=+1).value
    rel = abs(fl.F1 / pred - 1.0)
    return rel < 0.05, f"numeric F1 / asymptote at r'=1e3: rel dev {rel:.2e}"


_HYDROGEN_CHECKS = [
    ("gamma_a closed form (1e-4)", _check_gamma_closed_form),
    ("omega_a/(cK) = alpha/4 (1e-14)", _check_bohr_ratio),
    ("wavefunction norms (1e-9)", _check_wavefunction_norms),
    ("Gamma = 2 pi rho_tilde^2 (bit-level)", _check_rho_consistency),
    ("pv window robustness (1e-8)", _check_pv_window),
    ("spectral normalization (1e-3)", _check_g_norm),
    ("c0(0) = 1 (1e-3)", _check_c0_zero),
    ("|c0| vs exponential decay (2%)", _check_c0_weak_agreement),
]

_SHARED_CHECKS = [
    ("vector-harmonic orthonormality (1e-10)", _check_orthonormality),
    ("angular dot products (1e-12)", _check_dot_products),
    ("oscillatory quadrature closed forms (1e-10)", _check_oscillatory_forms),
    ("time-factor identities (1e-12)", _check_T_identities),
    ("power-law fitter sanity (1e-12)", _check_fitter_sanity),
    ("far-field F1 vs asymptote (5%)", _check_f1_asymptote),
]


def run_validation(spectrum: DecaySpectrum) -> list[tuple[str, bool, str]]:
    """Run the invariant suite for the given spectrum; returns result rows."""
    checks = list(_SHARED_CHECKS)
    if spectrum.label == "hydrogen":
        checks = _HYDROGEN_CHECKS + checks
    atom = spectrum.atom if spectrum.atom is not None else make_atom_params(
        spectrum.m_e_qn
    )
    rows = []
    for name, fn in checks:
        try:
            passed, detail = fn(atom, spectrum)
        except Exception as exc:  # a crashed check is a failed check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        rows.append((name, bool(passed), detail))
    return rows

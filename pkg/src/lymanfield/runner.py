"""Mode dispatch and file emission for the command-line tool.

CSV contract: one header row naming every column with units, comma
separator, 17 significant digits in scientific notation, no locale
formatting. Each run also writes a plain-text 'key = value' sidecar
(<out>.meta) with the config hash, tolerances and versions, and, unless
disabled, a rendered figure next to the delimited output.
"""

from __future__ import annotations

import hashlib
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .atom import make_atom_params
from .cache import ResultCache
from .config import RunConfig
from .decay import (
    DecaySpectrum,
    c0_exact,
    c0_weak,
    lamb_shift_delta,
    spectral_density_g,
    spectral_density_g_weak,
)
from .farfield import fit_power_law, gamma_angular
from .field import _run_scan, radial_scan
from .validate import run_validation

__all__ = ["run"]


def _fmt(x: float) -> str:
    return f"{x:.16e}"


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell)
                              for cell in row))
    path.write_text("\n".join(lines) + "\n")


def _write_meta(path: Path, cfg: RunConfig, extra: dict) -> None:
    digest = hashlib.sha256(cfg.raw_text.encode()).hexdigest()
    lines = [
        f"config_sha256 = {digest}",
        f"version = {__version__}",
        f"mode = {cfg.mode}",
        f"preset = {cfg.preset}",
        f"tol = {cfg.tol!r}",
        f"created_utc = {time.strftime('%Y-%m-%dT%H:%M:%SZ', time.gmtime())}",
    ]
    lines += [f"{k} = {v}" for k, v in extra.items()]
    path.write_text("\n".join(lines) + "\n")


def _spectrum_for(cfg: RunConfig, cache: ResultCache) -> DecaySpectrum:
    if cfg.preset == "hydrogen":
        atom = make_atom_params(cfg.m_e)
        hit = cache.get("hydrogen")
        if hit is not None:
            return DecaySpectrum.from_constants(atom, hit["gamma_a"], hit["delta_a"])
        spectrum = DecaySpectrum.hydrogen(atom)
        cache.put(
            "hydrogen",
            {"gamma_a": spectrum.gamma_a, "delta_a": spectrum.delta_a},
            tolerances={"pv_quad": "adaptive, epsrel ~1e-10"},
        )
        return spectrum
    key = f"synthetic:A={cfg.A!r}:B={cfg.B!r}"
    hit = cache.get(key)
    if hit is not None:
        spectrum = DecaySpectrum.synthetic(cfg.A, cfg.B, m_e_qn=cfg.m_e)
        # scalar constants are recomputed identically; the cache records them
        return spectrum
    spectrum = DecaySpectrum.synthetic(cfg.A, cfg.B, m_e_qn=cfg.m_e)
    cache.put(key, {"gamma_a": spectrum.gamma_a, "delta_a": spectrum.delta_a},
              tolerances={"pv_quad": "adaptive, epsrel ~1e-10"})
    return spectrum


def _default_t_grid(cfg: RunConfig, spectrum: DecaySpectrum) -> np.ndarray:
    if cfg.t_grid is not None:
        return cfg.t_grid
    # five lifetimes, 41 samples
    return np.linspace(0.0, 5.0 / spectrum.gamma_a, 41)


def _run_decay(cfg, spectrum, out, threads=1):
    rows = []
    for t in _default_t_grid(cfg, spectrum):
        c0 = c0_exact(spectrum, float(t))
        cw = c0_weak(spectrum, float(t))
        dev = abs(abs(c0) - abs(cw)) / max(abs(cw), 1e-300)
        rows.append([float(t), c0.real, c0.imag, abs(c0) ** 2, abs(cw) ** 2, dev])
    header = ["t_s", "re_c0", "im_c0", "abs2_c0", "abs2_c0_weak", "rel_dev_abs"]
    if spectrum.label == "synthetic":
        header[0] = "p_scaled"
    _write_csv(out, header, rows)
    return {}, rows, header


def _run_spectrum(cfg, spectrum, out, threads=1):
    if cfg.omega_grid is not None:
        omegas = cfg.omega_grid
    else:
        om, gam = spectrum.omega_shifted, spectrum.gamma_a
        omegas = np.linspace(om - 25.0 * gam, om + 25.0 * gam, 101)
    rows = []
    for w in omegas:
        w = float(w)
        rows.append([
            w,
            float(spectrum.gamma(w)),
            lamb_shift_delta(spectrum, w),
            float(spectral_density_g(spectrum, w)),
            float(spectral_density_g_weak(spectrum, w)),
        ])
    unit = "rad_s" if spectrum.label == "hydrogen" else "scaled"
    header = [f"omega_{unit}", f"gamma_{unit}", f"delta_{unit}",
              f"g_inv_{unit}", f"g_weak_inv_{unit}"]
    _write_csv(out, header, rows)
    return {}, rows, header


def _grid_scan(pairs, phi, t, mode, spectrum, tol, threads):
    r_arr = np.asarray([p[0] for p in pairs])
    th_arr = np.asarray([p[1] for p in pairs])
    return _run_scan("points", r_arr, th_arr, phi, t, mode, spectrum, tol,
                     max(threads, 1))


def _field_points(cfg: RunConfig, spectrum: DecaySpectrum):
    mode = "physical" if cfg.preset == "hydrogen" else "dimensionless"
    t = cfg.t if cfg.preset == "hydrogen" else cfg.p
    rs = cfg.r_grid if cfg.r_grid is not None else np.asarray([cfg.r])
    ths = (
        cfg.theta_grid if cfg.theta_grid is not None
        else np.asarray([cfg.theta if cfg.theta is not None else 0.5 * math.pi])
    )
    phi = cfg.phi
    return mode, float(t), rs, ths, phi


def _run_field(cfg, spectrum, out, threads=1):
    mode, t, rs, ths, phi = _field_points(cfg, spectrum)
    pairs = [(float(r), float(th)) for r in rs for th in ths]
    scan = _grid_scan(pairs, phi, t, mode, spectrum, cfg.tol, threads)
    rows = []
    for (r, th), dens, err, ok in zip(pairs, scan.density, scan.error, scan.ok):
        rows.append([r, th, phi, t, float(dens), float(err),
                     "ok" if ok else "failed"])
    runit = "m" if mode == "physical" else "scaled"
    dunit = "J_per_m3" if mode == "physical" else "scaled"
    header = [f"r_{runit}", "theta_rad", "phi_rad",
              f"t_{'s' if mode == 'physical' else 'scaled'}",
              f"density_{dunit}", f"density_err_{dunit}", "status"]
    _write_csv(out, header, rows)
    extra = {"n_failed": sum(1 for row in rows if row[-1] == "failed")}
    return extra, rows, header


def _run_asymptotics(cfg, spectrum, out, threads=1):
    mode, t, rs, ths, phi = _field_points(cfg, spectrum)
    if cfg.r_grid is None:
        rs = np.logspace(3, 5, 25)
    theta = float(ths[0])
    scan = radial_scan(rs, theta, t, spectrum, phi=phi, mode=mode,
                       tol=cfg.tol, workers=max(threads, 1))
    rows = [
        [float(r), theta, phi, t, float(d), float(e), "ok" if o else "failed"]
        for r, d, e, o in zip(scan.r, scan.density, scan.error, scan.ok)
    ]
    header = ["r", "theta_rad", "phi_rad", "t", "density", "density_err", "status"]
    _write_csv(out, header, rows)
    fit = fit_power_law(scan)
    extra = {
        "fit_exponent": _fmt(fit.exponent),
        "fit_stderr": _fmt(fit.stderr),
        "fit_points_used": fit.n_used,
    }
    print(f"power-law fit: exponent = {fit.exponent:.4f} +- {fit.stderr:.4f} "
          f"({fit.n_used} points)")
    return extra, rows, header


def _run_angular(cfg, spectrum, out, threads=1):
    thetas = (
        cfg.theta_grid if cfg.theta_grid is not None
        else np.linspace(0.0, math.pi, 25)
    )
    rows = [[float(th), float(gamma_angular(cfg.m_e, float(th)))] for th in thetas]
    header = ["theta_rad", "gamma"]
    _write_csv(out, header, rows)
    return {}, rows, header


def _run_validate(cfg, spectrum, out, threads=1):
    results = run_validation(spectrum)
    rows = [[f"{name}", "pass" if ok else "FAIL", detail]
            for name, ok, detail in results]
    width = max(len(r[0]) for r in rows)
    for name, status, detail in rows:
        print(f"{name:<{width}}  {status:<4}  {detail}")
    _write_csv(out, ["check", "status", "detail"],
               [[r[0], r[1], r[2].replace(",", ";")] for r in rows])
    n_fail = sum(1 for r in rows if r[1] == "FAIL")
    return {"n_failed": n_fail}, rows, ["check", "status", "detail"]


_MODE_RUNNERS = {
    "decay": _run_decay,
    "spectrum": _run_spectrum,
    "field": _run_field,
    "asymptotics": _run_asymptotics,
    "angular": _run_angular,
    "validate": _run_validate,
}


def run(
    cfg: RunConfig,
    out: str | Path | None = None,
    cache_path: str | Path | None = None,
    threads: int = 1,
    verbose: bool = False,
    plot: bool = True,
) -> int:
    """Execute one configured run; returns the process exit status."""
    out = Path(out) if out is not None else Path(f"{cfg.mode}.csv")
    cache = ResultCache(cache_path)
    t0 = time.perf_counter()
    spectrum = _spectrum_for(cfg, cache)
    if verbose:
        print(f"spectrum [{spectrum.label}]: Gamma_a={spectrum.gamma_a:.9e}, "
              f"Delta_a={spectrum.delta_a:.9e}", file=sys.stderr)
    extra, rows, header = _MODE_RUNNERS[cfg.mode](cfg, spectrum, out,
                                                  threads=threads)
    extra["gamma_a"] = _fmt(spectrum.gamma_a)
    extra["delta_a"] = _fmt(spectrum.delta_a)
    extra["elapsed_s"] = f"{time.perf_counter() - t0:.3f}"
    _write_meta(out.with_suffix(out.suffix + ".meta"), cfg, extra)
    if plot and cfg.mode != "validate":
        from .plots import render_figure

        render_figure(cfg.mode, header, rows, out.with_suffix(".png"))
    failed = int(extra.get("n_failed", 0))
    if verbose:
        print(f"wrote {out}", file=sys.stderr)
    return 1 if failed else 0

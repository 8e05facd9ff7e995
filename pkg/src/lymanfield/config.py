"""Run configuration: a diffable 'key = value' text format.

Science parameters live in the config file (archivable, diffable); only
paths and verbosity are command-line flags. Keys are case-sensitive; '#'
starts a comment; unknown or repeated keys are hard errors.

Grids accept three forms:
    linspace(a, b, n)      n evenly spaced values on [a, b]
    logspace(a, b, n)      n log-spaced values from a to b (a, b are values)
    v1, v2, v3             an explicit list
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

__all__ = ["ConfigError", "RunConfig", "parse_config"]

MODES = ("decay", "spectrum", "field", "asymptotics", "angular", "validate")
PRESETS = ("hydrogen", "synthetic")

_SCALAR_KEYS = {"A", "B", "p", "t", "r", "theta", "phi", "tol"}
_GRID_KEYS = {"r_grid", "theta_grid", "t_grid", "omega_grid"}
_ALL_KEYS = {"mode", "preset", "m_e"} | _SCALAR_KEYS | _GRID_KEYS


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    mode: str
    preset: str
    m_e: int = 0
    A: float | None = None
    B: float | None = None
    p: float | None = None
    t: float | None = None
    r: float | None = None
    theta: float | None = None
    phi: float = 0.0
    tol: float = 1e-9
    r_grid: np.ndarray | None = None
    theta_grid: np.ndarray | None = None
    t_grid: np.ndarray | None = None
    omega_grid: np.ndarray | None = None
    raw_text: str = field(default="", repr=False)


def _parse_number(key: str, text: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"malformed number for {key!r}: {text!r}") from exc


def _parse_grid(key: str, text: str) -> np.ndarray:
    m = re.fullmatch(r"(linspace|logspace)\(\s*([^,]+),\s*([^,]+),\s*(\d+)\s*\)",
                     text.strip())
    if m:
        kind, a_s, b_s, n_s = m.groups()
        a = _parse_number(key, a_s)
        b = _parse_number(key, b_s)
        n = int(n_s)
        if n < 1:
            raise ConfigError(f"{key}: grid needs at least 1 point")
        if kind == "linspace":
            return np.linspace(a, b, n)
        if a <= 0 or b <= 0:
            raise ConfigError(f"{key}: logspace endpoints must be positive")
        return np.logspace(math.log10(a), math.log10(b), n)
    try:
        vals = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"malformed grid for {key!r}: {text!r}") from exc
    if not vals:
        raise ConfigError(f"empty grid for {key!r}")
    return np.asarray(vals)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a config; unknown keys and conflicts are errors."""
    seen: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"line {lineno}: repeated key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        seen[key] = value

    if "mode" not in seen:
        raise ConfigError("missing required key 'mode'")
    mode = seen.pop("mode")
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {MODES}")
    if "preset" not in seen:
        raise ConfigError("missing required key 'preset'")
    preset = seen.pop("preset")
    if preset not in PRESETS:
        raise ConfigError(f"unknown preset {preset!r}; expected one of {PRESETS}")

    cfg = RunConfig(mode=mode, preset=preset, raw_text=text)
    if "m_e" in seen:
        value = seen.pop("m_e")
        try:
            cfg.m_e = int(value)
        except ValueError as exc:
            raise ConfigError(f"malformed integer for 'm_e': {value!r}") from exc
        if cfg.m_e not in (-1, 0, 1):
            raise ConfigError(f"m_e must be -1, 0 or 1, got {cfg.m_e}")
    for key in sorted(_SCALAR_KEYS & seen.keys()):
        setattr(cfg, key, _parse_number(key, seen.pop(key)))
    for key in sorted(_GRID_KEYS & seen.keys()):
        setattr(cfg, key, _parse_grid(key, seen.pop(key)))
    assert not seen

    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if cfg.preset == "synthetic":
        if cfg.A is None or cfg.B is None:
            raise ConfigError("synthetic preset requires explicit A and B")
        if cfg.A <= 0 or cfg.B <= 0:
            raise ConfigError("A and B must be positive")
        if cfg.t is not None:
            raise ConfigError("synthetic preset uses scaled time 'p', not 't'")
    else:
        for key in ("A", "B", "p"):
            if getattr(cfg, key) is not None:
                raise ConfigError(
                    f"hydrogen preset forbids the scaled override {key!r}"
                )
    if cfg.tol <= 0:
        raise ConfigError("tol must be positive")

    needs_time = cfg.mode in ("field", "asymptotics")
    if needs_time:
        if cfg.preset == "synthetic" and cfg.p is None:
            raise ConfigError(f"mode {cfg.mode!r} with synthetic preset requires 'p'")
        if cfg.preset == "hydrogen" and cfg.t is None:
            raise ConfigError(f"mode {cfg.mode!r} with hydrogen preset requires 't'")
    if cfg.mode == "field" and cfg.r is None and cfg.r_grid is None:
        raise ConfigError("mode 'field' requires 'r' or 'r_grid'")

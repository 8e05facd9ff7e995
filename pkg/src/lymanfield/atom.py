"""Physical constants, two-level hydrogen data, and the dimensionless parameter map.

All SI. Base constants are CODATA 2018, pinned here as the single source of
truth so every downstream number is reproducible. Internal numerics elsewhere
run on the dimensionless set (A, B, p, r'); unit conversion happens only at
module boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# CODATA 2018
ALPHA = 7.2973525693e-3        # fine-structure constant
M_ELECTRON = 9.1093837015e-31  # electron mass (kg)
C_LIGHT = 299792458.0          # speed of light (m/s)
HBAR = 1.054571817e-34         # reduced Planck constant (J s)
EPS0 = 8.8541878128e-12        # vacuum permittivity (F/m)

_VALID_M_E = (-1, 0, 1)


@dataclass(frozen=True)
class AtomParams:
    """Constants and derived scales of the 1s-2p two-level hydrogen atom.

    r_B = hbar/(alpha m c), K = 3/(2 r_B), omega_a = 3 alpha^2 m c^2 / (8 hbar)
    (Bohr energies with the ground-state energy set to zero).
    """

    alpha: float
    m: float
    c: float
    hbar: float
    eps0: float
    r_B: float
    K: float
    omega_a: float
    E_g: float
    m_e_qn: int

    @property
    def mc2(self) -> float:
        return self.m * self.c**2

    @property
    def cK(self) -> float:
        """Frequency scale c*K (rad/s); omega_a/cK = alpha/4."""
        return self.c * self.K


def make_atom_params(m_e_qn: int = 0) -> AtomParams:
    """Build hydrogen parameters for a given 2p magnetic quantum number."""
    if m_e_qn not in _VALID_M_E:
        raise ValueError(f"m_e_qn must be one of {_VALID_M_E}, got {m_e_qn}")
    r_B = HBAR / (ALPHA * M_ELECTRON * C_LIGHT)
    K = 3.0 / (2.0 * r_B)
    omega_a = 3.0 * ALPHA**2 * M_ELECTRON * C_LIGHT**2 / (8.0 * HBAR)
    return AtomParams(
        alpha=ALPHA,
        m=M_ELECTRON,
        c=C_LIGHT,
        hbar=HBAR,
        eps0=EPS0,
        r_B=r_B,
        K=K,
        omega_a=omega_a,
        E_g=0.0,
        m_e_qn=m_e_qn,
    )


@dataclass(frozen=True)
class DimensionlessParams:
    """Scaled parameter set: A = Gamma_a/(2cK), B = (omega_a+Delta_a)/cK,
    p = cKt, r_prime = Kr. All far-field numerics run on these."""

    A: float
    B: float
    p: float
    r_prime: float

    def __post_init__(self) -> None:
        if not (self.A > 0):
            raise ValueError(f"A must be > 0, got {self.A}")
        if not (self.B > 0):
            raise ValueError(f"B must be > 0, got {self.B}")
        if self.p < 0:
            raise ValueError(f"p must be >= 0, got {self.p}")
        if not (self.r_prime > 0):
            raise ValueError(f"r_prime must be > 0, got {self.r_prime}")


def to_dimensionless(
    params: AtomParams, gamma_a: float, delta_a: float, t: float, r: float
) -> DimensionlessParams:
    """Map physical (Gamma_a, Delta_a, t, r) to the scaled (A, B, p, r')."""
    if gamma_a <= 0:
        raise ValueError("gamma_a must be positive")
    cK = params.cK
    return DimensionlessParams(
        A=gamma_a / (2.0 * cK),
        B=(params.omega_a + delta_a) / cK,
        p=cK * t,
        r_prime=params.K * r,
    )


def from_dimensionless(
    params: AtomParams, dp: DimensionlessParams
) -> tuple[float, float, float, float]:
    """Inverse of :func:`to_dimensionless`; returns (gamma_a, delta_a, t, r)."""
    cK = params.cK
    gamma_a = 2.0 * cK * dp.A
    delta_a = dp.B * cK - params.omega_a
    t = dp.p / cK
    r = dp.r_prime / params.K
    return gamma_a, delta_a, t, r


def ground_wavefunction(atom: AtomParams, r):
    """1s wavefunction (pi r_B^3)^{-1/2} e^{-r/r_B}; real, units m^{-3/2}."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be >= 0")
    return np.exp(-r / atom.r_B) / math.sqrt(math.pi * atom.r_B**3)


def excited_wavefunction(atom: AtomParams, r, theta, phi, m_e_qn: int | None = None):
    """2p wavefunction beta_{m_e}(theta,phi) (r/r_B) e^{-r/(2 r_B)}.

    beta_0 = cos(theta)/(4 sqrt(2 pi r_B^3)),
    beta_{+-1} = -+ sin(theta) e^{+-i phi}/(8 sqrt(pi r_B^3)).
    """
    if m_e_qn is None:
        m_e_qn = atom.m_e_qn
    if m_e_qn not in _VALID_M_E:
        raise ValueError(f"m_e_qn must be one of {_VALID_M_E}, got {m_e_qn}")
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be >= 0")
    radial = (r / atom.r_B) * np.exp(-r / (2.0 * atom.r_B))
    if m_e_qn == 0:
        beta = np.cos(theta) / (4.0 * math.sqrt(2.0 * math.pi * atom.r_B**3)) + 0j
    else:
        beta = (
            -m_e_qn
            * np.sin(theta)
            * np.exp(1j * m_e_qn * phi)
            / (8.0 * math.sqrt(math.pi * atom.r_B**3))
        )
    return beta * radial

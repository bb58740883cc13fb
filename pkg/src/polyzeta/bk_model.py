"""Polymer-quantized Berry-Keating model in the momentum representation.

The symmetric operator is H = i hbar g(p)^(1/2) d/dp g(p)^(1/2) with
g(p) = (hbar/mu0) sin(mu0 p / hbar), acting on p in (0, pi hbar / mu0).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, BranchError, DegenerateError
from .specfun import gamma_ratio_phase

__all__ = [
    "PolymerScale",
    "SelfAdjointDomain",
    "Wavefunction",
    "asymptotic_normalization",
    "boundary_residual",
    "eigenfunction",
    "eigenfunction_asymptotic",
    "level_spacing",
    "regulated_momentum",
    "sample_eigenfunction",
    "spectrum",
    "spectrum_expansion",
]

# |ln cot(mu0 m2 / 2hbar)| below this counts as a vanishing level spacing
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class PolymerScale:
    mu0: float
    hbar: float = 1.0

    def __post_init__(self):
        if not self.mu0 > 0:
            raise ArgumentError("the polymer scale mu0 must be strictly positive")
        if not self.hbar > 0:
            raise ArgumentError("hbar must be strictly positive")

    @property
    def branch_end(self) -> float:
        """Upper end pi hbar / mu0 of the momentum branch."""
        return math.pi * self.hbar / self.mu0


@dataclass(frozen=True)
class SelfAdjointDomain:
    """Interval [m1, m2] and extension angle theta of the boundary condition.

    ``m1`` is always pi hbar / (2 mu0).  ``m2`` may sit on either side of m1
    but must stay strictly inside the branch (0, pi hbar / mu0).  ``theta``
    is not reduced modulo 2pi.
    """

    m1: float
    m2: float
    theta: float

    @classmethod
    def for_scale(cls, scale: PolymerScale, m2: float, theta: float = 0.0) -> "SelfAdjointDomain":
        m1 = 0.5 * scale.branch_end
        if not 0 < m2 < scale.branch_end:
            raise BranchError(f"m2 = {m2:g} must lie inside (0, {scale.branch_end:g})")
        if m2 == m1:
            raise ArgumentError("m2 must differ from m1")
        return cls(m1, float(m2), float(theta))


@dataclass(frozen=True)
class Wavefunction:
    grid: np.ndarray
    values: np.ndarray
    E: float
    normalization: str = "C=1"


def regulated_momentum(p, scale: PolymerScale):
    """(hbar/mu0) sin(mu0 p / hbar)."""
    out = scale.hbar / scale.mu0 * np.sin(scale.mu0 * np.asarray(p, dtype=float) / scale.hbar)
    return float(out) if np.ndim(out) == 0 else out


def _check_branch(p, scale: PolymerScale) -> np.ndarray:
    angle = scale.mu0 * np.asarray(p, dtype=float) / scale.hbar
    if np.any(~((angle > 0) & (angle < math.pi))):
        raise BranchError(f"p must lie in (0, {scale.branch_end:g})")
    return angle


def eigenfunction(p, E: float, scale: PolymerScale):
    """cot(mu0 p / 2hbar)^(iE/hbar) / sqrt(sin(mu0 p / hbar)) with C = 1.

    The half-angle lies in (0, pi/2) on the whole branch, so cot is positive
    and the complex power uses its real logarithm.
    """
    angle = _check_branch(p, scale)
    log_cot = np.log(1.0 / np.tan(0.5 * angle))
    out = np.exp(1j * E / scale.hbar * log_cot) / np.sqrt(np.sin(angle))
    return complex(out) if out.ndim == 0 else out


def eigenfunction_asymptotic(p, E: float, hbar: float = 1.0):
    """Small-mu0 form p^(-1/2 - iE/hbar) Gamma(1/4 + iE/2hbar) / Gamma(1/4 - iE/2hbar)."""
    p = np.asarray(p, dtype=float)
    if np.any(~(p > 0)):
        raise ArgumentError("eigenfunction_asymptotic requires p > 0")
    out = np.exp(-(0.5 + 1j * E / hbar) * np.log(p)) * gamma_ratio_phase(E, hbar)
    return complex(out) if out.ndim == 0 else out


def asymptotic_normalization(E: float, scale: PolymerScale) -> complex:
    """Constant K with K * eigenfunction(p) -> p^(-1/2 - iE/hbar) as mu0 -> 0.

    From cot(x) ~ 1/x and sin(2x) ~ 2x: K = (mu0/hbar)^(1/2) (mu0/2hbar)^(iE/hbar).
    """
    r = scale.mu0 / scale.hbar
    return math.sqrt(r) * cmath.exp(1j * E / scale.hbar * math.log(0.5 * r))


def sample_eigenfunction(E: float, scale: PolymerScale, lo: float, hi: float, n: int,
                         normalization: str = "C=1") -> Wavefunction:
    """Closed-form eigenfunction on a uniform grid; ``unit-norm`` rescales to unit L2 norm."""
    grid = np.linspace(lo, hi, n)
    values = eigenfunction(grid, E, scale)
    if normalization == "unit-norm":
        values = values / math.sqrt(np.trapezoid(np.abs(values) ** 2, grid))
    elif normalization != "C=1":
        raise ArgumentError(f"unknown normalization {normalization!r}")
    return Wavefunction(grid, values, E, normalization)


def _log_cot_m2(domain: SelfAdjointDomain, scale: PolymerScale) -> float:
    _check_branch(domain.m2, scale)
    return math.log(1.0 / math.tan(0.5 * scale.mu0 * domain.m2 / scale.hbar))


def level_spacing(domain: SelfAdjointDomain, scale: PolymerScale) -> float:
    """2 pi hbar / ln cot(mu0 m2 / 2hbar); negative when m2 > m1."""
    denom = _log_cot_m2(domain, scale)
    if abs(denom) < DEGENERATE_TOL:
        raise DegenerateError("ln cot(mu0 m2 / 2hbar) vanishes (mu0 m2 / 2hbar = pi/4)")
    return 2.0 * math.pi * scale.hbar / denom


def spectrum(n: int, domain: SelfAdjointDomain, scale: PolymerScale) -> float:
    """E_n = 2 pi hbar / ln cot(mu0 m2 / 2hbar) * (n + theta / 2pi).

    ``n`` may be any integer; negative values index the other half of the
    ladder that the boundary condition admits.
    """
    return level_spacing(domain, scale) * (n + domain.theta / (2.0 * math.pi))


def spectrum_expansion(n: int, domain: SelfAdjointDomain, scale: PolymerScale,
                       include_mu0_in_log: bool = False) -> float:
    """Truncated small-mu0 expansion of the spectrum.

    With the default the logarithm is ln(2hbar/m2), the commonly quoted
    form; ``include_mu0_in_log=True`` uses ln(2hbar/(mu0 m2)), which is
    what expanding ln cot actually produces.
    """
    hbar, mu = scale.hbar, scale.mu0
    arg = 2.0 * hbar / (mu * domain.m2) if include_mu0_in_log else 2.0 * hbar / domain.m2
    log = math.log(arg)
    if not log > 0:
        raise ArgumentError(f"expansion logarithm ln({arg:g}) must be positive")
    lead = 2.0 * math.pi * hbar / log * (n + domain.theta / (2.0 * math.pi))
    return lead * (1.0 + domain.m2**2 * mu**2 / (12.0 * hbar**2 * log))


def boundary_residual(E: float, domain: SelfAdjointDomain, scale: PolymerScale) -> float:
    """|exp(i theta) phi_E(m1) - sqrt(sin(mu0 m2 / hbar)) phi_E(m2)|."""
    phi1 = eigenfunction(domain.m1, E, scale)
    phi2 = eigenfunction(domain.m2, E, scale)
    weight = math.sqrt(math.sin(scale.mu0 * domain.m2 / scale.hbar))
    return abs(cmath.exp(1j * domain.theta) * phi1 - weight * phi2)

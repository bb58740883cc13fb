"""Polymer-quantized Sierra--Rodriguez-Laguna model (hbar = 1).

The symmetrised operator is H = i f(p)^(1/2) d/dp f(p)^(1/2) with
f(p) = B(p) / (mu0 sin(mu0 p)) and B(p) = 2 + mu0^2 l_p^2 - 2 cos(mu0 p).

Boundary-condition quantities (the Delta constant, the boundary weight and
the spectrum built on them) come in two conventions:

``"bare"``
    trigonometric functions take the bare momentum m2 and the weight is
    csc(m2) / Delta, exactly as the formulas are usually quoted.
``"self-adjoint"``
    the arguments are mu0 m2 and the weight is csc(mu0 m2)^(1/2) / Delta.
    This is the condition f(m2)^(1/2) psi(m2) = exp(i theta) f(m1)^(1/2) psi(m1),
    which is the one that actually makes the operator self-adjoint on
    [m1, m2] and is satisfied by the closed-form eigenfunctions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bk_model import PolymerScale
from .errors import ArgumentError, BranchError, DegenerateError

__all__ = [
    "CONVENTIONS",
    "DeltaConstant",
    "SierraParams",
    "boundary_weight",
    "delta_constant",
    "sierra_asymptotic_normalization",
    "sierra_boundary_residual",
    "sierra_eigenfunction",
    "sierra_eigenfunction_expansion",
    "sierra_level_spacing",
    "sierra_spectrum",
    "sierra_spectrum_expansion",
]

CONVENTIONS = ("bare", "self-adjoint")
# |ln Delta| below this counts as a vanishing level spacing
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class SierraParams:
    l_p: float
    scale: PolymerScale

    def __post_init__(self):
        if not self.l_p > 0:
            raise ArgumentError("l_p must be strictly positive")
        if self.scale.hbar != 1.0:
            raise ArgumentError("the Sierra model is formulated with hbar = 1")

    @classmethod
    def make(cls, l_p: float, mu0: float) -> "SierraParams":
        return cls(float(l_p), PolymerScale(float(mu0)))

    @property
    def mu0(self) -> float:
        return self.scale.mu0

    @property
    def m1(self) -> float:
        return math.pi / (2.0 * self.mu0)

    def base(self, p):
        """B(p) = 2 + mu0^2 l_p^2 - 2 cos(mu0 p)."""
        return 2.0 + (self.mu0 * self.l_p) ** 2 - 2.0 * np.cos(self.mu0 * np.asarray(p, dtype=float))


@dataclass(frozen=True)
class DeltaConstant:
    value: float

    @property
    def positive_spacing(self) -> bool:
        """Level spacing 2pi / ln(Delta) is positive only for Delta > 1."""
        return self.value > 1.0


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ArgumentError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def _branch_angle(p, params: SierraParams) -> np.ndarray:
    angle = params.mu0 * np.asarray(p, dtype=float)
    if np.any(~((angle > 0) & (angle < math.pi))):
        raise BranchError(f"p must lie in (0, {params.scale.branch_end:g})")
    return angle


def sierra_eigenfunction(p, E: float, params: SierraParams):
    """sin(mu0 p)^(1/2) / B(p)^(1/2 + iE/2) with N = 1."""
    angle = _branch_angle(p, params)
    base = params.base(p)
    out = np.sqrt(np.sin(angle) / base) * np.exp(-0.5j * E * np.log(base))
    return complex(out) if out.ndim == 0 else out


def sierra_eigenfunction_expansion(p, E: float, l_p: float):
    """(p^2 + l_p^2)^(-iE/2) (p / (p^2 + l_p^2))^(1/2) with N = 1."""
    p = np.asarray(p, dtype=float)
    if np.any(~(p > 0)):
        raise ArgumentError("sierra_eigenfunction_expansion requires p > 0")
    r2 = p * p + l_p * l_p
    out = np.exp(-0.5j * E * np.log(r2)) * np.sqrt(p / r2)
    return complex(out) if out.ndim == 0 else out


def sierra_asymptotic_normalization(E: float, params: SierraParams) -> complex:
    """K = mu0^(1/2 + iE), so that K * psi_E(p) -> the expansion as mu0 -> 0."""
    return cmath.exp((0.5 + 1j * E) * math.log(params.mu0))


def _m2_angle(m2: float, params: SierraParams, convention: str) -> float:
    _check_convention(convention)
    return m2 if convention == "bare" else params.mu0 * m2


def delta_constant(m2: float, params: SierraParams, convention: str = "bare") -> DeltaConstant:
    """Delta = sqrt((2 + mu0^2 l_p^2) / (2 + mu0^2 l_p^2 - 2 cos(m2)))."""
    a = 2.0 + (params.mu0 * params.l_p) ** 2
    denom = a - 2.0 * math.cos(_m2_angle(m2, params, convention))
    if not denom > 0:
        raise ArgumentError("Delta denominator must be positive")
    return DeltaConstant(math.sqrt(a / denom))


def sierra_level_spacing(m2: float, params: SierraParams, convention: str = "bare") -> float:
    log_delta = math.log(delta_constant(m2, params, convention).value)
    if abs(log_delta) < DEGENERATE_TOL:
        raise DegenerateError("ln(Delta) vanishes; the spectrum is degenerate")
    return 2.0 * math.pi / log_delta


def sierra_spectrum(n: int, theta: float, m2: float, params: SierraParams,
                    convention: str = "bare") -> float:
    """E_n = 2pi / ln(Delta) * (n + theta / 2pi); ``n`` may be any integer."""
    return sierra_level_spacing(m2, params, convention) * (n + theta / (2.0 * math.pi))


def sierra_spectrum_expansion(n: int, theta: float, m2: float, params: SierraParams,
                              correction_scale: float = 1.0) -> float:
    """Truncated small-mu0 expansion of the spectrum in the bare-m2 form.

    E_n = 4pi/L (n + theta/2pi) (1 + s l_p^2 mu0^2 cos m2 / ((1 - cos m2) L)),
    L = ln(1/(1 - cos m2)).  ``correction_scale`` is s; the quoted formula has
    s = 1 while expanding 2pi/ln(Delta) gives s = 1/2.
    """
    c = math.cos(m2)
    if not 1.0 - c > 0:
        raise ArgumentError("expansion needs 1 - cos(m2) > 0")
    L = math.log(1.0 / (1.0 - c))
    if abs(L) < DEGENERATE_TOL:
        raise ArgumentError("ln(1/(1 - cos m2)) vanishes")
    lead = 4.0 * math.pi / L * (n + theta / (2.0 * math.pi))
    mu, lp = params.mu0, params.l_p
    return lead * (1.0 + correction_scale * lp**2 * mu**2 * c / ((1.0 - c) * L))


def boundary_weight(m2: float, params: SierraParams, convention: str = "bare") -> float:
    """Factor multiplying psi(m2) in the boundary condition."""
    angle = _m2_angle(m2, params, convention)
    s = math.sin(angle)
    if abs(s) < 1e-15:
        raise ArgumentError("csc(m2) is singular")
    delta = delta_constant(m2, params, convention).value
    if convention == "bare":
        return 1.0 / (s * delta)
    if s < 0:
        raise BranchError("mu0 m2 must lie in (0, pi)")
    return 1.0 / (math.sqrt(s) * delta)


def sierra_boundary_residual(E: float, m2: float, theta: float, params: SierraParams,
                             convention: str = "bare") -> float:
    """|exp(i theta) psi_E(m1) - w psi_E(m2)| with w from :func:`boundary_weight`."""
    psi1 = sierra_eigenfunction(params.m1, E, params)
    psi2 = sierra_eigenfunction(m2, E, params)
    w = boundary_weight(m2, params, convention)
    return abs(cmath.exp(1j * theta) * psi1 - w * psi2)

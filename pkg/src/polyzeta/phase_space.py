"""Semiclassical state counting for the xp-type Hamiltonians.

Closed-form counting functions sit next to an independent oracle that
integrates the phase-space area under the energy contour.  Everything here
uses hbar = 1 and counts a single quadrant: x >= l_x, p >= l_p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, BranchError, DomainError, EmptyRegionError, NonMonotoneError
from .quadrature import adaptive_simpson

__all__ = [
    "ClassicalHamiltonian",
    "PhaseSpaceCuts",
    "area_count_oracle",
    "contour_momentum_limit",
    "h_eval",
    "n_bk",
    "n_bk_integral",
    "n_poly_asymptotic",
    "n_poly_closed",
    "n_sierra_poly_asymptotic",
]

TWO_PI = 2.0 * math.pi
KINDS = ("xp", "xp-polymer", "sierra", "sierra-polymer")
QUAD_TOL = 1e-10


@dataclass(frozen=True)
class PhaseSpaceCuts:
    l_x: float
    l_p: float

    def __post_init__(self):
        if not (self.l_x > 0 and self.l_p > 0):
            raise ArgumentError("phase-space cuts must be strictly positive")

    @property
    def planck_cell(self) -> float:
        return self.l_x * self.l_p

    @classmethod
    def symmetric(cls, cell: float = TWO_PI) -> "PhaseSpaceCuts":
        side = math.sqrt(cell)
        return cls(side, side)


@dataclass(frozen=True)
class ClassicalHamiltonian:
    """H(x, p) = x * F(p) for one of the four supported kinds.

    ``mu0 = 0`` turns a polymer kind back into its non-polymer parent.
    """

    kind: str
    mu0: float = 0.0
    l_p: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ArgumentError(f"unknown Hamiltonian kind {self.kind!r}; expected one of {KINDS}")
        if self.mu0 < 0:
            raise ArgumentError("mu0 must be >= 0")

    @property
    def base_kind(self) -> str:
        if self.kind.endswith("-polymer") and self.mu0 == 0:
            return self.kind[: -len("-polymer")]
        return self.kind

    def momentum_factor(self, p: float) -> float:
        """F(p) such that H = x F(p)."""
        kind, mu, lp = self.base_kind, self.mu0, self.l_p
        if kind == "xp":
            return p
        if kind == "sierra":
            if p == 0:
                raise DomainError("the Sierra Hamiltonian is singular at p = 0")
            return p + lp * lp / p
        angle = mu * p
        if not 0 < angle < math.pi:
            raise DomainError(f"mu0*p = {angle:g} is outside the principal branch (0, pi)")
        if kind == "xp-polymer":
            return math.sin(angle) / mu
        return ((2.0 - 2.0 * math.cos(angle)) / mu**2 + lp * lp) * mu / math.sin(angle)


def h_eval(h: ClassicalHamiltonian, x: float, p: float) -> float:
    """Classical energy H(x, p)."""
    return x * h.momentum_factor(p)


def contour_momentum_limit(h: ClassicalHamiltonian, E: float, cuts: PhaseSpaceCuts) -> float:
    """Momentum where the contour H = E meets the floor x = l_x.

    Solved in closed form for every kind.  Raises ``NonMonotoneError`` when
    the contour is not single-valued between l_p and that momentum.
    """
    c = E / cuts.l_x
    kind, mu = h.base_kind, h.mu0
    if kind == "xp":
        return c
    if kind == "xp-polymer":
        if mu * cuts.l_p >= math.pi / 2:
            raise NonMonotoneError("l_p lies beyond the rising branch of sin(mu0 p)")
        y = mu * c
        if y > 1:
            raise NonMonotoneError(
                f"E*mu0/l_x = {y:g} > 1: the contour turns over before reaching x = l_x"
            )
        return math.asin(y) / mu
    if kind == "sierra":
        if cuts.l_p < h.l_p:
            raise NonMonotoneError("cut l_p below the minimum of p + l_p^2/p")
        disc = c * c - 4.0 * h.l_p**2
        return 0.5 * (c + math.sqrt(max(disc, 0.0)))
    # sierra-polymer, with t = tan(mu0 p / 2): F = ((4 + a) t^2 + a) / (2 mu0 t), a = (mu0 l_p)^2
    a = (mu * h.l_p) ** 2
    t_min = math.sqrt(a / (4.0 + a))
    if math.tan(0.5 * mu * cuts.l_p) < t_min or mu * cuts.l_p >= math.pi:
        raise NonMonotoneError("cut l_p below the minimum of the polymer Sierra momentum factor")
    disc = (c * mu) ** 2 - a * (4.0 + a)
    t_star = (c * mu + math.sqrt(max(disc, 0.0))) / (4.0 + a)
    return 2.0 * math.atan(t_star) / mu


def area_count_oracle(h: ClassicalHamiltonian, E: float, cuts: PhaseSpaceCuts) -> float:
    """Semiclassical count A / 2pi by quadrature of the phase-space area.

    A is the area of {x >= l_x, p >= l_p, H(x, p) <= E} (the connected piece
    attached to the corner), integrated as the p-integral of x_E(p) - l_x with
    x_E(p) = E / F(p).
    """
    corner = h_eval(h, cuts.l_x, cuts.l_p)
    if E < corner:
        raise EmptyRegionError(f"E = {E:g} is below the corner energy {corner:g}")
    if E == corner:
        return 0.0
    p_star = contour_momentum_limit(h, E, cuts)

    def width(p: float) -> float:
        return E / h.momentum_factor(p) - cuts.l_x

    for frac in (0.25, 0.5, 0.75):
        if width(cuts.l_p + frac * (p_star - cuts.l_p)) < -1e-12 * cuts.l_x:
            raise NonMonotoneError("energy contour dips below x = l_x inside the integration range")
    area = adaptive_simpson(width, cuts.l_p, p_star, abs_tol=QUAD_TOL)
    return area / TWO_PI


def _require_planck_cell(cuts: PhaseSpaceCuts) -> None:
    if abs(cuts.planck_cell - TWO_PI) > 1e-9:
        raise ArgumentError(f"closed form needs l_x*l_p = 2pi, got {cuts.planck_cell!r}")


def n_bk(E: float, cuts: PhaseSpaceCuts = PhaseSpaceCuts.symmetric()) -> float:
    """Berry-Keating count (E/2pi)(ln(E/2pi) - 1) + 1 (needs l_x l_p = 2pi)."""
    if not E > 0:
        raise ArgumentError("n_bk requires E > 0")
    _require_planck_cell(cuts)
    x = E / TWO_PI
    return x * (math.log(x) - 1.0) + 1.0


def n_bk_integral(E: float, cuts: PhaseSpaceCuts) -> float:
    """Integral form [E * int_{l_p}^{E/l_x} dp/p - l_x (E/l_x - l_p)] / 2pi by quadrature."""
    if not E > 0:
        raise ArgumentError("n_bk_integral requires E > 0")
    log_part = adaptive_simpson(lambda p: 1.0 / p, cuts.l_p, E / cuts.l_x, abs_tol=QUAD_TOL / E)
    return (E * log_part - cuts.l_x * (E / cuts.l_x - cuts.l_p)) / TWO_PI


def n_poly_closed(E: float, cuts: PhaseSpaceCuts, mu0: float) -> float:
    """Polymer count (E/2pi)(ln tan(E mu0 / 2 l_x) - ln tan(mu0 l_p / 2) - 1).

    Raises:
        BranchError: unless 0 < mu0 l_p <= E mu0 / l_x < pi.  Equality is the
            degenerate corner E = l_x l_p, where the value is -E / 2pi.
    """
    upper = E * mu0 / cuts.l_x
    lower = mu0 * cuts.l_p
    if not (0 < lower <= upper * (1 + 1e-15) and upper < math.pi):
        raise BranchError(
            f"n_poly_closed needs 0 < mu0*l_p <= E*mu0/l_x < pi, got {lower:g}, {upper:g}"
        )
    return E / TWO_PI * (math.log(math.tan(0.5 * upper)) - math.log(math.tan(0.5 * lower)) - 1.0)


def n_poly_asymptotic(E, l_p: float, mu0: float):
    """Smooth count minus the quoted mu0^2 and mu0^4 polymer corrections."""
    E = np.asarray(E, dtype=float)
    if np.any(~(E > 0)):
        raise ArgumentError("n_poly_asymptotic requires E > 0")
    x = E / TWO_PI
    m2 = (l_p * mu0) ** 2
    out = x * (np.log(x) - 1.0) - x * m2 / 12.0 - x * 7.0 / 1440.0 * m2 * m2
    return float(out) if out.ndim == 0 else out


def n_sierra_poly_asymptotic(E, l_p: float, mu0: float):
    """Smooth count minus the quoted mu0^2 polymer correction for the Sierra model."""
    E = np.asarray(E, dtype=float)
    if np.any(~(E > 0)):
        raise ArgumentError("n_sierra_poly_asymptotic requires E > 0")
    x = E / TWO_PI
    out = x * (np.log(x) - 1.0) - x * (mu0 * l_p) ** 2 / 12.0
    return float(out) if out.ndim == 0 else out

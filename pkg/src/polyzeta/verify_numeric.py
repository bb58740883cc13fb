"""Model-independent numerical checks of the closed-form results.

The eigenvalue problem i hbar f^(1/2) (f^(1/2) phi)' = E phi is a first-order
linear ODE, so it is integrated directly with fixed-step RK4 and the
spectrum is obtained by root finding on the boundary-condition defect
(shooting).  A 5-point finite-difference stencil applies the same operator
to sampled wavefunctions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import bk_model, sierra_model
from .bk_model import PolymerScale, SelfAdjointDomain, Wavefunction
from .errors import ArgumentError, BranchError, GridError, MissedLevelError
from .sierra_model import SierraParams

__all__ = [
    "ModelSpec",
    "ShotSpectrum",
    "apply_hamiltonian_fd",
    "bk_spec",
    "integrate_eigen_ode",
    "quantization_mismatch",
    "shoot_spectrum",
    "sierra_spec",
]

DEFAULT_STEPS = 20_000
LEVEL_TOL = 1e-10
_E_CHUNK = 32


@dataclass(frozen=True)
class ModelSpec:
    """Operator coefficient f, its derivative and the boundary data.

    ``weight`` multiplies phi(m2) in exp(i theta) phi(m1) = weight * phi(m2).
    ``spacing`` is the closed-form level spacing, used only to size scans.
    """

    kind: str
    f: Callable[[np.ndarray], np.ndarray]
    df: Callable[[np.ndarray], np.ndarray]
    m1: float
    m2: float
    theta: float
    weight: float
    hbar: float = 1.0
    spacing: Optional[float] = None
    branch: tuple = (-math.inf, math.inf)

    def with_theta(self, theta: float) -> "ModelSpec":
        return ModelSpec(self.kind, self.f, self.df, self.m1, self.m2, theta, self.weight,
                         self.hbar, self.spacing, self.branch)


@dataclass(frozen=True)
class ShotSpectrum:
    levels: np.ndarray
    residuals: np.ndarray
    bracket_width: float


def bk_spec(scale: PolymerScale, domain: SelfAdjointDomain) -> ModelSpec:
    """Polymer Berry-Keating operator: f = (hbar/mu0) sin(mu0 p / hbar)."""
    mu, hbar = scale.mu0, scale.hbar

    def f(p):
        return hbar / mu * np.sin(mu * p / hbar)

    def df(p):
        return np.cos(mu * p / hbar)

    weight = math.sqrt(math.sin(mu * domain.m2 / hbar))
    return ModelSpec("bk-polymer", f, df, domain.m1, domain.m2, domain.theta, weight, hbar,
                     bk_model.level_spacing(domain, scale), (0.0, scale.branch_end))


def sierra_spec(params: SierraParams, m2: float, theta: float,
                convention: str = "bare") -> ModelSpec:
    """Polymer Sierra operator: f = B(p) / (mu0 sin(mu0 p))."""
    mu = params.mu0

    def f(p):
        return params.base(p) / (mu * np.sin(mu * p))

    def df(p):
        s = np.sin(mu * p)
        return 2.0 - params.base(p) * np.cos(mu * p) / (s * s)

    weight = sierra_model.boundary_weight(m2, params, convention)
    spacing = sierra_model.sierra_level_spacing(m2, params, convention)
    return ModelSpec("sierra-polymer", f, df, params.m1, float(m2), float(theta), weight, 1.0,
                     spacing, (0.0, params.scale.branch_end))


def _grid(model: ModelSpec, n_steps: int) -> np.ndarray:
    if n_steps < 1000:
        raise ArgumentError("integrate_eigen_ode needs n_steps >= 1000")
    lo, hi = model.branch
    if not (lo < min(model.m1, model.m2) and max(model.m1, model.m2) < hi):
        raise BranchError("integration interval must lie strictly inside the branch")
    return np.linspace(model.m1, model.m2, n_steps + 1)


def _rk4_factors(model: ModelSpec, E: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Per-step RK4 amplification factors for phi' = a(p) phi, shape (len(E), n_steps).

    For a linear scalar ODE the four classical stages collapse to
    phi_{k+1} = G_k phi_k with G_k built from a at p_k, p_k + h/2 and p_{k+1}.
    """
    h = grid[1] - grid[0]
    mids = grid[:-1] + 0.5 * h
    f_nodes, f_mids = model.f(grid), model.f(mids)
    if np.any(f_nodes <= 0) or np.any(f_mids <= 0):
        raise BranchError("operator coefficient f(p) must stay positive on the interval")
    drift_nodes = -0.5 * model.df(grid) / f_nodes
    drift_mids = -0.5 * model.df(mids) / f_mids
    E = E[:, None]

    def a(drift, f):
        return -1j * E / (model.hbar * f) + drift

    a0 = a(drift_nodes[:-1], f_nodes[:-1])
    am = a(drift_mids, f_mids)
    a1 = a(drift_nodes[1:], f_nodes[1:])
    k2 = am * (1 + 0.5 * h * a0)
    k3 = am * (1 + 0.5 * h * k2)
    k4 = a1 * (1 + h * k3)
    return 1 + h / 6.0 * (a0 + 2 * k2 + 2 * k3 + k4)


def integrate_eigen_ode(model: ModelSpec, E: float, n_steps: int = DEFAULT_STEPS) -> Wavefunction:
    """Integrate the eigen-ODE from m1 (phi(m1) = 1) to m2 with fixed-step RK4."""
    grid = _grid(model, n_steps)
    factors = _rk4_factors(model, np.array([float(E)]), grid)[0]
    values = np.concatenate(([1.0 + 0j], np.cumprod(factors)))
    if grid[0] > grid[-1]:
        grid, values = grid[::-1], values[::-1]
    return Wavefunction(grid, values, float(E), "phi(m1)=1")


def _endpoint_values(model: ModelSpec, energies: np.ndarray, n_steps: int) -> np.ndarray:
    grid = _grid(model, n_steps)
    out = np.empty(len(energies), dtype=complex)
    for start in range(0, len(energies), _E_CHUNK):
        chunk = energies[start : start + _E_CHUNK]
        out[start : start + _E_CHUNK] = np.prod(_rk4_factors(model, chunk, grid), axis=1)
    return out


def _defect_ratio(model: ModelSpec, energies: np.ndarray, n_steps: int) -> np.ndarray:
    """weight * phi(m2) / (exp(i theta) phi(m1)); equals 1 on a level."""
    return model.weight * _endpoint_values(model, energies, n_steps) * cmath.exp(-1j * model.theta)


def quantization_mismatch(model: ModelSpec, E, n_steps: int = DEFAULT_STEPS):
    """|exp(i theta) phi(m1) - weight * phi(m2)| from the integrated solution."""
    energies = np.atleast_1d(np.asarray(E, dtype=float))
    phi2 = _endpoint_values(model, energies, n_steps)
    out = np.abs(cmath.exp(1j * model.theta) - model.weight * phi2)
    return float(out[0]) if np.ndim(E) == 0 else out


def shoot_spectrum(model: ModelSpec, n_levels: int, side: str = "nonnegative",
                   n_steps: int = DEFAULT_STEPS, tol: float = LEVEL_TOL,
                   spacing: Optional[float] = None) -> ShotSpectrum:
    """The ``n_levels`` solutions of the boundary condition closest to E = 0 on one side.

    The energy axis is scanned at a quarter of the expected level spacing;
    levels are the sign changes of Im(defect ratio) where its real part is
    positive, refined by bisection to ``tol``.

    Raises:
        MissedLevelError: the scan finds a different number of levels than
            the spacing predicts for the scanned range.
    """
    if n_levels < 1:
        raise ArgumentError("n_levels must be >= 1")
    if side not in ("nonnegative", "nonpositive"):
        raise ArgumentError("side must be 'nonnegative' or 'nonpositive'")
    signed = spacing if spacing is not None else model.spacing
    spacing = abs(signed) if signed is not None else 0.0
    if not spacing > 0:
        raise ArgumentError("a positive level-spacing estimate is required")
    step = 0.25 * spacing
    sgn = 1.0 if side == "nonnegative" else -1.0

    k = np.arange(-1, 4 * (n_levels + 1) + 1)
    scan = sgn * (k * step - 0.5 * step)
    if sgn < 0:
        scan = scan[::-1]
    ratio = _defect_ratio(model, scan, n_steps)
    g = ratio.imag
    change = np.flatnonzero((np.sign(g[:-1]) != np.sign(g[1:])) & (ratio[:-1].real + ratio[1:].real > 0))

    # expected levels in the scanned window from the spacing estimate
    lo_e, hi_e = scan[0], scan[-1]
    ladder = signed * (np.arange(-4 * n_levels - 8, 4 * n_levels + 8) + model.theta / (2 * math.pi))
    expected = int(np.count_nonzero((ladder > lo_e) & (ladder < hi_e)))
    if len(change) != expected:
        raise MissedLevelError(
            f"scan found {len(change)} levels where the spacing estimate predicts {expected}"
        )

    lo, hi = scan[change].copy(), scan[change + 1].copy()
    g_lo = g[change].copy()
    while np.max(hi - lo, initial=0.0) > tol:
        mid = 0.5 * (lo + hi)
        g_mid = _defect_ratio(model, mid, n_steps).imag
        left = np.sign(g_mid) == np.sign(g_lo)
        exact = g_mid == 0
        lo = np.where(left | exact, mid, lo)
        g_lo = np.where(left, g_mid, g_lo)
        hi = np.where(left & ~exact, hi, mid)
    roots = 0.5 * (lo + hi)

    keep = roots >= -tol if sgn > 0 else roots <= tol
    roots = roots[keep]
    roots = roots[np.argsort(np.abs(roots))][:n_levels]
    if len(roots) < n_levels:
        raise MissedLevelError(f"found only {len(roots)} of {n_levels} levels")
    roots = np.sort(roots)
    residuals = np.atleast_1d(quantization_mismatch(model, roots, n_steps))
    return ShotSpectrum(roots, residuals, step)


def apply_hamiltonian_fd(model: ModelSpec, psi: Wavefunction) -> Wavefunction:
    """Apply i hbar f^(1/2) d/dp (f^(1/2) psi) with a 5-point central stencil.

    The two points at each end of the grid are dropped from the result.

    Raises:
        GridError: the grid is not uniform or has fewer than 1000 points.
    """
    p = np.asarray(psi.grid, dtype=float)
    if p.size < 1000:
        raise GridError("apply_hamiltonian_fd needs at least 1000 grid points")
    steps = np.diff(p)
    h = steps.mean()
    if np.max(np.abs(steps - h)) > 1e-9 * abs(h):
        raise GridError("apply_hamiltonian_fd needs a uniform grid")
    root_f = np.sqrt(model.f(p))
    u = root_f * psi.values
    du = (-u[4:] + 8 * u[3:-1] - 8 * u[1:-3] + u[:-4]) / (12 * h)
    values = 1j * model.hbar * root_f[2:-2] * du
    return Wavefunction(p[2:-2], values, psi.E, psi.normalization)

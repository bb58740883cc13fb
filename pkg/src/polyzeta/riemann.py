"""Riemann zeros, the exact zero staircase and the explicit-formula pieces.

Two independent evaluations of the Hardy Z function are provided: an
Euler-Maclaurin summation of zeta(1/2 + it) rotated by the theta phase, and
the Riemann-Siegel main sum with the C0..C4 remainder terms.  ``z_function``
routes to the former below t = 30 and to the latter above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AmbiguousError, ArgumentError, MissedZeroError
from .specfun import BERNOULLI_EVEN, primes_up_to, riemann_siegel_theta

__all__ = [
    "CountingCurve",
    "ZeroList",
    "exact_count",
    "find_zeros",
    "fluctuation_sum",
    "smooth_count",
    "z_function",
    "z_function_em",
    "z_function_rs",
    "zeta_em",
]

RS_THRESHOLD = 30.0
SCAN_STEP = 0.05
ZERO_TOL = 1e-10
# Allowed |count - smooth_count| at scan checkpoints; |S(t)| stays well below this for t < 1000.
FLUCTUATION_BOUND = 2.5
T_MAX_SUPPORTED = 1000.0

_EM_TERMS = 12
_EM_BERNOULLI = np.array([float(b) for b in BERNOULLI_EVEN[:_EM_TERMS]])
_EM_FACTORIALS = np.array([float(math.factorial(2 * k)) for k in range(1, _EM_TERMS + 1)])


@dataclass(frozen=True)
class ZeroList:
    zeros: np.ndarray
    tol: float

    def __len__(self) -> int:
        return len(self.zeros)


@dataclass(frozen=True)
class CountingCurve:
    energies: np.ndarray
    values: np.ndarray
    method: str

    def __post_init__(self):
        if len(self.energies) != len(self.values):
            raise ArgumentError("energies and values must have equal length")


def _as_positive_t(t) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if np.any(~(arr > 0)):
        raise ArgumentError("Z(t) requires t > 0")
    return arr


def zeta_em(s, n_terms: int | None = None):
    """zeta(s) by Euler-Maclaurin summation, vectorised over ``s``.

    ``n_terms`` defaults to roughly 0.6|Im s| + 20, which keeps the twelve
    Bernoulli correction terms well inside their convergent regime.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    if n_terms is None:
        n_terms = int(0.6 * np.max(np.abs(s.imag), initial=0.0)) + 20
    N = n_terms
    n = np.arange(1, N, dtype=float)
    head = np.exp(-np.outer(s, np.log(n))).sum(axis=1)
    logN = math.log(N)
    Ns = np.exp(-s * logN)
    tail = N * Ns / (s - 1.0) + 0.5 * Ns

    # B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
    rising = s.copy()
    power = Ns / N
    corr = np.zeros_like(s)
    for k in range(_EM_TERMS):
        corr += _EM_BERNOULLI[k] / _EM_FACTORIALS[k] * rising * power
        rising = rising * (s + 2 * k + 1) * (s + 2 * k + 2)
        power = power / (N * N)
    return head + tail + corr


def z_function_em(t):
    """Z(t) = exp(i theta(t)) zeta(1/2 + it) via Euler-Maclaurin."""
    t_arr = _as_positive_t(t)
    flat = np.atleast_1d(t_arr)
    val = np.exp(1j * riemann_siegel_theta(flat)) * zeta_em(0.5 + 1j * flat)
    out = val.real
    return float(out[0]) if t_arr.ndim == 0 else out.reshape(t_arr.shape)


# --- Riemann-Siegel remainder coefficients -----------------------------------
#
# Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) is entire.  Its Taylor
# coefficients about p = 1/2 come from a discrete Cauchy integral on a circle
# of radius 0.6 (no removable singularity lies on that circle); the C_k(p)
# combinations of its derivatives then follow by polynomial calculus.

_PSI_DEGREE = 64
_PSI_RADIUS = 0.6
_PSI_NODES = 256


def _psi(p):
    return np.cos(2 * np.pi * (p * p - p - 1.0 / 16)) / np.cos(2 * np.pi * p)


@lru_cache(maxsize=1)
def _rs_polynomials():
    phi = 2 * np.pi * np.arange(_PSI_NODES) / _PSI_NODES
    samples = _psi(0.5 + _PSI_RADIUS * np.exp(1j * phi))
    coeffs = np.fft.fft(samples) / _PSI_NODES
    k = np.arange(_PSI_DEGREE + 1)
    q = (coeffs[: _PSI_DEGREE + 1] / _PSI_RADIUS**k).real
    psi = np.polynomial.Polynomial(q)
    d = [psi.deriv(j) if j else psi for j in range(13)]
    pi2 = math.pi**2
    c0 = d[0]
    c1 = -d[3] / (96 * pi2)
    c2 = d[2] / (64 * pi2) + d[6] / (18432 * pi2**2)
    c3 = -d[1] / (64 * pi2) - d[5] / (3840 * pi2**2) - d[9] / (5308416 * pi2**3)
    c4 = (
        d[0] / (128 * pi2)
        + 19 * d[4] / (24576 * pi2**2)
        + 11 * d[8] / (5898240 * pi2**3)
        + d[12] / (2038431744 * pi2**4)
    )
    return (c0, c1, c2, c3, c4)


def rs_coefficient(k: int, p):
    """Riemann-Siegel remainder coefficient C_k(p), 0 <= k <= 4."""
    return _rs_polynomials()[k](np.asarray(p, dtype=float) - 0.5)


def z_function_rs(t, n_corrections: int = 5):
    """Z(t) from the Riemann-Siegel main sum plus ``n_corrections`` remainder terms."""
    t_arr = _as_positive_t(t)
    flat = np.atleast_1d(t_arr)
    tau = flat / (2 * math.pi)
    root = np.sqrt(tau)
    N = np.floor(root).astype(int)
    p = root - N
    theta = riemann_siegel_theta(flat)

    n = np.arange(1, max(int(N.max(initial=1)), 1) + 1, dtype=float)
    mask = n[None, :] <= N[:, None]
    terms = np.cos(theta[:, None] - flat[:, None] * np.log(n)[None, :]) / np.sqrt(n)[None, :]
    main = 2.0 * np.where(mask, terms, 0.0).sum(axis=1)

    polys = _rs_polynomials()
    u = p - 0.5
    rem = np.zeros_like(flat)
    scale = np.ones_like(flat)
    for k in range(n_corrections):
        rem += polys[k](u) * scale
        scale = scale / root
    sign = np.where((N - 1) % 2 == 0, 1.0, -1.0)
    out = main + sign * tau ** (-0.25) * rem
    return float(out[0]) if t_arr.ndim == 0 else out.reshape(t_arr.shape)


def z_function(t):
    """Hardy Z function: Euler-Maclaurin for t < 30, Riemann-Siegel for t >= 30."""
    t_arr = _as_positive_t(t)
    flat = np.atleast_1d(t_arr)
    out = np.empty_like(flat)
    low = flat < RS_THRESHOLD
    if np.any(low):
        out[low] = z_function_em(flat[low])
    if np.any(~low):
        out[~low] = z_function_rs(flat[~low])
    return float(out[0]) if t_arr.ndim == 0 else out.reshape(t_arr.shape)


def smooth_count(E):
    """Two-term smooth zero count (E/2pi)(ln(E/2pi) - 1) + 7/8."""
    E_arr = np.asarray(E, dtype=float)
    if np.any(~(E_arr > 0)):
        raise ArgumentError("smooth_count requires E > 0")
    x = E_arr / (2 * math.pi)
    out = x * (np.log(x) - 1.0) + 7.0 / 8.0
    return float(out) if out.ndim == 0 else out


def fluctuation_sum(E, prime_limit: int = 10_000, n_max: int = 10):
    """Truncated prime sum -(1/pi) sum_p sum_{n<=n_max} sin(n E ln p) / (n p^(n/2))."""
    E_arr = np.asarray(E, dtype=float)
    if np.any(E_arr < 0) or not np.all(np.isfinite(E_arr)):
        raise ArgumentError("fluctuation_sum requires finite E >= 0")
    if prime_limit < 2:
        raise ArgumentError("prime_limit must be >= 2")
    if n_max < 1:
        raise ArgumentError("n_max must be >= 1")
    logp = np.log(primes_up_to(prime_limit).primes.astype(float))
    flat = np.atleast_1d(E_arr).ravel()
    total = np.zeros_like(flat)
    for n in range(1, n_max + 1):
        weights = np.exp(-0.5 * n * logp) / n
        total += np.sin(n * np.outer(flat, logp)) @ weights
    out = (-total / math.pi).reshape(E_arr.shape)
    return float(out) if out.ndim == 0 else out


def _bisect_zeros(func, lo: np.ndarray, hi: np.ndarray, tol: float) -> np.ndarray:
    """Vectorised bisection of sign-change brackets down to width ``tol``."""
    lo = lo.astype(float).copy()
    hi = hi.astype(float).copy()
    if lo.size == 0:
        return lo
    f_lo = func(lo)
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        left = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, f_mid, f_lo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def _scan_brackets(t_max: float, step: float, func=z_function):
    """Sign-change brackets of ``func`` on a uniform grid over (0, t_max]."""
    n_pts = int(math.floor(t_max / step))
    grid = step * np.arange(1, n_pts + 1, dtype=float)
    if grid.size == 0 or grid[-1] < t_max:
        grid = np.append(grid, t_max)
    values = func(grid)
    change = np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)
    return grid, values, grid[change], grid[change + 1]


def _check_scan(grid, brackets_hi, checkpoint: float = 10.0) -> None:
    for c in np.arange(checkpoint, grid[-1] + 1e-12, checkpoint):
        found = int(np.count_nonzero(brackets_hi <= c))
        expected = float(smooth_count(c))
        if abs(found - expected) > FLUCTUATION_BOUND:
            raise MissedZeroError(
                f"scan found {found} zeros below t={c:g} but the smooth count is "
                f"{expected:.3f}; the scan step is too coarse"
            )


def _zeros_below(t_max: float, step: float, tol: float, func=z_function) -> np.ndarray:
    if t_max > T_MAX_SUPPORTED:
        raise ArgumentError(f"zeros beyond t = {T_MAX_SUPPORTED:g} are not supported")
    grid, _, lo, hi = _scan_brackets(t_max, step, func)
    _check_scan(grid, hi)
    return _bisect_zeros(func, lo, hi, tol)


def find_zeros(t_max: float, step: float = SCAN_STEP, tol: float = ZERO_TOL, func=z_function) -> ZeroList:
    """All critical-line zeros with ordinate below ``t_max``.

    Zeros are bracketed by sign changes of Z on a uniform grid of spacing
    ``step`` and refined by bisection to ``tol``.  ``func`` selects the Z
    evaluation route (``z_function`` by default).

    Raises:
        MissedZeroError: the running count drifts from the smooth count by
            more than the fluctuation bound at a checkpoint.
    """
    if not t_max > 14:
        if t_max > 0:
            return ZeroList(np.empty(0), tol)
        raise ArgumentError("find_zeros requires t_max > 14")
    zeros = _zeros_below(float(t_max), step, tol, func)
    return ZeroList(zeros[zeros < t_max], tol)


def exact_count(E: float, step: float = SCAN_STEP, tol: float = ZERO_TOL) -> int:
    """Number of zeros with ordinate below ``E`` (the zero staircase).

    Raises:
        AmbiguousError: ``E`` lies within ``tol`` of a zero.
    """
    if not E > 0:
        raise ArgumentError("exact_count requires E > 0")
    zeros = _zeros_below(float(E) + 1.0, step, tol)
    near = np.abs(zeros - E) <= 2 * tol
    if np.any(near):
        raise AmbiguousError(f"E = {E!r} is within {tol:g} of the zero at {zeros[near][0]!r}")
    return int(np.count_nonzero(zeros < E))


def staircase(energies, zeros: ZeroList) -> CountingCurve:
    """Exact counts on a grid from a precomputed zero list."""
    energies = np.asarray(energies, dtype=float)
    values = np.searchsorted(zeros.zeros, energies, side="left").astype(float)
    return CountingCurve(energies, values, "exact-staircase")

"""Special functions and number-theory primitives.

Complex log-gamma (shifted Stirling series), the unimodular gamma ratio
appearing in the small-scale eigenfunction limit, the Riemann-Siegel theta
function and a segmented prime sieve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ArgumentError, PoleError

__all__ = [
    "BERNOULLI_EVEN",
    "PrimeList",
    "gamma_ratio_phase",
    "log_gamma",
    "primes_up_to",
    "riemann_siegel_theta",
    "riemann_siegel_theta_asymptotic",
]

SIEVE_LIMIT = 2**31

# B_2, B_4, ..., B_24
BERNOULLI_EVEN = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
)

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_STIRLING_TERMS = 10
_STIRLING_COEFFS = np.array(
    [float(b) / ((2 * k + 2) * (2 * k + 1)) for k, b in enumerate(BERNOULLI_EVEN[:_STIRLING_TERMS])]
)
# Real part the argument is lifted to before the asymptotic series is used.
_SHIFT_TARGET = 15.0


def _check_poles(z: np.ndarray) -> None:
    nearest = np.round(z.real)
    near_int = np.abs(z - nearest) <= 1e-14 * np.maximum(1.0, np.abs(z))
    if np.any(near_int & (nearest <= 0)):
        bad = z[near_int & (nearest <= 0)].ravel()[0]
        raise PoleError(f"log_gamma has a pole at z = {bad}")


def log_gamma(z):
    """Principal-branch log Gamma for complex ``z`` (scalar or array).

    The argument is lifted by the recurrence ``logG(z) = logG(z + N) - sum log(z + k)``
    until its real part exceeds 15, then the Stirling series with ten Bernoulli
    terms is applied.  Summing principal logarithms term by term keeps the
    result on the continuous branch (cut along the negative real axis), which
    is what the Riemann-Siegel theta function needs.

    Raises:
        PoleError: ``z`` is within machine tolerance of 0, -1, -2, ...
        OverflowError: the result is not finite.
    """
    scalar = np.ndim(z) == 0
    w = np.atleast_1d(np.asarray(z, dtype=complex)).copy()
    _check_poles(w)

    correction = np.zeros_like(w)
    shift = np.maximum(np.ceil(_SHIFT_TARGET - w.real), 0).astype(int)
    for k in range(int(shift.max(initial=0))):
        active = shift > k
        correction[active] += np.log(w[active])
        w[active] += 1.0

    inv = 1.0 / w
    inv2 = inv * inv
    series = np.zeros_like(w)
    for c in _STIRLING_COEFFS[::-1]:
        series = series * inv2 + c
    result = (w - 0.5) * np.log(w) - w + _HALF_LOG_2PI + series * inv - correction

    if not np.all(np.isfinite(result)):
        raise OverflowError("log_gamma result is not finite")
    return complex(result[0]) if scalar else result.reshape(np.shape(z))


def gamma_ratio_phase(E, hbar: float = 1.0):
    """Gamma(1/4 + iE/2hbar) / Gamma(1/4 - iE/2hbar), exactly unimodular.

    The two gamma values are complex conjugates, so the ratio is
    ``exp(2i Im logGamma(1/4 + iE/2hbar))``.
    """
    E = np.asarray(E, dtype=float)
    if not np.all(np.isfinite(E)):
        raise ArgumentError("E must be finite")
    phase = 2.0 * np.imag(log_gamma(0.25 + 0.5j * E / hbar))
    out = np.exp(1j * phase)
    return complex(out) if out.ndim == 0 else out


def riemann_siegel_theta(t):
    """theta(t) = arg Gamma(1/4 + it/2) - (t/2) ln pi on the continuous branch."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(~(t_arr > 0)):
        raise ArgumentError("riemann_siegel_theta requires t > 0")
    out = np.imag(log_gamma(0.25 + 0.5j * t_arr)) - 0.5 * t_arr * math.log(math.pi)
    return float(out) if np.ndim(out) == 0 else out


def riemann_siegel_theta_asymptotic(t):
    """Large-t expansion of theta, through the t^-5 term."""
    t = np.asarray(t, dtype=float)
    out = (
        0.5 * t * np.log(t / (2 * math.pi))
        - 0.5 * t
        - math.pi / 8
        + 1 / (48 * t)
        + 7 / (5760 * t**3)
        + 31 / (80640 * t**5)
    )
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PrimeList:
    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)


def _simple_sieve(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


def primes_up_to(n: int, segment_size: int = 1 << 18) -> PrimeList:
    """All primes <= n via a segmented sieve of Eratosthenes.

    Memory use is bounded by ``segment_size`` plus the base primes up to
    sqrt(n).
    """
    if int(n) != n or n < 2:
        raise ArgumentError(f"primes_up_to requires an integer n >= 2, got {n!r}")
    n = int(n)
    if n > SIEVE_LIMIT:
        raise ArgumentError(f"primes_up_to is capped at 2**31, got {n}")
    if segment_size < 1:
        raise ArgumentError("segment_size must be positive")

    root = math.isqrt(n)
    base = _simple_sieve(max(root, 2))
    if n <= max(root, 2):
        return PrimeList(n, base[base <= n])

    chunks = [base]
    low = base[-1] + 1 if len(base) else 2
    low = max(low, root + 1)
    while low <= n:
        high = min(low + segment_size - 1, n)
        flags = np.ones(high - low + 1, dtype=bool)
        for p in base:
            if p * p > high:
                break
            start = max(p * p, ((low + p - 1) // p) * p)
            flags[start - low :: p] = False
        chunks.append(np.flatnonzero(flags) + low)
        low = high + 1
    primes = np.concatenate(chunks).astype(np.int64)
    return PrimeList(n, primes)

"""Adaptive Simpson quadrature."""

from __future__ import annotations

import math

__all__ = ["adaptive_simpson"]

_ULPS = 8.0 * 2.220446049250313e-16


def adaptive_simpson(f, a: float, b: float, abs_tol: float = 1e-10, max_depth: int = 60) -> float:
    """Integrate ``f`` over [a, b] by recursive Simpson bisection.

    Each panel is accepted once the two-half estimate differs from the whole
    panel by less than 15 * tol (the tolerance is halved on every split), and
    the Richardson-corrected value is returned.  The per-panel tolerance never
    drops below a few ulps of the panel value, so a tight ``abs_tol`` on a
    large integral does not chase rounding noise.
    """
    if a == b:
        return 0.0
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("adaptive_simpson needs finite limits")
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    # explicit stack: (a, b, fa, fm, fb, whole, tol, depth)
    total = 0.0
    stack = [(a, b, fa, fm, fb, whole, abs_tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, tol, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        floor = _ULPS * abs(left + right)
        if depth >= max_depth or abs(delta) <= 15.0 * max(tol, floor):
            total += left + right + delta / 15.0
        else:
            stack.append((a, m, fa, flm, fm, left, 0.5 * tol, depth + 1))
            stack.append((m, b, fm, frm, fb, right, 0.5 * tol, depth + 1))
    return sign * total

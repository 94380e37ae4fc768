"""Grid scan + bisection for roots of a scalar function on (lo, hi].

Sign changes are bracketed and bisected; grid-local minima of |f| that dip
below ``flat_threshold`` without a sign change are refined by golden-section
search and accepted only if the refined value converges to an actual zero
(best effort for double or near-double roots).
"""

from __future__ import annotations

from typing import Callable, List, Optional

_GOLDEN = 0.5 * (3.0 - 5.0 ** 0.5)


def bisect_root(f: Callable[[float], float], a: float, b: float,
                fa: float, fb: float, tol: float) -> float:
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError("root is not bracketed")
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if fa * fm < 0.0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def _golden_min(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    x1 = a + _GOLDEN * (b - a)
    x2 = b - _GOLDEN * (b - a)
    f1, f2 = abs(f(x1)), abs(f(x2))
    while b - a > tol:
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = a + _GOLDEN * (b - a)
            f1 = abs(f(x1))
        else:
            a, x1, f1 = x1, x2, f2
            x2 = b - _GOLDEN * (b - a)
            f2 = abs(f(x2))
    return 0.5 * (a + b)


def scan_roots(f: Callable[[float], float], lo: float, hi: float, step: float,
               tol: float, n_max: Optional[int] = None,
               flat_threshold: float = 1e-8,
               flat_accept: float = 1e-11) -> List[float]:
    """Roots of f on (lo, hi], ascending; stops early after ``n_max`` roots."""
    if step <= 0 or tol <= 0:
        raise ValueError("step and tol must be positive")
    roots: List[float] = []
    window: List[tuple] = []  # last three (x, f(x)) samples
    x_prev, f_prev = lo, f(lo)
    window.append((x_prev, f_prev))
    n_cells = int((hi - lo) / step + 1e-9)
    for i in range(1, n_cells + 2):
        x = lo + i * step
        if x > hi + 0.5 * step:
            break
        x = min(x, hi)
        fx = f(x)
        bracketed = False
        if f_prev == 0.0 or f_prev * fx < 0.0:
            roots.append(bisect_root(f, x_prev, x, f_prev, fx, tol))
            bracketed = True
        window.append((x, fx))
        if len(window) > 3:
            window.pop(0)
        if not bracketed and len(window) == 3:
            (x0, f0), (x1, f1), (x2, f2) = window
            same_sign = f0 * f1 > 0.0 and f1 * f2 > 0.0
            if (same_sign and abs(f1) < flat_threshold
                    and abs(f1) <= abs(f0) and abs(f1) <= abs(f2)):
                xm = _golden_min(f, x0, x2, tol)
                if abs(f(xm)) < flat_accept and not any(abs(xm - r) <= 2 * step for r in roots):
                    roots.append(xm)
        if n_max is not None and len(roots) >= n_max:
            break
        x_prev, f_prev = x, fx
        if x >= hi:
            break
    roots.sort()
    return roots[:n_max] if n_max is not None else roots

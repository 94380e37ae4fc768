"""Closed-form smooth functions with exact derivatives of any order.

The expression language covers real polynomials and sin/cos/sinh/cosh/exp
of affine arguments, and is closed under sums, products, real scaling and
d/dx.  Values are kept as a merged sum of terms

    coeff * x**p * f1(a1*x + b1) * f2(a2*x + b2) * ...

so differentiation is purely structural and pointwise evaluation is cheap.
No rewriting across different atoms is attempted (e.g. ``sin(x)**2`` and
``1 - cos(x)**2`` stay distinct); value equality is decided through
:meth:`SmoothExpr.equivalent`, which simplifies the difference and then
compares on a fixed probe grid.
"""

from __future__ import annotations

import math
from typing import Iterable, Union

import numpy as np

SIN, COS, SINH, COSH, EXP = range(5)

_SCALAR_FUNCS = (math.sin, math.cos, math.sinh, math.cosh, math.exp)
_ARRAY_FUNCS = (np.sin, np.cos, np.sinh, np.cosh, np.exp)
_NAMES = ("sin", "cos", "sinh", "cosh", "exp")

# (sign, new kind) of d/dx applied to each atom kind; the chain-rule factor
# ``a`` is applied separately.
_ATOM_DERIV = {SIN: (1.0, COS), COS: (-1.0, SIN), SINH: (1.0, COSH),
               COSH: (1.0, SINH), EXP: (1.0, EXP)}

# Fixed probe grid for value comparisons.  The spacing is deliberately not
# a divisor of common half-periods so lattices of trig zeros cannot hide a
# nonzero difference.
PROBE_GRID = tuple(-3.7 + 0.475 * j for j in range(17))


def _canonical(raw_terms: Iterable[tuple]) -> tuple:
    merged: dict = {}
    for coeff, xpow, atoms in raw_terms:
        if coeff == 0.0:
            continue
        folded = []
        for kind, a, b in atoms:
            if a == 0.0:
                # zero-frequency atom is the constant f(b)
                coeff *= _SCALAR_FUNCS[kind](b)
            else:
                folded.append((kind, a, b))
        if coeff == 0.0:
            continue
        key = (xpow, tuple(sorted(folded)))
        merged[key] = merged.get(key, 0.0) + coeff
    return tuple(sorted((k[0], k[1], c) for k, c in merged.items() if c != 0.0))


class SmoothExpr:
    """A smooth function of one real variable in the closed atom language."""

    __slots__ = ("_terms",)

    def __init__(self, raw_terms: Iterable[tuple] = ()):
        # raw term format: (coeff, xpow, atoms) with atoms ((kind, a, b), ...)
        self._terms = _canonical(raw_terms)

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: Union["SmoothExpr", float]) -> "SmoothExpr":
        other = _coerce(other)
        out = SmoothExpr.__new__(SmoothExpr)
        out._terms = _canonical([(c, p, a) for p, a, c in self._terms]
                                + [(c, p, a) for p, a, c in other._terms])
        return out

    __radd__ = __add__

    def __neg__(self) -> "SmoothExpr":
        return self * -1.0

    def __sub__(self, other: Union["SmoothExpr", float]) -> "SmoothExpr":
        return self + (-_coerce(other))

    def __rsub__(self, other: Union["SmoothExpr", float]) -> "SmoothExpr":
        return _coerce(other) + (-self)

    def __mul__(self, other: Union["SmoothExpr", float]) -> "SmoothExpr":
        if isinstance(other, (int, float)):
            out = SmoothExpr.__new__(SmoothExpr)
            out._terms = _canonical([(c * other, p, a) for p, a, c in self._terms])
            return out
        raw = []
        for p1, a1, c1 in self._terms:
            for p2, a2, c2 in other._terms:
                raw.append((c1 * c2, p1 + p2, a1 + a2))
        return SmoothExpr(raw)

    def __rmul__(self, other: float) -> "SmoothExpr":
        return self * other

    # -- calculus --------------------------------------------------------

    def derivative(self, n: int = 1) -> "SmoothExpr":
        """Exact n-th derivative; stays inside the expression language."""
        if n < 0:
            raise ValueError("derivative order must be non-negative")
        terms = self._terms
        for _ in range(n):
            raw = []
            for p, atoms, c in terms:
                if p > 0:
                    raw.append((c * p, p - 1, atoms))
                for j, (kind, a, b) in enumerate(atoms):
                    sign, new_kind = _ATOM_DERIV[kind]
                    new_atoms = atoms[:j] + ((new_kind, a, b),) + atoms[j + 1:]
                    raw.append((c * sign * a, p, new_atoms))
            terms = _canonical(raw)
        out = SmoothExpr.__new__(SmoothExpr)
        out._terms = terms
        return out

    def __call__(self, x):
        if isinstance(x, np.ndarray):
            acc = np.zeros_like(x, dtype=float)
            for p, atoms, c in self._terms:
                t = c * np.power(x, p) if p else np.full(x.shape, c)
                for kind, a, b in atoms:
                    t = t * _ARRAY_FUNCS[kind](a * x + b)
                acc += t
            return acc
        acc = 0.0
        for p, atoms, c in self._terms:
            v = c
            if p:
                v *= x ** p
            for kind, a, b in atoms:
                v *= _SCALAR_FUNCS[kind](a * x + b)
            acc += v
        return acc

    def magnitude(self, x):
        """Cancellation-free envelope: the sum of absolute term values.

        Bounds |self(x)| from above and tracks the size of the intermediates
        actually formed during evaluation, which is the right scale for
        backward-error tests on expressions with large cancelling terms."""
        if isinstance(x, np.ndarray):
            acc = np.zeros_like(x, dtype=float)
            for p, atoms, c in self._terms:
                t = abs(c) * np.abs(np.power(x, p)) if p else np.full(x.shape, abs(c))
                for kind, a, b in atoms:
                    t = t * np.abs(_ARRAY_FUNCS[kind](a * x + b))
                acc += t
            return acc
        acc = 0.0
        for p, atoms, c in self._terms:
            v = abs(c)
            if p:
                v *= abs(x) ** p
            for kind, a, b in atoms:
                v *= abs(_SCALAR_FUNCS[kind](a * x + b))
            acc += v
        return acc

    # -- inspection ------------------------------------------------------

    @property
    def terms(self) -> tuple:
        return self._terms

    def is_structurally_zero(self) -> bool:
        return not self._terms

    def max_coeff(self) -> float:
        return max((abs(c) for _, _, c in self._terms), default=0.0)

    def equivalent(self, other: Union["SmoothExpr", float], tol: float = 1e-10) -> bool:
        """Value equality: simplify the difference, then probe-grid compare."""
        diff = self - _coerce(other)
        if not diff._terms:
            return True
        xs = np.asarray(PROBE_GRID)
        scale = max(1.0, float(np.max(np.abs(self(xs)))) if self._terms else 0.0,
                    float(np.max(np.abs(_coerce(other)(xs)))) if _coerce(other)._terms else 0.0)
        return float(np.max(np.abs(diff(xs)))) <= tol * scale

    def __eq__(self, other) -> bool:
        return isinstance(other, SmoothExpr) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "SmoothExpr(0)"
        parts = []
        for p, atoms, c in self._terms:
            bits = [f"{c:g}"]
            if p:
                bits.append("x" if p == 1 else f"x^{p}")
            for kind, a, b in atoms:
                arg = f"{a:g}x" + (f"{b:+g}" if b else "")
                bits.append(f"{_NAMES[kind]}({arg})")
            parts.append("*".join(bits))
        return "SmoothExpr(" + " + ".join(parts) + ")"


def _coerce(value: Union[SmoothExpr, float]) -> SmoothExpr:
    if isinstance(value, SmoothExpr):
        return value
    return const(float(value))


# -- factories -----------------------------------------------------------

def const(c: float) -> SmoothExpr:
    return SmoothExpr([(float(c), 0, ())])


def monomial(power: int, coeff: float = 1.0) -> SmoothExpr:
    if power < 0:
        raise ValueError("polynomial powers must be non-negative")
    return SmoothExpr([(float(coeff), int(power), ())])


def poly(*coeffs: float) -> SmoothExpr:
    """Polynomial with ascending coefficients: poly(c0, c1, ...) = c0 + c1*x + ..."""
    return SmoothExpr([(float(c), p, ()) for p, c in enumerate(coeffs)])


def _atom(kind: int, a: float, b: float) -> SmoothExpr:
    return SmoothExpr([(1.0, 0, ((kind, float(a), float(b)),))])


def sin_expr(a: float = 1.0, b: float = 0.0) -> SmoothExpr:
    return _atom(SIN, a, b)


def cos_expr(a: float = 1.0, b: float = 0.0) -> SmoothExpr:
    return _atom(COS, a, b)


def sinh_expr(a: float = 1.0, b: float = 0.0) -> SmoothExpr:
    return _atom(SINH, a, b)


def cosh_expr(a: float = 1.0, b: float = 0.0) -> SmoothExpr:
    return _atom(COSH, a, b)


def exp_expr(a: float = 1.0, b: float = 0.0) -> SmoothExpr:
    return _atom(EXP, a, b)


X = monomial(1)
ZERO = SmoothExpr()
ONE = const(1.0)

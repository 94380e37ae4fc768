"""Piecewise-smooth distributions with finite singular support.

An element is stored in split form: strictly increasing breakpoints
``x_1 < ... < x_m``, one :class:`~deltabeam.smooth.SmoothExpr` per open
interval between them (m+1 pieces, the outer two extending to infinity),
and a finite set of Dirac terms ``coeff * delta^(order)`` anchored at
breakpoints.  The space is closed under addition, scaling, the
distributional derivative and the one-sided product :func:`star`, so the
four operations together form a (non-commutative) differential algebra.

The product is evaluated through its explicit breakpoint formula: on each
common-refinement interval the pieces multiply pointwise, and at each
breakpoint a delta term of the left factor is multiplied by the *right*
piece of the right factor while a delta term of the right factor is
multiplied by the *left* piece of the left factor; products of two delta
terms vanish.  Multiplying a smooth function into a delta term uses the
classical expansion

    g * delta^(n)_xi = (-1)^n * sum_k (-1)^k C(n,k) g^(n-k)(xi) delta^(k)_xi

which is exact here because pieces carry exact derivatives.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from math import comb, isfinite
from typing import Iterable, Sequence, Union

import numpy as np

from .smooth import ONE, ZERO, SmoothExpr, const

#: delta coefficients at or below this magnitude are dropped by normalization
ZERO_TOL = 1e-12

#: guard against runaway orders from repeated differentiation
MAX_DELTA_ORDER = 8


@dataclass(frozen=True)
class DeltaTerm:
    """One term ``coeff * delta^(order)`` at ``location``."""

    location: float
    order: int
    coeff: float

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("delta order must be non-negative")
        if not (isfinite(self.location) and isfinite(self.coeff)):
            raise ValueError("delta location and coefficient must be finite")


class PiecewiseDistribution:
    """Split-form distribution; immutable, all operations return new values."""

    __slots__ = ("breakpoints", "pieces", "deltas")

    def __init__(self, breakpoints: Sequence[float] = (),
                 pieces: Sequence[Union[SmoothExpr, float]] = (ZERO,),
                 deltas: Iterable[DeltaTerm] = ()):
        bps = tuple(float(b) for b in breakpoints)
        if any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        ps = tuple(p if isinstance(p, SmoothExpr) else const(p) for p in pieces)
        if len(ps) != len(bps) + 1:
            raise ValueError(f"need {len(bps) + 1} pieces for {len(bps)} breakpoints, "
                             f"got {len(ps)}")
        self.breakpoints = bps
        self.pieces = ps
        self.deltas = tuple(deltas)

    # -- canonical form ----------------------------------------------------

    def normalized(self) -> "PiecewiseDistribution":
        """Canonical form: merged deltas, delta locations as breakpoints,
        removable breakpoints (no delta, equal adjacent pieces) dropped."""
        merged: dict = {}
        for d in self.deltas:
            if d.order > MAX_DELTA_ORDER:
                raise ValueError(f"delta order {d.order} exceeds cap {MAX_DELTA_ORDER}")
            key = (d.location, d.order)
            merged[key] = merged.get(key, 0.0) + d.coeff
        merged = {k: c for k, c in merged.items() if abs(c) > ZERO_TOL}

        bps = list(self.breakpoints)
        pieces = list(self.pieces)
        for loc in sorted({k[0] for k in merged}):
            if loc not in bps:
                i = bisect.bisect_right(bps, loc)
                bps.insert(i, loc)
                pieces.insert(i, pieces[i])

        delta_locs = {k[0] for k in merged}
        keep_bps, keep_pieces = [], [pieces[0]]
        for i, b in enumerate(bps):
            if b not in delta_locs and pieces[i + 1].equivalent(keep_pieces[-1]):
                continue
            keep_bps.append(b)
            keep_pieces.append(pieces[i + 1])

        deltas = tuple(DeltaTerm(loc, order, c)
                       for (loc, order), c in sorted(merged.items()))
        return PiecewiseDistribution(keep_bps, keep_pieces, deltas)

    # -- linear structure ----------------------------------------------------

    def __add__(self, other) -> "PiecewiseDistribution":
        other = _coerce(other)
        bps, f_pieces, g_pieces = _refine(self, other)
        pieces = [f + g for f, g in zip(f_pieces, g_pieces)]
        return PiecewiseDistribution(bps, pieces, self.deltas + other.deltas).normalized()

    __radd__ = __add__

    def __sub__(self, other) -> "PiecewiseDistribution":
        return self + (_coerce(other) * -1.0)

    def __rsub__(self, other) -> "PiecewiseDistribution":
        return _coerce(other) + (self * -1.0)

    def __neg__(self) -> "PiecewiseDistribution":
        return self * -1.0

    def __mul__(self, other) -> "PiecewiseDistribution":
        if isinstance(other, (int, float)):
            c = float(other)
            return PiecewiseDistribution(
                self.breakpoints, [p * c for p in self.pieces],
                [DeltaTerm(d.location, d.order, d.coeff * c) for d in self.deltas],
            ).normalized()
        if isinstance(other, SmoothExpr):
            return self.mul_smooth(other)
        return star(self, other)

    def __rmul__(self, other) -> "PiecewiseDistribution":
        if isinstance(other, (int, float, SmoothExpr)):
            return self.__mul__(other)
        return NotImplemented

    # -- multiplicative structure ---------------------------------------------

    def mul_smooth(self, g: SmoothExpr) -> "PiecewiseDistribution":
        """Product with a globally smooth function (order-independent)."""
        pieces = [g * p for p in self.pieces]
        deltas = []
        for d in self.deltas:
            deltas.extend(_smooth_times_delta(g, d))
        return PiecewiseDistribution(self.breakpoints, pieces, deltas).normalized()

    def star(self, other: "PiecewiseDistribution") -> "PiecewiseDistribution":
        return star(self, other)

    # -- calculus ---------------------------------------------------------------

    def derivative(self, n: int = 1) -> "PiecewiseDistribution":
        """Distributional derivative applied ``n`` times: pieces differentiate,
        every breakpoint sheds a jump delta, delta orders shift up."""
        if n < 0:
            raise ValueError("derivative order must be non-negative")
        out = self.normalized()
        for _ in range(n):
            deltas = [DeltaTerm(d.location, d.order + 1, d.coeff) for d in out.deltas]
            for i, b in enumerate(out.breakpoints):
                jump = out.pieces[i + 1](b) - out.pieces[i](b)
                deltas.append(DeltaTerm(b, 0, jump))
            pieces = [p.derivative() for p in out.pieces]
            out = PiecewiseDistribution(out.breakpoints, pieces, deltas).normalized()
        return out

    # -- inspection ---------------------------------------------------------------

    @property
    def order(self) -> int:
        """0 for a regular distribution, else 1 + highest delta order."""
        norm = self.normalized()
        if not norm.deltas:
            return 0
        return 1 + max(d.order for d in norm.deltas)

    def singular_support(self) -> tuple:
        """Breakpoints where the pieces fail to glue smoothly or a delta sits.

        Pieces are real-analytic, so after normalization every surviving
        breakpoint is genuinely singular."""
        return self.normalized().breakpoints

    def limits_at(self, x: float) -> tuple:
        """One-sided limits (left, right) of the regular part; deltas ignored."""
        i = bisect.bisect_left(self.breakpoints, x)
        if i < len(self.breakpoints) and self.breakpoints[i] == x:
            return (self.pieces[i](x), self.pieces[i + 1](x))
        return (self.pieces[i](x), self.pieces[i](x))

    def eval_regular(self, x):
        """Regular-part values, right-continuous at breakpoints; array friendly."""
        xs = np.asarray(x, dtype=float)
        idx = np.searchsorted(np.asarray(self.breakpoints), xs, side="right")
        out = np.empty_like(xs)
        for i in range(len(self.pieces)):
            mask = idx == i
            if np.any(mask):
                out[mask] = self.pieces[i](xs[mask])
        return float(out) if np.isscalar(x) or xs.ndim == 0 else out

    def delta_coefficients(self, location: float) -> dict:
        out: dict = {}
        for d in self.normalized().deltas:
            if d.location == location:
                out[d.order] = d.coeff
        return out

    def max_coeff_magnitude(self) -> float:
        """Largest magnitude among piece term coefficients and delta coefficients."""
        m = max((p.max_coeff() for p in self.pieces), default=0.0)
        return max([m] + [abs(d.coeff) for d in self.deltas])

    def __repr__(self):
        return (f"PiecewiseDistribution(breakpoints={self.breakpoints}, "
                f"pieces={list(self.pieces)}, deltas={list(self.deltas)})")


# -- construction helpers -------------------------------------------------

def _coerce(value) -> PiecewiseDistribution:
    if isinstance(value, PiecewiseDistribution):
        return value
    if isinstance(value, SmoothExpr):
        return from_smooth(value)
    if isinstance(value, (int, float)):
        return from_smooth(const(value))
    raise TypeError(f"cannot interpret {value!r} as a distribution")


def from_smooth(expr: Union[SmoothExpr, float]) -> PiecewiseDistribution:
    expr = expr if isinstance(expr, SmoothExpr) else const(expr)
    return PiecewiseDistribution((), (expr,))


def piecewise(breakpoints: Sequence[float],
              pieces: Sequence[Union[SmoothExpr, float]],
              deltas: Iterable[DeltaTerm] = ()) -> PiecewiseDistribution:
    return PiecewiseDistribution(breakpoints, pieces, deltas)


def heaviside(x0: float = 0.0) -> PiecewiseDistribution:
    """The unit step H(x - x0)."""
    return PiecewiseDistribution((x0,), (ZERO, ONE))


def dirac(location: float = 0.0, order: int = 0, coeff: float = 1.0) -> PiecewiseDistribution:
    return PiecewiseDistribution((location,), (ZERO, ZERO),
                                 (DeltaTerm(float(location), order, float(coeff)),))


# -- internals -------------------------------------------------------------

def _refine(f: PiecewiseDistribution, g: PiecewiseDistribution):
    """Common breakpoint refinement with both piece lists re-indexed onto it."""
    bps = sorted(set(f.breakpoints) | set(g.breakpoints))
    return bps, _pieces_on(f, bps), _pieces_on(g, bps)


def _pieces_on(d: PiecewiseDistribution, bps: Sequence[float]):
    out = [d.pieces[0]]
    for b in bps:
        out.append(d.pieces[bisect.bisect_right(d.breakpoints, b)])
    return out


def _smooth_times_delta(g: SmoothExpr, d: DeltaTerm):
    """Expand ``g * coeff*delta^(n)`` into deltas of order <= n at the same point."""
    n = d.order
    g_derivs = [g]
    for _ in range(n):
        g_derivs.append(g_derivs[-1].derivative())
    sign_n = -1.0 if n % 2 else 1.0
    out = []
    for k in range(n + 1):
        sign_k = -1.0 if k % 2 else 1.0
        value = g_derivs[n - k](d.location)
        out.append(DeltaTerm(d.location, k,
                             d.coeff * sign_n * sign_k * comb(n, k) * value))
    return out


# -- the operation surface ---------------------------------------------------

def normalize(f: PiecewiseDistribution) -> PiecewiseDistribution:
    return f.normalized()


def add(f: PiecewiseDistribution, g: PiecewiseDistribution) -> PiecewiseDistribution:
    return f + g


def scale(f: PiecewiseDistribution, c: float) -> PiecewiseDistribution:
    return f * float(c)


def dual_mul_smooth(g: SmoothExpr, f: PiecewiseDistribution) -> PiecewiseDistribution:
    return f.mul_smooth(g)


def star(f: PiecewiseDistribution, g: PiecewiseDistribution) -> PiecewiseDistribution:
    """One-sided product: pieces multiply pointwise; at a breakpoint the left
    factor's deltas see the right factor's *right* piece and the right
    factor's deltas see the left factor's *left* piece; delta-delta products
    vanish."""
    f = f.normalized()
    g = g.normalized()
    bps, f_pieces, g_pieces = _refine(f, g)
    pieces = [fp * gp for fp, gp in zip(f_pieces, g_pieces)]
    deltas = []
    index = {b: i for i, b in enumerate(bps)}
    for d in f.deltas:
        right_piece = g_pieces[index[d.location] + 1]
        deltas.extend(_smooth_times_delta(right_piece, d))
    for d in g.deltas:
        left_piece = f_pieces[index[d.location]]
        deltas.extend(_smooth_times_delta(left_piece, d))
    return PiecewiseDistribution(bps, pieces, deltas).normalized()


def derivative(f: PiecewiseDistribution, n: int = 1) -> PiecewiseDistribution:
    return f.derivative(n)


def order(f: PiecewiseDistribution) -> int:
    return f.order


def sing_supp(f: PiecewiseDistribution) -> set:
    return set(f.singular_support())


def eval_limits(f: PiecewiseDistribution, x: float) -> tuple:
    return f.limits_at(x)

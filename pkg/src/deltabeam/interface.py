"""Single-junction interface machinery for the 4th-order mode equation.

The mode equation with split coefficients reads, in expanded form,

    sum_{i=0..2} C(2,i) [ a0^(i) * phi^(4-i) + phi^(4-i) * a1^(i) ]
        - w^2 ( b0 * phi + phi * b1 ) = 0

with ``*`` the one-sided distribution product.  Around one singular point
xi0 the coefficient data is a :class:`CoeffSet`: smooth left/right parts
``a_{i-}, a_{i+}`` (and ``b_-, b_+``), a 2x2 block ``A[i][j]`` of delta
and delta' coefficients in ``a_i``, and a 2x4 block ``B[i][j]`` of delta
coefficients up to order three in ``b_i``.

A solution splits into smooth halves ``phi1`` (left) and ``phi2`` (right)
which satisfy regular 4th-order ODEs on their half-lines and are coupled
at xi0 by a linear condition ``A_mat @ (phi1, phi1', phi1'', phi1''')^T ==
B_mat @ (phi2, ...)^T``.  :func:`interface_matrices` evaluates the two 4x4
matrices numerically at xi0; :func:`residual_check` verifies a candidate
pair end to end by assembling the full distributional residual inside the
algebra and reading off the delta coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

from .distributions import PiecewiseDistribution, dirac, piecewise
from .errors import PreconditionError
from .smooth import SmoothExpr, const

#: values at or below this magnitude count as zero in the nonvanishing checks
COND_TOL = 1e-12

#: probe resolution used by the global nonvanishing check (semidecision)
N_PROBE = 1001

#: probe resolution per half-interval for the ODE-satisfaction precondition
N_ODE_PROBE = 101
ODE_RTOL = 1e-8


def _expr(value) -> SmoothExpr:
    return value if isinstance(value, SmoothExpr) else const(float(value))


@dataclass(frozen=True)
class CoeffSet:
    """Coefficient data of the mode equation at one singular point."""

    xi0: float
    w: float
    a0_minus: SmoothExpr
    a0_plus: SmoothExpr
    a1_minus: SmoothExpr
    a1_plus: SmoothExpr
    A: tuple  # 2x2, A[i][j] multiplies delta^(j) in a_i
    B: tuple  # 2x4, B[i][j] multiplies delta^(j) in b_i
    b_minus: SmoothExpr
    b_plus: SmoothExpr

    def __post_init__(self):
        if self.w < 0:
            raise ValueError("angular frequency must be non-negative")
        for name in ("a0_minus", "a0_plus", "a1_minus", "a1_plus", "b_minus", "b_plus"):
            object.__setattr__(self, name, _expr(getattr(self, name)))
        A = tuple(tuple(float(v) for v in row) for row in self.A)
        B = tuple(tuple(float(v) for v in row) for row in self.B)
        if len(A) != 2 or any(len(r) != 2 for r in A):
            raise ValueError("A must be 2x2")
        if len(B) != 2 or any(len(r) != 4 for r in B):
            raise ValueError("B must be 2x4")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    def a_smooth(self, i: int) -> tuple:
        return ((self.a0_minus, self.a0_plus), (self.a1_minus, self.a1_plus))[i]

    def default_interval(self) -> tuple:
        return (self.xi0 - 1.0, self.xi0 + 1.0)


@dataclass(frozen=True)
class DerivedCoefficients:
    a: SmoothExpr
    a_minus: SmoothExpr
    a_plus: SmoothExpr
    v0: SmoothExpr
    v1: SmoothExpr
    b_minus: SmoothExpr
    b_plus: SmoothExpr


def derived_coefficients(c: CoeffSet) -> DerivedCoefficients:
    """The combined coefficients: a = a0- + a1+, a± = a0± + a1±, v_i = a_i+ - a_i-."""
    return DerivedCoefficients(
        a=c.a0_minus + c.a1_plus,
        a_minus=c.a0_minus + c.a1_minus,
        a_plus=c.a0_plus + c.a1_plus,
        v0=c.a0_plus - c.a0_minus,
        v1=c.a1_plus - c.a1_minus,
        b_minus=c.b_minus,
        b_plus=c.b_plus,
    )


@dataclass(frozen=True)
class ConditionReport:
    C1_ok: bool
    C2_ok: bool
    a_at_xi0: float
    min_abs_a_minus: float
    min_abs_a_plus: float


def check_conditions(c: CoeffSet, probe_grid: Optional[Sequence[float]] = None) -> ConditionReport:
    """C1: the mixed coefficient a is nonzero at xi0.  C2: a- and a+ have no
    zero on the probe grid (a semidecision for general smooth coefficients)."""
    d = derived_coefficients(c)
    if probe_grid is None:
        lo, hi = c.default_interval()
        probe_grid = np.linspace(lo, hi, N_PROBE)
    xs = np.asarray(probe_grid, dtype=float)
    a_at = float(d.a(c.xi0))
    min_minus = float(np.min(np.abs(d.a_minus(xs))))
    min_plus = float(np.min(np.abs(d.a_plus(xs))))
    return ConditionReport(
        C1_ok=abs(a_at) > COND_TOL,
        C2_ok=min(min_minus, min_plus) > COND_TOL,
        a_at_xi0=a_at,
        min_abs_a_minus=min_minus,
        min_abs_a_plus=min_plus,
    )


@dataclass(frozen=True)
class InterfaceMatrices:
    A_mat: np.ndarray
    B_mat: np.ndarray

    def __post_init__(self):
        if not (np.all(np.isfinite(self.A_mat)) and np.all(np.isfinite(self.B_mat))):
            raise ValueError("interface matrix entries must be finite")


def interface_matrices(c: CoeffSet, probe_grid: Optional[Sequence[float]] = None) -> InterfaceMatrices:
    """The 4x4 junction matrices acting on (phi, phi', phi'', phi''')^T,
    evaluated numerically at xi0.  Rows correspond, top to bottom, to the
    coefficients of delta, delta', delta'', delta''' in the assembled
    residual."""
    report = check_conditions(c, probe_grid)
    if not (report.C1_ok and report.C2_ok):
        raise PreconditionError(
            f"nonvanishing conditions failed: C1_ok={report.C1_ok} "
            f"(a(xi0)={report.a_at_xi0:.3e}), C2_ok={report.C2_ok} "
            f"(min |a-|={report.min_abs_a_minus:.3e}, min |a+|={report.min_abs_a_plus:.3e})"
        )
    d = derived_coefficients(c)
    x0 = c.xi0
    w2 = c.w ** 2
    am, amp = d.a_minus(x0), d.a_minus.derivative()(x0)
    ap, app = d.a_plus(x0), d.a_plus.derivative()(x0)
    aa, aap = d.a(x0), d.a.derivative()(x0)
    (A00, A01), (A10, A11) = c.A
    (B00, B01, B02, B03), (B10, B11, B12, B13) = c.B

    A_mat = np.array([
        [B10 * w2, -B11 * w2, amp + B12 * w2, am - B13 * w2],
        [B11 * w2, -2 * B12 * w2, am + 3 * B13 * w2, 0.0],
        [-aap + B12 * w2, aa - 3 * B13 * w2, -A10, A11],
        [aa + B13 * w2, 0.0, -A11, 0.0],
    ])
    B_mat = np.array([
        [-B00 * w2, B01 * w2, app - B02 * w2, ap + B03 * w2],
        [-B01 * w2, 2 * B02 * w2, ap - 3 * B03 * w2, 0.0],
        [-aap - B02 * w2, aa + 3 * B03 * w2, A00, -A01],
        [aa - B03 * w2, 0.0, A01, 0.0],
    ])
    return InterfaceMatrices(A_mat=A_mat, B_mat=B_mat)


def _det3(m) -> float:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _det4(m) -> float:
    total = 0.0
    for j in range(4):
        minor = [[m[r][c] for c in range(4) if c != j] for r in range(1, 4)]
        total += (-1.0) ** j * m[0][j] * _det3(minor)
    return total


@dataclass(frozen=True)
class SolvabilityReport:
    det_A: float
    det_B: float
    unique_from_left: bool
    unique_from_right: bool


def solvability(m: InterfaceMatrices) -> SolvabilityReport:
    """Unique continuation across the junction: boundary data left of xi0
    determines the solution iff det B != 0; data right of xi0 iff det A != 0.
    Determinants use direct 4x4 cofactor expansion; zero is decided against a
    Hadamard-style scale so exact cancellations survive rounding."""
    det_a = _det4(m.A_mat)
    det_b = _det4(m.B_mat)
    scale_a = max(1e-300, float(np.prod(np.linalg.norm(m.A_mat, axis=1))))
    scale_b = max(1e-300, float(np.prod(np.linalg.norm(m.B_mat, axis=1))))
    return SolvabilityReport(
        det_A=det_a,
        det_B=det_b,
        unique_from_left=abs(det_b) > 1e-10 * scale_b,
        unique_from_right=abs(det_a) > 1e-10 * scale_a,
    )


@dataclass(frozen=True)
class RegularityReport:
    delta_free: bool
    max_order_bound: int


def classify_regularity(M: int) -> RegularityReport:
    """M is the largest distribution order among a_i'' and b_i.  Up to M = 4
    the solutions stay piecewise smooth; beyond that they may carry deltas of
    order at most M - 4."""
    if M < 0:
        raise ValueError("order bound must be non-negative")
    if M <= 4:
        return RegularityReport(delta_free=True, max_order_bound=0)
    return RegularityReport(delta_free=False, max_order_bound=M - 4)


@dataclass(frozen=True)
class ContinuityReport:
    C0_guaranteed: bool
    C1_guaranteed: bool


def continuity_class(c: CoeffSet) -> ContinuityReport:
    """Sufficient (not necessary) conditions: solutions are continuous when
    the a_i carry no delta' and the b_i no delta''' (A[i][1] = B[i][3] = 0);
    continuously differentiable when additionally A[i][0] = B[i][2] = 0."""
    a1_zero = all(abs(c.A[i][1]) <= COND_TOL for i in range(2))
    b3_zero = all(abs(c.B[i][3]) <= COND_TOL for i in range(2))
    a0_zero = all(abs(c.A[i][0]) <= COND_TOL for i in range(2))
    b2_zero = all(abs(c.B[i][2]) <= COND_TOL for i in range(2))
    c0 = a1_zero and b3_zero
    return ContinuityReport(C0_guaranteed=c0, C1_guaranteed=c0 and a0_zero and b2_zero)


@dataclass(frozen=True)
class ResidualReport:
    delta_coeffs: dict
    smooth_residual_max: float
    scale: float

    def within(self, rel_tol: float = 1e-6) -> bool:
        bound = rel_tol * self.scale
        return (all(abs(v) <= bound for v in self.delta_coeffs.values())
                and self.smooth_residual_max <= bound)


def _ode_residual_grid(phi: SmoothExpr, a_side: SmoothExpr, b_side: SmoothExpr,
                       w2: float, xs: np.ndarray):
    """Pointwise residual of the one-sided regular ODE
    a phi'''' + 2 a' phi''' + a'' phi'' - w^2 b phi, with a backward-error
    scale built from cancellation-free magnitude envelopes (mode shapes at
    large alpha form their values out of huge cancelling sinh/cosh terms)."""
    pairs = [
        (a_side, phi.derivative(4), 1.0),
        (a_side.derivative(), phi.derivative(3), 2.0),
        (a_side.derivative(2), phi.derivative(2), 1.0),
        (b_side, phi, w2),
    ]
    res = np.abs(a_side(xs) * phi.derivative(4)(xs)
                 + 2.0 * a_side.derivative()(xs) * phi.derivative(3)(xs)
                 + a_side.derivative(2)(xs) * phi.derivative(2)(xs)
                 - w2 * b_side(xs) * phi(xs))
    scale = np.maximum(1.0, sum(c * f.magnitude(xs) * g.magnitude(xs)
                                for f, g, c in pairs))
    return res, scale


def _coefficient_distribution(minus: SmoothExpr, plus: SmoothExpr, xi0: float,
                              delta_row: Sequence[float]) -> PiecewiseDistribution:
    out = piecewise((xi0,), (minus, plus))
    for j, coeff in enumerate(delta_row):
        if coeff != 0.0:
            out = out + dirac(xi0, j, coeff)
    return out


def residual_check(phi1: SmoothExpr, phi2: SmoothExpr, c: CoeffSet,
                   interval: Optional[tuple] = None) -> ResidualReport:
    """Assemble phi = H(xi0-x) phi1 + H(x-xi0) phi2 and evaluate the full
    distributional residual of the mode equation inside the algebra.

    Returns the coefficient of each delta order at xi0 together with the
    largest magnitude of the smooth part on the probe grid; everything is
    ~0 exactly when the pair satisfies the interface condition.  The pair
    must already solve the one-sided regular ODEs (checked on a probe grid,
    relative tolerance ``ODE_RTOL``).
    """
    lo, hi = interval if interval is not None else c.default_interval()
    if not (lo < c.xi0 < hi):
        raise ValueError("interval must contain xi0 in its interior")
    d = derived_coefficients(c)
    w2 = c.w ** 2

    for name, phi, a_side, b_side, xs in (
            ("left", phi1, d.a_minus, d.b_minus, np.linspace(lo, c.xi0, N_ODE_PROBE)),
            ("right", phi2, d.a_plus, d.b_plus, np.linspace(c.xi0, hi, N_ODE_PROBE))):
        res, scl = _ode_residual_grid(phi, a_side, b_side, w2, xs)
        rel = res / scl
        worst = int(np.argmax(rel))
        if rel[worst] > ODE_RTOL:
            raise PreconditionError(
                f"{name} half does not satisfy its regular ODE: relative "
                f"residual {rel[worst]:.3e} at x={xs[worst]:.6g}"
            )

    a0 = _coefficient_distribution(c.a0_minus, c.a0_plus, c.xi0, c.A[0] + (0.0, 0.0))
    a1 = _coefficient_distribution(c.a1_minus, c.a1_plus, c.xi0, c.A[1] + (0.0, 0.0))
    b0 = _coefficient_distribution(c.b_minus, c.b_plus, c.xi0, c.B[0])
    b1 = _coefficient_distribution(const(0.0), const(0.0), c.xi0, c.B[1])
    phi = piecewise((c.xi0,), (phi1, phi2))

    summands = []
    for i in range(3):
        weight = float(comb(2, i))
        phi_der = phi.derivative(4 - i)
        summands.append(weight * (a0.derivative(i) * phi_der))
        summands.append(weight * (phi_der * a1.derivative(i)))
    summands.append(-w2 * (b0 * phi))
    summands.append(-w2 * (phi * b1))

    total = summands[0]
    for s in summands[1:]:
        total = total + s

    scale = max(1.0, max(s.max_coeff_magnitude() for s in summands))
    delta_coeffs = {order: 0.0 for order in range(4)}
    delta_coeffs.update(total.delta_coefficients(c.xi0))

    xs = np.concatenate([np.linspace(lo, c.xi0, N_ODE_PROBE),
                         np.linspace(c.xi0, hi, N_ODE_PROBE)])
    smooth_max = float(np.max(np.abs(total.eval_regular(xs))))
    return ResidualReport(delta_coeffs=delta_coeffs,
                          smooth_residual_max=smooth_max, scale=scale)

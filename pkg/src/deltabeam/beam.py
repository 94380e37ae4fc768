"""Vibration modes of a beam with a stiffness jump and a point crack.

The beam occupies [0, 1] with flexural stiffness A on the left of the
junction xi0 and kA on the right; the crack at xi0 enters as a Dirac term
in the stiffness with left/right intensities lambda0, lambda1.  Separable
solutions have halves

    phi1(x) = A1 sin(alpha x) + B1 cos(alpha x) + C1 sinh(alpha x) + D1 cosh(alpha x)
    phi2(x) = A2 sin(alpha beta x) + ... ,  beta = k**-0.25

where the frequency parameter alpha satisfies alpha^4 = w^2 m / A.  The
boundary conditions (pinned-pinned or clamped-clamped) plus the four
junction conditions

    phi1''' = k phi2''',  phi1'' = k phi2'',
    phi1' + S phi1'' = phi2',  phi1 = phi2        (at xi0)

with S = (lambda0 + lambda1)/(k + 1) reduce to a 6x6 homogeneous system;
its determinant zeros are the characteristic frequencies.  A transfer
matrix oracle (classical displacement/slope/moment/shear continuity,
valid for the crack-free case) provides independent cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .errors import FrequencyShortfallError, NotAFrequencyError
from .interface import CoeffSet
from .rootfind import scan_roots
from .smooth import const

PP = "pp"
CC = "cc"

DEFAULT_ALPHA_MAX = 25.0
DEFAULT_GRID_STEP = 0.01
DEFAULT_TOL = 1e-12

#: gate on the smallest singular value of the (row-normalized) 6x6 system
MODE_SIGMA_TOL = 1e-6

#: sampling used for sup-norm mode normalization
N_NORM_SAMPLES = 1001


@dataclass(frozen=True)
class BeamModel:
    """Physical beam data; dimensions: A in N*m^2, m in kg/m, rest dimensionless."""

    A: float = 1.0
    k: float = 1.0
    m: float = 1.0
    xi0: float = 0.5
    lambda0: float = 0.0
    lambda1: float = 0.0
    bc: str = PP

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError("flexural stiffness A must be positive")
        if not self.k > 0:
            raise ValueError("stiffness ratio k must be positive")
        if not self.m > 0:
            raise ValueError("mass per unit length m must be positive")
        if not 0.0 < self.xi0 < 1.0:
            raise ValueError("junction position xi0 must lie strictly inside (0, 1)")
        if self.lambda0 < 0 or self.lambda1 < 0:
            raise ValueError("crack intensities must be non-negative")
        if self.bc not in (PP, CC):
            raise ValueError(f"unknown boundary condition {self.bc!r}; use 'pp' or 'cc'")


@dataclass(frozen=True)
class Mode:
    """One vibration mode.  ``consts`` holds (A1, B1, C1, D1, A2, B2, C2, D2);
    the shape is normalized to sup-norm 1 on [0, 1] with the sign fixed so the
    first largest-magnitude constant is positive.  ``residual`` is the smallest
    singular value of the row-normalized 6x6 system at ``alpha``."""

    alpha: float
    beta: float
    consts: tuple
    bc: str
    residual: float


@dataclass(frozen=True)
class SweepSpec:
    varying: str  # "lambda" | "k" | "xi0"
    grid: tuple
    base: BeamModel
    n_modes: int = 3

    def __post_init__(self):
        if self.varying not in ("lambda", "k", "xi0"):
            raise ValueError("varying must be one of 'lambda', 'k', 'xi0'")
        grid = tuple(float(v) for v in self.grid)
        if not grid:
            raise ValueError("sweep grid must be nonempty")
        if self.varying == "lambda" and any(v < 0 for v in grid):
            raise ValueError("crack intensities must be non-negative")
        if self.varying == "k" and any(v <= 0 for v in grid):
            raise ValueError("stiffness ratios must be positive")
        if self.varying == "xi0" and any(not 0 < v < 1 for v in grid):
            raise ValueError("junction positions must lie inside (0, 1)")
        if self.n_modes < 1:
            raise ValueError("n_modes must be at least 1")
        object.__setattr__(self, "grid", grid)


def s_param(bm: BeamModel) -> float:
    """Effective crack parameter S = (lambda0 + lambda1) / (k + 1)."""
    return (bm.lambda0 + bm.lambda1) / (bm.k + 1.0)


def to_coeffset(bm: BeamModel, w: float) -> CoeffSet:
    """Coefficient data of the mode equation, normalized by the left
    stiffness so the smooth parts are exactly 1 and k:

        a0 = H(xi0 - x) - k*lambda1 delta,   a1 = k H(x - xi0) - lambda0 delta,
        b  = m/A (smooth, carried on the left slot).
    """
    return CoeffSet(
        xi0=bm.xi0, w=float(w),
        a0_minus=const(1.0), a0_plus=const(0.0),
        a1_minus=const(0.0), a1_plus=const(bm.k),
        A=((-bm.k * bm.lambda1, 0.0), (-bm.lambda0, 0.0)),
        B=((0.0,) * 4, (0.0,) * 4),
        b_minus=const(bm.m / bm.A), b_plus=const(bm.m / bm.A),
    )


def to_coeffset_general(bm: BeamModel, lambda_ij: Sequence[Sequence[float]],
                        w: float) -> CoeffSet:
    """Split the crack between the two product slots: lambda_ij[i][j] is the
    delta intensity contributed by slot i on side j, constrained by
    lambda_ij[0][j] + lambda_ij[1][j] == lambda_j.  The smooth jump is shared
    evenly, so the summed coefficient matches the plain model while the
    frequencies may not."""
    lam = [[float(v) for v in row] for row in lambda_ij]
    if len(lam) != 2 or any(len(r) != 2 for r in lam):
        raise ValueError("lambda_ij must be 2x2")
    if abs(lam[0][0] + lam[1][0] - bm.lambda0) > 1e-12:
        raise ValueError("left intensities must sum to lambda0")
    if abs(lam[0][1] + lam[1][1] - bm.lambda1) > 1e-12:
        raise ValueError("right intensities must sum to lambda1")
    half_minus, half_plus = const(0.5), const(0.5 * bm.k)
    return CoeffSet(
        xi0=bm.xi0, w=float(w),
        a0_minus=half_minus, a0_plus=half_plus,
        a1_minus=half_minus, a1_plus=half_plus,
        A=((-(lam[0][0] + bm.k * lam[0][1]), 0.0),
           (-(lam[1][0] + bm.k * lam[1][1]), 0.0)),
        B=((0.0,) * 4, (0.0,) * 4),
        b_minus=const(bm.m / bm.A), b_plus=const(bm.m / bm.A),
    )


def interface_residual(bm: BeamModel, alpha: float,
                       phi1_bar: Sequence[float],
                       phi2_bar: Sequence[float]) -> np.ndarray:
    """Left-minus-right values of the four junction conditions for the given
    derivative vectors (phi, phi', phi'', phi''') at xi0."""
    p1 = np.asarray(phi1_bar, dtype=float)
    p2 = np.asarray(phi2_bar, dtype=float)
    if p1.shape != (4,) or p2.shape != (4,):
        raise ValueError("derivative vectors must have four components")
    s = s_param(bm)
    return np.array([
        p1[3] - bm.k * p2[3],
        p1[2] - bm.k * p2[2],
        p1[1] + s * p1[2] - p2[1],
        p1[0] - p2[0],
    ])


def characteristic_matrix(bm: BeamModel, alpha: float) -> np.ndarray:
    """The 6x6 homogeneous system for the free constants.

    Unknown ordering: PP -> (A1, C1, A2, B2, C2, D2) with B1 = D1 = 0;
    CC -> (C1, D1, A2, B2, C2, D2) with A1 = -C1, B1 = -D1.  Rows: two
    boundary conditions at x = 1, then continuity, slope + crack, moment
    and shear balance at xi0 (scaled by powers of alpha)."""
    if alpha <= 0:
        raise ValueError("frequency parameter alpha must be positive")
    k, xi0 = bm.k, bm.xi0
    beta = k ** -0.25
    s = s_param(bm)
    rk, rk4 = math.sqrt(k), k ** 0.25

    a1 = alpha * beta
    s1, c1, sh1, ch1 = math.sin(a1), math.cos(a1), math.sinh(a1), math.cosh(a1)
    a2 = xi0 * alpha * beta
    s2, c2, sh2, ch2 = math.sin(a2), math.cos(a2), math.sinh(a2), math.cosh(a2)
    a3 = xi0 * alpha
    s3, c3, sh3, ch3 = math.sin(a3), math.cos(a3), math.sinh(a3), math.cosh(a3)

    if bm.bc == PP:
        f1 = -c3 + alpha * s * s3
        f2 = -ch3 - alpha * s * sh3
        return np.array([
            [0.0, 0.0, s1, c1, sh1, ch1],
            [0.0, 0.0, -s1, -c1, sh1, ch1],
            [s3, sh3, -s2, -c2, -sh2, -ch2],
            [f1, f2, beta * c2, -beta * s2, beta * ch2, beta * sh2],
            [-s3, sh3, rk * s2, rk * c2, -rk * sh2, -rk * ch2],
            [-c3, ch3, rk4 * c2, -rk4 * s2, -rk4 * ch2, -rk4 * sh2],
        ])
    g1 = -c3 + ch3 + s * alpha * (s3 + sh3)
    g2 = s3 + sh3 + s * alpha * (c3 + ch3)
    return np.array([
        [0.0, 0.0, c1, -s1, ch1, sh1],
        [0.0, 0.0, s1, c1, sh1, ch1],
        [-s3 + sh3, -c3 + ch3, -s2, -c2, -sh2, -ch2],
        [g1, g2, -beta * c2, beta * s2, -beta * ch2, -beta * sh2],
        [s3 + sh3, c3 + ch3, rk * s2, rk * c2, -rk * sh2, -rk * ch2],
        [c3 + ch3, -s3 + sh3, rk4 * c2, -rk4 * s2, -rk4 * ch2, -rk4 * sh2],
    ])


def _row_normalized(mat: np.ndarray) -> np.ndarray:
    return mat / np.linalg.norm(mat, axis=1, keepdims=True)


def characteristic_det(bm: BeamModel, alpha: float) -> float:
    """Determinant of the characteristic system with every row scaled to unit
    Euclidean norm; zeros match the raw determinant while hyperbolic growth
    is kept out of the value."""
    return float(np.linalg.det(_row_normalized(characteristic_matrix(bm, alpha))))


def find_frequencies(bm: BeamModel, n_modes: int = 3,
                     alpha_max: float = DEFAULT_ALPHA_MAX,
                     grid_step: float = DEFAULT_GRID_STEP,
                     tol: float = DEFAULT_TOL) -> List[float]:
    """First ``n_modes`` positive roots of the characteristic determinant."""
    if n_modes < 1:
        raise ValueError("n_modes must be at least 1")
    roots = scan_roots(lambda a: characteristic_det(bm, a),
                       grid_step, alpha_max, grid_step, tol, n_max=n_modes)
    if len(roots) < n_modes:
        raise FrequencyShortfallError(roots, n_modes, alpha_max)
    return roots[:n_modes]


def _phi_values(consts: tuple, alpha: float, beta: float, xi0: float, x):
    a1, b1, c1, d1, a2, b2, c2, d2 = consts
    xs = np.asarray(x, dtype=float)
    left = (a1 * np.sin(alpha * xs) + b1 * np.cos(alpha * xs)
            + c1 * np.sinh(alpha * xs) + d1 * np.cosh(alpha * xs))
    ab = alpha * beta
    right = (a2 * np.sin(ab * xs) + b2 * np.cos(ab * xs)
             + c2 * np.sinh(ab * xs) + d2 * np.cosh(ab * xs))
    vals = np.where(xs <= xi0, left, right)
    return float(vals) if xs.ndim == 0 else vals


def mode_shape(bm: BeamModel, alpha: float) -> Mode:
    """Null direction of the characteristic system at ``alpha``, repackaged as
    the eight integration constants and normalized."""
    mat = _row_normalized(characteristic_matrix(bm, alpha))
    _, sigmas, vt = np.linalg.svd(mat)
    sigma_min = float(sigmas[-1])
    if sigma_min > MODE_SIGMA_TOL:
        raise NotAFrequencyError(alpha, float(np.linalg.det(mat)), sigma_min)
    v = vt[-1]
    if bm.bc == PP:
        a1, c1, a2, b2, c2, d2 = v
        consts = (a1, 0.0, c1, 0.0, a2, b2, c2, d2)
    else:
        c1, d1, a2, b2, c2, d2 = v
        consts = (-c1, -d1, c1, d1, a2, b2, c2, d2)
    beta = bm.k ** -0.25
    xs = np.linspace(0.0, 1.0, N_NORM_SAMPLES)
    sup = float(np.max(np.abs(_phi_values(consts, alpha, beta, bm.xi0, xs))))
    if sup == 0.0:
        raise NotAFrequencyError(alpha, float(np.linalg.det(mat)), sigma_min)
    consts = tuple(c / sup for c in consts)
    largest = max(range(8), key=lambda i: abs(consts[i]))
    if consts[largest] < 0:
        consts = tuple(-c for c in consts)
    return Mode(alpha=float(alpha), beta=beta, consts=consts, bc=bm.bc,
                residual=sigma_min)


def eval_mode(mode: Mode, bm: BeamModel, x):
    """Mode shape value(s) on [0, 1]; continuous across xi0."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0.0) or np.any(xs > 1.0):
        raise ValueError("evaluation points must lie in [0, 1]")
    return _phi_values(mode.consts, mode.alpha, mode.beta, bm.xi0, x)


def time_factor(w: float, P: float, Q: float, t: float) -> float:
    return P * math.cos(w * t) + Q * math.sin(w * t)


def alpha_to_omega(bm: BeamModel, alpha: float) -> float:
    """Angular frequency from the frequency parameter: w = alpha^2 sqrt(A/m)."""
    return alpha ** 2 * math.sqrt(bm.A / bm.m)


def mode_half_vectors(mode: Mode, bm: BeamModel) -> tuple:
    """(phi, phi', phi'', phi''') of each half at xi0, for interface checks."""
    a1, b1, c1, d1, a2, b2, c2, d2 = mode.consts
    out = []
    for (sa, sb, sc, sd), freq in (((a1, b1, c1, d1), mode.alpha),
                                   ((a2, b2, c2, d2), mode.alpha * mode.beta)):
        arg = freq * bm.xi0
        sn, cs, snh, csh = math.sin(arg), math.cos(arg), math.sinh(arg), math.cosh(arg)
        vec = []
        for n in range(4):
            # n-th derivative cycles sin -> cos -> -sin -> -cos; sinh <-> cosh
            trig = sa * (sn, cs, -sn, -cs)[n % 4] + sb * (cs, -sn, -cs, sn)[n % 4]
            hyp = sc * (snh, csh)[n % 2] + sd * (csh, snh)[n % 2]
            vec.append(freq ** n * (trig + hyp))
        out.append(np.array(vec))
    return out[0], out[1]


@dataclass(frozen=True)
class SweepRow:
    value: float
    alphas: tuple  # entries are float or None for unfound roots
    flagged: bool
    note: str = ""


@dataclass(frozen=True)
class SweepResult:
    varying: str
    n_modes: int
    rows: tuple


def _with_param(base: BeamModel, varying: str, value: float) -> BeamModel:
    if varying == "lambda":
        return BeamModel(base.A, base.k, base.m, base.xi0, value, value, base.bc)
    if varying == "k":
        return BeamModel(base.A, value, base.m, base.xi0,
                         base.lambda0, base.lambda1, base.bc)
    return BeamModel(base.A, base.k, base.m, value,
                     base.lambda0, base.lambda1, base.bc)


def sweep(spec: SweepSpec, alpha_max: float = DEFAULT_ALPHA_MAX,
          grid_step: float = DEFAULT_GRID_STEP,
          tol: float = DEFAULT_TOL) -> SweepResult:
    """Frequencies along a parameter grid.  Shortfalls become empty cells in
    the affected row rather than aborting; a row is flagged when a frequency
    jumps by more than ten times the larger of the scan step and the previous
    increment (a root-tracking continuity heuristic)."""
    rows: List[SweepRow] = []
    prev: Optional[tuple] = None
    prev_inc: Optional[tuple] = None
    for value in spec.grid:
        bm = _with_param(spec.base, spec.varying, value)
        note = ""
        try:
            alphas = tuple(find_frequencies(bm, spec.n_modes, alpha_max,
                                            grid_step, tol))
        except FrequencyShortfallError as err:
            alphas = tuple(err.found) + (None,) * (spec.n_modes - len(err.found))
            note = str(err)
        flagged = bool(note)
        increments = []
        if prev is not None:
            for i in range(spec.n_modes):
                if alphas[i] is None or prev[i] is None:
                    increments.append(None)
                    continue
                inc = abs(alphas[i] - prev[i])
                increments.append(inc)
                if prev_inc is None or prev_inc[i] is None:
                    continue  # no reference increment yet to calibrate the bound
                bound = 10.0 * max(grid_step, prev_inc[i])
                if inc > bound:
                    flagged = True
                    note = note or (f"alpha_{i + 1} moved by {inc:.3g} "
                                    f"(> bound {bound:.3g})")
        rows.append(SweepRow(value=value, alphas=alphas, flagged=flagged, note=note))
        prev = alphas
        prev_inc = tuple(increments) if increments else None
    return SweepResult(varying=spec.varying, n_modes=spec.n_modes, rows=tuple(rows))


# -- independent transfer-matrix oracle (crack-free case) -------------------

def _segment_transfer(gamma: float, stiffness: float, length: float) -> np.ndarray:
    """Propagate (phi, phi', M, V) with M = a phi'', V = M' across a uniform
    segment, via the Krylov-Duncan fundamental solutions."""
    gl = gamma * length
    ch, cs = math.cosh(gl), math.cos(gl)
    sh, sn = math.sinh(gl), math.sin(gl)
    t1, t2 = 0.5 * (ch + cs), 0.5 * (sh + sn)
    t3, t4 = 0.5 * (ch - cs), 0.5 * (sh - sn)
    g, a = gamma, stiffness
    return np.array([
        [t1, t2 / g, t3 / (g * g * a), t4 / (g ** 3 * a)],
        [g * t4, t1, t2 / (g * a), t3 / (g * g * a)],
        [a * g * g * t3, a * g * t4, t1, t2 / g],
        [a * g ** 3 * t2, a * g * g * t3, g * t4, t1],
    ])


def transfer_matrix_frequencies(bm: BeamModel, n_modes: int = 3,
                                alpha_max: float = DEFAULT_ALPHA_MAX,
                                grid_step: float = DEFAULT_GRID_STEP,
                                tol: float = DEFAULT_TOL) -> List[float]:
    """Cross-validation oracle for the crack-free stepped beam: classical
    continuity of displacement, slope, moment and shear at the junction."""
    if bm.lambda0 != 0.0 or bm.lambda1 != 0.0:
        raise ValueError("the transfer-matrix oracle covers the crack-free case only")

    def det2(alpha: float) -> float:
        w2 = alpha ** 4 * bm.A / bm.m
        g1 = (w2 * bm.m / bm.A) ** 0.25
        g2 = (w2 * bm.m / (bm.k * bm.A)) ** 0.25
        t = _segment_transfer(g2, bm.k * bm.A, 1.0 - bm.xi0) @ \
            _segment_transfer(g1, bm.A, bm.xi0)
        if bm.bc == PP:
            # free left-state components: (phi', V); end conditions: phi, M
            sub = np.array([[t[0, 1], t[0, 3]], [t[2, 1], t[2, 3]]])
        else:
            # free left-state components: (M, V); end conditions: phi, phi'
            sub = np.array([[t[0, 2], t[0, 3]], [t[1, 2], t[1, 3]]])
        sub = sub / np.linalg.norm(sub, axis=1, keepdims=True)
        return float(sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0])

    roots = scan_roots(det2, grid_step, alpha_max, grid_step, tol, n_max=n_modes)
    if len(roots) < n_modes:
        raise FrequencyShortfallError(roots, n_modes, alpha_max)
    return roots[:n_modes]

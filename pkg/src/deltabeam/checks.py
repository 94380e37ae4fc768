"""Self-contained verification suite for the distribution algebra.

Runs the exact product identities plus Leibniz / associativity /
distributivity on a seeded random family of distributions (polynomial
pieces so coefficient comparison is exact up to float rounding).  The
service endpoint and the ``algebra-check`` CLI command report its output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .distributions import PiecewiseDistribution, dirac, from_smooth, heaviside, star
from .smooth import SmoothExpr, poly

#: breakpoint pool; a small set so random draws frequently share locations
BREAKPOINT_POOL = (-1.0, -0.25, 0.5, 1.25)


def coefficient_distance(f: PiecewiseDistribution, g: PiecewiseDistribution) -> float:
    """Largest coefficient discrepancy between two distributions.

    Pieces are compared through the term coefficients of their simplified
    difference on the common breakpoint refinement; delta terms are matched
    by (location, order).
    """
    fn, gn = f.normalized(), g.normalized()
    worst = 0.0
    diff = fn - gn
    for p in diff.pieces:
        worst = max(worst, p.max_coeff())
    fd = {(d.location, d.order): d.coeff for d in fn.deltas}
    gd = {(d.location, d.order): d.coeff for d in gn.deltas}
    for key in set(fd) | set(gd):
        worst = max(worst, abs(fd.get(key, 0.0) - gd.get(key, 0.0)))
    return worst


@dataclass
class CheckLine:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance


@dataclass
class CheckReport:
    lines: list = field(default_factory=list)

    def add(self, name: str, max_error: float, tolerance: float) -> None:
        self.lines.append(CheckLine(name, float(max_error), tolerance))

    @property
    def n_passed(self) -> int:
        return sum(1 for line in self.lines if line.passed)

    @property
    def n_failed(self) -> int:
        return len(self.lines) - self.n_passed

    @property
    def all_passed(self) -> bool:
        return self.n_failed == 0


def product_identity_report(tol: float = 1e-12) -> CheckReport:
    """The exact step/delta product identities and the non-commutativity witness."""
    report = CheckReport()
    for x0 in (0.0, 0.5):
        step_up = heaviside(x0)
        step_down = 1 - heaviside(x0)
        for i in range(3):
            d = dirac(x0, i)
            report.add(f"H(x0-x)*delta^({i}) == delta^({i}) at x0={x0:g}",
                       coefficient_distance(star(step_down, d), d), tol)
            report.add(f"delta^({i})*H(x-x0) == delta^({i}) at x0={x0:g}",
                       coefficient_distance(star(d, step_up), d), tol)
            report.add(f"H(x-x0)*delta^({i}) == 0 at x0={x0:g}",
                       coefficient_distance(star(step_up, d), from_smooth(0.0)), tol)
            report.add(f"delta^({i})*H(x0-x) == 0 at x0={x0:g}",
                       coefficient_distance(star(d, step_down), from_smooth(0.0)), tol)
    for i in range(2):
        for j in range(2):
            same = coefficient_distance(star(dirac(0.0, i), dirac(0.0, j)),
                                        from_smooth(0.0))
            apart = coefficient_distance(star(dirac(0.0, i), dirac(1.0, j)),
                                         from_smooth(0.0))
            report.add(f"delta^({i})*delta^({j}) == 0", max(same, apart), tol)
    f = heaviside(0.0)
    g = heaviside(0.0) + dirac(0.0)
    report.add("H*(H+delta) == H", coefficient_distance(star(f, g), f), tol)
    report.add("(H+delta)*H == H+delta", coefficient_distance(star(g, f), g), tol)
    return report


def random_distribution(rng: np.random.Generator,
                        max_breakpoints: int = 3,
                        max_degree: int = 4,
                        max_delta_order: int = 2) -> PiecewiseDistribution:
    m = int(rng.integers(0, max_breakpoints + 1))
    bps = sorted(rng.choice(BREAKPOINT_POOL, size=m, replace=False))
    pieces = [_random_poly(rng, max_degree) for _ in range(m + 1)]
    deltas = []
    for b in bps:
        for order in range(max_delta_order + 1):
            if rng.random() < 0.35:
                deltas.append((b, order, float(rng.uniform(-2.0, 2.0))))
    dist = PiecewiseDistribution(bps, pieces)
    for loc, order, coeff in deltas:
        dist = dist + dirac(loc, order, coeff)
    return dist


def _random_poly(rng: np.random.Generator, max_degree: int) -> SmoothExpr:
    degree = int(rng.integers(0, max_degree + 1))
    return poly(*rng.uniform(-1.0, 1.0, size=degree + 1))


def random_property_report(seed: int = 1234, triples: int = 200,
                           tol: float = 1e-9) -> CheckReport:
    """Leibniz, associativity and distributivity over a seeded random family."""
    rng = np.random.default_rng(seed)
    leibniz = assoc = distrib = 0.0
    for _ in range(triples):
        f = random_distribution(rng)
        g = random_distribution(rng)
        h = random_distribution(rng)
        fg = star(f, g)
        leibniz = max(leibniz, coefficient_distance(
            fg.derivative(),
            star(f.derivative(), g) + star(f, g.derivative())))
        assoc = max(assoc, coefficient_distance(star(fg, h), star(f, star(g, h))))
        distrib = max(distrib, coefficient_distance(
            star(f, g + h), star(f, g) + star(f, h)))
    report = CheckReport()
    report.add(f"Leibniz rule on {triples} random pairs", leibniz, tol)
    report.add(f"associativity on {triples} random triples", assoc, tol)
    report.add(f"distributivity on {triples} random triples", distrib, tol)
    return report


def full_report(seed: int = 1234, triples: int = 200) -> CheckReport:
    report = product_identity_report()
    report.lines.extend(random_property_report(seed=seed, triples=triples).lines)
    return report

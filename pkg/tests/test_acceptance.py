"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the pass/fail lines.
"""

import math
import time

import numpy as np

from deltabeam.beam import (BeamModel, find_frequencies, interface_residual,
                            mode_shape, to_coeffset, alpha_to_omega,
                            transfer_matrix_frequencies)
from deltabeam.checks import product_identity_report, random_property_report
from deltabeam.interface import interface_matrices, residual_check, solvability
from deltabeam.rootfind import scan_roots
from deltabeam.smooth import cos_expr, cosh_expr, sin_expr, sinh_expr


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num:02d} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {num}: {detail}"


def _mode_exprs(mode):
    a1, b1, c1, d1, a2, b2, c2, d2 = mode.consts
    ab = mode.alpha * mode.beta
    phi1 = (a1 * sin_expr(mode.alpha) + b1 * cos_expr(mode.alpha)
            + c1 * sinh_expr(mode.alpha) + d1 * cosh_expr(mode.alpha))
    phi2 = (a2 * sin_expr(ab) + b2 * cos_expr(ab)
            + c2 * sinh_expr(ab) + d2 * cosh_expr(ab))
    return phi1, phi2


def test_criterion_01_product_identities():
    t0 = time.perf_counter()
    report = product_identity_report(tol=1e-12)
    elapsed = time.perf_counter() - t0
    worst = max(line.max_error for line in report.lines)
    ok = report.all_passed and elapsed < 1.0
    _report(1, ok, f"step/delta product identities exact "
                   f"(worst error {worst:.2e}, {elapsed:.2f}s)")


def test_criterion_02_property_suite_200_triples():
    t0 = time.perf_counter()
    report = random_property_report(seed=1234, triples=200, tol=1e-9)
    elapsed = time.perf_counter() - t0
    worst = max(line.max_error for line in report.lines)
    ok = report.all_passed and elapsed < 30.0
    _report(2, ok, f"Leibniz/associativity on 200 seeded triples "
                   f"(worst error {worst:.2e}, {elapsed:.1f}s)")


def test_criterion_03_interface_specialization():
    worst = 0.0
    exact = True
    for k in (0.5, 1.0, 1.5, 2.0):
        bm = BeamModel(k=k, lambda0=1.3, lambda1=0.7, xi0=0.45, bc="pp")
        m = interface_matrices(to_coeffset(bm, w=2.0))
        expect_A = np.array([[0, 0, 0, 1], [0, 0, 1, 0],
                             [0, 1 + k, bm.lambda0, 0], [1 + k, 0, 0, 0]], float)
        expect_B = np.array([[0, 0, 0, k], [0, 0, k, 0],
                             [0, 1 + k, -k * bm.lambda1, 0], [1 + k, 0, 0, 0]], float)
        exact &= np.array_equal(m.A_mat, expect_A) and np.array_equal(m.B_mat, expect_B)
        report = solvability(m)
        worst = max(worst, abs(report.det_A - (1 + k) ** 2),
                    abs(report.det_B - k * k * (1 + k) ** 2))
    ok = exact and worst <= 1e-12
    _report(3, ok, f"junction matrices match the specialized form exactly; "
                   f"determinant error {worst:.2e}")


def test_criterion_04_system_equivalence():
    rng = np.random.default_rng(2024)
    total = agreements = 0
    for k, l0, l1 in ((0.5, 1.0, 0.0), (1.0, 2.0, 2.0),
                      (1.5, 0.0, 3.0), (2.0, 3.0, 1.5)):
        bm = BeamModel(k=k, lambda0=l0, lambda1=l1, xi0=0.4, bc="pp")
        m = interface_matrices(to_coeffset(bm, w=1.0))
        s = (l0 + l1) / (k + 1.0)
        for i in range(1000):
            p1 = rng.uniform(-2, 2, 4)
            if i % 2 == 0:
                p2 = np.array([p1[0], p1[1] + s * p1[2],
                               p1[2] / k, p1[3] / k])
            else:
                p2 = rng.uniform(-2, 2, 4)
            matrix_zero = np.max(np.abs(m.A_mat @ p1 - m.B_mat @ p2)) < 1e-12
            system_zero = np.max(np.abs(
                interface_residual(bm, 1.0, p1, p2))) < 1e-12
            agreements += matrix_zero == system_zero
            total += 1
    ok = agreements == total
    _report(4, ok, f"matrix condition == junction system on "
                   f"{agreements}/{total} random vector pairs")


def test_criterion_05_classical_limits():
    t0 = time.perf_counter()
    pp = find_frequencies(BeamModel(bc="pp"), 5)
    pp_err = max(abs(a - n * math.pi) for n, a in enumerate(pp, start=1))
    cc1 = find_frequencies(BeamModel(bc="cc"), 1)[0]
    oracle = scan_roots(lambda a: math.cos(a) * math.cosh(a) - 1.0,
                        0.5, 10.0, 0.01, 1e-13, n_max=1)[0]
    cc_err = max(abs(cc1 - 4.730041), abs(cc1 - oracle))
    elapsed = time.perf_counter() - t0
    ok = pp_err <= 1e-8 and cc_err <= 1e-6 and elapsed < 5.0
    _report(5, ok, f"classical spectra: pinned error {pp_err:.2e}, "
                   f"clamped error {cc_err:.2e} ({elapsed:.2f}s)")


def test_criterion_06_stepped_beam_oracle():
    worst = 0.0
    for k in (0.5, 2.0):
        for xi0 in (0.3, 0.5):
            for bc in ("pp", "cc"):
                bm = BeamModel(k=k, xi0=xi0, bc=bc)
                det_roots = find_frequencies(bm, 3)
                oracle = transfer_matrix_frequencies(bm, 3)
                worst = max(worst, max(abs(a - b)
                                       for a, b in zip(det_roots, oracle)))
    ok = worst <= 1e-7
    _report(6, ok, f"crack-free frequencies vs transfer-matrix oracle: "
                   f"worst disagreement {worst:.2e}")


def test_criterion_07_second_frequency_independent_of_intensity():
    lines = []
    ok = True
    for bc in ("pp", "cc"):
        for k in (0.5, 1.0, 1.5):
            values = []
            for lam in (0.0, 1.0, 2.0, 5.0, 10.0):
                bm = BeamModel(k=k, xi0=0.5, lambda0=lam, lambda1=lam, bc=bc)
                values.append(find_frequencies(bm, 2)[1])
            spread = max(values) - min(values)
            lines.append(f"{bc} k={k}: spread {spread:.2e}")
            ok &= spread <= 1e-8
    two_pi_err = abs(find_frequencies(
        BeamModel(k=1.0, xi0=0.5, lambda0=5.0, lambda1=5.0, bc="pp"), 2)[1]
        - 2 * math.pi)
    lines.append(f"pp k=1 alpha_2 vs 2*pi: {two_pi_err:.2e}")
    ok &= two_pi_err <= 1e-8
    _report(7, ok, "alpha_2 constant over lambda in {0,1,2,5,10}: "
            + "; ".join(lines))


def test_criterion_08_intensity_split_equivalence():
    worst = 0.0
    for bc in ("pp", "cc"):
        reference = None
        for l0, l1 in ((2.0, 0.0), (1.0, 1.0), (0.0, 2.0)):
            bm = BeamModel(k=1.5, xi0=0.35, lambda0=l0, lambda1=l1, bc=bc)
            roots = find_frequencies(bm, 3)
            if reference is None:
                reference = roots
            worst = max(worst, max(abs(a - b)
                                   for a, b in zip(roots, reference)))
    ok = worst <= 1e-10
    _report(8, ok, f"frequencies depend on lambda0+lambda1 only: "
                   f"worst split difference {worst:.2e}")


def test_criterion_09_end_to_end_residual():
    t0 = time.perf_counter()
    worst_rel = 0.0
    for bc in ("pp", "cc"):
        bm = BeamModel(k=1.5, lambda0=2.0, lambda1=2.0, xi0=0.4, bc=bc)
        for alpha in find_frequencies(bm, 3):
            mode = mode_shape(bm, alpha)
            coeffs = to_coeffset(bm, alpha_to_omega(bm, alpha))
            phi1, phi2 = _mode_exprs(mode)
            rep = residual_check(phi1, phi2, coeffs, interval=(0.0, 1.0))
            bound = 1e-6 * rep.scale
            worst_rel = max(worst_rel,
                            max(abs(v) for v in rep.delta_coeffs.values()) / bound,
                            rep.smooth_residual_max / bound)
    elapsed = time.perf_counter() - t0
    ok = worst_rel <= 1.0 and elapsed < 10.0
    _report(9, ok, f"cracked-beam modes leave no distributional residual "
                   f"(worst {worst_rel:.2e} of the 1e-6*scale budget, "
                   f"{elapsed:.1f}s)")


def test_criterion_10_reflection_symmetry():
    worst = 0.0
    positions = [round(0.1 * i, 10) for i in range(1, 10)]
    for bc in ("pp", "cc"):
        table = {}
        for xi0 in positions:
            bm = BeamModel(k=1.0, xi0=xi0, lambda0=2.0, lambda1=2.0, bc=bc)
            table[xi0] = find_frequencies(bm, 3)
        for xi0 in positions:
            mirrored = table[round(1.0 - xi0, 10)]
            worst = max(worst, max(abs(a - b)
                                   for a, b in zip(table[xi0], mirrored)))
    ok = worst <= 1e-8
    _report(10, ok, f"uniform-stiffness spectra reflection-symmetric in xi0: "
                    f"worst asymmetry {worst:.2e}")

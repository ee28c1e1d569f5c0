"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line.  Run standalone with
``python tests/test_acceptance.py`` or through pytest with ``-s`` to see them.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from spherecross import analytic, drawing, montecarlo
from spherecross.analytic import AnalyticParams
from spherecross.montecarlo import ExperimentConfig
from spherecross.sampling import SeededStream, pairwise_angle_density_test

SEED = 20240611


def report(number, title, passed, detail, started):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title} ({detail}; {time.perf_counter() - started:.1f}s)"
    print(line)
    return line


def criterion_1():
    t = time.perf_counter()
    limit = 8 / (9 * math.pi ** 2)
    gap = abs(analytic.ratio_function(1e-3) - limit)
    ok = gap <= 1e-6 and limit < 0.0900633 and analytic.midrange_upper_limit() == limit
    report(1, "limit constant", ok, f"|g(1e-3) - 8/(9pi^2)| = {gap:.2e}", t)
    return ok


def criterion_2():
    t = time.perf_counter()
    s = montecarlo.run_pair_probability(
        ExperimentConfig(d=math.pi, trials=1_000_000, master_seed=SEED, mode="pair_probability"))
    tol = 3 * math.sqrt(0.125 * 0.875 / 1_000_000)
    ok = abs(s.mean - 0.125) <= tol and s.extra["degeneracies"] == 0
    report(2, "Moon's 1/8", ok, f"estimate {s.mean:.6f}, tolerance {tol:.5f}", t)
    return ok


def criterion_3():
    t = time.perf_counter()
    gaps = [abs(analytic.joint_cross_probability_quadrature(d) - (math.sin(d) - d * math.cos(d)) ** 2 / (8 * math.pi ** 2))
            for d in np.linspace(0.05, math.pi, 50)]
    ok = max(gaps) < 1e-8
    report(3, "quadrature vs closed form", ok, f"max gap {max(gaps):.2e} over 50 d", t)
    return ok


def criterion_4():
    t = time.perf_counter()
    s = montecarlo.run_edge_count(ExperimentConfig(n=1000, d=0.5, trials=50, master_seed=SEED, mode="edge_count"))
    exact = 1000 * 999 * (1 - math.cos(0.5)) / 4
    ok = abs(s.mean - exact) <= 3 * s.std_error and s.analytic_target == pytest.approx(exact, rel=1e-14)
    report(4, "expected edges", ok, f"mean {s.mean:.1f} vs {exact:.3f}, z = {s.z_score:+.2f}", t)
    return ok


def criterion_5():
    t = time.perf_counter()
    s = montecarlo.run_complete_graph(ExperimentConfig(n=60, trials=50, master_seed=SEED, mode="complete_graph"))
    exact = Fraction(math.comb(60, 2) * math.comb(58, 2), 16)
    ok = abs(s.mean - float(exact)) <= 3 * s.std_error and s.analytic_target == float(exact)
    report(5, "Moon complete-graph expectation", ok, f"mean {s.mean:.1f} vs {float(exact)}, z = {s.z_score:+.2f}", t)
    return ok


def criterion_6():
    t = time.perf_counter()
    n = 500
    d = analytic.threshold_for_edges_per_vertex(n, 15)
    s = montecarlo.run_drawing_ratio(ExperimentConfig(n=n, d=d, trials=20, master_seed=SEED, mode="drawing_ratio"))
    g = analytic.ratio_function(d)
    target = analytic.finite_n_ratio_target(AnalyticParams(d, n))
    rel = abs(s.mean - g) / g
    ok = rel <= 0.10 and abs(s.mean - target) <= 3 * s.std_error and s.extra["empty_trials"] == 0
    report(6, "headline ratio", ok,
           f"d = {d:.4f}, mean {s.mean:.5f}, g(d) {g:.5f} ({100 * rel:.2f}%), finite-n {target:.5f}, z = {s.z_score:+.2f}", t)
    return ok


def criterion_7():
    t = time.perf_counter()
    ok = analytic.check_monotonicity(10_000)
    report(7, "monotonicity", ok, "10^4 grid points on [1e-3, pi]", t)
    return ok


def criterion_8():
    t = time.perf_counter()
    bad = []
    for i in range(100):
        d = drawing.build_threshold_drawing(SeededStream(SEED, i), 50, 0.6)
        rep = drawing.count_crossings(d)
        planar = drawing.count_planar_crossings(drawing.project_drawing(d, drawing.choose_pole(d, seed=i)))
        if planar.crossings != rep.cr or planar.tangencies or rep.degeneracies or d.degeneracy_count:
            bad.append(("stereographic", i))
    center = np.array([0.0, 0.0, 1.0])
    for i in range(100):
        d = drawing.build_cap_drawing(SeededStream(SEED + 1, i), 60, 0.3, center, 0.7)
        rep = drawing.count_crossings(d)
        flat, band = drawing.count_gnomonic_crossings(d, center)
        if flat != rep.cr or band or rep.degeneracies or d.degeneracy_count:
            bad.append(("gnomonic", i))
    ok = not bad
    report(8, "projection oracles", ok, f"{len(bad)} mismatches over 2 x 100 drawings", t)
    return ok


def criterion_9():
    t = time.perf_counter()
    d = drawing.build_threshold_drawing(SeededStream(SEED, 0), 50, 0.6)
    rep = drawing.count_crossings(d)
    ok = True
    for k in (1, 2, 7):
        _, big = drawing.replicate_copies(d, k, report=rep)
        ok &= Fraction(big.cr * big.n ** 2, big.e ** 3) == Fraction(rep.cr * rep.n ** 2, rep.e ** 3)
        ok &= (big.n, big.e, big.cr) == (k * rep.n, k * rep.e, k * rep.cr)
    report(9, "copies identity", ok, f"cr = {rep.cr}, e = {rep.e}, k in (1, 2, 7)", t)
    return ok


def criterion_10():
    t = time.perf_counter()
    res = pairwise_angle_density_test(SeededStream(SEED, 0), 1_000_000)
    crit = 1.63 / math.sqrt(1_000_000)
    ok = res.statistic < crit
    report(10, "arc-length distribution", ok, f"KS {res.statistic:.2e} < {crit:.2e}", t)
    return ok


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_acceptance(criterion, capsys):
    with capsys.disabled():
        passed = criterion()
    assert passed


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    raise SystemExit(0 if all(results) else 1)

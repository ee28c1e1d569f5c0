"""Fast oracle-equivalence and property checks, runnable without pytest."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from spherecross import analytic, drawing, geom
from spherecross.sampling import SeededStream, pairwise_angle_density_test, sample_unit_vectors


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def __post_init__(self):
        self.passed = bool(self.passed)


def check_symmetries(stream: SeededStream, pairs: int) -> Check:
    p, q, r, s = (sample_unit_vectors(stream, pairs) for _ in range(4))
    base, _ = geom.cross_kernel(*geom.arc_frames(p, q), *geom.arc_frames(r, s))
    swapped, _ = geom.cross_kernel(*geom.arc_frames(r, s), *geom.arc_frames(p, q))
    reversed_, _ = geom.cross_kernel(*geom.arc_frames(q, p), *geom.arc_frames(s, r))
    rot = geom.random_rotation(stream.rng)
    rotated, _ = geom.cross_kernel(*geom.arc_frames(p @ rot.T, q @ rot.T),
                                   *geom.arc_frames(r @ rot.T, s @ rot.T))
    bad = int(np.count_nonzero((base != swapped) | (base != reversed_) | (base != rotated)))
    return Check("predicate symmetries", bad == 0, f"{bad} disagreements over {pairs} pairs")


def check_gnomonic_pairs(stream: SeededStream, pairs: int, margin: float = 0.05) -> Check:
    pole = sample_unit_vectors(stream, 1)[0]
    pts = []
    while sum(len(x) for x in pts) < 4 * pairs:
        cand = sample_unit_vectors(stream, 8 * pairs)
        pts.append(cand[cand @ pole > margin])
    pts = np.concatenate(pts)[:4 * pairs].reshape(4, pairs, 3)
    sph, deg = geom.cross_kernel(*geom.arc_frames(pts[0], pts[1]), *geom.arc_frames(pts[2], pts[3]))
    planar = [geom.gnomonic_project_many(x, pole) for x in pts]
    o = np.stack([drawing.orient2d(planar[0], planar[1], planar[2]),
                  drawing.orient2d(planar[0], planar[1], planar[3]),
                  drawing.orient2d(planar[2], planar[3], planar[0]),
                  drawing.orient2d(planar[2], planar[3], planar[1])])
    band = np.any(np.abs(o) <= 1e-12 * np.abs(np.concatenate(planar)).max() ** 2, axis=0) | deg
    flat = (o[0] * o[1] < 0) & (o[2] * o[3] < 0)
    bad = int(np.count_nonzero((sph != flat) & ~band))
    return Check("gnomonic pair oracle", bad == 0,
                 f"{bad} disagreements, {int(band.sum())} band cases over {pairs} pairs")


def check_drawing_oracles(master_seed: int, drawings: int) -> Check:
    bad = []
    for i in range(drawings):
        d = drawing.build_threshold_drawing(SeededStream(master_seed, i), 50, 0.6)
        rep = drawing.count_crossings(d)
        raw = drawing.count_crossings(d, prefilter=False)
        planar = drawing.count_planar_crossings(drawing.project_drawing(d, drawing.choose_pole(d, seed=i)))
        cap = drawing.build_cap_drawing(SeededStream(master_seed + 1, i), 60, 0.3, (0, 0, 1), 0.7)
        gn, band = drawing.count_gnomonic_crossings(cap, (0, 0, 1))
        cap_rep = drawing.count_crossings(cap)
        if (rep.cr != raw.cr or rep.cr != planar.crossings or planar.tangencies or rep.degeneracies
                or gn != cap_rep.cr or band or cap_rep.degeneracies):
            bad.append(i)
    return Check("drawing oracles", not bad, f"failing drawings: {bad}" if bad else f"{drawings} drawings agree")


def check_analytic() -> Check:
    ds = np.linspace(0.05, math.pi, 50)
    quad = max(abs(analytic.joint_cross_probability_quadrature(float(d))
                   - analytic.joint_cross_probability(float(d))) for d in ds)
    limit = abs(analytic.ratio_function(1e-3) - analytic.midrange_upper_limit())
    mono = analytic.check_monotonicity(10_000)
    ok = quad < 1e-8 and limit < 1e-6 and mono and analytic.unconditional_cross_probability() == 0.125
    return Check("closed forms", ok, f"quadrature gap {quad:.2e}, limit gap {limit:.2e}, monotone={mono}")


def check_copies(master_seed: int) -> Check:
    d = drawing.build_threshold_drawing(SeededStream(master_seed, 0), 50, 0.6)
    rep = drawing.count_crossings(d)
    single = drawing.count_planar_crossings(drawing.project_drawing(d, drawing.choose_pole(d)))
    ok = True
    for k in (1, 2, 7):
        planar, big = drawing.replicate_copies(d, k, report=rep)
        ok &= big.exact_ratio == rep.exact_ratio and big.cr == k * rep.cr
        if k == 2:
            ok &= drawing.count_planar_crossings(planar).crossings == 2 * single.crossings
    return Check("copies identity", bool(ok), f"cr={rep.cr}, e={rep.e}")


def check_distribution(master_seed: int, samples: int) -> Check:
    res = pairwise_angle_density_test(SeededStream(master_seed, 0), samples)
    crit = 1.63 / math.sqrt(samples)
    return Check("arc-length distribution", res.statistic < crit,
                 f"KS {res.statistic:.2e} vs critical {crit:.2e}")


def run_selftest(master_seed: int = 0, quick: bool = True) -> list[Check]:
    scale = 1 if quick else 10
    stream = SeededStream(master_seed, 99)
    return [
        check_symmetries(stream, 10_000 * scale),
        check_gnomonic_pairs(stream, 10_000 * scale),
        check_drawing_oracles(master_seed, 10 * scale),
        check_analytic(),
        check_copies(master_seed),
        check_distribution(master_seed, 100_000 * scale),
    ]

"""Repeated-trial experiments comparing simulation with the closed forms.

Every trial draws from its own stream ``SeededStream(master_seed, index)``,
so a summary is a pure function of its :class:`ExperimentConfig` no matter
how many worker threads evaluate the trials.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from spherecross import analytic, geom
from spherecross.drawing import CrossingReport, build_threshold_drawing, count_crossings
from spherecross.sampling import SeededStream, sample_unit_vectors

MODES = ("pair_probability", "drawing_ratio", "edge_count", "complete_graph")
PAIR_BATCH = 1 << 16


class AllTrialsEmpty(RuntimeError):
    """Every drawing had zero edges, so no ratio could be formed."""


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 4
    d: float = math.pi
    trials: int = 1
    master_seed: int = 0
    mode: str = "drawing_ratio"
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0.0 < self.d <= math.pi:
            raise ValueError(f"d must lie in (0, pi], got {self.d!r}")
        min_n = 4 if self.mode in ("drawing_ratio", "complete_graph") else 2
        if self.mode != "pair_probability" and self.n < min_n:
            raise ValueError(f"n must be at least {min_n} for mode {self.mode}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")

    def to_dict(self) -> dict:
        # workers never changes results and is left out of the record
        return {"n": self.n, "d": self.d, "trials": self.trials,
                "master_seed": self.master_seed, "mode": self.mode}


@dataclass
class ExperimentSummary:
    config: ExperimentConfig
    statistic: str
    per_trial: Any
    mean: float
    sample_std: float
    std_error: float
    analytic_target: float
    z_score: float
    extra: dict = field(default_factory=dict)

    @property
    def within_3_se(self) -> bool:
        return abs(self.z_score) <= 3.0

    def to_dict(self, include_trials: bool = True) -> dict:
        out = {
            "config": self.config.to_dict(), "statistic": self.statistic,
            "mean": self.mean, "sample_std": self.sample_std,
            "std_error": self.std_error, "analytic_target": self.analytic_target,
            "z_score": self.z_score, "extra": self.extra,
        }
        if include_trials:
            trials = self.per_trial
            out["per_trial"] = ([r.to_dict() for r in trials] if isinstance(trials, list)
                                else np.asarray(trials).tolist())
        return out


def summarize(values, target: float) -> tuple[float, float, float, float]:
    """``(mean, sample_std, std_error, z_score)`` with exactly rounded sums.

    ``math.fsum`` is order-independent, so parallel evaluation cannot change
    the result in any bit.
    """
    values = [float(v) for v in values]
    k = len(values)
    mean = math.fsum(values) / k
    var = math.fsum((v - mean) ** 2 for v in values) / (k - 1) if k > 1 else 0.0
    std = math.sqrt(var)
    se = std / math.sqrt(k)
    z = (mean - target) / se if se > 0 else (0.0 if mean == target else math.copysign(math.inf, mean - target))
    return mean, std, se, z


def _map_trials(fn, count: int, workers: int) -> list:
    if workers > 1 and count > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, range(count)))
    return [fn(i) for i in range(count)]


def _pair_batch(master_seed: int, batch: int, size: int, d: float):
    stream = SeededStream(master_seed, batch)
    p, q, r, s = (sample_unit_vectors(stream, size) for _ in range(4))
    len1 = geom.angle_between(p, q)
    len2 = geom.angle_between(r, s)
    valid = ((len1 > geom.ARC_MIN) & (len1 < math.pi - geom.ARC_MIN)
             & (len2 > geom.ARC_MIN) & (len2 < math.pi - geom.ARC_MIN))
    short = (len1 <= d) & (len2 <= d) & valid
    hit = np.zeros(size, dtype=np.uint8)
    idx = np.nonzero(short)[0]
    degenerate = int(np.count_nonzero(~valid))
    if len(idx):
        cross, deg = geom.cross_kernel(*geom.arc_frames(p[idx], q[idx]), *geom.arc_frames(r[idx], s[idx]))
        hit[idx[cross]] = 1
        degenerate += int(np.count_nonzero(deg))
    return hit, degenerate


def run_pair_probability(config: ExperimentConfig) -> ExperimentSummary:
    """Estimate P[two random arcs cross and both have length <= d].

    Trials are generated in batches of ``PAIR_BATCH`` 4-tuples; batch ``b``
    uses stream ``(master_seed, b)``.
    """
    batches = math.ceil(config.trials / PAIR_BATCH)

    def one(b):
        size = min(PAIR_BATCH, config.trials - b * PAIR_BATCH)
        return _pair_batch(config.master_seed, b, size, config.d)

    parts = _map_trials(one, batches, config.workers)
    hits = np.concatenate([h for h, _ in parts])
    degenerate = sum(dg for _, dg in parts)
    target = analytic.joint_cross_probability(config.d)
    k = len(hits)
    count = int(hits.sum())
    mean = count / k
    var = (count - k * mean * mean) / (k - 1) if k > 1 else 0.0
    std = math.sqrt(max(var, 0.0))
    se = std / math.sqrt(k)
    z = (mean - target) / se if se > 0 else 0.0
    return ExperimentSummary(config, "crossing_indicator", hits, mean, std, se, target, z,
                             {"crossings": count, "degeneracies": degenerate})


def _drawing_trial(config: ExperimentConfig, index: int, count: bool = True):
    drawing = build_threshold_drawing(SeededStream(config.master_seed, index), config.n, config.d)
    if not count:
        return CrossingReport(drawing.n, drawing.e, 0, drawing.degeneracy_count)
    report = count_crossings(drawing)
    return CrossingReport(report.n, report.e, report.cr, report.degeneracies + drawing.degeneracy_count)


def run_drawing_ratio(config: ExperimentConfig) -> ExperimentSummary:
    """Mean of ``cr n^2 / e^3`` over independent threshold drawings.

    The target is the exact finite-n ``E[cr] n^2 / E[e]^3``; ``g(d)`` is
    reported alongside.  Trials without edges are skipped and counted.
    """
    reports = _map_trials(lambda i: _drawing_trial(config, i), config.trials, config.workers)
    used = [r for r in reports if r.e > 0]
    if not used:
        raise AllTrialsEmpty("every trial produced an empty drawing")
    params = analytic.AnalyticParams(config.d, config.n)
    target = analytic.finite_n_ratio_target(params)
    mean, std, se, z = summarize([r.ratio for r in used], target)
    extra = {
        "ratio_function": analytic.ratio_function(config.d),
        "empty_trials": len(reports) - len(used),
        "mean_edges": math.fsum(r.e for r in reports) / len(reports),
        "mean_crossings": math.fsum(r.cr for r in reports) / len(reports),
        "expected_edges": analytic.expected_edges(params),
        "expected_crossings": analytic.expected_crossings(params),
        "degeneracies": sum(r.degeneracies for r in reports),
    }
    return ExperimentSummary(config, "ratio", reports, mean, std, se, target, z, extra)


def run_edge_count(config: ExperimentConfig) -> ExperimentSummary:
    reports = _map_trials(lambda i: _drawing_trial(config, i, count=False), config.trials, config.workers)
    target = analytic.expected_edges(analytic.AnalyticParams(config.d, config.n))
    mean, std, se, z = summarize([r.e for r in reports], target)
    return ExperimentSummary(config, "edges", reports, mean, std, se, target, z,
                             {"cv": std / mean if mean else math.nan,
                              "degeneracies": sum(r.degeneracies for r in reports)})


def run_complete_graph(config: ExperimentConfig) -> ExperimentSummary:
    """Crossing counts of the complete geodesic drawing (``d = pi``)."""
    config = ExperimentConfig(config.n, math.pi, config.trials, config.master_seed,
                              "complete_graph", config.workers)
    reports = _map_trials(lambda i: _drawing_trial(config, i), config.trials, config.workers)
    target = float(analytic.moon_expected_crossings(config.n))
    mean, std, se, z = summarize([r.cr for r in reports], target)
    return ExperimentSummary(config, "crossings", reports, mean, std, se, target, z,
                             {"cv": std / mean if mean else math.nan,
                              "degeneracies": sum(r.degeneracies for r in reports)})


def run_experiment(config: ExperimentConfig) -> ExperimentSummary:
    return {
        "pair_probability": run_pair_probability,
        "drawing_ratio": run_drawing_ratio,
        "edge_count": run_edge_count,
        "complete_graph": run_complete_graph,
    }[config.mode](config)


@dataclass
class ConcentrationProbe:
    quantity: str
    small: ExperimentSummary
    large: ExperimentSummary
    cv_small: float
    cv_large: float

    @property
    def shrinks(self) -> bool:
        return self.cv_large < self.cv_small


def run_concentration_probe(config: ExperimentConfig, quantity: str = "edges") -> ConcentrationProbe:
    """Coefficient of variation of edge or crossing counts at ``n`` and ``2n``."""
    if config.trials < 30:
        raise ValueError("the concentration probe needs at least 30 trials")
    if quantity not in ("edges", "crossings"):
        raise ValueError("quantity must be 'edges' or 'crossings'")
    mode = "edge_count" if quantity == "edges" else "drawing_ratio"
    results = []
    for n in (config.n, 2 * config.n):
        cfg = ExperimentConfig(n, config.d, config.trials, config.master_seed, mode, config.workers)
        if quantity == "edges":
            results.append(run_edge_count(cfg))
            continue
        reports = _map_trials(lambda i, c=cfg: _drawing_trial(c, i), cfg.trials, cfg.workers)
        target = analytic.expected_crossings(analytic.AnalyticParams(cfg.d, cfg.n))
        mean, std, se, z = summarize([r.cr for r in reports], target)
        results.append(ExperimentSummary(cfg, "crossings", reports, mean, std, se, target, z))
    cvs = [s.sample_std / s.mean for s in results]
    return ConcentrationProbe(quantity, results[0], results[1], cvs[0], cvs[1])

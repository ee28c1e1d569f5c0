"""JSON and CSV serialisation for drawings, reports and experiment summaries.

All documents carry ``"format": 1``.  JSON output is written with sorted
keys so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from spherecross.drawing import CrossingReport, SphericalDrawing
from spherecross.montecarlo import ExperimentSummary

FORMAT_VERSION = 1

REPORT_COLUMNS = ("format", "trial", "n", "e", "cr", "ratio", "degeneracies")
INDICATOR_COLUMNS = ("format", "trial", "crossed")
SWEEP_COLUMNS = ("format", "d", "g", "joint_probability", "expected_edges_per_vertex", "n")


class FormatError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def drawing_to_dict(drawing: SphericalDrawing) -> dict:
    seed = drawing.seed
    return {
        "format": FORMAT_VERSION,
        "n": drawing.n,
        "d": drawing.threshold_d,
        "seed": None if seed is None else {"master_seed": seed[0], "stream_index": seed[1]},
        "vertices": drawing.vertices.tolist(),
        "edges": drawing.edges.tolist(),
    }


def drawing_from_dict(data: dict) -> SphericalDrawing:
    if data.get("format") != FORMAT_VERSION:
        raise FormatError(f"unsupported drawing format {data.get('format')!r}")
    vertices = np.asarray(data["vertices"], dtype=float).reshape(-1, 3)
    edges = np.asarray(data["edges"], dtype=np.int64).reshape(-1, 2)
    if len(vertices) != data["n"]:
        raise FormatError("vertex count does not match n")
    seed = data.get("seed")
    if seed is not None:
        seed = (int(seed["master_seed"]), int(seed["stream_index"]))
    return SphericalDrawing(vertices, edges, float(data["d"]), 0, seed)


def report_to_dict(report: CrossingReport) -> dict:
    return {"format": FORMAT_VERSION, **report.to_dict()}


def report_from_dict(data: dict) -> CrossingReport:
    if data.get("format") != FORMAT_VERSION:
        raise FormatError(f"unsupported report format {data.get('format')!r}")
    return CrossingReport(int(data["n"]), int(data["e"]), int(data["cr"]), int(data.get("degeneracies", 0)))


def summary_to_dict(summary: ExperimentSummary, include_trials: bool = True) -> dict:
    return {"format": FORMAT_VERSION, **summary.to_dict(include_trials)}


def summary_to_csv(summary: ExperimentSummary) -> str:
    """One row per trial.

    Column order: ``format, trial, n, e, cr, ratio, degeneracies`` for
    drawing experiments; ``format, trial, crossed`` for pair probability.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    trials = summary.per_trial
    if isinstance(trials, list):
        writer.writerow(REPORT_COLUMNS)
        for i, r in enumerate(trials):
            writer.writerow([FORMAT_VERSION, i, r.n, r.e, r.cr, repr(r.ratio), r.degeneracies])
    else:
        writer.writerow(INDICATOR_COLUMNS)
        for i, hit in enumerate(np.asarray(trials).tolist()):
            writer.writerow([FORMAT_VERSION, i, hit])
    return buf.getvalue()


def rows_to_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()

"""Random geodesic drawings on the unit sphere and their crossing numbers."""

from spherecross.analytic import (
    CONSTANTS,
    AnalyticParams,
    expected_crossings,
    expected_edges,
    joint_cross_probability,
    midrange_upper_limit,
    ratio_function,
)
from spherecross.drawing import (
    CrossingReport,
    SphericalDrawing,
    build_threshold_drawing,
    count_crossings,
    project_drawing,
    replicate_copies,
)
from spherecross.geom import GeodesicArc, UnitVector, arcs_cross, great_circle_distance, make_arc
from spherecross.montecarlo import ExperimentConfig, ExperimentSummary
from spherecross.sampling import SeededStream, sample_unit_vector, sample_unit_vectors

__version__ = "0.1.0"

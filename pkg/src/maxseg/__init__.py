"""Maximal digital straight segments, convex digital polygons and multigrid sweeps."""

from .cdp import Cdp, convex_hull, edge_pattern_decomposition, is_cdp
from .dss import (DssRecognizer, MaximalSegment, StandardLine, back, front,
                  maximal_segments, recognize)
from .errors import CheckViolation, DegenerateContour, InvalidArgument, NotConnected
from .estimators import circumcircle_radius, curvature_circumcircle, error_stats, half_tangents
from .experiment import (ExperimentConfig, ExperimentRecord, fit_loglog_slope, report_bounds,
                         run_experiment)
from .lattice import (Contour, LatticePoint, ShapeSpec, contour_from_rows, digitize,
                      digitize_rows, trace_contour)
from .patterns import cf_decompose, convergents, max_edges_bound, pattern

__all__ = [
    "Cdp", "CheckViolation", "Contour", "DegenerateContour", "DssRecognizer",
    "ExperimentConfig", "ExperimentRecord", "InvalidArgument", "LatticePoint",
    "MaximalSegment", "NotConnected", "ShapeSpec", "StandardLine", "back",
    "cf_decompose", "circumcircle_radius", "convergents", "convex_hull",
    "contour_from_rows", "curvature_circumcircle", "digitize", "digitize_rows", "edge_pattern_decomposition",
    "error_stats", "fit_loglog_slope", "front", "half_tangents", "is_cdp",
    "max_edges_bound", "maximal_segments", "pattern", "recognize",
    "report_bounds", "run_experiment", "trace_contour",
]

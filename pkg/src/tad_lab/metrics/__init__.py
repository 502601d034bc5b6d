from tad_lab.models import CurvePoint, DistributionTable, ParallelismCurve

from .aup import (DEFAULT_ALPHA, MIN_ACCURACY_DROP, AupSegment, aup, aup_breakdown,
                  read_curve_csv, truncate_curve, weight, write_breakdown_csv,
                  write_curve_csv)
from .exceptions import CurveParseError, EmptyCurve, GeometryMismatch, MetricsError
from .gap import GapReport, factorization_gap, kl_divergence, total_correlation
from .profile import confidence_profile
from .theorem import TheoremReport, expected_cross_entropies, validate_theorem1

__all__ = [
    "CurvePoint",
    "ParallelismCurve",
    "DistributionTable",
    "DEFAULT_ALPHA",
    "MIN_ACCURACY_DROP",
    "AupSegment",
    "weight",
    "truncate_curve",
    "aup",
    "aup_breakdown",
    "write_curve_csv",
    "read_curve_csv",
    "write_breakdown_csv",
    "GapReport",
    "factorization_gap",
    "total_correlation",
    "kl_divergence",
    "TheoremReport",
    "expected_cross_entropies",
    "validate_theorem1",
    "confidence_profile",
    "MetricsError",
    "EmptyCurve",
    "GeometryMismatch",
    "CurveParseError",
]

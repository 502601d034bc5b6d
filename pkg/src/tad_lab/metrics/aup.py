import csv
import math
import os
from typing import List, Sequence

from pydantic import BaseModel, ValidationError

from tad_lab.models import CurvePoint, ParallelismCurve

from .exceptions import CurveParseError, EmptyCurve

__all__ = [
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
]

DEFAULT_ALPHA = 3.0
MIN_ACCURACY_DROP = 5.0


class AupSegment(BaseModel):
    index: int
    tpf: float
    accuracy: float
    weight: float
    contribution: float


def weight(y: float, y_max: float, alpha: float = DEFAULT_ALPHA) -> float:
    """min(exp(-alpha (1 - y / y_max)), 1); 1 when y_max is 0."""
    if y_max <= 0:
        return 1.0
    return min(math.exp(-alpha * (1.0 - y / y_max)), 1.0)


def truncate_curve(curve: ParallelismCurve) -> List[CurvePoint]:
    """Points up to, not including, the first one below ``y_1 - 5``."""
    points = curve.points
    if len(points) == 0:
        raise EmptyCurve()
    y_min = points[0].accuracy - MIN_ACCURACY_DROP
    kept = []
    for p in points:
        if p.accuracy < y_min:
            break
        kept.append(p)
    return kept


def aup_breakdown(curve: ParallelismCurve, alpha: float = DEFAULT_ALPHA) -> List[AupSegment]:
    """Per-point contributions to the AUP. The weights are relative to the best
    accuracy of the whole curve, including points past the truncation."""
    points = truncate_curve(curve)
    y_max = max(p.accuracy for p in curve.points)
    weights = [weight(p.accuracy, y_max, alpha) for p in points]
    first = points[0]
    segments = [
        AupSegment(index=1, tpf=first.tpf, accuracy=first.accuracy, weight=weights[0], contribution=first.tpf * first.accuracy)
    ]
    for i in range(1, len(points)):
        prev, cur = points[i - 1], points[i]
        area = (cur.tpf - prev.tpf) * (cur.accuracy * weights[i] + prev.accuracy * weights[i - 1]) / 2.0
        segments.append(
            AupSegment(index=i + 1, tpf=cur.tpf, accuracy=cur.accuracy, weight=weights[i], contribution=area)
        )
    return segments


def aup(curve: ParallelismCurve, alpha: float = DEFAULT_ALPHA) -> float:
    """Accuracy under parallelism: the first point's rectangle plus the
    trapezoids of the degradation-weighted curve."""
    return sum(seg.contribution for seg in aup_breakdown(curve, alpha))


def _ensure_dir(path: str):
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)


def write_curve_csv(curve: ParallelismCurve, path: str):
    _ensure_dir(path)
    with open(path, mode="w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["tpf", "accuracy"])
        for p in curve.points:
            writer.writerow([repr(p.tpf), repr(p.accuracy)])


def read_curve_csv(path: str) -> ParallelismCurve:
    if not os.path.exists(path):
        raise FileNotFoundError(f"curve file {path} does not exist")
    points = []
    with open(path, mode="r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        for lineno, row in enumerate(reader, start=2):
            try:
                points.append(CurvePoint.model_validate(row))
            except ValidationError as e:
                raise CurveParseError(path, lineno, str(e).splitlines()[0]) from None
    try:
        return ParallelismCurve(points=points)
    except ValidationError as e:
        raise CurveParseError(path, 0, str(e)) from None


def write_breakdown_csv(segments: Sequence[AupSegment], path: str):
    _ensure_dir(path)
    with open(path, mode="w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["index", "tpf", "accuracy", "weight", "contribution"])
        for seg in segments:
            writer.writerow([seg.index, repr(seg.tpf), repr(seg.accuracy), repr(seg.weight), repr(seg.contribution)])

import json
import logging
import os
from typing import List, Sequence, Tuple, Union

from pydantic import BaseModel

from tad_lab.config import DecodeConfig
from tad_lab.denoiser import Denoiser, DenoiserParams, as_denoiser
from tad_lab.models import DecodeResult, ParallelismCurve, PromptAnswerPair
from tad_lab.tasks import oracle_for

from .decode import decode
from .exceptions import EmptyEvalSet

__all__ = [
    "EvalSummary",
    "decode_many",
    "merge_points",
    "sweep_parallelism",
    "write_decode_log",
    "load_decode_log",
]

_logger = logging.getLogger(__name__)


class EvalSummary(BaseModel):
    count: int
    accuracy: float  # percent
    mean_tpf: float
    forwards: int
    generated: int


def decode_many(
    model: Union[Denoiser, DenoiserParams],
    pairs: Sequence[PromptAnswerPair],
    config: DecodeConfig,
    modulus: int = 10,
) -> Tuple[List[DecodeResult], EvalSummary]:
    if len(pairs) == 0:
        raise EmptyEvalSet()
    model = as_denoiser(model)
    results = []
    for pair in pairs:
        res = decode(model, pair.prompt_ids, config)
        res.oracle_pass = oracle_for(pair.task, modulus).check(pair.prompt_ids, res.output_ids)
        results.append(res)
    passed = sum(1 for r in results if r.oracle_pass)
    summary = EvalSummary(
        count=len(results),
        accuracy=100.0 * passed / len(results),
        mean_tpf=sum(r.tpf for r in results) / len(results),
        forwards=sum(r.forwards for r in results),
        generated=sum(r.generated for r in results),
    )
    return results, summary


def merge_points(points: Sequence[Tuple[float, float]]) -> ParallelismCurve:
    """Sort by TPF; points sharing a TPF keep the best accuracy."""
    best = {}
    for tpf, acc in points:
        if tpf not in best or acc > best[tpf]:
            best[tpf] = acc
    return ParallelismCurve.from_pairs(sorted(best.items()))


def sweep_parallelism(
    model: Union[Denoiser, DenoiserParams],
    eval_set: Sequence[PromptAnswerPair],
    thresholds: Sequence[float],
    base: DecodeConfig,
    modulus: int = 10,
) -> ParallelismCurve:
    """(mean TPF, accuracy %) at every entropy threshold. In ``tbt`` mode the
    thresholds do not apply and the curve has the single TBT point."""
    if len(eval_set) == 0:
        raise EmptyEvalSet()
    if list(thresholds) != sorted(thresholds):
        raise ValueError("thresholds must be sorted ascending")
    model = as_denoiser(model)
    if base.mode == "tbt":
        _, summary = decode_many(model, eval_set, base, modulus)
        return merge_points([(summary.mean_tpf, summary.accuracy)])
    points = []
    for thr in thresholds:
        config = base.model_copy(update={"entropy_threshold": float(thr)})
        _, summary = decode_many(model, eval_set, config, modulus)
        _logger.info(
            "threshold %.3f: accuracy %.2f, TPF %.4f", thr, summary.accuracy, summary.mean_tpf
        )
        points.append((summary.mean_tpf, summary.accuracy))
    return merge_points(points)


def write_decode_log(results: Sequence[DecodeResult], path: str):
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, mode="w", encoding="utf-8") as f:
        for res in results:
            f.write(json.dumps(res.model_dump(mode="json"), sort_keys=True))
            f.write("\n")


def load_decode_log(path: str) -> List[DecodeResult]:
    with open(path, mode="r", encoding="utf-8") as f:
        return [DecodeResult.model_validate_json(line) for line in f if line.strip()]

import os
from typing import Optional, Tuple

from tad_lab.config import ExperimentConfig
from tad_lab.decoder import EvalSummary, decode_many, sweep_parallelism, write_decode_log
from tad_lab.denoiser import load_params
from tad_lab.metrics import aup, aup_breakdown, write_breakdown_csv, write_curve_csv
from tad_lab.models import ParallelismCurve

from .common import Artifacts, eval_corpus, require, write_json, write_manifest

__all__ = ["cmd_eval", "cmd_sweep"]


def _checkpoint(config: ExperimentConfig, checkpoint: Optional[str]) -> Tuple[str, str]:
    path = require(checkpoint or Artifacts(config.out_dir).base_checkpoint, "train-base")
    stem = os.path.splitext(os.path.basename(path))[0]
    return path, stem


def cmd_eval(config: ExperimentConfig, checkpoint: Optional[str] = None) -> EvalSummary:
    path, stem = _checkpoint(config, checkpoint)
    art = Artifacts(config.out_dir)
    params = load_params(path)
    results, summary = decode_many(params, eval_corpus(config), config.decode, config.tasks.modulus)
    log_path = art.path(f"decode_{stem}.jsonl")
    summary_path = art.path(f"eval_{stem}.json")
    write_decode_log(results, log_path)
    write_json(summary.model_dump(), summary_path)
    write_manifest(config, "eval", {"decode_log": log_path, "summary": summary_path})
    return summary


def cmd_sweep(config: ExperimentConfig, checkpoint: Optional[str] = None) -> Tuple[ParallelismCurve, float]:
    path, stem = _checkpoint(config, checkpoint)
    art = Artifacts(config.out_dir)
    params = load_params(path)
    curve = sweep_parallelism(
        params, eval_corpus(config), config.sweep.thresholds, config.decode, config.tasks.modulus
    )
    score = aup(curve, config.sweep.alpha)
    curve_path = art.path(f"sweep_{stem}_curve.csv")
    breakdown_path = art.path(f"sweep_{stem}_aup.csv")
    summary_path = art.path(f"sweep_{stem}.json")
    write_curve_csv(curve, curve_path)
    write_breakdown_csv(aup_breakdown(curve, config.sweep.alpha), breakdown_path)
    write_json({"aup": score, "alpha": config.sweep.alpha, "points": len(curve.points)}, summary_path)
    write_manifest(
        config, "sweep", {"curve": curve_path, "aup_breakdown": breakdown_path, "summary": summary_path}
    )
    return curve, score

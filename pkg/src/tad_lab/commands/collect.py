import logging
from typing import Optional

from tad_lab.config import ExperimentConfig
from tad_lab.denoiser import load_params
from tad_lab.trajectory import collect_all, filter_trajectories, save_trajectories

from .common import Artifacts, require, train_corpus, write_json, write_manifest

__all__ = ["cmd_collect"]

_logger = logging.getLogger(__name__)


def cmd_collect(
    config: ExperimentConfig, checkpoint: Optional[str] = None, trajectories: Optional[str] = None
) -> str:
    art = Artifacts(config.out_dir)
    checkpoint = require(checkpoint or art.base_checkpoint, "train-base")
    trajectories = trajectories or art.trajectories
    teacher = load_params(checkpoint)
    pairs = train_corpus(config)[: config.collect.n_prompts]
    trajs, collected = collect_all(
        teacher, pairs, config.tasks.gen_len, config.collect.privileged, config.tasks.modulus
    )
    kept, filtered = trajs, None
    if config.collect.filter:
        kept, filtered = filter_trajectories(trajs, modulus=config.tasks.modulus)
    save_trajectories(kept, trajectories)
    report = {
        "privileged": config.collect.privileged,
        "total": collected.total,
        "passed": collected.passed,
        "pass_rate": collected.pass_rate,
        "kept": len(kept),
        "dropped": 0 if filtered is None else filtered.dropped,
    }
    write_json(report, art.collect_report)
    write_manifest(
        config, "collect", {"trajectories": trajectories, "report": art.collect_report}
    )
    return trajectories

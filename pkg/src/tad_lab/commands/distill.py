import json
import logging
from typing import Optional

from tad_lab.config import DistillConfig, ExperimentConfig
from tad_lab.denoiser import load_params, save_params
from tad_lab.distill import tad_train, write_loss_csv
from tad_lab.trajectory import load_trajectories
from tad_lab.utils import stream

from .common import Artifacts, require, write_manifest

__all__ = ["resolve_distill_config", "cmd_distill"]

_logger = logging.getLogger(__name__)


def resolve_distill_config(config: ExperimentConfig) -> DistillConfig:
    """Fill delta from the calibration report in quality and speed modes."""
    distill = config.distill
    if distill.mode == "custom":
        return distill
    path = require(Artifacts(config.out_dir).calibration, "calibrate")
    with open(path, mode="r", encoding="utf-8") as f:
        report = json.load(f)
    delta = report["delta_quality"] if distill.mode == "quality" else report["delta_speed"]
    _logger.info("Using calibrated %s delta %d", distill.mode, delta)
    return distill.model_copy(update={"delta": int(delta)})


def cmd_distill(
    config: ExperimentConfig,
    checkpoint: Optional[str] = None,
    trajectories: Optional[str] = None,
    output: Optional[str] = None,
) -> str:
    art = Artifacts(config.out_dir)
    base = load_params(require(checkpoint or art.base_checkpoint, "train-base"))
    trajs = load_trajectories(require(trajectories or art.trajectories, "collect"))
    distill = resolve_distill_config(config)
    student, history = tad_train(base.copy(), base, trajs, distill, stream(config.seed, "distill"))
    output = output or art.distilled_checkpoint
    save_params(output, student)
    write_loss_csv(history, art.distill_loss)
    write_manifest(config, "distill", {"checkpoint": output, "loss": art.distill_loss})
    return output

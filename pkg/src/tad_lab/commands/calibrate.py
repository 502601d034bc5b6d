import csv
from typing import Optional

from tad_lab.config import ExperimentConfig
from tad_lab.denoiser import load_params
from tad_lab.distill import CalibrationReport, calibrate_delta
from tad_lab.trajectory import load_trajectories
from tad_lab.utils import stream

from .common import Artifacts, require, write_json, write_manifest

__all__ = ["cmd_calibrate"]


def cmd_calibrate(
    config: ExperimentConfig, checkpoint: Optional[str] = None, trajectories: Optional[str] = None
) -> CalibrationReport:
    art = Artifacts(config.out_dir)
    student = load_params(require(checkpoint or art.base_checkpoint, "train-base"))
    trajs = load_trajectories(require(trajectories or art.trajectories, "collect"))
    report = calibrate_delta(
        student,
        trajs,
        config.analysis.calibrate_samples,
        stream(config.seed, "calibrate"),
        config.analysis.quality_threshold,
        config.analysis.speed_threshold,
    )
    write_json(report.model_dump(), art.calibration)
    with open(art.decay_curve, mode="w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["distance", "confidence", "count"])
        for d, (value, count) in enumerate(zip(report.curve, report.counts), start=1):
            writer.writerow([d, repr(value), count])
    write_manifest(config, "calibrate", {"calibration": art.calibration, "decay_curve": art.decay_curve})
    return report

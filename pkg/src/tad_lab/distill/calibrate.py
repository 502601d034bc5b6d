import logging
from typing import List, Sequence, Union

import numpy as np
from pydantic import BaseModel

from tad_lab.denoiser import Denoiser, DenoiserParams, as_denoiser
from tad_lab.models import Trajectory
from tad_lab.trajectory import student_input

from .exceptions import NoTrajectories

__all__ = ["CalibrationReport", "decay_curve", "select_delta", "calibrate_delta"]

_logger = logging.getLogger(__name__)


class CalibrationReport(BaseModel):
    curve: List[float]
    counts: List[int]
    delta_quality: int
    delta_speed: int
    T: int


def decay_curve(
    student: Union[Denoiser, DenoiserParams],
    trajs: Sequence[Trajectory],
    sample_count: int,
    rng: np.random.Generator,
):
    """Mean student probability of the token revealed ``d`` steps ahead.

    For a sampled (trajectory, s), entry ``d`` (1-based) reads the student's
    probability, on ``q + x_s``, of the token revealed at step ``s + d - 1``;
    ``d = 1`` is the token about to be decoded. The curve stops at the first
    distance no sample reaches. Returns ``(curve, counts)``.
    """
    if len(trajs) == 0:
        raise NoTrajectories("calibration")
    model = as_denoiser(student)
    T = max(traj.T for traj in trajs)
    sums = np.zeros(T)
    counts = np.zeros(T, dtype=np.int64)
    for _ in range(sample_count):
        traj = trajs[int(rng.integers(0, len(trajs)))]
        s = int(rng.integers(1, traj.T + 1))
        state = traj.state_at(s)
        probs = model.predict(student_input(traj.prompt_ids, state, model.max_len)).response_probs()
        for step in traj.steps[s - 1 :]:
            d = step.s - s + 1
            sums[d - 1] += probs[step.pos, step.token]
            counts[d - 1] += 1
    reached = int(np.argmin(counts > 0)) if np.any(counts == 0) else T
    curve = (sums[:reached] / counts[:reached]).tolist()
    return curve, counts[:reached].tolist()


def select_delta(curve: Sequence[float], threshold: float, T: int) -> int:
    """Smallest distance whose value falls below ``threshold``, else ``T``."""
    for d, value in enumerate(curve, start=1):
        if value < threshold:
            return d
    return T


def calibrate_delta(
    student: Union[Denoiser, DenoiserParams],
    trajs: Sequence[Trajectory],
    sample_count: int,
    rng: np.random.Generator,
    quality_threshold: float = 0.5,
    speed_threshold: float = 0.2,
) -> CalibrationReport:
    curve, counts = decay_curve(student, trajs, sample_count, rng)
    T = max(traj.T for traj in trajs)
    report = CalibrationReport(
        curve=curve,
        counts=counts,
        delta_quality=select_delta(curve, quality_threshold, T),
        delta_speed=select_delta(curve, speed_threshold, T),
        T=T,
    )
    _logger.info(
        "Calibrated delta: quality %d, speed %d (T=%d)", report.delta_quality, report.delta_speed, T
    )
    return report

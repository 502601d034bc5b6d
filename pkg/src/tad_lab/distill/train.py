import csv
import logging
import math
import os
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel

from tad_lab.config import DistillConfig
from tad_lab.denoiser import AdamW, Denoiser, DenoiserParams, as_denoiser, clip_grad_norm
from tad_lab.models import Trajectory
from tad_lab.numerics import NonFiniteTensor

from .exceptions import NoTrajectories, NonFiniteLoss
from .objective import prepare_instance, tad_loss_and_grad

__all__ = ["LossRecord", "StepCallback", "tad_train", "write_loss_csv", "read_loss_csv"]

_logger = logging.getLogger(__name__)


class LossRecord(BaseModel):
    step: int
    near_loss: float
    distant_loss: float
    total: float


StepCallback = Callable[[LossRecord], None]


def tad_train(
    student: DenoiserParams,
    teacher: Union[Denoiser, DenoiserParams],
    trajs: Sequence[Trajectory],
    config: DistillConfig,
    rng: np.random.Generator,
    on_step: Optional[StepCallback] = None,
) -> Tuple[DenoiserParams, List[LossRecord]]:
    """Distil ``teacher`` into ``student`` along the recorded trajectories.

    Each epoch visits every trajectory once in random order, at one step s
    drawn uniformly from 1..T. Only the student is updated.
    """
    if len(trajs) == 0:
        raise NoTrajectories("distillation")
    teacher_model = as_denoiser(teacher)
    optimizer = AdamW(lr=config.lr, weight_decay=config.weight_decay)
    params = student.copy()
    history: List[LossRecord] = []
    step = 0
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(len(trajs))
        for start in range(0, len(order), config.batch):
            batch = order[start : start + config.batch]
            grads: Dict[str, np.ndarray] = {name: np.zeros_like(arr) for name, arr in params.items()}
            near = distant = total = 0.0
            step += 1
            for idx in batch:
                traj = trajs[int(idx)]
                s = int(rng.integers(1, traj.T + 1))
                inst = prepare_instance(teacher_model, traj, s, config.delta)
                try:
                    breakdown, item_grads = tad_loss_and_grad(params, inst, config)
                except NonFiniteTensor:
                    raise NonFiniteLoss(int(idx), step, float("nan"), s) from None
                if not math.isfinite(breakdown.total):
                    raise NonFiniteLoss(int(idx), step, breakdown.total, s)
                near += breakdown.near
                distant += breakdown.distant
                total += breakdown.total
                for name, g in item_grads.items():
                    grads[name] += g
            n = len(batch)
            for name in grads:
                grads[name] /= n
            clip_grad_norm(grads, config.max_grad_norm)
            params = optimizer.step(params, grads)
            record = LossRecord(step=step, near_loss=near / n, distant_loss=distant / n, total=total / n)
            history.append(record)
            _logger.debug(
                "step %d near %.6f distant %.6f total %.6f",
                step, record.near_loss, record.distant_loss, record.total,
            )
            if on_step is not None:
                on_step(record)
        epoch_records = history[-math.ceil(len(trajs) / config.batch) :]
        _logger.info(
            "epoch %d/%d mean total loss %.6f",
            epoch,
            config.epochs,
            sum(r.total for r in epoch_records) / len(epoch_records),
        )
    return params, history


def write_loss_csv(records: Sequence[LossRecord], path: str):
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, mode="w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["step", "near_loss", "distant_loss", "total"])
        for r in records:
            writer.writerow([r.step, repr(r.near_loss), repr(r.distant_loss), repr(r.total)])


def read_loss_csv(path: str) -> List[LossRecord]:
    with open(path, mode="r", encoding="utf-8", newline="") as f:
        return [LossRecord.model_validate(row) for row in csv.DictReader(f)]

from typing import Dict, NamedTuple, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel

from tad_lab.config import DistillConfig
from tad_lab.denoiser import Denoiser, DenoiserParams, as_denoiser, value_and_grad, value_of
from tad_lab.denoiser.network import forward_logits
from tad_lab.models import Trajectory
from tad_lab.numerics import Tape, Tensor
from tad_lab.trajectory import student_input, teacher_input

from .losses import hard_ce_term, soft_kl_term
from .partition import Partition, partition_masked

__all__ = ["LossBreakdown", "TadInstance", "prepare_instance", "tad_objective", "tad_loss", "tad_loss_and_grad"]


class LossBreakdown(BaseModel):
    near: float
    distant: float
    total: float


class TadInstance(NamedTuple):
    """Everything one (trajectory, step) update needs besides the student."""

    student_tokens: Tuple[int, ...]
    response_offset: int
    partition: Partition
    # teacher logits over the response region
    teacher_logits: np.ndarray


def prepare_instance(
    teacher: Union[Denoiser, DenoiserParams], traj: Trajectory, s: int, delta: int
) -> TadInstance:
    """Partition step ``s`` and run the teacher once on the privileged input."""
    state = traj.state_at(s)
    partition = partition_masked(traj, s, delta)
    model = as_denoiser(teacher)
    t_out = model.predict(teacher_input(traj.prompt_ids, traj.answer_ids, state, model.max_len))
    s_in = student_input(traj.prompt_ids, state, model.max_len)
    return TadInstance(
        student_tokens=s_in.tokens(),
        response_offset=s_in.response_offset,
        partition=partition,
        teacher_logits=t_out.response_logits(),
    )


def tad_objective(params: DenoiserParams, inst: TadInstance, config: DistillConfig, parts: Optional[Dict[str, Tensor]] = None):
    """Tape builder for near + lambda * distant on one instance.

    The near and distant term tensors are stored into ``parts`` when given.
    """
    teacher_logits = inst.teacher_logits
    part = inst.partition

    def objective(tape: Tape, p: Dict[str, Tensor]) -> Tensor:
        logits = forward_logits(tape, p, params.hparams, inst.student_tokens)
        off = inst.response_offset
        if config.near_objective == "hard_ce":
            near = hard_ce_term(tape, logits, off, part.near, part.labels)
        else:
            near = soft_kl_term(tape, logits, off, part.near, teacher_logits, config.tau)
        if config.distant_objective == "soft_kl":
            distant = soft_kl_term(tape, logits, off, part.distant, teacher_logits, config.tau)
        elif config.distant_objective == "hard_ce":
            distant = hard_ce_term(tape, logits, off, part.distant, part.labels)
        else:
            distant = None
        zero = tape.scale(tape.sum(logits), 0.0)
        near = zero if near is None else near
        distant = zero if distant is None else distant
        if parts is not None:
            parts["near"] = near
            parts["distant"] = distant
        return tape.add(near, tape.scale(distant, config.lambda_))

    return objective


def tad_loss(params: DenoiserParams, inst: TadInstance, config: DistillConfig) -> LossBreakdown:
    parts: Dict[str, Tensor] = {}
    total = value_of(params, tad_objective(params, inst, config, parts))
    return LossBreakdown(near=parts["near"].item(), distant=parts["distant"].item(), total=total)


def tad_loss_and_grad(
    params: DenoiserParams, inst: TadInstance, config: DistillConfig
) -> Tuple[LossBreakdown, Dict[str, np.ndarray]]:
    parts: Dict[str, Tensor] = {}
    total, grads = value_and_grad(params, tad_objective(params, inst, config, parts))
    breakdown = LossBreakdown(near=parts["near"].item(), distant=parts["distant"].item(), total=total)
    return breakdown, grads

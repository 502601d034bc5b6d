"""Near and distant supervision terms.

Each term is available twice: on plain :class:`DenoiserOutput` rows for
reporting, and as a tape builder for the student gradient. Both average over
the positions of their subset.
"""

from typing import Mapping, Optional, Sequence

import numpy as np

from tad_lab.denoiser import DenoiserOutput
from tad_lab.numerics import Tape, Tensor

from .exceptions import MissingLabel
from .partition import Partition

__all__ = [
    "PROB_FLOOR",
    "soften",
    "near_loss",
    "distant_loss",
    "hard_ce_term",
    "soft_kl_term",
]

PROB_FLOOR = 1e-12


def soften(logits: np.ndarray, tau: float) -> np.ndarray:
    z = np.asarray(logits, dtype=np.float64) / tau
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def _log_soften(logits: np.ndarray, tau: float) -> np.ndarray:
    z = np.asarray(logits, dtype=np.float64) / tau
    z = z - z.max(axis=-1, keepdims=True)
    return z - np.log(np.exp(z).sum(axis=-1, keepdims=True))


def _labels_for(positions: Sequence[int], labels: Mapping[int, int]):
    res = []
    for pos in positions:
        if pos not in labels:
            raise MissingLabel(pos)
        res.append(int(labels[pos]))
    return res


def near_loss(student_out: DenoiserOutput, partition: Partition, labels: Optional[Mapping[int, int]] = None) -> float:
    """Mean over near positions of -log p_S(label); 0 when near is empty."""
    if len(partition.near) == 0:
        return 0.0
    targets = _labels_for(partition.near, partition.labels if labels is None else labels)
    rows = list(partition.near)
    logp = _log_soften(student_out.response_logits()[rows], 1.0)[np.arange(len(rows)), targets]
    return float(-logp.mean())


def _kl_rows(teacher_logits: np.ndarray, student_logits: np.ndarray, tau: float) -> np.ndarray:
    p_t = soften(teacher_logits, tau)
    log_t = np.log(np.maximum(p_t, PROB_FLOOR))
    log_s = _log_soften(student_logits, tau)
    return (p_t * (log_t - log_s)).sum(axis=-1)


def distant_loss(
    teacher_out: DenoiserOutput,
    student_out: DenoiserOutput,
    partition: Partition,
    tau: float,
    positions: Optional[Sequence[int]] = None,
) -> float:
    """Mean over distant positions of tau^2 KL(teacher_tau || student_tau);
    0 when distant is empty."""
    if tau <= 0:
        raise ValueError(f"temperature must be positive, got {tau}")
    rows = list(partition.distant if positions is None else positions)
    if len(rows) == 0:
        return 0.0
    kl = _kl_rows(teacher_out.response_logits()[rows], student_out.response_logits()[rows], tau)
    # clamp rounding below zero
    return float(tau * tau * np.maximum(kl, 0.0).mean())


def hard_ce_term(
    tape: Tape, logits: Tensor, offset: int, positions: Sequence[int], labels: Mapping[int, int]
) -> Optional[Tensor]:
    """Mean -log p at ``positions`` of the given labels, or None if empty."""
    if len(positions) == 0:
        return None
    targets = _labels_for(positions, labels)
    logp = tape.log_softmax_row(tape.gather_rows(logits, [offset + p for p in positions]))
    picked = tape.gather(logp, range(len(positions)), targets)
    return tape.scale(tape.sum(picked), -1.0 / len(positions))


def soft_kl_term(
    tape: Tape,
    logits: Tensor,
    offset: int,
    positions: Sequence[int],
    teacher_logits: np.ndarray,
    tau: float,
) -> Optional[Tensor]:
    """Mean tau^2 KL(softmax(z_T / tau) || softmax(z_S / tau)) at ``positions``.

    ``teacher_logits`` are the teacher's response-region logits; the teacher
    side is a constant so only the cross term carries gradient.
    """
    if len(positions) == 0:
        return None
    n = len(positions)
    p_t = soften(np.asarray(teacher_logits)[list(positions)], tau)
    neg_entropy = float((p_t * np.log(np.maximum(p_t, PROB_FLOOR))).sum())
    rows = tape.gather_rows(logits, [offset + p for p in positions])
    log_s = tape.log_softmax_row(tape.scale(rows, 1.0 / tau))
    cross = tape.sum(tape.mul(tape.constant(p_t), log_s))
    kl_sum = tape.add(tape.constant(np.asarray(neg_entropy)), tape.scale(cross, -1.0))
    return tape.scale(kl_sum, tau * tau / n)



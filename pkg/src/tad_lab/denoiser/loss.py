from typing import Callable, Dict, Sequence, Tuple

import numpy as np

from tad_lab.corruption import corrupt
from tad_lab.models import MaskedState
from tad_lab.numerics import Tape, Tensor, backward, record_forward

from .exceptions import InvalidCorruptionLevel
from .network import forward_logits
from .params import DenoiserParams

__all__ = [
    "Objective",
    "value_and_grad",
    "value_of",
    "masked_ce",
    "mdlm_loss",
    "mdlm_loss_fixed",
    "mdlm_loss_and_grad",
]

Objective = Callable[[Tape, Dict[str, Tensor]], Tensor]


def value_and_grad(params: DenoiserParams, objective: Objective) -> Tuple[float, Dict[str, np.ndarray]]:
    out, tape = record_forward(objective, params.arrays)
    return out.item(), backward(tape, out)


def value_of(params: DenoiserParams, objective: Objective) -> float:
    tape = Tape()
    p = {name: tape.constant(arr) for name, arr in params.items()}
    return objective(tape, p).item()


def masked_ce(
    params: DenoiserParams, state: MaskedState, clean: Sequence[int], weight: float
) -> Objective:
    """``weight`` times the summed -log p of the clean tokens at the masked
    response positions of ``state``."""
    positions = state.masked_positions()
    rows = [state.response_offset + i for i in positions]
    labels = [int(clean[i]) for i in positions]
    tokens = state.tokens()

    def objective(tape: Tape, p: Dict[str, Tensor]) -> Tensor:
        logits = forward_logits(tape, p, params.hparams, tokens)
        if len(rows) == 0:
            return tape.scale(tape.sum(logits), 0.0)
        logp = tape.log_softmax_row(logits)
        return tape.scale(tape.sum(tape.gather(logp, rows, labels)), -weight)

    return objective


def _check_level(t: float):
    if not 0.0 < t <= 1.0:
        raise InvalidCorruptionLevel(t)


def mdlm_loss_fixed(params: DenoiserParams, state: MaskedState, clean: Sequence[int], t: float) -> float:
    """(1/t) sum over masked positions of -log p(x0_i | x_t) on a given x_t."""
    _check_level(t)
    if len(state.masked_positions()) == 0:
        return 0.0
    return value_of(params, masked_ce(params, state, clean, 1.0 / t))


def mdlm_loss_and_grad(
    params: DenoiserParams, state: MaskedState, clean: Sequence[int], t: float
) -> Tuple[float, Dict[str, np.ndarray]]:
    _check_level(t)
    if len(state.masked_positions()) == 0:
        return 0.0, {name: np.zeros_like(arr) for name, arr in params.items()}
    return value_and_grad(params, masked_ce(params, state, clean, 1.0 / t))


def mdlm_loss(
    params: DenoiserParams,
    x0: Sequence[int],
    t: float,
    rng: np.random.Generator,
    prompt: Sequence[int] = (),
) -> float:
    """Masked-diffusion loss of one clean response at level ``t``, with a
    fresh corruption drawn from ``rng``."""
    _check_level(t)
    state = corrupt(x0, t, rng, prompt)
    return mdlm_loss_fixed(params, state, x0, t)

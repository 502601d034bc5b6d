import logging
import math
from typing import List, Sequence, Union

import numpy as np

from tad_lab.config import DecodeConfig
from tad_lab.denoiser import Denoiser, DenoiserOutput, DenoiserParams, as_denoiser, most_confident
from tad_lab.models import DecodeResult, DecodeStep, MaskedState
from tad_lab.trajectory import student_input

from .exceptions import NoProgress

__all__ = ["entropy", "decode_tbt", "decode_parallel", "decode"]

_logger = logging.getLogger(__name__)


def entropy(row: np.ndarray) -> float:
    """Shannon entropy in nats, with 0 log 0 = 0."""
    p = np.asarray(row, dtype=np.float64)
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum())


def _forward(model: Denoiser, q: Sequence[int], state: MaskedState) -> DenoiserOutput:
    return model.predict(student_input(q, state, model.max_len))


def decode_tbt(model: Union[Denoiser, DenoiserParams], q: Sequence[int], gen_len: int) -> DecodeResult:
    """Token-by-token decoding: one confidence-argmax commit per forward."""
    if gen_len < 1:
        raise ValueError(f"gen_len must be at least 1, got {gen_len}")
    model = as_denoiser(model)
    state = MaskedState.fully_masked(tuple(q), gen_len)
    per_step = []
    for _ in range(gen_len):
        out = _forward(model, q, state)
        pos, token, _ = most_confident(out, state.masked_positions())
        per_step.append(
            DecodeStep(committed_positions=[pos], entropies=[entropy(out.response_probs()[pos])])
        )
        state = state.reveal(pos, token)
    return DecodeResult(
        prompt_ids=tuple(q),
        output_ids=state.response,
        forwards=gen_len,
        generated=gen_len,
        per_step=per_step,
    )


def _blocks(gen_len: int, block_len: int) -> List[range]:
    n = math.ceil(gen_len / block_len)
    return [range(b * block_len, min((b + 1) * block_len, gen_len)) for b in range(n)]


def decode_parallel(model: Union[Denoiser, DenoiserParams], q: Sequence[int], config: DecodeConfig) -> DecodeResult:
    """Entropy-threshold decoding over left-to-right blocks.

    Each forward commits every masked position of the current block whose
    entropy is below ``entropy_threshold``. Once the current block is at
    least ``decoded_token_threshold`` committed, the next block joins the
    window; its positions additionally need max probability of at least
    ``1 - block_add_threshold``. A forward that commits nothing commits the
    single most confident position of the current block.
    """
    model = as_denoiser(model)
    gen_len = config.gen_len
    blocks = _blocks(gen_len, config.block_len)
    state = MaskedState.fully_masked(tuple(q), gen_len)
    current = 0
    forwards = 0
    per_step = []
    floor = 1.0 - config.block_add_threshold

    while not state.is_complete():
        while current < len(blocks) and all(state.response[i] != state.mask_id for i in blocks[current]):
            current += 1
        if current >= len(blocks):
            raise NoProgress(forwards, gen_len - len(state.masked_positions()), gen_len)
        block = blocks[current]
        done = sum(1 for i in block if state.response[i] != state.mask_id)
        lookahead = (
            blocks[current + 1]
            if current + 1 < len(blocks) and done / len(block) >= config.decoded_token_threshold
            else range(0)
        )

        out = _forward(model, q, state)
        forwards += 1
        probs = out.response_probs()
        commits = []
        for i in block:
            if state.response[i] == state.mask_id and entropy(probs[i]) < config.entropy_threshold:
                commits.append(i)
        for i in lookahead:
            if state.response[i] != state.mask_id:
                continue
            _, conf = out.best_token(i, state.mask_id)
            if entropy(probs[i]) < config.entropy_threshold and conf >= floor:
                commits.append(i)
        if len(commits) == 0:
            candidates = [i for i in block if state.response[i] == state.mask_id]
            pos, _, _ = most_confident(out, candidates, state.mask_id)
            commits = [pos]

        per_step.append(
            DecodeStep(committed_positions=commits, entropies=[entropy(probs[i]) for i in commits])
        )
        for i in commits:
            token, _ = out.best_token(i, state.mask_id)
            state = state.reveal(i, token)

    return DecodeResult(
        prompt_ids=tuple(q),
        output_ids=state.response,
        forwards=forwards,
        generated=gen_len,
        per_step=per_step,
    )


def decode(model: Union[Denoiser, DenoiserParams], q: Sequence[int], config: DecodeConfig) -> DecodeResult:
    if config.mode == "tbt":
        return decode_tbt(model, q, config.gen_len)
    return decode_parallel(model, q, config)

import logging
import math
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from tad_lab.config import BaseTrainConfig, DenoiserConfig
from tad_lab.corruption import corrupt, sample_level
from tad_lab.models import SEP_ID, PromptAnswerPair, Vocabulary
from tad_lab.numerics import NonFiniteTensor
from tad_lab.tasks import response_ids

from .exceptions import EmptyCorpus, TrainingDiverged
from .loss import mdlm_loss_and_grad
from .optim import AdamW, clip_grad_norm
from .params import DenoiserParams, Hyperparameters

__all__ = [
    "MdlmExample",
    "EpochCallback",
    "hyperparameters",
    "fit_mdlm",
    "train_base",
    "finetune_mdlm",
]

_logger = logging.getLogger(__name__)

EpochCallback = Callable[[int, float], None]


class MdlmExample(NamedTuple):
    prompt: Tuple[int, ...]
    response: Tuple[int, ...]
    # privileged answer, shown as prompt + SEP + hint when drawn
    hint: Optional[Tuple[int, ...]] = None


def hyperparameters(config: DenoiserConfig, vocab: Vocabulary) -> Hyperparameters:
    return Hyperparameters(
        vocab_size=vocab.size,
        n_layers=config.n_layers,
        width=config.width,
        n_heads=config.n_heads,
        max_len=config.max_len,
    )


def fit_mdlm(
    params: DenoiserParams,
    examples: Sequence[MdlmExample],
    config: BaseTrainConfig,
    rng: np.random.Generator,
    privileged_rate: float = 0.0,
    on_epoch: Optional[EpochCallback] = None,
) -> Tuple[DenoiserParams, List[float]]:
    """Minibatch AdamW on the masked-diffusion loss, one level t per sequence."""
    if len(examples) == 0:
        raise EmptyCorpus()

    optimizer = AdamW(lr=config.lr, weight_decay=config.weight_decay)
    epoch_losses: List[float] = []
    step = 0
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(len(examples))
        total = 0.0
        for start in range(0, len(order), config.batch):
            batch = order[start : start + config.batch]
            grads: Dict[str, np.ndarray] = {name: np.zeros_like(arr) for name, arr in params.items()}
            batch_loss = 0.0
            for idx in batch:
                ex = examples[int(idx)]
                t = sample_level(rng, config.t_min)
                prompt = ex.prompt
                if ex.hint is not None and rng.random() < privileged_rate:
                    prompt = tuple(ex.prompt) + (SEP_ID,) + tuple(ex.hint)
                state = corrupt(ex.response, t, rng, prompt)
                try:
                    loss, item_grads = mdlm_loss_and_grad(params, state, ex.response, t)
                except NonFiniteTensor:
                    raise TrainingDiverged(epoch, step, float("nan"), int(idx)) from None
                if not math.isfinite(loss):
                    raise TrainingDiverged(epoch, step, loss, int(idx))
                batch_loss += loss
                for name, g in item_grads.items():
                    grads[name] += g
            for name in grads:
                grads[name] /= len(batch)
            clip_grad_norm(grads, config.max_grad_norm)
            params = optimizer.step(params, grads)
            step += 1
            total += batch_loss
            _logger.debug("epoch %d step %d loss %.6f", epoch, step, batch_loss / len(batch))
        mean_loss = total / len(examples)
        if not math.isfinite(mean_loss):
            raise TrainingDiverged(epoch, step, mean_loss)
        epoch_losses.append(mean_loss)
        _logger.info("epoch %d/%d mean loss %.6f", epoch, config.epochs, mean_loss)
        if on_epoch is not None:
            on_epoch(epoch, mean_loss)
    return params, epoch_losses


def train_base(
    config: BaseTrainConfig,
    model_config: DenoiserConfig,
    corpus: Sequence[PromptAnswerPair],
    gen_len: int,
    vocab: Vocabulary,
    rng: np.random.Generator,
    on_epoch: Optional[EpochCallback] = None,
) -> Tuple[DenoiserParams, List[float]]:
    if len(corpus) == 0:
        raise EmptyCorpus()
    params = DenoiserParams.init(hyperparameters(model_config, vocab), rng, model_config.init_scale)
    examples = [
        MdlmExample(
            prompt=pair.prompt_ids,
            response=response_ids(pair.answer_ids, gen_len),
            hint=pair.answer_ids,
        )
        for pair in corpus
    ]
    _logger.info(
        "Base training on %d sequences, %d parameters", len(examples), params.num_values()
    )
    return fit_mdlm(
        params, examples, config, rng, privileged_rate=config.privileged_rate, on_epoch=on_epoch
    )


def finetune_mdlm(
    params: DenoiserParams,
    examples: Sequence[MdlmExample],
    config: BaseTrainConfig,
    rng: np.random.Generator,
    on_epoch: Optional[EpochCallback] = None,
) -> Tuple[DenoiserParams, List[float]]:
    """Continue masked-diffusion training from ``params`` (no privileged hints)."""
    return fit_mdlm(params.copy(), examples, config, rng, privileged_rate=0.0, on_epoch=on_epoch)

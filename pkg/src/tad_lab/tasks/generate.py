import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from tad_lab.config import TasksConfig
from tad_lab.models import (EOS_ID, PAD_ID, PromptAnswerPair, Vocabulary,
                            default_vocabulary)

from .exceptions import UnknownTask

__all__ = ["TASK_NAMES", "answer_text", "make_pair", "generate_pair", "generate_corpus", "response_ids"]

_logger = logging.getLogger(__name__)

TASK_NAMES = ("copy", "reverse", "arith")

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def answer_text(task: str, prompt_text: str, modulus: int = 10) -> str:
    """Ground-truth answer for a prompt, or raise ValueError if the prompt is
    not well formed for ``task``."""
    if task == "copy":
        return prompt_text
    if task == "reverse":
        return prompt_text[::-1]
    if task == "arith":
        if not prompt_text.endswith("="):
            raise ValueError(f"arithmetic prompt {prompt_text!r} must end with '='")
        terms = prompt_text[:-1].split("+")
        if any(len(term) != 1 or not term.isdigit() for term in terms):
            raise ValueError(f"arithmetic prompt {prompt_text!r} must be single digits joined by '+'")
        return str(sum(int(term) for term in terms) % modulus)
    raise UnknownTask(task)


def make_pair(task: str, prompt_text: str, vocab: Vocabulary, modulus: int = 10) -> PromptAnswerPair:
    answer = answer_text(task, prompt_text, modulus)
    return PromptAnswerPair(
        task=task,  # type: ignore[arg-type]
        prompt_ids=tuple([vocab.task_tag_id(task)] + vocab.encode(prompt_text)),
        answer_ids=tuple(vocab.encode(answer)),
        prompt_text=prompt_text,
        answer_text=answer,
    )


def generate_pair(task: str, tasks_config: TasksConfig, rng: np.random.Generator, vocab: Vocabulary) -> PromptAnswerPair:
    if task in ("copy", "reverse"):
        n = int(rng.integers(tasks_config.min_len, tasks_config.max_len + 1))
        text = "".join(_LETTERS[i] for i in rng.integers(0, len(_LETTERS), size=n))
    elif task == "arith":
        n = int(rng.integers(tasks_config.min_terms, tasks_config.max_terms + 1))
        text = "+".join(str(d) for d in rng.integers(0, 10, size=n)) + "="
    else:
        raise UnknownTask(task)
    return make_pair(task, text, vocab, tasks_config.modulus)


def generate_corpus(
    tasks_config: TasksConfig,
    n: int,
    rng: np.random.Generator,
    vocab: Optional[Vocabulary] = None,
    tasks: Optional[Sequence[str]] = None,
) -> List[PromptAnswerPair]:
    """``n`` pairs, each from a task drawn uniformly from ``tasks``
    (default: ``tasks_config.names``)."""
    if n <= 0:
        raise ValueError(f"corpus size must be positive, got {n}")
    if vocab is None:
        vocab = default_vocabulary()
    names = list(tasks) if tasks is not None else list(tasks_config.names)
    for name in names:
        if name not in TASK_NAMES:
            raise UnknownTask(name)
    pairs = []
    for _ in range(n):
        task = names[int(rng.integers(0, len(names)))]
        pairs.append(generate_pair(task, tasks_config, rng, vocab))
    _logger.debug("Generated %d pairs over tasks %s", n, ", ".join(names))
    return pairs


def response_ids(answer: Sequence[int], gen_len: int) -> Tuple[int, ...]:
    """``answer + EOS`` padded with PAD to ``gen_len``."""
    if len(answer) + 1 > gen_len:
        raise ValueError(f"answer of length {len(answer)} plus EOS does not fit in {gen_len} slots")
    return tuple(answer) + (EOS_ID,) + (PAD_ID,) * (gen_len - len(answer) - 1)

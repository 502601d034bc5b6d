"""Pre-LN bidirectional transformer recorded on a :class:`Tape`.

No causal mask: every position attends to every other position, which is
what lets the model predict all masked slots of a state in one pass.
"""

import math
from typing import Dict, Sequence

from tad_lab.numerics import Tape, Tensor

from .exceptions import SequenceTooLong, TokenOutOfRange
from .params import Hyperparameters

__all__ = ["check_tokens", "forward_logits"]


def check_tokens(hparams: Hyperparameters, tokens: Sequence[int]):
    if len(tokens) > hparams.max_len:
        raise SequenceTooLong(len(tokens), hparams.max_len)
    for i, tok in enumerate(tokens):
        if not 0 <= tok < hparams.vocab_size:
            raise TokenOutOfRange(i, tok, hparams.vocab_size)


def _layer_norm(tape: Tape, x: Tensor, gain: Tensor, bias: Tensor) -> Tensor:
    return tape.add_row(tape.mul_row(tape.layer_norm_row(x), gain), bias)


def _attention(tape: Tape, x: Tensor, p: Dict[str, Tensor], prefix: str, hparams: Hyperparameters) -> Tensor:
    q = tape.matmul(x, p[f"{prefix}.wq"])
    k = tape.matmul(x, p[f"{prefix}.wk"])
    v = tape.matmul(x, p[f"{prefix}.wv"])
    d = hparams.head_dim
    heads = []
    for h in range(hparams.n_heads):
        qh = tape.slice_cols(q, h * d, (h + 1) * d)
        kh = tape.slice_cols(k, h * d, (h + 1) * d)
        vh = tape.slice_cols(v, h * d, (h + 1) * d)
        scores = tape.scale(tape.matmul(qh, tape.transpose(kh)), 1.0 / math.sqrt(d))
        heads.append(tape.matmul(tape.softmax_row(scores), vh))
    merged = heads[0] if len(heads) == 1 else tape.concat_cols(*heads)
    return tape.matmul(merged, p[f"{prefix}.wo"])


def _feed_forward(tape: Tape, x: Tensor, p: Dict[str, Tensor], prefix: str) -> Tensor:
    h = tape.gelu(tape.add_row(tape.matmul(x, p[f"{prefix}.w1"]), p[f"{prefix}.b1"]))
    return tape.add_row(tape.matmul(h, p[f"{prefix}.w2"]), p[f"{prefix}.b2"])


def forward_logits(
    tape: Tape, p: Dict[str, Tensor], hparams: Hyperparameters, tokens: Sequence[int]
) -> Tensor:
    """Logits of shape ``(len(tokens), vocab_size)``."""
    check_tokens(hparams, tokens)
    n = len(tokens)
    x = tape.add(
        tape.gather_rows(p["embed"], tokens),
        tape.gather_rows(p["pos"], range(n)),
    )
    for i in range(hparams.n_layers):
        prefix = f"layer{i}"
        h = _layer_norm(tape, x, p[f"{prefix}.ln1.gain"], p[f"{prefix}.ln1.bias"])
        x = tape.add(x, _attention(tape, h, p, prefix, hparams))
        h = _layer_norm(tape, x, p[f"{prefix}.ln2.gain"], p[f"{prefix}.ln2.bias"])
        x = tape.add(x, _feed_forward(tape, h, p, prefix))
    x = _layer_norm(tape, x, p["final_ln.gain"], p["final_ln.bias"])
    return tape.add_row(tape.matmul(x, p["head"]), p["head_bias"])

from typing import Union

from tad_lab.models import MaskedState
from tad_lab.numerics import Tape

from .abc import Denoiser, DenoiserOutput
from .network import forward_logits
from .params import DenoiserParams

__all__ = ["TransformerDenoiser", "denoise_forward", "as_denoiser"]


def denoise_forward(params: DenoiserParams, state: MaskedState) -> DenoiserOutput:
    tape = Tape()
    p = {name: tape.constant(arr) for name, arr in params.items()}
    logits = forward_logits(tape, p, params.hparams, state.tokens())
    probs = tape.softmax_row(logits)
    return DenoiserOutput(logits.numpy(), probs.numpy(), state.response_offset)


class TransformerDenoiser(Denoiser):
    def __init__(self, params: DenoiserParams) -> None:
        self.params = params

    @property
    def vocab_size(self) -> int:
        return self.params.hparams.vocab_size

    @property
    def max_len(self) -> int:
        return self.params.hparams.max_len

    def predict(self, state: MaskedState) -> DenoiserOutput:
        return denoise_forward(self.params, state)


def as_denoiser(model: Union[Denoiser, DenoiserParams]) -> Denoiser:
    if isinstance(model, Denoiser):
        return model
    return TransformerDenoiser(model)

from typing import Callable, List, Optional, Sequence

import numpy as np

from tad_lab.models import MaskedState

from .abc import Denoiser, DenoiserOutput

__all__ = ["ScriptedDenoiser", "Script"]

Script = Callable[[MaskedState], np.ndarray]

_LOG_FLOOR = 1e-300


class ScriptedDenoiser(Denoiser):
    """Serves fixed probability rows for the response region.

    ``rows`` (one row per response position) is used for every call; a
    ``script`` callable instead computes the rows from the state. Prompt rows
    are uniform. Every state passed to :meth:`predict` is kept in ``calls``.
    """

    def __init__(
        self,
        vocab_size: int,
        rows: Optional[np.ndarray] = None,
        script: Optional[Script] = None,
        max_len: int = 96,
    ) -> None:
        if (rows is None) == (script is None):
            raise ValueError("exactly one of rows and script must be given")
        self._vocab_size = vocab_size
        self._max_len = max_len
        self._rows = None if rows is None else np.asarray(rows, dtype=np.float64)
        self._script = script
        self.calls: List[MaskedState] = []

    @classmethod
    def deterministic(cls, tokens: Sequence[int], vocab_size: int, max_len: int = 96) -> "ScriptedDenoiser":
        rows = np.zeros((len(tokens), vocab_size))
        rows[np.arange(len(tokens)), list(tokens)] = 1.0
        return cls(vocab_size, rows=rows, max_len=max_len)

    @property
    def vocab_size(self) -> int:
        return self._vocab_size

    @property
    def max_len(self) -> int:
        return self._max_len

    def predict(self, state: MaskedState) -> DenoiserOutput:
        self.calls.append(state)
        if self._script is not None:
            response = np.asarray(self._script(state), dtype=np.float64)
        else:
            assert self._rows is not None
            response = self._rows
        if response.shape != (state.length, self._vocab_size):
            raise ValueError(
                f"scripted rows have shape {response.shape}, expected {(state.length, self._vocab_size)}"
            )
        prompt = np.full((state.response_offset, self._vocab_size), 1.0 / self._vocab_size)
        probs = np.concatenate([prompt, response], axis=0)
        logits = np.log(np.maximum(probs, _LOG_FLOOR))
        return DenoiserOutput(logits, probs, state.response_offset)

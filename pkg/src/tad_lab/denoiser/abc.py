from abc import ABC, abstractmethod
from typing import Optional, Sequence, Tuple

import numpy as np

from tad_lab.models import MASK_ID, MaskedState

from .exceptions import InvalidDistribution

__all__ = ["DenoiserOutput", "Denoiser", "most_confident"]

ROW_SUM_TOLERANCE = 1e-9


class DenoiserOutput(object):
    """One categorical row per input position.

    Rows of the prompt region are returned as well; callers only read the
    response rows at masked positions.
    """

    __slots__ = ("logits", "probs", "response_offset")

    def __init__(self, logits: np.ndarray, probs: np.ndarray, response_offset: int) -> None:
        logits = np.asarray(logits, dtype=np.float64)
        probs = np.asarray(probs, dtype=np.float64)
        if logits.shape != probs.shape or probs.ndim != 2:
            raise ValueError(f"logits {logits.shape} and probs {probs.shape} must be the same 2-d shape")
        for i, row in enumerate(probs):
            total = float(row.sum())
            if not np.all(np.isfinite(row)):
                raise InvalidDistribution(i, total, "non-finite probability")
            if np.any(row < 0):
                raise InvalidDistribution(i, total, "negative probability")
            if abs(total - 1.0) > ROW_SUM_TOLERANCE:
                raise InvalidDistribution(i, total)
        if not np.all(np.isfinite(logits)):
            raise InvalidDistribution(0, float("nan"), "non-finite logits")
        logits.flags.writeable = False
        probs.flags.writeable = False
        self.logits = logits
        self.probs = probs
        self.response_offset = response_offset

    def __len__(self) -> int:
        return self.probs.shape[0]

    @property
    def vocab_size(self) -> int:
        return self.probs.shape[1]

    def response_probs(self) -> np.ndarray:
        return self.probs[self.response_offset :]

    def response_logits(self) -> np.ndarray:
        return self.logits[self.response_offset :]

    def best_token(self, position: int, mask_id: int = MASK_ID) -> Tuple[int, float]:
        """Argmax token at response ``position`` and its probability, never MASK."""
        row = self.probs[self.response_offset + position].copy()
        row[mask_id] = -1.0
        token = int(np.argmax(row))
        return token, float(row[token])


class Denoiser(ABC):
    @property
    @abstractmethod
    def vocab_size(self) -> int: ...

    @property
    @abstractmethod
    def max_len(self) -> int: ...

    @abstractmethod
    def predict(self, state: MaskedState) -> DenoiserOutput: ...


def most_confident(output: DenoiserOutput, positions: Sequence[int], mask_id: int = MASK_ID) -> Tuple[int, int, float]:
    """(position, token, confidence) of the highest-confidence candidate.

    Ties go to the lowest position; confidence is the max probability over
    non-MASK tokens.
    """
    if len(positions) == 0:
        raise ValueError("no candidate positions")
    best: Optional[Tuple[int, int, float]] = None
    for pos in sorted(positions):
        token, conf = output.best_token(pos, mask_id)
        if best is None or conf > best[2]:
            best = (pos, token, conf)
    assert best is not None
    return best

"""Forward masking: each response position independently becomes MASK with
probability ``t``. The prompt region is never touched."""

from typing import Sequence

import numpy as np

from tad_lab.models import MASK_ID, MaskedState

__all__ = ["InvalidMaskRate", "corrupt", "sample_level"]


class InvalidMaskRate(ValueError):
    def __init__(self, t: float) -> None:
        self.t = t

    def __str__(self) -> str:
        return f"Mask rate must lie in [0, 1], got {self.t!r}"


def corrupt(
    x0: Sequence[int],
    t: float,
    rng: np.random.Generator,
    prompt: Sequence[int] = (),
    mask_id: int = MASK_ID,
) -> MaskedState:
    if not 0.0 <= t <= 1.0:
        raise InvalidMaskRate(t)
    if mask_id in x0:
        raise ValueError("clean sequence contains MASK")
    # Bernoulli per position; a fixed floor(t * L) count would replace this draw
    masked = rng.random(len(x0)) < t
    response = tuple(mask_id if m else int(tok) for tok, m in zip(x0, masked))
    return MaskedState(prompt=tuple(prompt), response=response, mask_id=mask_id)


def sample_level(rng: np.random.Generator, t_min: float = 0.01) -> float:
    """t ~ U(0, 1) clamped to [t_min, 1] so the 1/t weight stays bounded."""
    return float(min(max(rng.random(), t_min), 1.0))

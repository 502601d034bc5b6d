from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from tad_lab.models import DistributionTable, check_size

__all__ = ["MarkovSource", "enumerate_joint"]

ROW_TOLERANCE = 1e-12


class MarkovSource(BaseModel):
    """Order-1 chain over ``{0, .., alphabet_size - 1}``."""

    model_config = ConfigDict(frozen=True)

    alphabet_size: int
    initial: List[float]
    transition: List[List[float]]

    @model_validator(mode="after")
    def _check_rows(self):
        a = self.alphabet_size
        if len(self.initial) != a or len(self.transition) != a:
            raise ValueError(f"initial and transition must have {a} entries")
        rows = [self.initial] + list(self.transition)
        for i, row in enumerate(rows):
            if len(row) != a:
                raise ValueError(f"row {i} has {len(row)} entries, expected {a}")
            if any(p < 0 for p in row) or abs(sum(row) - 1.0) > ROW_TOLERANCE:
                raise ValueError(f"row {i} is not a distribution: {row}")
        return self

    @classmethod
    def iid(cls, probs: List[float]) -> "MarkovSource":
        return cls(alphabet_size=len(probs), initial=list(probs), transition=[list(probs)] * len(probs))

    @classmethod
    def correlated_binary(cls) -> "MarkovSource":
        """Uniform over the all-zeros and all-ones sequences."""
        return cls(alphabet_size=2, initial=[0.5, 0.5], transition=[[1.0, 0.0], [0.0, 1.0]])

    @classmethod
    def symmetric(cls, stay: float, alphabet_size: int = 2) -> "MarkovSource":
        move = (1.0 - stay) / (alphabet_size - 1)
        transition = [[stay if i == j else move for j in range(alphabet_size)] for i in range(alphabet_size)]
        return cls(
            alphabet_size=alphabet_size,
            initial=[1.0 / alphabet_size] * alphabet_size,
            transition=transition,
        )


def enumerate_joint(source: MarkovSource, length: int) -> DistributionTable:
    """Exact joint of the first ``length`` symbols by the chain rule."""
    if length < 1:
        raise ValueError(f"length must be positive, got {length}")
    check_size(source.alphabet_size, length)
    transition = np.asarray(source.transition, dtype=np.float64)
    table = np.asarray(source.initial, dtype=np.float64)
    for _ in range(1, length):
        table = table[..., None] * transition
    return DistributionTable(table)

from typing import List, Sequence

import numpy as np

__all__ = ["DistributionTable", "MAX_TABLE_SIZE", "TableTooLarge", "check_size", "entropy_of"]

MAX_TABLE_SIZE = 10**6
SUM_TOLERANCE = 1e-9


class TableTooLarge(ValueError):
    def __init__(self, alphabet_size: int, length: int) -> None:
        self.alphabet_size = alphabet_size
        self.length = length

    def __str__(self) -> str:
        return (
            f"Table over {self.alphabet_size}^{self.length} sequences exceeds "
            f"the limit of {MAX_TABLE_SIZE} entries"
        )


def check_size(alphabet_size: int, length: int):
    if alphabet_size**length > MAX_TABLE_SIZE:
        raise TableTooLarge(alphabet_size, length)


class DistributionTable(object):
    """Explicit probability of every length-K sequence over a small alphabet,
    stored as an array of shape ``(A,) * K``."""

    __slots__ = ("probs",)

    def __init__(self, probs: np.ndarray) -> None:
        probs = np.array(probs, dtype=np.float64)
        if probs.ndim < 1 or len(set(probs.shape)) != 1:
            raise ValueError(f"table must have shape (A,) * K, got {probs.shape}")
        check_size(probs.shape[0], probs.ndim)
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise ValueError("table has negative or non-finite entries")
        total = float(probs.sum())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"table sums to {total!r}, expected 1")
        probs.flags.writeable = False
        self.probs = probs

    @classmethod
    def product(cls, marginals: Sequence[Sequence[float]]) -> "DistributionTable":
        marginals = [np.asarray(m, dtype=np.float64) for m in marginals]
        check_size(len(marginals[0]), len(marginals))
        table = marginals[0]
        for m in marginals[1:]:
            table = np.multiply.outer(table, m)
        return cls(table)

    @classmethod
    def random_chain(cls, alphabet_size: int, length: int, rng: np.random.Generator) -> "DistributionTable":
        """Random sequential joint: a fresh Dirichlet conditional for every prefix."""
        check_size(alphabet_size, length)
        table = rng.dirichlet(np.ones(alphabet_size))
        for _ in range(1, length):
            cond = rng.dirichlet(np.ones(alphabet_size), size=table.shape)
            table = table[..., None] * cond
        return cls(table / table.sum())

    @property
    def alphabet_size(self) -> int:
        return self.probs.shape[0]

    @property
    def length(self) -> int:
        return self.probs.ndim

    def marginal(self, k: int) -> np.ndarray:
        axes = tuple(i for i in range(self.length) if i != k)
        return self.probs.sum(axis=axes) if axes else self.probs.copy()

    def marginals(self) -> List[np.ndarray]:
        return [self.marginal(k) for k in range(self.length)]

    def prefix_marginal(self, k: int) -> np.ndarray:
        """p(x_1 .. x_k) as an array of shape ``(A,) * k``; ``k = 0`` gives 1."""
        if k == 0:
            return np.ones(())
        return self.probs.sum(axis=tuple(range(k, self.length)))

    def conditional(self, k: int) -> np.ndarray:
        """p(x_{k+1} | x_1 .. x_k) with shape ``(A,) * (k + 1)`` (0-based
        position ``k``). Rows behind a zero-probability prefix are zero."""
        joint = self.prefix_marginal(k + 1)
        prefix = self.prefix_marginal(k)[..., None]
        with np.errstate(divide="ignore", invalid="ignore"):
            cond = np.where(prefix > 0, joint / np.where(prefix > 0, prefix, 1.0), 0.0)
        return cond

    def entropy(self) -> float:
        p = self.probs[self.probs > 0]
        return float(-(p * np.log(p)).sum())

    def __repr__(self) -> str:
        return f"DistributionTable(alphabet={self.alphabet_size}, length={self.length})"


def entropy_of(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=np.float64)
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum()) if nz.size else 0.0



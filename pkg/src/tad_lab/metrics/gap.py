import math
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel

from tad_lab.models import DistributionTable, entropy_of

from .exceptions import GeometryMismatch

__all__ = ["GapReport", "factorization_gap", "total_correlation", "kl_divergence"]


class GapReport(BaseModel):
    K: int
    alphabet_size: int
    # nats; inf when a marginal is zero where the joint is not
    gap: float
    joint_entropy: float
    marginal_entropy_sum: float

    @property
    def infinite(self) -> bool:
        return math.isinf(self.gap)


def kl_divergence(p: np.ndarray, q: np.ndarray) -> float:
    """KL(p || q) in nats; zero-mass terms of p contribute 0, and q = 0
    where p > 0 gives inf."""
    p = np.asarray(p, dtype=np.float64).ravel()
    q = np.asarray(q, dtype=np.float64).ravel()
    support = p > 0
    if np.any(q[support] <= 0):
        return math.inf
    return float((p[support] * (np.log(p[support]) - np.log(q[support]))).sum())


def factorization_gap(
    joint: DistributionTable, marginals: Optional[Sequence[Sequence[float]]] = None
) -> GapReport:
    """KL between the joint and the product of per-position marginals (the
    joint's own marginals by default)."""
    if marginals is None:
        marginals = joint.marginals()
    marginals = [np.asarray(m, dtype=np.float64) for m in marginals]
    shapes = [m.shape for m in marginals]
    if len(marginals) != joint.length or any(s != (joint.alphabet_size,) for s in shapes):
        raise GeometryMismatch(f"{joint.length} x ({joint.alphabet_size},)", f"{len(marginals)} x {shapes}")
    product = DistributionTable.product(marginals)
    return GapReport(
        K=joint.length,
        alphabet_size=joint.alphabet_size,
        gap=kl_divergence(joint.probs, product.probs),
        joint_entropy=joint.entropy(),
        marginal_entropy_sum=sum(entropy_of(m) for m in marginals),
    )


def total_correlation(joint: DistributionTable) -> float:
    """Sum of marginal entropies minus the joint entropy."""
    return sum(entropy_of(m) for m in joint.marginals()) - joint.entropy()

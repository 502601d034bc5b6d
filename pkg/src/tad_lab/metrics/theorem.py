import math
from typing import Sequence

import numpy as np
from pydantic import BaseModel

from tad_lab.models import DistributionTable

from .exceptions import GeometryMismatch
from .gap import kl_divergence

__all__ = ["TheoremReport", "expected_cross_entropies", "validate_theorem1"]


class TheoremReport(BaseModel):
    lhs: float
    rhs: float
    residual: float


def _log(p: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(p)


def expected_cross_entropies(teacher: DistributionTable, student_marginals: Sequence[np.ndarray]) -> list:
    """E over x_<k of CE(p_T(. | x_<k), s_k) for every position k, via the
    teacher's chain-rule conditionals."""
    res = []
    for k, s_k in enumerate(student_marginals):
        cond = teacher.conditional(k)
        prefix = teacher.prefix_marginal(k)
        log_s = np.broadcast_to(_log(np.asarray(s_k, dtype=np.float64)), cond.shape)
        terms = np.where(cond > 0, cond * log_s, 0.0)
        ce = -terms.sum(axis=-1)
        res.append(float((prefix * ce).sum()))
    return res


def validate_theorem1(teacher: DistributionTable, student_marginals: Sequence[Sequence[float]]) -> TheoremReport:
    """Check KL(p_T || prod s_k) = sum_k E[CE_k] - H(p_T) by enumeration.

    The left side is computed over the full table, the right side from the
    teacher's prefix marginals and conditionals.
    """
    marginals = [np.asarray(m, dtype=np.float64) for m in student_marginals]
    if len(marginals) != teacher.length or any(m.shape != (teacher.alphabet_size,) for m in marginals):
        raise GeometryMismatch(
            f"{teacher.length} x ({teacher.alphabet_size},)", f"{len(marginals)} x {[m.shape for m in marginals]}"
        )
    product = marginals[0]
    for m in marginals[1:]:
        product = np.multiply.outer(product, m)
    lhs = kl_divergence(teacher.probs, product)
    rhs = sum(expected_cross_entropies(teacher, marginals)) - teacher.entropy()
    if math.isinf(lhs) and math.isinf(rhs):
        residual = 0.0
    else:
        residual = abs(lhs - rhs)
    return TheoremReport(lhs=lhs, rhs=rhs, residual=residual)

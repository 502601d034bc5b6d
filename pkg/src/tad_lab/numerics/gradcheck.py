from typing import Dict, Mapping

import numpy as np
from numpy.typing import ArrayLike

from .tape import Closure, record_forward

__all__ = ["numerical_gradient", "relative_error"]


def numerical_gradient(
    closure: Closure, inputs: Mapping[str, ArrayLike], h: float = 1e-5
) -> Dict[str, np.ndarray]:
    """Central finite differences of a scalar closure w.r.t. every input."""
    base = {name: np.array(value, dtype=np.float64) for name, value in inputs.items()}
    grads: Dict[str, np.ndarray] = {}
    for name, value in base.items():
        grad = np.zeros_like(value)
        flat = grad.reshape(-1)
        for i in range(value.size):
            shifted = dict(base)
            plus = value.copy()
            plus.reshape(-1)[i] += h
            shifted[name] = plus
            f_plus = record_forward(closure, shifted)[0].item()
            minus = value.copy()
            minus.reshape(-1)[i] -= h
            shifted[name] = minus
            f_minus = record_forward(closure, shifted)[0].item()
            flat[i] = (f_plus - f_minus) / (2.0 * h)
        grads[name] = grad
    return grads


def relative_error(analytic: ArrayLike, numeric: ArrayLike) -> float:
    """Largest absolute deviation, scaled by the largest gradient magnitude."""
    a = np.asarray(analytic, dtype=np.float64)
    n = np.asarray(numeric, dtype=np.float64)
    scale = max(float(np.abs(a).max(initial=0.0)), float(np.abs(n).max(initial=0.0)), 1e-8)
    return float(np.abs(a - n).max(initial=0.0)) / scale

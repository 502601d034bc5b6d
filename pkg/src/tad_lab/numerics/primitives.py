"""Primitive operations recordable on a :class:`~tad_lab.numerics.tape.Tape`.

Each primitive is a pair of pure numpy functions. ``forward`` maps input
arrays (and keyword attributes) to ``(output, saved)``; ``backward`` maps the
output gradient back to one gradient per input (``None`` for inputs that
carry no gradient, e.g. index arrays passed as attributes).

Broadcasting is limited to the row-wise primitives ``add_row`` and
``mul_row``; every other binary primitive requires identical shapes.
"""

import math
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ShapeMismatch

__all__ = ["Primitive", "PRIMITIVES", "GELU_C"]

Forward = Callable[..., Tuple[np.ndarray, Any]]
Backward = Callable[..., Sequence[Optional[np.ndarray]]]

GELU_C = math.sqrt(2.0 / math.pi)


class Primitive(NamedTuple):
    name: str
    arity: int  # -1 for variadic
    forward: Forward
    backward: Backward


def _same_shape(op: str, a: np.ndarray, b: np.ndarray):
    if a.shape != b.shape:
        raise ShapeMismatch(op, [a.shape, b.shape], "row-wise broadcasting only via add_row/mul_row")


def _matrix(op: str, *xs: np.ndarray):
    for x in xs:
        if x.ndim != 2:
            raise ShapeMismatch(op, [x.shape for x in xs], "expected 2-d operands")


def _row_vector(op: str, a: np.ndarray, b: np.ndarray):
    if a.ndim != 2 or b.ndim != 1 or a.shape[1] != b.shape[0]:
        raise ShapeMismatch(op, [a.shape, b.shape], "expected (n, m) and (m,)")


# elementwise


def _add_fwd(a, b):
    _same_shape("add", a, b)
    return a + b, None


def _add_bwd(g, out, inputs, saved):
    return g, g


def _mul_fwd(a, b):
    _same_shape("mul", a, b)
    return a * b, None


def _mul_bwd(g, out, inputs, saved):
    a, b = inputs
    return g * b, g * a


def _scale_fwd(a, factor: float):
    return a * factor, None


def _scale_bwd(g, out, inputs, saved, factor: float):
    return (g * factor,)


def _add_row_fwd(a, b):
    _row_vector("add_row", a, b)
    return a + b[None, :], None


def _add_row_bwd(g, out, inputs, saved):
    return g, g.sum(axis=0)


def _mul_row_fwd(a, b):
    _row_vector("mul_row", a, b)
    return a * b[None, :], None


def _mul_row_bwd(g, out, inputs, saved):
    a, b = inputs
    return g * b[None, :], (g * a).sum(axis=0)


def _log_fwd(a):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log(a), None


def _log_bwd(g, out, inputs, saved):
    (a,) = inputs
    return (g / a,)


def _exp_fwd(a):
    with np.errstate(over="ignore"):
        return np.exp(a), None


def _exp_bwd(g, out, inputs, saved):
    return (g * out,)


def _gelu_fwd(a):
    inner = GELU_C * (a + 0.044715 * a**3)
    t = np.tanh(inner)
    return 0.5 * a * (1.0 + t), t


def _gelu_bwd(g, out, inputs, saved):
    (a,) = inputs
    t = saved
    d_inner = GELU_C * (1.0 + 3.0 * 0.044715 * a**2)
    return (g * (0.5 * (1.0 + t) + 0.5 * a * (1.0 - t**2) * d_inner),)


# linear algebra and layout


def _matmul_fwd(a, b):
    _matrix("matmul", a, b)
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatch("matmul", [a.shape, b.shape], "inner dimensions differ")
    return a @ b, None


def _matmul_bwd(g, out, inputs, saved):
    a, b = inputs
    return g @ b.T, a.T @ g


def _transpose_fwd(a):
    _matrix("transpose", a)
    return a.T.copy(), None


def _transpose_bwd(g, out, inputs, saved):
    return (g.T,)


def _reshape_fwd(a, shape: Tuple[int, ...]):
    if int(np.prod(shape)) != a.size:
        raise ShapeMismatch("reshape", [a.shape, tuple(shape)], "sizes differ")
    return a.reshape(shape).copy(), None


def _reshape_bwd(g, out, inputs, saved, shape: Tuple[int, ...]):
    (a,) = inputs
    return (g.reshape(a.shape),)


def _slice_cols_fwd(a, start: int, stop: int):
    _matrix("slice_cols", a)
    return a[:, start:stop].copy(), None


def _slice_cols_bwd(g, out, inputs, saved, start: int, stop: int):
    (a,) = inputs
    ga = np.zeros_like(a)
    ga[:, start:stop] = g
    return (ga,)


def _concat_cols_fwd(*xs):
    _matrix("concat_cols", *xs)
    return np.concatenate(xs, axis=1), None


def _concat_cols_bwd(g, out, inputs, saved):
    grads: List[np.ndarray] = []
    offset = 0
    for x in inputs:
        width = x.shape[1]
        grads.append(g[:, offset : offset + width])
        offset += width
    return grads


def _gather_rows_fwd(a, index: Tuple[int, ...]):
    return a[np.asarray(index, dtype=np.int64)], None


def _gather_rows_bwd(g, out, inputs, saved, index: Tuple[int, ...]):
    (a,) = inputs
    ga = np.zeros_like(a)
    np.add.at(ga, np.asarray(index, dtype=np.int64), g)
    return (ga,)


def _gather_fwd(a, rows: Tuple[int, ...], cols: Tuple[int, ...]):
    _matrix("gather", a)
    if len(rows) != len(cols):
        raise ShapeMismatch("gather", [a.shape, (len(rows),), (len(cols),)], "index lengths differ")
    return a[np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64)], None


def _gather_bwd(g, out, inputs, saved, rows: Tuple[int, ...], cols: Tuple[int, ...]):
    (a,) = inputs
    ga = np.zeros_like(a)
    np.add.at(ga, (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64)), g)
    return (ga,)


# reductions


def _sum_fwd(a):
    return np.asarray(a.sum()), None


def _sum_bwd(g, out, inputs, saved):
    (a,) = inputs
    return (np.full_like(a, float(g)),)


def _mean_fwd(a):
    if a.size == 0:
        raise ShapeMismatch("mean", [a.shape], "mean of an empty tensor")
    return np.asarray(a.mean()), None


def _mean_bwd(g, out, inputs, saved):
    (a,) = inputs
    return (np.full_like(a, float(g) / a.size),)


# row-wise normalisations


def _softmax_row_fwd(a):
    _matrix("softmax_row", a)
    z = a - a.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True), None


def _softmax_row_bwd(g, out, inputs, saved):
    return (out * (g - (g * out).sum(axis=1, keepdims=True)),)


def _log_softmax_row_fwd(a):
    _matrix("log_softmax_row", a)
    z = a - a.max(axis=1, keepdims=True)
    lse = np.log(np.exp(z).sum(axis=1, keepdims=True))
    return z - lse, None


def _log_softmax_row_bwd(g, out, inputs, saved):
    return (g - np.exp(out) * g.sum(axis=1, keepdims=True),)


def _layer_norm_row_fwd(a, eps: float = 1e-5):
    _matrix("layer_norm_row", a)
    mu = a.mean(axis=1, keepdims=True)
    var = a.var(axis=1, keepdims=True)
    inv_std = 1.0 / np.sqrt(var + eps)
    xhat = (a - mu) * inv_std
    return xhat, inv_std


def _layer_norm_row_bwd(g, out, inputs, saved, eps: float = 1e-5):
    inv_std = saved
    xhat = out
    g_mean = g.mean(axis=1, keepdims=True)
    gx_mean = (g * xhat).mean(axis=1, keepdims=True)
    return (inv_std * (g - g_mean - xhat * gx_mean),)


def _register(*prims: Primitive) -> Dict[str, Primitive]:
    return {p.name: p for p in prims}


PRIMITIVES: Dict[str, Primitive] = _register(
    Primitive("add", 2, _add_fwd, _add_bwd),
    Primitive("mul", 2, _mul_fwd, _mul_bwd),
    Primitive("scale", 1, _scale_fwd, _scale_bwd),
    Primitive("add_row", 2, _add_row_fwd, _add_row_bwd),
    Primitive("mul_row", 2, _mul_row_fwd, _mul_row_bwd),
    Primitive("log", 1, _log_fwd, _log_bwd),
    Primitive("exp", 1, _exp_fwd, _exp_bwd),
    Primitive("gelu", 1, _gelu_fwd, _gelu_bwd),
    Primitive("matmul", 2, _matmul_fwd, _matmul_bwd),
    Primitive("transpose", 1, _transpose_fwd, _transpose_bwd),
    Primitive("reshape", 1, _reshape_fwd, _reshape_bwd),
    Primitive("slice_cols", 1, _slice_cols_fwd, _slice_cols_bwd),
    Primitive("concat_cols", -1, _concat_cols_fwd, _concat_cols_bwd),
    Primitive("gather_rows", 1, _gather_rows_fwd, _gather_rows_bwd),
    Primitive("gather", 1, _gather_fwd, _gather_bwd),
    Primitive("sum", 1, _sum_fwd, _sum_bwd),
    Primitive("mean", 1, _mean_fwd, _mean_bwd),
    Primitive("softmax_row", 1, _softmax_row_fwd, _softmax_row_bwd),
    Primitive("log_softmax_row", 1, _log_softmax_row_fwd, _log_softmax_row_bwd),
    Primitive("layer_norm_row", 1, _layer_norm_row_fwd, _layer_norm_row_bwd),
)

from typing import Any, Callable, Dict, List, Mapping, NamedTuple, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike

from .exceptions import NonScalarOutput, ShapeMismatch, UnsupportedPrimitive
from .primitives import PRIMITIVES
from .tensor import Tensor

__all__ = ["Record", "Tape", "record_forward", "backward", "Closure"]


class Record(NamedTuple):
    op: str
    inputs: Tuple[Tensor, ...]
    output: Tensor
    attrs: Dict[str, Any]
    saved: Any


# Records primitive applications in execution order, so the record list is
# always topologically sorted: every input is a leaf, a constant, or the
# output of an earlier record.
class Tape(object):
    def __init__(self) -> None:
        self.records: List[Record] = []
        self._leaves: Dict[str, Tensor] = {}

    @property
    def leaves(self) -> Dict[str, Tensor]:
        return dict(self._leaves)

    def leaf(self, value: ArrayLike, name: str) -> Tensor:
        if name in self._leaves:
            raise ValueError(f"Leaf {name} already recorded")
        t = Tensor(value, name=name)
        self._leaves[name] = t
        return t

    def constant(self, value: ArrayLike) -> Tensor:
        return Tensor(value, op="constant")

    def apply(self, op: str, *inputs: Tensor, **attrs: Any) -> Tensor:
        prim = PRIMITIVES.get(op)
        if prim is None:
            raise UnsupportedPrimitive(op, sorted(PRIMITIVES))
        if prim.arity >= 0 and len(inputs) != prim.arity:
            raise ShapeMismatch(
                op, [x.shape for x in inputs], f"expects {prim.arity} inputs"
            )
        data, saved = prim.forward(*(x.data for x in inputs), **attrs)
        out = Tensor(data, op=op)
        self.records.append(Record(op, tuple(inputs), out, attrs, saved))
        return out

    def add(self, a: Tensor, b: Tensor) -> Tensor:
        return self.apply("add", a, b)

    def mul(self, a: Tensor, b: Tensor) -> Tensor:
        return self.apply("mul", a, b)

    def scale(self, a: Tensor, factor: float) -> Tensor:
        return self.apply("scale", a, factor=float(factor))

    def add_row(self, a: Tensor, b: Tensor) -> Tensor:
        return self.apply("add_row", a, b)

    def mul_row(self, a: Tensor, b: Tensor) -> Tensor:
        return self.apply("mul_row", a, b)

    def log(self, a: Tensor) -> Tensor:
        return self.apply("log", a)

    def exp(self, a: Tensor) -> Tensor:
        return self.apply("exp", a)

    def gelu(self, a: Tensor) -> Tensor:
        return self.apply("gelu", a)

    def matmul(self, a: Tensor, b: Tensor) -> Tensor:
        return self.apply("matmul", a, b)

    def transpose(self, a: Tensor) -> Tensor:
        return self.apply("transpose", a)

    def reshape(self, a: Tensor, shape: Tuple[int, ...]) -> Tensor:
        return self.apply("reshape", a, shape=tuple(int(s) for s in shape))

    def slice_cols(self, a: Tensor, start: int, stop: int) -> Tensor:
        return self.apply("slice_cols", a, start=int(start), stop=int(stop))

    def concat_cols(self, *xs: Tensor) -> Tensor:
        return self.apply("concat_cols", *xs)

    def gather_rows(self, a: Tensor, index) -> Tensor:
        return self.apply("gather_rows", a, index=tuple(int(i) for i in index))

    def gather(self, a: Tensor, rows, cols) -> Tensor:
        return self.apply(
            "gather",
            a,
            rows=tuple(int(i) for i in rows),
            cols=tuple(int(i) for i in cols),
        )

    def sum(self, a: Tensor) -> Tensor:
        return self.apply("sum", a)

    def mean(self, a: Tensor) -> Tensor:
        return self.apply("mean", a)

    def softmax_row(self, a: Tensor) -> Tensor:
        return self.apply("softmax_row", a)

    def log_softmax_row(self, a: Tensor) -> Tensor:
        return self.apply("log_softmax_row", a)

    def layer_norm_row(self, a: Tensor, eps: float = 1e-5) -> Tensor:
        return self.apply("layer_norm_row", a, eps=float(eps))


Closure = Callable[[Tape, Dict[str, Tensor]], Tensor]


def record_forward(
    closure: Closure, inputs: Mapping[str, ArrayLike]
) -> Tuple[Tensor, Tape]:
    tape = Tape()
    leaves = {name: tape.leaf(value, name) for name, value in inputs.items()}
    output = closure(tape, leaves)
    return output, tape


def backward(tape: Tape, output: Tensor) -> Dict[str, np.ndarray]:
    """Reverse-mode sweep over ``tape`` seeded at the scalar ``output``.

    Returns one gradient array per leaf, zeros for leaves the output does
    not depend on.
    """
    if output.size != 1:
        raise NonScalarOutput(output.shape)

    grads: Dict[Tensor, np.ndarray] = {output: np.ones_like(output.data)}
    for record in reversed(tape.records):
        g: Optional[np.ndarray] = grads.pop(record.output, None)
        if g is None:
            continue
        prim = PRIMITIVES[record.op]
        input_grads = prim.backward(
            g, record.output.data, [x.data for x in record.inputs], record.saved, **record.attrs
        )
        for x, gx in zip(record.inputs, input_grads):
            if gx is None:
                continue
            if x in grads:
                grads[x] = grads[x] + gx
            else:
                grads[x] = np.array(gx, dtype=np.float64)

    return {
        name: grads.get(leaf, np.zeros_like(leaf.data))
        for name, leaf in tape.leaves.items()
    }

from typing import Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike

from .exceptions import NonFiniteTensor, NonScalarOutput

__all__ = ["Tensor", "check_finite"]


def check_finite(data: np.ndarray, op: str):
    if not np.all(np.isfinite(data)):
        raise NonFiniteTensor(
            op=op,
            nan_count=int(np.isnan(data).sum()),
            inf_count=int(np.isinf(data).sum()),
        )


# Immutable float64 array. Tensors are hashed by identity so the tape can
# key gradients on them.
class Tensor(object):
    __slots__ = ("_data", "name")

    def __init__(self, data: ArrayLike, name: Optional[str] = None, op: str = "leaf"):
        arr = np.array(data, dtype=np.float64, order="C")
        check_finite(arr, op)
        arr.flags.writeable = False
        self._data = arr
        self.name = name

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self._data.shape)

    @property
    def size(self) -> int:
        return int(self._data.size)

    def item(self) -> float:
        if self._data.size != 1:
            raise NonScalarOutput(self.shape)
        return float(self._data.reshape(-1)[0])

    def numpy(self) -> np.ndarray:
        return self._data.copy()

    def __repr__(self) -> str:
        label = f" name={self.name!r}" if self.name else ""
        return f"Tensor(shape={self.shape}{label})"

from .exceptions import (
    NonFiniteTensor,
    NonScalarOutput,
    NumericsError,
    ShapeMismatch,
    UnsupportedPrimitive,
)
from .gradcheck import numerical_gradient, relative_error
from .primitives import PRIMITIVES
from .tape import Closure, Record, Tape, backward, record_forward
from .tensor import Tensor

__all__ = [
    "Tensor",
    "Tape",
    "Record",
    "Closure",
    "PRIMITIVES",
    "record_forward",
    "backward",
    "numerical_gradient",
    "relative_error",
    "NumericsError",
    "UnsupportedPrimitive",
    "ShapeMismatch",
    "NonFiniteTensor",
    "NonScalarOutput",
]

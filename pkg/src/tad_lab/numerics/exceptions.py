from typing import Sequence, Tuple


class NumericsError(Exception):
    pass


class UnsupportedPrimitive(NumericsError):
    def __init__(self, op: str, supported: Sequence[str]) -> None:
        self.op = op
        self.supported = tuple(supported)

    def __str__(self) -> str:
        return f"Unsupported primitive {self.op!r}, supported: {', '.join(self.supported)}"


class ShapeMismatch(NumericsError):
    def __init__(self, op: str, shapes: Sequence[Tuple[int, ...]], message: str = "") -> None:
        self.op = op
        self.shapes = tuple(tuple(s) for s in shapes)
        self.message = message

    def __str__(self) -> str:
        shapes = ", ".join(str(s) for s in self.shapes)
        msg = f"Shape mismatch in {self.op}: {shapes}"
        if self.message:
            msg += f" ({self.message})"
        return msg


class NonFiniteTensor(NumericsError):
    def __init__(self, op: str, nan_count: int, inf_count: int) -> None:
        self.op = op
        self.nan_count = nan_count
        self.inf_count = inf_count

    def __str__(self) -> str:
        return (
            f"Non-finite values produced by {self.op}: "
            f"{self.nan_count} NaN, {self.inf_count} Inf"
        )


class NonScalarOutput(NumericsError):
    def __init__(self, shape: Tuple[int, ...]) -> None:
        self.shape = tuple(shape)

    def __str__(self) -> str:
        return f"backward requires a scalar output, got shape {self.shape}"

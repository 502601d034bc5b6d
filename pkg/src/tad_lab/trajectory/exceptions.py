class TrajectoryError(Exception):
    pass


class InputTooLong(TrajectoryError):
    def __init__(self, length: int, max_len: int) -> None:
        self.length = length
        self.max_len = max_len

    def __str__(self) -> str:
        return f"Model input of length {self.length} exceeds max length {self.max_len}"


class DegenerateStep(TrajectoryError):
    def __init__(self, step: int, position: int, confidence: float) -> None:
        self.step = step
        self.position = position
        self.confidence = confidence

    def __str__(self) -> str:
        return (
            f"Step {self.step}: no non-MASK token has positive probability "
            f"at position {self.position} (confidence {self.confidence!r})"
        )


class TrajectoryParseError(TrajectoryError):
    def __init__(self, path: str, lineno: int, reason: str) -> None:
        self.path = path
        self.lineno = lineno
        self.reason = reason

    def __str__(self) -> str:
        return f"{self.path}:{self.lineno}: {self.reason}"

from typing import Optional


class DenoiserError(Exception):
    pass


class SequenceTooLong(DenoiserError):
    def __init__(self, length: int, max_len: int) -> None:
        self.length = length
        self.max_len = max_len

    def __str__(self) -> str:
        return f"Input of length {self.length} exceeds the model's max length {self.max_len}"


class TokenOutOfRange(DenoiserError):
    def __init__(self, position: int, token: int, vocab_size: int) -> None:
        self.position = position
        self.token = token
        self.vocab_size = vocab_size

    def __str__(self) -> str:
        return (
            f"Token {self.token} at position {self.position} is outside "
            f"the vocabulary of size {self.vocab_size}"
        )


class InvalidDistribution(DenoiserError):
    def __init__(self, row: int, total: float, reason: str = "row does not sum to 1") -> None:
        self.row = row
        self.total = total
        self.reason = reason

    def __str__(self) -> str:
        return f"Invalid output distribution at row {self.row}: {self.reason} (sum {self.total!r})"


class TrainingDiverged(DenoiserError):
    def __init__(self, epoch: int, step: int, loss: float, item: Optional[int] = None) -> None:
        self.epoch = epoch
        self.step = step
        self.loss = loss
        self.item = item

    def __str__(self) -> str:
        msg = f"Training diverged at epoch {self.epoch} step {self.step}: loss {self.loss!r}"
        if self.item is not None:
            msg += f" (item {self.item})"
        return msg


class CheckpointError(DenoiserError):
    def __init__(self, path: str, reason: str) -> None:
        self.path = path
        self.reason = reason

    def __str__(self) -> str:
        return f"Bad checkpoint {self.path}: {self.reason}"


class InvalidCorruptionLevel(DenoiserError):
    def __init__(self, t: float) -> None:
        self.t = t

    def __str__(self) -> str:
        return f"Corruption level must satisfy 0 < t <= 1, got {self.t!r}"


class EmptyCorpus(DenoiserError, ValueError):
    def __str__(self) -> str:
        return "Cannot train on an empty corpus"

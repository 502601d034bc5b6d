class TaskError(Exception):
    pass


class UnknownTask(TaskError):
    def __init__(self, task: str) -> None:
        self.task = task

    def __str__(self) -> str:
        return f"Unknown task {self.task!r}, expected one of copy, reverse, arith"


class CorpusParseError(TaskError):
    def __init__(self, path: str, lineno: int, reason: str) -> None:
        self.path = path
        self.lineno = lineno
        self.reason = reason

    def __str__(self) -> str:
        return f"{self.path}:{self.lineno}: {self.reason}"

class MetricsError(Exception):
    pass


class EmptyCurve(MetricsError):
    def __str__(self) -> str:
        return "Accuracy-parallelism curve has no points"


class GeometryMismatch(MetricsError):
    def __init__(self, expected: str, got: str) -> None:
        self.expected = expected
        self.got = got

    def __str__(self) -> str:
        return f"Marginals do not match the table: expected {self.expected}, got {self.got}"


class CurveParseError(MetricsError):
    def __init__(self, path: str, lineno: int, reason: str) -> None:
        self.path = path
        self.lineno = lineno
        self.reason = reason

    def __str__(self) -> str:
        return f"{self.path}:{self.lineno}: {self.reason}"

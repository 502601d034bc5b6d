class CommandError(Exception):
    pass


class MissingArtifact(CommandError):
    def __init__(self, path: str, producer: str) -> None:
        self.path = path
        self.producer = producer

    def __str__(self) -> str:
        return f"Missing input {self.path}; run `tad-lab {self.producer}` first or pass its path explicitly"

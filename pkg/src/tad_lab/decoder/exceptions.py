class DecodeError(Exception):
    pass


class NoProgress(DecodeError):
    def __init__(self, forwards: int, generated: int, gen_len: int) -> None:
        self.forwards = forwards
        self.generated = generated
        self.gen_len = gen_len

    def __str__(self) -> str:
        return (
            f"Decoder made no progress after {self.forwards} forwards: "
            f"{self.generated} of {self.gen_len} tokens generated"
        )


class EmptyEvalSet(DecodeError):
    def __str__(self) -> str:
        return "Evaluation set is empty"

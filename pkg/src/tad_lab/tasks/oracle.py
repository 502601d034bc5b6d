from typing import Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from tad_lab.models import EOS_ID, PAD_ID, TaskName, Vocabulary, default_vocabulary

from .generate import answer_text

__all__ = ["TaskOracle", "strip_response", "oracle_check", "oracle_for"]


def strip_response(output: Sequence[int]) -> Tuple[int, ...]:
    """Drop trailing PAD, then a single trailing EOS."""
    ids = list(output)
    while ids and ids[-1] == PAD_ID:
        ids.pop()
    if ids and ids[-1] == EOS_ID:
        ids.pop()
    return tuple(ids)


class TaskOracle(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    task: TaskName
    modulus: int = 10
    vocab: Vocabulary = default_vocabulary()

    def expected(self, prompt: Sequence[int]) -> Optional[str]:
        if len(prompt) == 0 or prompt[0] != self.vocab.task_tag_id(self.task):
            return None
        try:
            text = self.vocab.decode(prompt[1:])
            return answer_text(self.task, text, self.modulus)
        except (ValueError, IndexError):
            return None

    def check(self, prompt: Sequence[int], output: Sequence[int]) -> bool:
        expected = self.expected(prompt)
        if expected is None:
            return False
        body = strip_response(output)
        specials = set(self.vocab.special_ids())
        if any(tok in specials or not 0 <= tok < self.vocab.size for tok in body):
            return False
        return self.vocab.decode(body) == expected


def oracle_check(oracle: TaskOracle, q: Sequence[int], output: Sequence[int]) -> bool:
    return oracle.check(q, output)


def oracle_for(task: str, modulus: int = 10) -> TaskOracle:
    return TaskOracle(task=task, modulus=modulus)  # type: ignore[arg-type]

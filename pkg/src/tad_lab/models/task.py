from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict

__all__ = ["TaskName", "PromptAnswerPair"]

TaskName = Literal["copy", "reverse", "arith"]


class PromptAnswerPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    task: TaskName
    prompt_ids: Tuple[int, ...]
    answer_ids: Tuple[int, ...]
    prompt_text: str
    answer_text: str

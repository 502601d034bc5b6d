from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from .vocab import MASK_ID

__all__ = ["MaskedState"]


class MaskedState(BaseModel):
    """A prompt region that is never masked followed by a response region
    whose slots are either token ids or ``mask_id``."""

    model_config = ConfigDict(frozen=True)

    prompt: Tuple[int, ...]
    response: Tuple[int, ...]
    mask_id: int = MASK_ID

    @model_validator(mode="after")
    def _prompt_is_clean(self):
        if self.mask_id in self.prompt:
            raise ValueError("prompt region must not contain MASK")
        return self

    @classmethod
    def fully_masked(cls, prompt: Tuple[int, ...], length: int, mask_id: int = MASK_ID) -> "MaskedState":
        return cls(prompt=tuple(prompt), response=(mask_id,) * length, mask_id=mask_id)

    @property
    def length(self) -> int:
        return len(self.response)

    @property
    def response_offset(self) -> int:
        return len(self.prompt)

    @property
    def total_length(self) -> int:
        return len(self.prompt) + len(self.response)

    def tokens(self) -> Tuple[int, ...]:
        return self.prompt + self.response

    def masked_positions(self) -> List[int]:
        return [i for i, tok in enumerate(self.response) if tok == self.mask_id]

    def is_complete(self) -> bool:
        return self.mask_id not in self.response

    def reveal(self, position: int, token: int) -> "MaskedState":
        if self.response[position] != self.mask_id:
            raise ValueError(f"position {position} is already revealed")
        if token == self.mask_id:
            raise ValueError("cannot reveal a position as MASK")
        response = list(self.response)
        response[position] = token
        return self.model_copy(update={"response": tuple(response)})

    def with_prompt(self, prompt: Tuple[int, ...]) -> "MaskedState":
        return MaskedState(prompt=tuple(prompt), response=self.response, mask_id=self.mask_id)

import string
from typing import Dict, Iterable, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, computed_field, model_validator

__all__ = [
    "Vocabulary",
    "PAD_ID",
    "MASK_ID",
    "EOS_ID",
    "SEP_ID",
    "TASK_TAGS",
    "default_vocabulary",
]

PAD_ID = 0
MASK_ID = 1
EOS_ID = 2
SEP_ID = 3

TASK_TAGS: Dict[str, str] = {
    "copy": "<copy>",
    "reverse": "<reverse>",
    "arith": "<arith>",
}

_SPECIALS = ["<pad>", "<mask>", "<eos>", "<sep>"]
_SYMBOLS = list(string.digits) + ["+", "="] + list(string.ascii_lowercase)


class Vocabulary(BaseModel):
    model_config = ConfigDict(frozen=True)

    tokens: Tuple[str, ...]
    mask_id: int = MASK_ID
    pad_id: int = PAD_ID
    eos_id: int = EOS_ID
    sep_id: int = SEP_ID

    @computed_field
    @property
    def size(self) -> int:
        return len(self.tokens)

    @model_validator(mode="after")
    def _check_specials(self):
        if self.mask_id == self.pad_id:
            raise ValueError("mask_id and pad_id must differ")
        for name in ("mask_id", "pad_id", "eos_id", "sep_id"):
            if not 0 <= getattr(self, name) < len(self.tokens):
                raise ValueError(f"{name} out of range for vocabulary of size {len(self.tokens)}")
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("duplicate tokens in vocabulary")
        return self

    def index(self, token: str) -> int:
        return self._lookup()[token]

    def _lookup(self) -> Dict[str, int]:
        return {tok: i for i, tok in enumerate(self.tokens)}

    def encode(self, text: str) -> List[int]:
        lookup = self._lookup()
        try:
            return [lookup[ch] for ch in text]
        except KeyError as e:
            raise ValueError(f"character {e.args[0]!r} is not in the vocabulary") from None

    def decode(self, ids: Iterable[int]) -> str:
        return "".join(self.tokens[i] for i in ids)

    def task_tag_id(self, task: str) -> int:
        return self.index(TASK_TAGS[task])

    def special_ids(self) -> Sequence[int]:
        return (self.pad_id, self.mask_id, self.eos_id, self.sep_id)


def default_vocabulary() -> Vocabulary:
    tokens = _SPECIALS + list(TASK_TAGS.values()) + _SYMBOLS
    return Vocabulary(tokens=tuple(tokens))

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, computed_field, model_validator

__all__ = ["DecodeStep", "DecodeResult"]


class DecodeStep(BaseModel):
    committed_positions: List[int]
    entropies: List[float]


class DecodeResult(BaseModel):
    prompt_ids: Tuple[int, ...]
    output_ids: Tuple[int, ...]
    forwards: int = Field(ge=1)
    generated: int = Field(ge=1)
    per_step: List[DecodeStep] = []
    oracle_pass: Optional[bool] = None

    @model_validator(mode="after")
    def _check_accounting(self):
        if self.forwards > self.generated:
            raise ValueError(
                f"{self.forwards} forwards for {self.generated} tokens: every forward commits at least one"
            )
        if self.per_step and len(self.per_step) != self.forwards:
            raise ValueError("one step record per forward pass expected")
        return self

    @computed_field
    @property
    def tpf(self) -> float:
        return self.generated / self.forwards

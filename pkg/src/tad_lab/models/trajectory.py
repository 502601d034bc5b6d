from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .state import MaskedState
from .task import TaskName
from .vocab import MASK_ID

__all__ = ["TrajectoryStep", "Trajectory"]


class TrajectoryStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    s: int = Field(ge=1)
    pos: int = Field(ge=0)
    token: int = Field(ge=0)
    conf: float = Field(gt=0.0, le=1.0)


# Stored as the fully masked start state plus the step list; any x_s is
# rebuilt by replaying the first s - 1 reveals.
class Trajectory(BaseModel):
    model_config = ConfigDict(frozen=True)

    task: TaskName
    prompt_ids: Tuple[int, ...]
    answer_ids: Tuple[int, ...]
    gen_len: int = Field(ge=1)
    steps: Tuple[TrajectoryStep, ...]
    final_ids: Tuple[int, ...]
    oracle_pass: Optional[bool] = None
    privileged: bool = True

    @model_validator(mode="after")
    def _check_rollout(self):
        if len(self.steps) != self.gen_len:
            raise ValueError(
                f"expected {self.gen_len} steps (one reveal per step), got {len(self.steps)}"
            )
        positions = [step.pos for step in self.steps]
        if len(set(positions)) != len(positions):
            raise ValueError("a position is revealed more than once")
        for i, step in enumerate(self.steps, start=1):
            if step.s != i:
                raise ValueError(f"step index {step.s} found where {i} was expected")
            if step.pos >= self.gen_len:
                raise ValueError(f"step {step.s} reveals position {step.pos} outside the response")
            if step.token == MASK_ID:
                raise ValueError(f"step {step.s} reveals MASK")
        if len(self.final_ids) != self.gen_len:
            raise ValueError("final_ids length differs from gen_len")
        replayed = [MASK_ID] * self.gen_len
        for step in self.steps:
            replayed[step.pos] = step.token
        if tuple(replayed) != self.final_ids:
            raise ValueError("final_ids disagree with the recorded steps")
        return self

    @property
    def T(self) -> int:
        return len(self.steps)

    def initial_state(self) -> MaskedState:
        return MaskedState.fully_masked(self.prompt_ids, self.gen_len)

    def state_at(self, s: int) -> MaskedState:
        """x_s for s in 1..T+1 (x_1 fully masked, x_{T+1} fully revealed)."""
        if not 1 <= s <= self.T + 1:
            raise ValueError(f"step {s} outside 1..{self.T + 1}")
        response = [MASK_ID] * self.gen_len
        for step in self.steps[: s - 1]:
            response[step.pos] = step.token
        return MaskedState(prompt=self.prompt_ids, response=tuple(response))

    def reveal_steps(self) -> List[int]:
        """Step index at which each response position is revealed."""
        order = [0] * self.gen_len
        for step in self.steps:
            order[step.pos] = step.s
        return order

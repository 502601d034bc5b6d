from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from tad_lab.models import Trajectory

__all__ = ["Partition", "partition_masked"]


class Partition(BaseModel):
    model_config = ConfigDict(frozen=True)

    near: Tuple[int, ...]
    distant: Tuple[int, ...]
    # trajectory token for every masked position, near and distant alike
    labels: Dict[int, int]

    @model_validator(mode="after")
    def _disjoint(self):
        if set(self.near) & set(self.distant):
            raise ValueError("near and distant sets overlap")
        return self

    def masked(self) -> Tuple[int, ...]:
        return tuple(sorted(self.near + self.distant))

    def near_labels(self) -> Dict[int, int]:
        return {pos: self.labels[pos] for pos in self.near}


def partition_masked(traj: Trajectory, s: int, delta: int) -> Partition:
    """Split the positions masked at step ``s`` by when they get revealed.

    A position revealed at step ``r`` is masked at ``s`` iff ``r >= s``; it
    is near iff ``r < s + delta``, so when ``s + delta > T`` every masked
    position is near.
    """
    if not 1 <= s <= traj.T:
        raise ValueError(f"step {s} outside 1..{traj.T}")
    if delta < 1:
        raise ValueError(f"delta must be at least 1, got {delta}")
    reveal = traj.reveal_steps()
    near, distant = [], []
    labels: Dict[int, int] = {}
    for step in traj.steps[s - 1 :]:
        labels[step.pos] = step.token
    for pos, r in enumerate(reveal):
        if r < s:
            continue
        if r < s + delta:
            near.append(pos)
        else:
            distant.append(pos)
    return Partition(near=tuple(near), distant=tuple(distant), labels=labels)

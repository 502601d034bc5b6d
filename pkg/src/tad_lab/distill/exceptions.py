from typing import Optional


class DistillError(Exception):
    pass


class MissingLabel(DistillError):
    def __init__(self, position: int) -> None:
        self.position = position

    def __str__(self) -> str:
        return f"No label for near position {self.position}"


class NonFiniteLoss(DistillError):
    def __init__(self, traj_id: int, step: int, loss: float, s: Optional[int] = None) -> None:
        self.traj_id = traj_id
        self.step = step
        self.loss = loss
        self.s = s

    def __str__(self) -> str:
        msg = f"Non-finite loss {self.loss!r} at update {self.step} on trajectory {self.traj_id}"
        if self.s is not None:
            msg += f" (trajectory step {self.s})"
        return msg


class NoTrajectories(DistillError, ValueError):
    def __init__(self, stage: str) -> None:
        self.stage = stage

    def __str__(self) -> str:
        return f"No trajectories for {self.stage}; collect kept none or the file is empty"

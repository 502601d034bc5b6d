import json
import logging
import os
from typing import List, Sequence

from pydantic import ValidationError

from tad_lab.models import Trajectory

from .exceptions import TrajectoryParseError

__all__ = ["save_trajectories", "load_trajectories"]

_logger = logging.getLogger(__name__)


def save_trajectories(trajs: Sequence[Trajectory], path: str):
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, mode="w", encoding="utf-8") as f:
        for traj in trajs:
            f.write(json.dumps(traj.model_dump(mode="json"), sort_keys=True))
            f.write("\n")
    _logger.info("Saved %d trajectories to %s", len(trajs), path)


def load_trajectories(path: str) -> List[Trajectory]:
    """Read a JSON-lines trajectory file; the trajectory id is its 0-based
    index in the file."""
    if not os.path.exists(path):
        raise FileNotFoundError(f"trajectory file {path} does not exist")
    trajs = []
    with open(path, mode="r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if len(line.strip()) == 0:
                continue
            try:
                trajs.append(Trajectory.model_validate_json(line))
            except ValidationError as e:
                raise TrajectoryParseError(path, lineno, str(e).splitlines()[0] + ": " + _first_error(e)) from None
    return trajs


def _first_error(e: ValidationError) -> str:
    errors = e.errors()
    if not errors:
        return "invalid trajectory"
    err = errors[0]
    loc = ".".join(str(x) for x in err.get("loc", ()))
    return f"{loc} {err.get('msg', '')}".strip()

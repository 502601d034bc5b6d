from .collect import (CollectReport, FilterReport, collect_all, collect_trajectory,
                      filter_trajectories, model_input)
from .exceptions import (DegenerateStep, InputTooLong, TrajectoryError,
                         TrajectoryParseError)
from .inputs import student_input, teacher_input
from .trajectory_io import load_trajectories, save_trajectories

__all__ = [
    "teacher_input",
    "student_input",
    "model_input",
    "collect_trajectory",
    "collect_all",
    "filter_trajectories",
    "CollectReport",
    "FilterReport",
    "save_trajectories",
    "load_trajectories",
    "TrajectoryError",
    "InputTooLong",
    "DegenerateStep",
    "TrajectoryParseError",
]

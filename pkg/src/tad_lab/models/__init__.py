from .curve import CurvePoint, ParallelismCurve
from .decode import DecodeResult, DecodeStep
from .state import MaskedState
from .table import (MAX_TABLE_SIZE, DistributionTable, TableTooLarge, check_size,
                    entropy_of)
from .task import PromptAnswerPair, TaskName
from .trajectory import Trajectory, TrajectoryStep
from .vocab import (EOS_ID, MASK_ID, PAD_ID, SEP_ID, TASK_TAGS, Vocabulary,
                    default_vocabulary)

__all__ = [
    "Vocabulary",
    "default_vocabulary",
    "PAD_ID",
    "MASK_ID",
    "EOS_ID",
    "SEP_ID",
    "TASK_TAGS",
    "MaskedState",
    "TaskName",
    "PromptAnswerPair",
    "TrajectoryStep",
    "Trajectory",
    "DecodeStep",
    "DecodeResult",
    "CurvePoint",
    "ParallelismCurve",
    "DistributionTable",
    "TableTooLarge",
    "MAX_TABLE_SIZE",
    "check_size",
    "entropy_of",
]

from tad_lab.config import DistillConfig

from .calibrate import CalibrationReport, calibrate_delta, decay_curve, select_delta
from .exceptions import DistillError, MissingLabel, NonFiniteLoss, NoTrajectories
from .losses import PROB_FLOOR, distant_loss, near_loss, soften
from .objective import (LossBreakdown, TadInstance, prepare_instance, tad_loss,
                        tad_loss_and_grad, tad_objective)
from .partition import Partition, partition_masked
from .train import LossRecord, read_loss_csv, tad_train, write_loss_csv

__all__ = [
    "DistillConfig",
    "Partition",
    "partition_masked",
    "PROB_FLOOR",
    "soften",
    "near_loss",
    "distant_loss",
    "LossBreakdown",
    "TadInstance",
    "prepare_instance",
    "tad_objective",
    "tad_loss",
    "tad_loss_and_grad",
    "LossRecord",
    "tad_train",
    "write_loss_csv",
    "read_loss_csv",
    "CalibrationReport",
    "decay_curve",
    "select_delta",
    "calibrate_delta",
    "DistillError",
    "MissingLabel",
    "NonFiniteLoss",
    "NoTrajectories",
]

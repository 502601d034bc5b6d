from .ablate import AblationRow, ablation_variants, cmd_ablate
from .analysis import cmd_gap, cmd_validate
from .calibrate import cmd_calibrate
from .collect import cmd_collect
from .common import Artifacts
from .distill import cmd_distill, resolve_distill_config
from .evaluate import cmd_eval, cmd_sweep
from .exceptions import CommandError, MissingArtifact
from .train_base import cmd_train_base

__all__ = [
    "Artifacts",
    "cmd_train_base",
    "cmd_collect",
    "cmd_calibrate",
    "cmd_distill",
    "resolve_distill_config",
    "cmd_eval",
    "cmd_sweep",
    "cmd_ablate",
    "AblationRow",
    "ablation_variants",
    "cmd_gap",
    "cmd_validate",
    "CommandError",
    "MissingArtifact",
]

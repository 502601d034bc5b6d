import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from tad_lab import log
from tad_lab.commands import (CommandError, cmd_ablate, cmd_calibrate, cmd_collect,
                              cmd_distill, cmd_eval, cmd_gap, cmd_sweep,
                              cmd_train_base, cmd_validate)
from tad_lab.config import ConfigFileError, ExperimentConfig, load_config, set_config
from tad_lab.corruption import InvalidMaskRate
from tad_lab.decoder import DecodeError
from tad_lab.denoiser import DenoiserError
from tad_lab.distill import DistillError
from tad_lab.metrics import MetricsError
from tad_lab.models import TableTooLarge
from tad_lab.numerics import NumericsError
from tad_lab.tasks import TaskError
from tad_lab.trajectory import TrajectoryError

_logger = logging.getLogger(__name__)

DOMAIN_ERRORS = (
    CommandError,
    NumericsError,
    DenoiserError,
    TaskError,
    TrajectoryError,
    DistillError,
    DecodeError,
    MetricsError,
    ConfigFileError,
    TableTooLarge,
    InvalidMaskRate,
    ValidationError,
    FileNotFoundError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="TAD desk-scale lab")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value (or YAML) experiment config file")
    common.add_argument("--seed", type=int, help="root seed")
    common.add_argument("--out", help="output directory")

    with_ckpt = argparse.ArgumentParser(add_help=False)
    with_ckpt.add_argument("--checkpoint", help="checkpoint path (default: base.ckpt in --out)")

    with_trajs = argparse.ArgumentParser(add_help=False)
    with_trajs.add_argument("--trajectories", help="trajectory file (default: trajectories.jsonl in --out)")

    subparsers = parser.add_subparsers(help="Commands", dest="cmd", required=True)
    subparsers.add_parser("train-base", parents=[common, with_ckpt], help="Pretrain the base denoiser")
    subparsers.add_parser("collect", parents=[common, with_ckpt, with_trajs], help="Collect teacher trajectories")
    subparsers.add_parser("calibrate", parents=[common, with_ckpt, with_trajs], help="Calibrate delta from the confidence decay")
    distill = subparsers.add_parser("distill", parents=[common, with_ckpt, with_trajs], help="Temporal-aware self-distillation")
    distill.add_argument("--output", help="distilled checkpoint path")
    subparsers.add_parser("eval", parents=[common, with_ckpt], help="Decode the eval set")
    subparsers.add_parser("sweep", parents=[common, with_ckpt], help="Accuracy-parallelism sweep and AUP")
    subparsers.add_parser("ablate", parents=[common, with_ckpt, with_trajs], help="Objective, delta, lambda and data ablations")
    subparsers.add_parser("gap", parents=[common], help="Factorization gap of the Markov source")
    subparsers.add_parser("validate-theorem", parents=[common], help="Check the KL / cross-entropy identity")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    overrides: Dict[str, Any] = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out is not None:
        overrides["out_dir"] = args.out
    return load_config(args.config, **overrides)


def run(args: argparse.Namespace):
    config = resolve_config(args)
    set_config(config)
    log.init_from_config(config.log, config.out_dir)
    _logger.debug("Logger init completed.")

    checkpoint = getattr(args, "checkpoint", None)
    trajectories = getattr(args, "trajectories", None)
    if args.cmd == "train-base":
        cmd_train_base(config, checkpoint)
    elif args.cmd == "collect":
        cmd_collect(config, checkpoint, trajectories)
    elif args.cmd == "calibrate":
        cmd_calibrate(config, checkpoint, trajectories)
    elif args.cmd == "distill":
        cmd_distill(config, checkpoint, trajectories, args.output)
    elif args.cmd == "eval":
        cmd_eval(config, checkpoint)
    elif args.cmd == "sweep":
        cmd_sweep(config, checkpoint)
    elif args.cmd == "ablate":
        cmd_ablate(config, checkpoint, trajectories)
    elif args.cmd == "gap":
        cmd_gap(config)
    elif args.cmd == "validate-theorem":
        cmd_validate(config)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run(args)
    except DOMAIN_ERRORS as e:
        print(f"tad-lab {args.cmd}: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

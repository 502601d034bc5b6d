import csv
import logging
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel

from tad_lab.config import BaseTrainConfig, DistillConfig, ExperimentConfig
from tad_lab.decoder import decode_many
from tad_lab.denoiser import DenoiserParams, MdlmExample, finetune_mdlm, load_params
from tad_lab.distill import LossRecord, tad_train
from tad_lab.models import Trajectory
from tad_lab.tasks import response_ids
from tad_lab.trajectory import collect_all, filter_trajectories, load_trajectories
from tad_lab.utils import stream

from .common import Artifacts, eval_corpus, require, train_corpus, write_manifest
from .distill import resolve_distill_config

__all__ = ["AblationRow", "ablation_variants", "cmd_ablate"]

_logger = logging.getLogger(__name__)


class AblationRow(BaseModel):
    group: str
    variant: str
    data: str
    delta: int
    lambda_: float
    near_objective: str
    distant_objective: str
    near_loss: Optional[float] = None
    distant_loss: Optional[float] = None
    total_loss: Optional[float] = None
    accuracy: float = 0.0
    tpf: float = 0.0


class _Variant(BaseModel):
    group: str
    name: str
    config: DistillConfig


def ablation_variants(config: ExperimentConfig, base: DistillConfig) -> List[_Variant]:
    """Objective variants, then the delta and lambda grids around ``base``."""
    variants = []
    if config.ablate.objectives:
        variants.extend(
            [
                _Variant(group="objective", name="global_ce", config=base.model_copy(update={"delta": config.tasks.gen_len})),
                _Variant(group="objective", name="near_only", config=base.model_copy(update={"lambda_": 0.0})),
                _Variant(
                    group="objective",
                    name="kl_only",
                    config=base.model_copy(update={"near_objective": "soft_kl", "distant_objective": "soft_kl"}),
                ),
                _Variant(group="objective", name="tad", config=base),
            ]
        )
    for delta in config.ablate.deltas:
        variants.append(_Variant(group="delta", name=f"delta={delta}", config=base.model_copy(update={"delta": delta})))
    for lam in config.ablate.lambdas:
        variants.append(_Variant(group="lambda", name=f"lambda={lam}", config=base.model_copy(update={"lambda_": lam})))
    return variants


def _last_epoch(history: Sequence[LossRecord], steps_per_epoch: int) -> Dict[str, float]:
    tail = list(history[-steps_per_epoch:])
    if not tail:
        return {}
    n = len(tail)
    return {
        "near_loss": sum(r.near_loss for r in tail) / n,
        "distant_loss": sum(r.distant_loss for r in tail) / n,
        "total_loss": sum(r.total for r in tail) / n,
    }


def _row(group: str, variant: str, data: str, dc: DistillConfig, losses: Dict[str, float], acc: float, tpf: float) -> AblationRow:
    return AblationRow(
        group=group,
        variant=variant,
        data=data,
        delta=dc.delta,
        lambda_=dc.lambda_,
        near_objective=dc.near_objective,
        distant_objective=dc.distant_objective,
        accuracy=acc,
        tpf=tpf,
        **losses,
    )


def cmd_ablate(
    config: ExperimentConfig, checkpoint: Optional[str] = None, trajectories: Optional[str] = None
) -> List[AblationRow]:
    art = Artifacts(config.out_dir)
    base = load_params(require(checkpoint or art.base_checkpoint, "train-base"))
    trajs = load_trajectories(require(trajectories or art.trajectories, "collect"))
    evals = eval_corpus(config)
    distill = resolve_distill_config(config)

    def evaluate(params: DenoiserParams):
        _, summary = decode_many(params, evals, config.decode, config.tasks.modulus)
        return summary.accuracy, summary.mean_tpf

    def distil(dc: DistillConfig, data: Sequence[Trajectory]):
        student, history = tad_train(base.copy(), base, data, dc, stream(config.seed, "distill"))
        return student, _last_epoch(history, -(-len(data) // dc.batch))

    rows: List[AblationRow] = []
    for variant in ablation_variants(config, distill):
        student, losses = distil(variant.config, trajs)
        acc, tpf = evaluate(student)
        rows.append(_row(variant.group, variant.name, "privileged_trajectory", variant.config, losses, acc, tpf))
        _logger.info("%s/%s: accuracy %.2f, TPF %.4f", variant.group, variant.name, acc, tpf)

    if config.ablate.data_variants:
        finetune = BaseTrainConfig(
            epochs=distill.epochs,
            lr=distill.lr,
            batch=distill.batch,
            weight_decay=distill.weight_decay,
            max_grad_norm=distill.max_grad_norm,
            t_min=config.base_train.t_min,
            privileged_rate=0.0,
        )
        by_prompt = {pair.prompt_ids: pair for pair in train_corpus(config)}
        gt = [
            MdlmExample(prompt=t.prompt_ids, response=response_ids(t.answer_ids, t.gen_len))
            for t in trajs
        ]
        from_traj = [MdlmExample(prompt=t.prompt_ids, response=t.final_ids) for t in trajs]
        for name, examples in (("ground_truth_random_mask", gt), ("trajectory_random_mask", from_traj)):
            student, losses = finetune_mdlm(base, examples, finetune, stream(config.seed, "distill"))
            acc, tpf = evaluate(student)
            rows.append(
                _row("data", name, name, distill, {"total_loss": losses[-1]} if losses else {}, acc, tpf)
            )

        pairs = [by_prompt[t.prompt_ids] for t in trajs if t.prompt_ids in by_prompt]
        unpriv, _ = collect_all(base, pairs, config.tasks.gen_len, privileged=False, modulus=config.tasks.modulus)
        unpriv, _ = filter_trajectories(unpriv, modulus=config.tasks.modulus)
        if unpriv:
            student, losses_d = distil(distill, unpriv)
            acc, tpf = evaluate(student)
            rows.append(_row("data", "unprivileged_trajectory_tad", "unprivileged_trajectory", distill, losses_d, acc, tpf))
        else:
            _logger.warning("No unprivileged trajectory passed the oracle; skipping that variant")
        student, losses_d = distil(distill, trajs)
        acc, tpf = evaluate(student)
        rows.append(_row("data", "privileged_trajectory_tad", "privileged_trajectory", distill, losses_d, acc, tpf))

    path = art.path("ablate.csv")
    with open(path, mode="w", encoding="utf-8", newline="") as f:
        fields = list(AblationRow.model_fields)
        writer = csv.writer(f)
        writer.writerow(["lambda" if name == "lambda_" else name for name in fields])
        for row in rows:
            writer.writerow(["" if getattr(row, k) is None else getattr(row, k) for k in fields])
    write_manifest(config, "ablate", {"table": path})
    return rows

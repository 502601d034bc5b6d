import logging
from typing import List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel

from tad_lab.denoiser import Denoiser, DenoiserParams, as_denoiser, most_confident
from tad_lab.models import MaskedState, PromptAnswerPair, Trajectory, TrajectoryStep
from tad_lab.tasks import TaskOracle, oracle_for

from .exceptions import DegenerateStep
from .inputs import student_input, teacher_input

__all__ = [
    "CollectReport",
    "FilterReport",
    "model_input",
    "collect_trajectory",
    "collect_all",
    "filter_trajectories",
]

_logger = logging.getLogger(__name__)


class CollectReport(BaseModel):
    total: int
    passed: int

    @property
    def pass_rate(self) -> float:
        return self.passed / self.total if self.total else 0.0


class FilterReport(BaseModel):
    kept: int
    dropped: int


def model_input(
    traj_q: Sequence[int], traj_a: Sequence[int], state: MaskedState, privileged: bool, max_len: Optional[int] = None
) -> MaskedState:
    if privileged:
        return teacher_input(traj_q, traj_a, state, max_len)
    return student_input(traj_q, state, max_len)


def collect_trajectory(
    teacher: Union[Denoiser, DenoiserParams],
    q: Sequence[int],
    a: Sequence[int],
    gen_len: int,
    task: str = "copy",
    privileged: bool = True,
    oracle: Optional[TaskOracle] = None,
) -> Trajectory:
    """Strict one-token-per-step rollout.

    Each step reveals the masked position whose best non-MASK token is most
    probable, ties to the lowest index. With ``privileged`` the model sees
    ``q + SEP + a + x_s``, otherwise ``q + x_s``.
    """
    if gen_len < 1:
        raise ValueError(f"gen_len must be at least 1, got {gen_len}")
    model = as_denoiser(teacher)
    state = MaskedState.fully_masked(tuple(q), gen_len)
    steps: List[TrajectoryStep] = []
    for s in range(1, gen_len + 1):
        out = model.predict(model_input(q, a, state, privileged, model.max_len))
        pos, token, conf = most_confident(out, state.masked_positions())
        if conf <= 0.0:
            raise DegenerateStep(s, pos, conf)
        steps.append(TrajectoryStep(s=s, pos=pos, token=token, conf=conf))
        state = state.reveal(pos, token)

    final = state.response
    passed = None
    if oracle is not None:
        passed = oracle.check(q, final)
    return Trajectory(
        task=task,  # type: ignore[arg-type]
        prompt_ids=tuple(q),
        answer_ids=tuple(a),
        gen_len=gen_len,
        steps=tuple(steps),
        final_ids=final,
        oracle_pass=passed,
        privileged=privileged,
    )


def collect_all(
    teacher: Union[Denoiser, DenoiserParams],
    pairs: Sequence[PromptAnswerPair],
    gen_len: int,
    privileged: bool = True,
    modulus: int = 10,
) -> Tuple[List[Trajectory], CollectReport]:
    model = as_denoiser(teacher)
    trajs = []
    passed = 0
    for i, pair in enumerate(pairs):
        traj = collect_trajectory(
            model,
            pair.prompt_ids,
            pair.answer_ids,
            gen_len,
            task=pair.task,
            privileged=privileged,
            oracle=oracle_for(pair.task, modulus),
        )
        passed += int(bool(traj.oracle_pass))
        trajs.append(traj)
        if (i + 1) % 50 == 0:
            _logger.debug("collected %d/%d trajectories", i + 1, len(pairs))
    report = CollectReport(total=len(trajs), passed=passed)
    _logger.info(
        "Collected %d %s trajectories, oracle pass rate %.4f",
        report.total,
        "privileged" if privileged else "unprivileged",
        report.pass_rate,
    )
    return trajs, report


def filter_trajectories(
    trajs: Sequence[Trajectory], oracle: Optional[TaskOracle] = None, modulus: int = 10
) -> Tuple[List[Trajectory], FilterReport]:
    """Keep the trajectories whose final response passes the oracle (the
    trajectory's own task oracle at ``modulus`` when ``oracle`` is None)."""
    kept = []
    for traj in trajs:
        check = oracle if oracle is not None else oracle_for(traj.task, modulus)
        if check.check(traj.prompt_ids, traj.final_ids):
            kept.append(traj)
    report = FilterReport(kept=len(kept), dropped=len(trajs) - len(kept))
    _logger.info("Kept %d trajectories, dropped %d", report.kept, report.dropped)
    return kept, report

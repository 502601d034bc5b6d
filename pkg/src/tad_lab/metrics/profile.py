from typing import List, Sequence, Union

import numpy as np

from tad_lab.denoiser import Denoiser, DenoiserParams, as_denoiser
from tad_lab.models import Trajectory
from tad_lab.trajectory import model_input

__all__ = ["confidence_profile"]


def confidence_profile(
    model: Union[Denoiser, DenoiserParams], trajs: Sequence[Trajectory], privileged: bool
) -> List[float]:
    """Mean confidence at the committed position for every step index.

    The model sees ``q + SEP + a + x_s`` when ``privileged`` and ``q + x_s``
    otherwise. Step indices past a trajectory's length are averaged over the
    trajectories that reach them.
    """
    if len(trajs) == 0:
        raise ValueError("confidence profile needs at least one trajectory")
    denoiser = as_denoiser(model)
    T = max(traj.T for traj in trajs)
    sums = np.zeros(T)
    counts = np.zeros(T, dtype=np.int64)
    for traj in trajs:
        for step in traj.steps:
            state = traj.state_at(step.s)
            out = denoiser.predict(
                model_input(traj.prompt_ids, traj.answer_ids, state, privileged, denoiser.max_len)
            )
            _, conf = out.best_token(step.pos, state.mask_id)
            sums[step.s - 1] += conf
            counts[step.s - 1] += 1
    return (sums / np.maximum(counts, 1)).tolist()

import numpy as np
import pytest

from tad_lab.denoiser import ScriptedDenoiser
from tad_lab.distill import calibrate_delta, decay_curve, select_delta
from tad_lab.models import MaskedState

from .trajectories import trajectory_from_order


def test_select_delta_on_decreasing_curve():
    curve = [0.9, 0.6, 0.45, 0.3, 0.15]
    assert select_delta(curve, 0.5, 5) == 3
    assert select_delta(curve, 0.2, 5) == 5


def test_select_delta_never_crossing():
    assert select_delta([0.8] * 6, 0.5, 6) == 6
    assert select_delta([0.8] * 6, 0.2, 6) == 6


def _oracle_student(trajs):
    """Puts probability 1 on the final token of every position."""
    finals = {traj.prompt_ids: traj.final_ids for traj in trajs}

    def script(state: MaskedState):
        rows = np.zeros((state.length, 45))
        rows[np.arange(state.length), list(finals[state.prompt])] = 1.0
        return rows

    return ScriptedDenoiser(45, script=script)


def test_perfect_student_never_decays():
    trajs = [trajectory_from_order([2, 0, 3, 1]), trajectory_from_order([1, 0, 2], prompt=(5, 19))]
    report = calibrate_delta(_oracle_student(trajs), trajs, 64, np.random.default_rng(0))
    assert report.T == 4
    assert report.curve == [1.0] * len(report.curve)
    assert report.delta_quality == 4
    assert report.delta_speed == 4


def test_distance_one_is_the_next_token():
    trajs = [trajectory_from_order([2, 0, 3, 1])]
    probs = {19: 0.1, 20: 0.2, 21: 0.3, 22: 0.4}

    def script(state: MaskedState):
        rows = np.zeros((state.length, 45))
        for pos in range(state.length):
            token = 19 + pos
            rows[pos, token] = probs[token]
            rows[pos, 44] = 1.0 - probs[token]
        return rows

    curve, counts = decay_curve(ScriptedDenoiser(45, script=script), trajs, 200, np.random.default_rng(3))
    assert sum(counts) > 0
    assert counts == sorted(counts, reverse=True)
    assert len(curve) == 4
    # d = 4 is only reached from s = 1, where the last reveal is position 1
    assert curve[3] == pytest.approx(0.2)
    # d = 1 averages the token about to be revealed over the sampled steps
    assert min(probs.values()) <= curve[0] <= max(probs.values())


def test_needs_trajectories():
    with pytest.raises(ValueError):
        decay_curve(_oracle_student([]), [], 8, np.random.default_rng(0))

import pytest
from pydantic import ValidationError

from tad_lab.models import MASK_ID, Trajectory, TrajectoryStep


def _traj(steps, final, gen_len=3, **kwargs):
    return Trajectory(
        task="copy",
        prompt_ids=(4, 19, 20),
        answer_ids=(19, 20),
        gen_len=gen_len,
        steps=tuple(TrajectoryStep(s=s, pos=p, token=t, conf=c) for s, p, t, c in steps),
        final_ids=tuple(final),
        **kwargs,
    )


def test_replay_rebuilds_every_state():
    traj = _traj([(1, 2, 2, 0.9), (2, 0, 19, 0.8), (3, 1, 20, 0.7)], (19, 20, 2))
    assert traj.T == 3
    assert traj.state_at(1).response == (MASK_ID,) * 3
    assert traj.state_at(2).response == (MASK_ID, MASK_ID, 2)
    assert traj.state_at(3).response == (19, MASK_ID, 2)
    assert traj.state_at(4).is_complete()
    assert traj.state_at(4).response == traj.final_ids
    assert traj.reveal_steps() == [2, 3, 1]
    assert traj.initial_state().prompt == (4, 19, 20)


def test_state_at_out_of_range():
    traj = _traj([(1, 0, 19, 0.9), (2, 1, 20, 0.8), (3, 2, 2, 0.7)], (19, 20, 2))
    with pytest.raises(ValueError):
        traj.state_at(0)
    with pytest.raises(ValueError):
        traj.state_at(5)


def test_empty_trajectory_rejected():
    with pytest.raises(ValidationError):
        _traj([], (), gen_len=0)
    with pytest.raises(ValidationError):
        _traj([], (19,), gen_len=1)


def test_position_revealed_twice_rejected():
    with pytest.raises(ValidationError):
        _traj([(1, 0, 19, 0.9), (2, 0, 20, 0.8), (3, 2, 2, 0.7)], (20, MASK_ID, 2))


def test_mask_reveal_rejected():
    with pytest.raises(ValidationError):
        _traj([(1, 0, MASK_ID, 0.9), (2, 1, 20, 0.8), (3, 2, 2, 0.7)], (MASK_ID, 20, 2))


def test_steps_must_be_sequential():
    with pytest.raises(ValidationError):
        _traj([(1, 0, 19, 0.9), (3, 1, 20, 0.8), (2, 2, 2, 0.7)], (19, 20, 2))


def test_final_ids_must_match_steps():
    with pytest.raises(ValidationError):
        _traj([(1, 0, 19, 0.9), (2, 1, 20, 0.8), (3, 2, 2, 0.7)], (19, 21, 2))


def test_confidence_must_be_positive():
    with pytest.raises(ValidationError):
        TrajectoryStep(s=1, pos=0, token=19, conf=0.0)

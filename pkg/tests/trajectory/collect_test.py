import numpy as np
import pytest

from tad_lab.config import TasksConfig
from tad_lab.denoiser import (DenoiserParams, Hyperparameters, ScriptedDenoiser,
                              TransformerDenoiser)
from tad_lab.models import MASK_ID, SEP_ID, MaskedState, default_vocabulary
from tad_lab.tasks import generate_corpus, make_pair, oracle_for
from tad_lab.trajectory import (DegenerateStep, InputTooLong, collect_all,
                                collect_trajectory, filter_trajectories, model_input,
                                student_input, teacher_input)

VOCAB = default_vocabulary()
V = VOCAB.size


def _rows(*peaks):
    """One row per position, mass ``p`` on ``token`` and the rest spread
    over tokens 7..16."""
    rows = np.zeros((len(peaks), V))
    for i, (token, p) in enumerate(peaks):
        rest = [t for t in range(7, 17) if t != token]
        rows[i, rest] = (1.0 - p) / len(rest)
        rows[i, token] = p
    return rows


def test_teacher_input_layout():
    state = MaskedState.fully_masked((4, 19, 20, 21), 8)
    t_in = teacher_input((4, 19, 20, 21), (19, 20, 21), state)
    s_in = student_input((4, 19, 20, 21), state)
    assert t_in.total_length == 4 + 1 + 3 + 8
    assert t_in.prompt == (4, 19, 20, 21, SEP_ID, 19, 20, 21)
    assert t_in.response == s_in.response
    assert s_in.total_length == 12


def test_empty_answer_adds_only_the_separator():
    state = MaskedState.fully_masked((4, 19), 3)
    t_in = teacher_input((4, 19), (), state)
    assert t_in.tokens() == (4, 19, SEP_ID) + (MASK_ID,) * 3
    assert t_in.response_offset == student_input((4, 19), state).response_offset + 1


def test_response_alignment_is_preserved():
    state = MaskedState(prompt=(4,), response=(MASK_ID, 20, MASK_ID))
    t_in = teacher_input((4,), (19, 20, 21), state)
    s_in = student_input((4,), state)
    for i in range(state.length):
        assert t_in.tokens()[t_in.response_offset + i] == s_in.tokens()[s_in.response_offset + i]


def test_input_too_long():
    state = MaskedState.fully_masked((4, 19), 4)
    with pytest.raises(InputTooLong):
        teacher_input((4, 19), (19, 20), state, max_len=8)
    assert model_input((4, 19), (19, 20), state, privileged=False, max_len=8).total_length == 6


def test_highest_confidence_position_first():
    teacher = ScriptedDenoiser(V, rows=_rows((19, 0.7), (20, 0.9)))
    traj = collect_trajectory(teacher, (4, 19, 20), (19, 20), 2)
    assert [(s.pos, s.token) for s in traj.steps] == [(1, 20), (0, 19)]
    assert traj.steps[0].conf == pytest.approx(0.9)
    assert traj.final_ids == (19, 20)


def test_exact_tie_goes_to_lower_index():
    teacher = ScriptedDenoiser(V, rows=_rows((19, 0.5), (20, 0.5)))
    traj = collect_trajectory(teacher, (4,), (), 2)
    assert [s.pos for s in traj.steps] == [0, 1]


def test_single_position():
    teacher = ScriptedDenoiser(V, rows=_rows((21, 0.4)))
    traj = collect_trajectory(teacher, (4,), (21,), 1)
    assert traj.T == 1
    assert traj.steps[0].pos == 0
    assert traj.final_ids == (21,)


def test_privileged_and_plain_inputs():
    q, a = (4, 19, 20), (19, 20)
    teacher = ScriptedDenoiser(V, rows=_rows((19, 0.9), (20, 0.8), (2, 0.7)))
    collect_trajectory(teacher, q, a, 3, privileged=True)
    assert all(call.prompt == q + (SEP_ID,) + a for call in teacher.calls)

    plain = ScriptedDenoiser(V, rows=_rows((19, 0.9), (20, 0.8), (2, 0.7)))
    traj = collect_trajectory(plain, q, a, 3, privileged=False)
    assert all(call.prompt == q for call in plain.calls)
    assert not traj.privileged


def test_each_step_sees_the_previous_reveals():
    teacher = ScriptedDenoiser(V, rows=_rows((19, 0.9), (20, 0.8), (2, 0.7)))
    traj = collect_trajectory(teacher, (4,), (19, 20), 3)
    assert len(teacher.calls) == 3
    for step, call in zip(traj.steps, teacher.calls):
        assert call.response == traj.state_at(step.s).response


def test_degenerate_step():
    rows = np.zeros((1, V))
    rows[0, MASK_ID] = 1.0
    with pytest.raises(DegenerateStep):
        collect_trajectory(ScriptedDenoiser(V, rows=rows), (4,), (), 1)


def test_gen_len_must_be_positive():
    with pytest.raises(ValueError):
        collect_trajectory(ScriptedDenoiser(V, rows=_rows((19, 0.9))), (4,), (), 0)


def test_oracle_verdict_recorded():
    pair = make_pair("copy", "ab", VOCAB)
    right = ScriptedDenoiser(V, rows=_rows((19, 0.9), (20, 0.9), (2, 0.9)))
    wrong = ScriptedDenoiser(V, rows=_rows((19, 0.9), (21, 0.9), (2, 0.9)))
    oracle = oracle_for("copy")
    assert collect_trajectory(right, pair.prompt_ids, pair.answer_ids, 3, oracle=oracle).oracle_pass
    assert not collect_trajectory(wrong, pair.prompt_ids, pair.answer_ids, 3, oracle=oracle).oracle_pass


def test_filter_keeps_oracle_passes():
    pair = make_pair("copy", "ab", VOCAB)
    right = collect_trajectory(
        ScriptedDenoiser(V, rows=_rows((19, 0.9), (20, 0.9), (2, 0.9))), pair.prompt_ids, pair.answer_ids, 3
    )
    wrong = collect_trajectory(
        ScriptedDenoiser(V, rows=_rows((19, 0.9), (21, 0.9), (2, 0.9))), pair.prompt_ids, pair.answer_ids, 3
    )
    kept, report = filter_trajectories([right, wrong, right])
    assert kept == [right, right]
    assert (report.kept, report.dropped) == (2, 1)

    kept, report = filter_trajectories([])
    assert kept == []
    assert (report.kept, report.dropped) == (0, 0)


def test_filter_uses_the_collection_modulus():
    pair = make_pair("arith", "3+5=", VOCAB, 7)
    assert pair.answer_text == "1"
    teacher = ScriptedDenoiser(V, rows=_rows((8, 0.9), (2, 0.9), (0, 0.9)))
    trajs, report = collect_all(teacher, [pair], 3, modulus=7)
    assert report.passed == 1

    kept, filtered = filter_trajectories(trajs, modulus=7)
    assert (filtered.kept, filtered.dropped) == (1, 0)
    assert kept == trajs

    _, filtered = filter_trajectories(trajs)
    assert (filtered.kept, filtered.dropped) == (0, 1)


def test_collected_trajectories_replay_exactly():
    hp = Hyperparameters(vocab_size=V, n_layers=1, width=8, n_heads=2, max_len=24)
    rng = np.random.default_rng(2)
    params = DenoiserParams.init(hp, rng)
    params = params.replace({"head": rng.normal(0.0, 1.0, size=(8, V))})
    tasks_config = TasksConfig(max_len=3, gen_len=4)
    pairs = generate_corpus(tasks_config, 200, np.random.default_rng(0))

    trajs, report = collect_all(params, pairs, 4)
    assert report.total == 200
    assert 0 <= report.passed <= 200
    model = TransformerDenoiser(params)
    for traj in trajs:
        assert traj.T == 4
        assert sorted(s.pos for s in traj.steps) == [0, 1, 2, 3]
        assert MASK_ID not in traj.final_ids
        for step in traj.steps:
            state = traj.state_at(step.s)
            out = model.predict(teacher_input(traj.prompt_ids, traj.answer_ids, state))
            assert out.best_token(step.pos) == (step.token, step.conf)

import numpy as np
import pytest

from tad_lab.config import TasksConfig
from tad_lab.models import EOS_ID, PAD_ID, default_vocabulary
from tad_lab.tasks import (CorpusParseError, UnknownTask, answer_text, generate_corpus,
                           load_corpus, make_pair, oracle_check, oracle_for, response_ids,
                           save_corpus, strip_response)

VOCAB = default_vocabulary()


@pytest.mark.parametrize(
    "task, prompt, answer",
    [
        ("copy", "abc", "abc"),
        ("reverse", "abc", "cba"),
        ("arith", "3+4+5=", "2"),
        ("arith", "3+4+2=", "9"),
    ],
)
def test_answers(task, prompt, answer):
    assert answer_text(task, prompt) == answer


def test_unknown_task():
    with pytest.raises(UnknownTask):
        answer_text("sort", "abc")
    with pytest.raises(UnknownTask):
        generate_corpus(TasksConfig(), 3, np.random.default_rng(0), tasks=["sort"])


def test_malformed_arith_prompt():
    with pytest.raises(ValueError):
        answer_text("arith", "34+5=")
    with pytest.raises(ValueError):
        answer_text("arith", "3+4")


def test_pair_layout():
    pair = make_pair("arith", "3+4=", VOCAB)
    assert pair.prompt_ids[0] == VOCAB.task_tag_id("arith")
    assert VOCAB.decode(pair.prompt_ids[1:]) == "3+4="
    assert VOCAB.decode(pair.answer_ids) == "7"


def test_corpus_is_deterministic():
    a = generate_corpus(TasksConfig(), 20, np.random.default_rng(4))
    b = generate_corpus(TasksConfig(), 20, np.random.default_rng(4))
    assert a == b


def test_every_generated_pair_passes_its_oracle():
    tasks_config = TasksConfig()
    for pair in generate_corpus(tasks_config, 300, np.random.default_rng(0)):
        response = response_ids(pair.answer_ids, tasks_config.gen_len)
        assert oracle_for(pair.task).check(pair.prompt_ids, response)
        assert tasks_config.min_len <= len(pair.answer_ids) <= tasks_config.max_len or pair.task == "arith"


def test_response_ids():
    assert response_ids((19, 20), 5) == (19, 20, EOS_ID, PAD_ID, PAD_ID)
    with pytest.raises(ValueError):
        response_ids((19, 20, 21), 3)


def test_oracle_examples():
    copy = make_pair("copy", "abc", VOCAB)
    oracle = oracle_for("copy")
    assert oracle_check(oracle, copy.prompt_ids, VOCAB.encode("abc"))
    assert not oracle_check(oracle, copy.prompt_ids, VOCAB.encode("abd"))

    arith = make_pair("arith", "3+4=", VOCAB)
    padded = tuple(VOCAB.encode("7")) + (PAD_ID,) * 5
    assert oracle_check(oracle_for("arith"), arith.prompt_ids, padded)
    assert oracle_check(oracle_for("arith"), arith.prompt_ids, tuple(VOCAB.encode("7")) + (EOS_ID, PAD_ID))


def test_oracle_rejects_malformed_output():
    pair = make_pair("copy", "ab", VOCAB)
    oracle = oracle_for("copy")
    assert not oracle.check(pair.prompt_ids, (19, 1, 20))
    assert not oracle.check(pair.prompt_ids, (19, 20, EOS_ID, 21))
    assert not oracle.check(pair.prompt_ids, (19, 20, 99))
    assert not oracle.check((), (19, 20))
    # prompt tagged for another task
    assert not oracle.check(make_pair("reverse", "ab", VOCAB).prompt_ids, (19, 20))


def test_strip_response():
    assert strip_response((19, EOS_ID, PAD_ID, PAD_ID)) == (19,)
    assert strip_response((19, EOS_ID, EOS_ID)) == (19, EOS_ID)
    assert strip_response((PAD_ID,)) == ()


def test_corpus_file(tmp_path):
    pairs = generate_corpus(TasksConfig(), 5, np.random.default_rng(0))
    path = str(tmp_path / "corpus.jsonl")
    save_corpus(pairs, path)
    assert load_corpus(path) == pairs

    with open(path, "a", encoding="utf-8") as f:
        f.write('{"task": "copy"}\n')
    with pytest.raises(CorpusParseError) as exc:
        load_corpus(path)
    assert exc.value.lineno == 6

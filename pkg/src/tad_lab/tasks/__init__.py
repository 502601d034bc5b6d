from .corpus_io import load_corpus, save_corpus
from .exceptions import CorpusParseError, TaskError, UnknownTask
from .generate import (TASK_NAMES, answer_text, generate_corpus, generate_pair,
                       make_pair, response_ids)
from .markov import MarkovSource, enumerate_joint
from .oracle import TaskOracle, oracle_check, oracle_for, strip_response

__all__ = [
    "TASK_NAMES",
    "answer_text",
    "make_pair",
    "generate_pair",
    "generate_corpus",
    "response_ids",
    "TaskOracle",
    "strip_response",
    "oracle_check",
    "oracle_for",
    "save_corpus",
    "load_corpus",
    "MarkovSource",
    "enumerate_joint",
    "TaskError",
    "UnknownTask",
    "CorpusParseError",
]

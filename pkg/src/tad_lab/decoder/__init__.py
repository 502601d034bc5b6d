from tad_lab.config import DecodeConfig

from .decode import decode, decode_parallel, decode_tbt, entropy
from .evaluate import (EvalSummary, decode_many, load_decode_log, merge_points,
                       sweep_parallelism, write_decode_log)
from .exceptions import DecodeError, EmptyEvalSet, NoProgress

__all__ = [
    "DecodeConfig",
    "entropy",
    "decode_tbt",
    "decode_parallel",
    "decode",
    "EvalSummary",
    "decode_many",
    "merge_points",
    "sweep_parallelism",
    "write_decode_log",
    "load_decode_log",
    "DecodeError",
    "NoProgress",
    "EmptyEvalSet",
]

import json
import logging
import os
import struct
from typing import Dict, Iterator, List, Mapping, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .exceptions import CheckpointError

__all__ = [
    "Hyperparameters",
    "DenoiserParams",
    "save_params",
    "load_params",
    "CHECKPOINT_MAGIC",
]

_logger = logging.getLogger(__name__)

CHECKPOINT_MAGIC = b"TADCKPT1"


class Hyperparameters(BaseModel):
    model_config = ConfigDict(frozen=True)

    vocab_size: int = Field(ge=2)
    n_layers: int = Field(ge=1)
    width: int = Field(ge=1)
    n_heads: int = Field(ge=1)
    max_len: int = Field(ge=1)

    @model_validator(mode="after")
    def _heads_divide_width(self):
        if self.width % self.n_heads != 0:
            raise ValueError(f"width {self.width} is not divisible by n_heads {self.n_heads}")
        return self

    @property
    def head_dim(self) -> int:
        return self.width // self.n_heads

    @property
    def ffn_width(self) -> int:
        return 4 * self.width

    def shapes(self) -> List[Tuple[str, Tuple[int, ...]]]:
        """Parameter names and shapes in declaration order."""
        v, w, f = self.vocab_size, self.width, self.ffn_width
        res: List[Tuple[str, Tuple[int, ...]]] = [
            ("embed", (v, w)),
            ("pos", (self.max_len, w)),
        ]
        for i in range(self.n_layers):
            p = f"layer{i}"
            res.extend(
                [
                    (f"{p}.ln1.gain", (w,)),
                    (f"{p}.ln1.bias", (w,)),
                    (f"{p}.wq", (w, w)),
                    (f"{p}.wk", (w, w)),
                    (f"{p}.wv", (w, w)),
                    (f"{p}.wo", (w, w)),
                    (f"{p}.ln2.gain", (w,)),
                    (f"{p}.ln2.bias", (w,)),
                    (f"{p}.w1", (w, f)),
                    (f"{p}.b1", (f,)),
                    (f"{p}.w2", (f, w)),
                    (f"{p}.b2", (w,)),
                ]
            )
        res.extend(
            [
                ("final_ln.gain", (w,)),
                ("final_ln.bias", (w,)),
                ("head", (w, v)),
                ("head_bias", (v,)),
            ]
        )
        return res


class DenoiserParams(object):
    """Named float64 arrays of one denoiser, in declaration order.

    The teacher and student of a distillation run are two instances with the
    same hyperparameters.
    """

    def __init__(self, hparams: Hyperparameters, arrays: Mapping[str, np.ndarray]) -> None:
        expected = hparams.shapes()
        missing = [name for name, _ in expected if name not in arrays]
        if missing:
            raise ValueError(f"missing parameters: {', '.join(missing)}")
        extra = set(arrays) - {name for name, _ in expected}
        if extra:
            raise ValueError(f"unexpected parameters: {', '.join(sorted(extra))}")
        self.hparams = hparams
        self.arrays: Dict[str, np.ndarray] = {}
        for name, shape in expected:
            arr = np.array(arrays[name], dtype=np.float64, order="C")
            if arr.shape != shape:
                raise ValueError(f"parameter {name} has shape {arr.shape}, expected {shape}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"parameter {name} is not finite")
            self.arrays[name] = arr

    @classmethod
    def init(cls, hparams: Hyperparameters, rng: np.random.Generator, init_scale: float = 0.02) -> "DenoiserParams":
        arrays: Dict[str, np.ndarray] = {}
        for name, shape in hparams.shapes():
            if name.endswith(".gain"):
                arrays[name] = np.ones(shape)
            elif name.startswith("head") or len(shape) == 1:
                # zero head: every output row starts uniform
                arrays[name] = np.zeros(shape)
            else:
                arrays[name] = rng.normal(0.0, init_scale, size=shape)
        return cls(hparams, arrays)

    def names(self) -> List[str]:
        return list(self.arrays)

    def items(self) -> Iterator[Tuple[str, np.ndarray]]:
        return iter(self.arrays.items())

    def num_values(self) -> int:
        return sum(arr.size for arr in self.arrays.values())

    def copy(self) -> "DenoiserParams":
        return DenoiserParams(self.hparams, {k: v.copy() for k, v in self.arrays.items()})

    def replace(self, arrays: Mapping[str, np.ndarray]) -> "DenoiserParams":
        merged = dict(self.arrays)
        merged.update(arrays)
        return DenoiserParams(self.hparams, merged)

    def equals(self, other: "DenoiserParams") -> bool:
        if self.hparams != other.hparams:
            return False
        return all(np.array_equal(a, other.arrays[name]) for name, a in self.arrays.items())


def save_params(path: str, params: DenoiserParams):
    """Write ``params`` as: magic, uint32 LE header length, JSON
    hyperparameters, then every array as float64 LE in declaration order."""
    header = json.dumps(params.hparams.model_dump(), sort_keys=True).encode("utf-8")
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, mode="wb") as f:
        f.write(CHECKPOINT_MAGIC)
        f.write(struct.pack("<I", len(header)))
        f.write(header)
        for _, arr in params.items():
            f.write(arr.astype("<f8").tobytes(order="C"))
    _logger.info("Checkpoint with %d values saved to %s", params.num_values(), path)


def load_params(path: str) -> DenoiserParams:
    if not os.path.exists(path):
        raise FileNotFoundError(f"checkpoint {path} does not exist")
    with open(path, mode="rb") as f:
        content = f.read()

    if not content.startswith(CHECKPOINT_MAGIC):
        raise CheckpointError(path, "magic string mismatch")
    offset = len(CHECKPOINT_MAGIC)
    if len(content) < offset + 4:
        raise CheckpointError(path, "truncated header length")
    (header_len,) = struct.unpack("<I", content[offset : offset + 4])
    offset += 4
    try:
        hparams = Hyperparameters.model_validate_json(content[offset : offset + header_len])
    except ValidationError as e:
        raise CheckpointError(path, f"invalid header: {e}") from None
    offset += header_len

    arrays: Dict[str, np.ndarray] = {}
    for name, shape in hparams.shapes():
        count = int(np.prod(shape))
        nbytes = 8 * count
        if len(content) < offset + nbytes:
            raise CheckpointError(path, f"truncated at parameter {name}")
        arrays[name] = np.frombuffer(content, dtype="<f8", count=count, offset=offset).reshape(shape)
        offset += nbytes
    if offset != len(content):
        raise CheckpointError(path, f"{len(content) - offset} trailing bytes")
    try:
        return DenoiserParams(hparams, arrays)
    except ValueError as e:
        raise CheckpointError(path, str(e)) from None

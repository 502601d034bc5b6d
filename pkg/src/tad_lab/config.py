from __future__ import annotations

import json
import logging
import os
import tempfile
from typing import Any, Dict, List, Literal, Optional, Tuple, Type

import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.fields import FieldInfo
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

__all__ = [
    "LogConfig",
    "DenoiserConfig",
    "TasksConfig",
    "BaseTrainConfig",
    "CollectConfig",
    "DistillConfig",
    "DecodeConfig",
    "SweepConfig",
    "AblateConfig",
    "AnalysisConfig",
    "ExperimentConfig",
    "ConfigFileError",
    "get_config",
    "set_config",
    "set_config_file",
    "config_file_path",
    "load_config",
    "dump_config",
    "write_config",
    "parse_key_values",
]

_logger = logging.getLogger(__name__)

_config_file: Optional[str] = None

RESOLVED_CONFIG_FILENAME = "config.resolved.txt"


def config_file_path() -> Optional[str]:
    return _config_file


def set_config_file(path: Optional[str]):
    global _config_file

    _config_file = path


class ConfigFileError(ValueError):
    def __init__(self, path: str, lineno: int, line: str, reason: str) -> None:
        self.path = path
        self.lineno = lineno
        self.line = line
        self.reason = reason

    def __str__(self) -> str:
        return f"{self.path}:{self.lineno}: {self.reason}: {self.line!r}"


def _set_dotted(d: Dict[str, Any], key: str, value: Any):
    parts = key.split(".")
    for part in parts[:-1]:
        sub = d.setdefault(part, {})
        if not isinstance(sub, dict):
            raise ValueError(f"key {key} conflicts with scalar {part}")
        d = sub
    d[parts[-1]] = value


def parse_key_values(text: str, path: str = "<string>") -> Dict[str, Any]:
    """Parse ``section.key = value`` lines into a nested dict.

    Values are read as YAML scalars or flow lists; ``#`` starts a comment line.
    """
    data: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if len(line) == 0 or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigFileError(path, lineno, raw, "expected key = value")
        key, value = line.split("=", 1)
        key = key.strip()
        if len(key) == 0:
            raise ConfigFileError(path, lineno, raw, "empty key")
        try:
            parsed = yaml.safe_load(value.strip()) if value.strip() else ""
        except yaml.YAMLError:
            raise ConfigFileError(path, lineno, raw, "unparsable value") from None
        try:
            _set_dotted(data, key, parsed)
        except ValueError as e:
            raise ConfigFileError(path, lineno, raw, str(e)) from None
    return data


class FileConfigSettingsSource(PydanticBaseSettingsSource):
    """
    Loads settings from the experiment config file: ``key = value`` text with
    dotted keys, or nested YAML when the file ends in ``.yml``/``.yaml``.
    """

    _file_data: Dict[str, Any] | None = None

    @property
    def file_data(self) -> Dict[str, Any]:
        if self._file_data is None:
            path = config_file_path()
            if path is None:
                self._file_data = {}
            else:
                with open(path, mode="r", encoding="utf-8") as f:
                    content = f.read()
                if path.endswith((".yml", ".yaml")):
                    self._file_data = yaml.safe_load(content) or {}
                else:
                    self._file_data = parse_key_values(content, path)
        return self._file_data  # type: ignore

    def get_field_value(
        self, field: FieldInfo, field_name: str
    ) -> Tuple[Any, str, bool]:
        field_value = self.file_data.get(field_name)
        return field_value, field_name, False

    def prepare_field_value(
        self, field_name: str, field: FieldInfo, value: Any, value_is_complex: bool
    ) -> Any:
        return value

    def __call__(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {}

        unknown = set(self.file_data) - set(self.settings_cls.model_fields)
        if unknown:
            # let pydantic report them as extra fields
            for key in sorted(unknown):
                d[key] = self.file_data[key]

        for field_name, field in self.settings_cls.model_fields.items():
            field_value, field_key, value_is_complex = self.get_field_value(
                field, field_name
            )
            field_value = self.prepare_field_value(
                field_name, field, field_value, value_is_complex
            )
            if field_value is not None:
                d[field_key] = field_value

        return d


LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "FATAL", "CRITICAL"]
TaskId = Literal["copy", "reverse", "arith"]
DistillMode = Literal["quality", "speed", "custom"]
NearObjective = Literal["hard_ce", "soft_kl"]
DistantObjective = Literal["soft_kl", "hard_ce", "none"]
DecodeMode = Literal["tbt", "parallel"]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class LogConfig(_Section):
    dir: str = "logs"
    level: LogLevel = "INFO"
    filename: str = "tad-lab.log"


class DenoiserConfig(_Section):
    n_layers: int = Field(default=4, ge=1)
    width: int = Field(default=128, ge=1)
    n_heads: int = Field(default=4, ge=1)
    max_len: int = Field(default=96, ge=2)
    init_scale: float = Field(default=0.02, gt=0)

    @model_validator(mode="after")
    def _heads_divide_width(self):
        if self.width % self.n_heads != 0:
            raise ValueError(f"width {self.width} is not divisible by n_heads {self.n_heads}")
        return self


class TasksConfig(_Section):
    names: List[TaskId] = ["arith", "copy", "reverse"]
    min_len: int = Field(default=2, ge=1)
    max_len: int = Field(default=6, ge=1)
    min_terms: int = Field(default=2, ge=2)
    max_terms: int = Field(default=4, ge=2)
    modulus: int = Field(default=10, ge=2, le=10)
    gen_len: int = Field(default=8, ge=1)
    train_size: int = Field(default=2000, ge=1)
    eval_size: int = Field(default=200, ge=1)

    @model_validator(mode="after")
    def _lengths(self):
        if self.min_len > self.max_len:
            raise ValueError("tasks.min_len exceeds tasks.max_len")
        if self.min_terms > self.max_terms:
            raise ValueError("tasks.min_terms exceeds tasks.max_terms")
        # answer plus EOS must fit in the response
        if self.max_len + 1 > self.gen_len:
            raise ValueError(
                f"tasks.gen_len {self.gen_len} cannot hold answers of length {self.max_len} plus EOS"
            )
        return self


class BaseTrainConfig(_Section):
    epochs: int = Field(default=20, ge=0)
    lr: float = Field(default=1e-3, ge=0)
    batch: int = Field(default=16, ge=1)
    weight_decay: float = Field(default=0.01, ge=0)
    max_grad_norm: float = Field(default=1.0, gt=0)
    t_min: float = Field(default=0.01, gt=0, le=1)
    privileged_rate: float = Field(default=0.5, ge=0, le=1)


class CollectConfig(_Section):
    n_prompts: int = Field(default=200, ge=1)
    privileged: bool = True
    filter: bool = True


class DistillConfig(_Section):
    delta: int = Field(default=4, ge=1)
    lambda_: float = Field(default=1.0, ge=0, alias="lambda")
    tau: float = Field(default=1.0, gt=0)
    lr: float = Field(default=1e-4, ge=0)
    epochs: int = Field(default=5, ge=0)
    batch: int = Field(default=8, ge=1)
    weight_decay: float = Field(default=0.01, ge=0)
    max_grad_norm: float = Field(default=1.0, gt=0)
    mode: DistillMode = "custom"
    near_objective: NearObjective = "hard_ce"
    distant_objective: DistantObjective = "soft_kl"


class DecodeConfig(_Section):
    gen_len: int = Field(default=8, ge=1)
    block_len: int = Field(default=4, ge=1)
    entropy_threshold: float = Field(default=0.5, ge=0)
    block_add_threshold: float = Field(default=0.1, ge=0, le=1)
    decoded_token_threshold: float = Field(default=0.75, ge=0, le=1)
    mode: DecodeMode = "parallel"

    @model_validator(mode="after")
    def _block_fits(self):
        if self.block_len > self.gen_len:
            raise ValueError(f"block_len {self.block_len} exceeds gen_len {self.gen_len}")
        return self


class SweepConfig(_Section):
    thresholds: List[float] = [0.0, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]
    alpha: float = Field(default=3.0, ge=0)

    @model_validator(mode="after")
    def _ascending(self):
        if list(self.thresholds) != sorted(self.thresholds):
            raise ValueError("sweep.thresholds must be sorted ascending")
        if any(t < 0 for t in self.thresholds):
            raise ValueError("sweep.thresholds must be non-negative")
        return self


class AblateConfig(_Section):
    deltas: List[int] = [1, 2, 4, 8]
    lambdas: List[float] = [0.0, 0.5, 1.0, 2.0]
    objectives: bool = True
    data_variants: bool = True


class AnalysisConfig(_Section):
    gap_ks: List[int] = [2, 3, 4, 5, 6]
    gap_transition: List[List[float]] = [[0.9, 0.1], [0.1, 0.9]]
    theorem_instances: int = Field(default=100, ge=1)
    theorem_alphabet: int = Field(default=3, ge=2)
    theorem_k: int = Field(default=3, ge=1)
    calibrate_samples: int = Field(default=256, ge=1)
    quality_threshold: float = Field(default=0.5, gt=0, lt=1)
    speed_threshold: float = Field(default=0.2, gt=0, lt=1)


class ExperimentConfig(BaseSettings):
    seed: int = 0
    out_dir: str = "runs/default"

    log: LogConfig = Field(default_factory=LogConfig)
    model: DenoiserConfig = Field(default_factory=DenoiserConfig)
    tasks: TasksConfig = Field(default_factory=TasksConfig)
    base_train: BaseTrainConfig = Field(default_factory=BaseTrainConfig)
    collect: CollectConfig = Field(default_factory=CollectConfig)
    distill: DistillConfig = Field(default_factory=DistillConfig)
    decode: DecodeConfig = Field(default_factory=DecodeConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    ablate: AblateConfig = Field(default_factory=AblateConfig)
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)

    model_config = SettingsConfigDict(
        env_prefix="TAD_",
        env_nested_delimiter="__",
        extra="forbid",
    )

    @model_validator(mode="after")
    def _lengths_agree(self):
        if self.decode.gen_len != self.tasks.gen_len:
            raise ValueError(
                f"decode.gen_len {self.decode.gen_len} differs from tasks.gen_len {self.tasks.gen_len}"
            )
        return self

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (
            init_settings,
            FileConfigSettingsSource(settings_cls),
            env_settings,
        )


_config: Optional[ExperimentConfig] = None


def get_config() -> ExperimentConfig:
    global _config

    if _config is None:
        _config = ExperimentConfig()

    return _config


def set_config(config: ExperimentConfig):
    global _config
    _config = config


def load_config(path: Optional[str] = None, **overrides: Any) -> ExperimentConfig:
    if path is not None and not os.path.exists(path):
        raise FileNotFoundError(f"config file {path} does not exist")
    set_config_file(path)
    try:
        return ExperimentConfig(**overrides)
    finally:
        set_config_file(None)


def _flatten(prefix: str, value: Any, out: List[Tuple[str, Any]]):
    if isinstance(value, dict):
        for key, sub in value.items():
            _flatten(f"{prefix}.{key}" if prefix else key, sub, out)
    else:
        out.append((prefix, value))


def dump_config(config: ExperimentConfig) -> str:
    """Render ``config`` as ``key = value`` lines readable by :func:`load_config`."""
    items: List[Tuple[str, Any]] = []
    _flatten("", config.model_dump(mode="json", by_alias=True), items)
    return "".join(f"{key} = {json.dumps(value)}\n" for key, value in items)


def write_config(config: ExperimentConfig, out_dir: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    dst = os.path.join(out_dir, RESOLVED_CONFIG_FILENAME)
    fd, tmp_filename = tempfile.mkstemp(
        dir=out_dir, prefix=".config.resolved.", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, mode="w", encoding="utf-8") as f:
            f.write(dump_config(config))
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp_filename, dst)
    finally:
        if os.path.exists(tmp_filename):
            os.remove(tmp_filename)
    _logger.debug("Resolved config written to %s", dst)
    return dst

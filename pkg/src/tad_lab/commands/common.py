import json
import logging
import os
from typing import Dict, List, Optional

from tad_lab.config import ExperimentConfig, write_config
from tad_lab.models import PromptAnswerPair, default_vocabulary
from tad_lab.tasks import generate_corpus, load_corpus, save_corpus
from tad_lab.utils import get_version, stream

from .exceptions import MissingArtifact

__all__ = ["Artifacts", "require", "write_manifest", "write_json", "train_corpus", "eval_corpus"]

_logger = logging.getLogger(__name__)


class Artifacts(object):
    """Default artifact paths inside an output directory."""

    def __init__(self, out_dir: str) -> None:
        self.out_dir = out_dir

    def path(self, name: str) -> str:
        return os.path.join(self.out_dir, name)

    @property
    def corpus_train(self) -> str:
        return self.path("corpus_train.jsonl")

    @property
    def corpus_eval(self) -> str:
        return self.path("corpus_eval.jsonl")

    @property
    def base_checkpoint(self) -> str:
        return self.path("base.ckpt")

    @property
    def base_loss(self) -> str:
        return self.path("base_loss.csv")

    @property
    def trajectories(self) -> str:
        return self.path("trajectories.jsonl")

    @property
    def collect_report(self) -> str:
        return self.path("collect_report.json")

    @property
    def calibration(self) -> str:
        return self.path("calibration.json")

    @property
    def decay_curve(self) -> str:
        return self.path("decay_curve.csv")

    @property
    def distilled_checkpoint(self) -> str:
        return self.path("distilled.ckpt")

    @property
    def distill_loss(self) -> str:
        return self.path("distill_loss.csv")


def require(path: str, producer: str) -> str:
    if not os.path.exists(path):
        raise MissingArtifact(path, producer)
    return path


def write_json(data, path: str):
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, mode="w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


def write_manifest(config: ExperimentConfig, command: str, outputs: Dict[str, str]) -> str:
    """Sidecar naming the command, version, resolved config and outputs.

    Carries no timestamps, so re-running a command rewrites it unchanged.
    """
    write_config(config, config.out_dir)
    manifest = {
        "command": command,
        "version": get_version(),
        "config": config.model_dump(mode="json", by_alias=True),
        "outputs": {name: os.path.relpath(path, config.out_dir) for name, path in outputs.items()},
    }
    path = os.path.join(config.out_dir, f"{command}.manifest.json")
    write_json(manifest, path)
    for name, out in outputs.items():
        _logger.info("%s: %s", name, out)
    return path


def _corpus(config: ExperimentConfig, path: str, stream_name: str, n: int) -> List[PromptAnswerPair]:
    if os.path.exists(path):
        return load_corpus(path)
    pairs = generate_corpus(config.tasks, n, stream(config.seed, stream_name), default_vocabulary())
    save_corpus(pairs, path)
    return pairs


def train_corpus(config: ExperimentConfig, path: Optional[str] = None) -> List[PromptAnswerPair]:
    path = path or Artifacts(config.out_dir).corpus_train
    return _corpus(config, path, "corpus-train", config.tasks.train_size)


def eval_corpus(config: ExperimentConfig, path: Optional[str] = None) -> List[PromptAnswerPair]:
    path = path or Artifacts(config.out_dir).corpus_eval
    return _corpus(config, path, "corpus-eval", config.tasks.eval_size)

import csv
import logging
from typing import Optional

from tad_lab.config import ExperimentConfig
from tad_lab.denoiser import save_params, train_base
from tad_lab.models import default_vocabulary
from tad_lab.utils import stream

from .common import Artifacts, train_corpus, write_manifest

__all__ = ["cmd_train_base"]

_logger = logging.getLogger(__name__)


def cmd_train_base(config: ExperimentConfig, checkpoint: Optional[str] = None) -> str:
    art = Artifacts(config.out_dir)
    checkpoint = checkpoint or art.base_checkpoint
    corpus = train_corpus(config)
    params, losses = train_base(
        config.base_train,
        config.model,
        corpus,
        config.tasks.gen_len,
        default_vocabulary(),
        stream(config.seed, "base-train"),
    )
    save_params(checkpoint, params)
    with open(art.base_loss, mode="w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["epoch", "loss"])
        for epoch, loss in enumerate(losses, start=1):
            writer.writerow([epoch, repr(loss)])
    write_manifest(
        config,
        "train-base",
        {"checkpoint": checkpoint, "loss": art.base_loss, "corpus": art.corpus_train},
    )
    return checkpoint

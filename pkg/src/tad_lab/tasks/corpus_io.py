import json
import logging
import os
from typing import List, Sequence

from pydantic import ValidationError

from tad_lab.models import PromptAnswerPair

from .exceptions import CorpusParseError

__all__ = ["save_corpus", "load_corpus"]

_logger = logging.getLogger(__name__)


def save_corpus(pairs: Sequence[PromptAnswerPair], path: str):
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, mode="w", encoding="utf-8") as f:
        for pair in pairs:
            f.write(json.dumps(pair.model_dump(mode="json"), sort_keys=True))
            f.write("\n")
    _logger.info("Saved %d pairs to %s", len(pairs), path)


def load_corpus(path: str) -> List[PromptAnswerPair]:
    if not os.path.exists(path):
        raise FileNotFoundError(f"corpus file {path} does not exist")
    pairs = []
    with open(path, mode="r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if len(line.strip()) == 0:
                continue
            try:
                pairs.append(PromptAnswerPair.model_validate_json(line))
            except ValidationError as e:
                raise CorpusParseError(path, lineno, str(e).splitlines()[0]) from None
    return pairs

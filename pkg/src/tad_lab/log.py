import logging
import os
from logging.handlers import RotatingFileHandler
from typing import Iterable, List

from tad_lab.config import LogConfig

__all__ = ["LOG_FORMAT", "DATE_FORMAT", "PACKAGE_LOGGERS", "init", "init_from_config"]

LOG_FORMAT = "{asctime} {levelname:<7} {name}:{lineno} {message}"
DATE_FORMAT = "%Y-%m-%dT%H:%M:%S"
PACKAGE_LOGGERS = ("tad_lab",)

_MAX_BYTES = 20 * 1024 * 1024
_BACKUP_COUNT = 3


def _handlers(log_file: str) -> List[logging.Handler]:
    formatter = logging.Formatter(LOG_FORMAT, DATE_FORMAT, style="{")
    handlers: List[logging.Handler] = [
        logging.StreamHandler(),
        RotatingFileHandler(
            log_file, encoding="utf-8", delay=True, maxBytes=_MAX_BYTES, backupCount=_BACKUP_COUNT
        ),
    ]
    for handler in handlers:
        handler.setFormatter(formatter)
    return handlers


def init(
    log_dir: str,
    log_level: str,
    log_filename: str = "tad-lab.log",
    loggers: Iterable[str] = PACKAGE_LOGGERS,
):
    """Route ``loggers`` to stderr and to a rotating file in ``log_dir``.

    A second call replaces the handlers installed by the first.
    """
    os.makedirs(log_dir, exist_ok=True)
    handlers = _handlers(os.path.join(log_dir, log_filename))
    for name in loggers:
        logger = logging.getLogger(name)
        for old in list(logger.handlers):
            logger.removeHandler(old)
            old.close()
        for handler in handlers:
            logger.addHandler(handler)
        logger.setLevel(log_level)


def init_from_config(config: LogConfig, out_dir: str):
    log_dir = config.dir if os.path.isabs(config.dir) else os.path.join(out_dir, config.dir)
    init(log_dir, config.level, config.filename)

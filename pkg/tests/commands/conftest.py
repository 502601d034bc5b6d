import logging

import pytest

from tad_lab.config import ExperimentConfig

from .configs import tiny_config


@pytest.fixture(autouse=True)
def reset_logger():
    yield
    logger = logging.getLogger("tad_lab")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


@pytest.fixture
def config(tmp_path) -> ExperimentConfig:
    return tiny_config(str(tmp_path / "run"))

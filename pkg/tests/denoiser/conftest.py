import numpy as np
import pytest

from tad_lab.denoiser import DenoiserParams, Hyperparameters


@pytest.fixture
def hparams():
    return Hyperparameters(vocab_size=45, n_layers=1, width=8, n_heads=2, max_len=12)


@pytest.fixture
def params(hparams):
    return DenoiserParams.init(hparams, np.random.default_rng(0))


@pytest.fixture
def trained_head(params):
    """Parameters whose output head is non-zero, so rows depend on the input."""
    rng = np.random.default_rng(1)
    return params.replace(
        {
            "head": rng.normal(0.0, 1.0, size=params.arrays["head"].shape),
            "head_bias": rng.normal(0.0, 0.1, size=params.arrays["head_bias"].shape),
        }
    )

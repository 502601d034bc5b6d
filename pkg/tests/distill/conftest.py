import numpy as np
import pytest

from tad_lab.denoiser import DenoiserParams, Hyperparameters


@pytest.fixture
def tiny_params():
    hp = Hyperparameters(vocab_size=45, n_layers=1, width=4, n_heads=2, max_len=16)
    rng = np.random.default_rng(7)
    params = DenoiserParams.init(hp, rng, init_scale=0.5)
    return params.replace({"head": rng.normal(0.0, 1.0, size=(4, 45))})


@pytest.fixture
def teacher_params(tiny_params):
    rng = np.random.default_rng(8)
    return tiny_params.replace({"head": rng.normal(0.0, 2.0, size=(4, 45))})

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tad_lab.corruption import InvalidMaskRate, corrupt, sample_level
from tad_lab.models import MASK_ID


def test_level_zero_masks_nothing():
    state = corrupt((19, 20, 21), 0.0, np.random.default_rng(0), prompt=(4,))
    assert state.response == (19, 20, 21)
    assert state.prompt == (4,)


def test_level_one_masks_everything():
    state = corrupt((19, 20, 21), 1.0, np.random.default_rng(0), prompt=(4, 19))
    assert state.response == (MASK_ID,) * 3
    assert state.prompt == (4, 19)


def test_masked_fraction_concentrates():
    rng = np.random.default_rng(11)
    state = corrupt([19] * 10000, 0.5, rng)
    fraction = len(state.masked_positions()) / 10000
    assert 0.49 <= fraction <= 0.51


def test_invalid_rate():
    with pytest.raises(InvalidMaskRate):
        corrupt((19,), 1.5, np.random.default_rng(0))
    with pytest.raises(InvalidMaskRate):
        corrupt((19,), -0.1, np.random.default_rng(0))


def test_clean_sequence_must_not_hold_mask():
    with pytest.raises(ValueError):
        corrupt((19, MASK_ID), 0.5, np.random.default_rng(0))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(min_value=2, max_value=44), min_size=1, max_size=12),
    st.floats(min_value=0.0, max_value=1.0),
    st.integers(min_value=0, max_value=2**32 - 1),
)
def test_unmasked_positions_keep_their_token(x0, t, seed):
    state = corrupt(x0, t, np.random.default_rng(seed))
    for tok, clean in zip(state.response, x0):
        assert tok in (MASK_ID, clean)


def test_sample_level_is_clamped():
    rng = np.random.default_rng(0)
    levels = [sample_level(rng, 0.2) for _ in range(200)]
    assert min(levels) >= 0.2
    assert max(levels) <= 1.0


def test_mask_indicators_are_uncorrelated():
    rng = np.random.default_rng(23)
    draws = np.array(
        [[tok == MASK_ID for tok in corrupt((19, 20, 21, 22, 23, 24), 0.5, rng).response] for _ in range(40000)],
        dtype=np.float64,
    )
    corr = np.corrcoef(draws, rowvar=False)
    off_diagonal = corr[~np.eye(6, dtype=bool)]
    assert np.all(np.abs(off_diagonal) < 0.02)
    assert np.allclose(draws.mean(axis=0), 0.5, atol=0.02)

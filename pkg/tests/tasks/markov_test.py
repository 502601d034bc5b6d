import numpy as np
import pytest
from pydantic import ValidationError

from tad_lab.models import TableTooLarge
from tad_lab.tasks import MarkovSource, enumerate_joint


def test_iid_uniform():
    table = enumerate_joint(MarkovSource.iid([0.5, 0.5]), 2)
    np.testing.assert_allclose(table.probs, np.full((2, 2), 0.25))


def test_perfectly_correlated():
    table = enumerate_joint(MarkovSource.correlated_binary(), 2)
    np.testing.assert_allclose(table.probs, [[0.5, 0.0], [0.0, 0.5]])


def test_sticky_chain():
    source = MarkovSource(alphabet_size=2, initial=[0.5, 0.5], transition=[[0.9, 0.1], [0.1, 0.9]])
    table = enumerate_joint(source, 2)
    np.testing.assert_allclose(table.probs, [[0.45, 0.05], [0.05, 0.45]], atol=1e-15)
    np.testing.assert_allclose(MarkovSource.symmetric(0.9).transition, source.transition)


def test_marginals_match_propagation():
    source = MarkovSource(
        alphabet_size=3,
        initial=[0.2, 0.3, 0.5],
        transition=[[0.1, 0.6, 0.3], [0.4, 0.4, 0.2], [0.7, 0.2, 0.1]],
    )
    table = enumerate_joint(source, 5)
    assert float(table.probs.sum()) == pytest.approx(1.0, abs=1e-9)
    dist = np.array(source.initial)
    transition = np.array(source.transition)
    for k in range(5):
        np.testing.assert_allclose(table.marginal(k), dist, atol=1e-9)
        dist = dist @ transition


def test_table_too_large():
    with pytest.raises(TableTooLarge):
        enumerate_joint(MarkovSource.iid([0.25] * 4), 10)


def test_rows_must_be_distributions():
    with pytest.raises(ValidationError):
        MarkovSource(alphabet_size=2, initial=[0.5, 0.5], transition=[[0.9, 0.2], [0.1, 0.9]])
    with pytest.raises(ValidationError):
        MarkovSource(alphabet_size=2, initial=[1.0], transition=[[1.0, 0.0], [0.0, 1.0]])

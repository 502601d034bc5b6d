import math

import numpy as np
import pytest

from tad_lab.metrics import DistributionTable, GeometryMismatch, expected_cross_entropies, validate_theorem1
from tad_lab.tasks import MarkovSource, enumerate_joint


@pytest.mark.parametrize("seed", range(100))
def test_identity_holds_on_random_joints(seed):
    rng = np.random.default_rng(seed)
    teacher = DistributionTable.random_chain(3, 3, rng)
    student = [rng.dirichlet(np.ones(3)) for _ in range(3)]
    report = validate_theorem1(teacher, student)
    assert report.residual < 1e-10
    assert report.lhs >= 0.0


def test_independent_teacher_with_matching_student():
    marginals = [[0.2, 0.8], [0.6, 0.4], [0.5, 0.5]]
    report = validate_theorem1(DistributionTable.product(marginals), marginals)
    assert report.lhs == pytest.approx(0.0, abs=1e-12)
    assert report.rhs == pytest.approx(0.0, abs=1e-12)


def test_uniform_student():
    teacher = enumerate_joint(MarkovSource.symmetric(0.8, alphabet_size=3), 3)
    report = validate_theorem1(teacher, [np.full(3, 1 / 3)] * 3)
    assert report.lhs == pytest.approx(3 * math.log(3) - teacher.entropy(), abs=1e-12)
    assert report.residual < 1e-10


def test_cross_entropy_of_uniform_student_is_log_alphabet():
    teacher = DistributionTable.random_chain(4, 2, np.random.default_rng(0))
    ces = expected_cross_entropies(teacher, [np.full(4, 0.25)] * 2)
    np.testing.assert_allclose(ces, [math.log(4)] * 2, atol=1e-12)


def test_student_missing_support():
    teacher = enumerate_joint(MarkovSource.correlated_binary(), 2)
    report = validate_theorem1(teacher, [[1.0, 0.0], [0.5, 0.5]])
    assert math.isinf(report.lhs)
    assert math.isinf(report.rhs)
    assert report.residual == 0.0


def test_geometry():
    teacher = enumerate_joint(MarkovSource.correlated_binary(), 2)
    with pytest.raises(GeometryMismatch):
        validate_theorem1(teacher, [[0.5, 0.5]])

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tad_lab.metrics import (CurveParseError, EmptyCurve, ParallelismCurve, aup, aup_breakdown,
                             read_curve_csv, truncate_curve, weight, write_breakdown_csv,
                             write_curve_csv)


def test_single_point_is_accuracy_times_tpf():
    assert aup(ParallelismCurve.from_pairs([(1.0, 72.6)])) == 72.6
    assert aup(ParallelismCurve.from_pairs([(2.5, 40.0)])) == 100.0


def test_flat_curve():
    assert aup(ParallelismCurve.from_pairs([(1.0, 50.0), (3.0, 50.0)])) == pytest.approx(150.0, abs=1e-9)


def test_weight():
    assert weight(70.0, 72.6, 3.0) == pytest.approx(math.exp(-3.0 * (1.0 - 70.0 / 72.6)), abs=1e-12)
    assert weight(70.0, 72.6, 3.0) == pytest.approx(0.8981, abs=1e-4)
    assert weight(72.6, 72.6) == 1.0
    assert weight(0.0, 0.0) == 1.0


def test_weighted_trapezoid():
    curve = ParallelismCurve.from_pairs([(1.0, 80.0), (2.0, 78.0)])
    w = math.exp(-3.0 * (1.0 - 78.0 / 80.0))
    expected = 80.0 + (78.0 * w + 80.0) / 2.0
    assert aup(curve) == pytest.approx(expected, rel=1e-12)
    segments = aup_breakdown(curve)
    assert [s.index for s in segments] == [1, 2]
    assert segments[0].contribution == 80.0
    assert segments[1].weight == pytest.approx(w)


def test_truncation_at_first_large_drop():
    curve = ParallelismCurve.from_pairs([(1.0, 60.0), (2.0, 58.0), (3.0, 50.0), (4.0, 59.0)])
    kept = truncate_curve(curve)
    assert [p.tpf for p in kept] == [1.0, 2.0]
    assert aup(curve) == pytest.approx(aup(ParallelismCurve.from_pairs([(1.0, 60.0), (2.0, 58.0)])))


def test_exactly_five_points_down_is_kept():
    curve = ParallelismCurve.from_pairs([(1.0, 60.0), (2.0, 55.0)])
    assert len(truncate_curve(curve)) == 2


def test_empty_curve():
    with pytest.raises(EmptyCurve):
        aup(ParallelismCurve(points=[]))


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(min_value=0.0, max_value=100.0), min_size=1, max_size=8),
    st.floats(min_value=0.1, max_value=5.0),
)
def test_extending_a_curve_never_lowers_aup(accuracies, step):
    pairs = [(1.0 + i * step, acc) for i, acc in enumerate(accuracies)]
    longer = pairs + [(pairs[-1][0] + step, accuracies[-1])]
    assert aup(ParallelismCurve.from_pairs(longer)) >= aup(ParallelismCurve.from_pairs(pairs)) - 1e-9


def test_curve_csv(tmp_path):
    curve = ParallelismCurve.from_pairs([(1.0, 60.0), (2.25, 58.5)])
    path = str(tmp_path / "curve.csv")
    write_curve_csv(curve, path)
    assert read_curve_csv(path) == curve

    bad = tmp_path / "bad.csv"
    bad.write_text("tpf,accuracy\n1.0,60\n0.5,50\n", encoding="utf-8")
    with pytest.raises(CurveParseError) as exc:
        read_curve_csv(str(bad))
    assert exc.value.lineno == 3


def test_breakdown_csv(tmp_path):
    path = tmp_path / "aup.csv"
    write_breakdown_csv(aup_breakdown(ParallelismCurve.from_pairs([(1.0, 50.0), (3.0, 50.0)])), str(path))
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "index,tpf,accuracy,weight,contribution"
    assert len(lines) == 3


def test_best_accuracy_counts_points_past_the_truncation():
    curve = ParallelismCurve.from_pairs([(1.0, 60.0), (2.0, 56.0), (3.0, 50.0), (4.0, 70.0)])
    assert [p.tpf for p in truncate_curve(curve)] == [1.0, 2.0]

    def w(y):
        return math.exp(-3.0 * (1.0 - y / 70.0))

    expected = 60.0 + (56.0 * w(56.0) + 60.0 * w(60.0)) / 2.0
    assert aup(curve) == pytest.approx(expected, rel=1e-12)
    assert aup_breakdown(curve)[0].weight == pytest.approx(w(60.0))

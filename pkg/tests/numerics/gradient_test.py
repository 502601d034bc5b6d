import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tad_lab.numerics import backward, numerical_gradient, record_forward, relative_error

TOLERANCE = 1e-4


def _check(closure, inputs):
    out, tape = record_forward(closure, inputs)
    analytic = backward(tape, out)
    numeric = numerical_gradient(closure, inputs, h=1e-5)
    for name in inputs:
        assert relative_error(analytic[name], numeric[name]) < TOLERANCE, name


def _weights(rng, n, m):
    # fixed random projection so every primitive reduces to a non-trivial scalar
    return rng.uniform(-1.0, 1.0, size=(n, m))


UNARY = {
    "exp": lambda t, a: t.exp(a),
    "gelu": lambda t, a: t.gelu(a),
    "softmax_row": lambda t, a: t.softmax_row(a),
    "log_softmax_row": lambda t, a: t.log_softmax_row(a),
    "layer_norm_row": lambda t, a: t.layer_norm_row(a),
    "transpose": lambda t, a: t.transpose(a),
    "scale": lambda t, a: t.scale(a, -1.5),
    "slice_cols": lambda t, a: t.slice_cols(a, 1, 3),
}


@pytest.mark.parametrize("op", sorted(UNARY))
@given(seed=st.integers(0, 2**31 - 1))
@settings(max_examples=10, deadline=None)
def test_unary_primitive_gradients(op, seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-2.0, 2.0, size=(3, 4))
    fn = UNARY[op]
    shape = record_forward(lambda t, x: fn(t, x["a"]), {"a": a})[0].shape
    w = _weights(rng, *shape)

    def closure(t, x):
        y = fn(t, x["a"])
        return t.sum(t.mul(y, t.constant(w)))

    _check(closure, {"a": a})


@given(seed=st.integers(0, 2**31 - 1))
@settings(max_examples=10, deadline=None)
def test_log_gradient(seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(0.5, 2.0, size=(3, 4))
    w = _weights(rng, 3, 4)
    _check(lambda t, x: t.sum(t.mul(t.log(x["a"]), t.constant(w))), {"a": a})


@given(seed=st.integers(0, 2**31 - 1))
@settings(max_examples=10, deadline=None)
def test_binary_primitive_gradients(seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-2.0, 2.0, size=(3, 4))
    b = rng.uniform(-2.0, 2.0, size=(3, 4))
    c = rng.uniform(-2.0, 2.0, size=(4, 2))
    v = rng.uniform(-2.0, 2.0, size=4)
    w = _weights(rng, 3, 4)

    _check(lambda t, x: t.sum(t.mul(t.add(x["a"], x["b"]), t.constant(w))), {"a": a, "b": b})
    _check(lambda t, x: t.sum(t.mul(t.mul(x["a"], x["b"]), t.constant(w))), {"a": a, "b": b})
    _check(lambda t, x: t.mean(t.gelu(t.matmul(x["a"], x["c"]))), {"a": a, "c": c})
    _check(lambda t, x: t.sum(t.mul(t.add_row(x["a"], x["v"]), t.constant(w))), {"a": a, "v": v})
    _check(lambda t, x: t.sum(t.mul(t.mul_row(x["a"], x["v"]), t.constant(w))), {"a": a, "v": v})
    _check(
        lambda t, x: t.sum(t.mul(t.concat_cols(x["a"], x["b"]), t.constant(np.hstack([w, -w])))),
        {"a": a, "b": b},
    )


@given(seed=st.integers(0, 2**31 - 1))
@settings(max_examples=10, deadline=None)
def test_gather_gradients(seed):
    rng = np.random.default_rng(seed)
    table = rng.uniform(-2.0, 2.0, size=(5, 3))
    index = [0, 2, 2, 4]
    w = _weights(rng, 4, 3)
    _check(lambda t, x: t.sum(t.mul(t.gather_rows(x["e"], index), t.constant(w))), {"e": table})
    _check(lambda t, x: t.sum(t.gather(x["e"], [0, 1, 1], [2, 0, 0])), {"e": table})
    _check(lambda t, x: t.mean(t.reshape(x["e"], (15,))), {"e": table})


def test_softmax_cross_entropy_gradient_is_probabilities_minus_one_hot():
    rng = np.random.default_rng(0)
    logits = rng.uniform(-2.0, 2.0, size=(1, 6))
    target = 3

    def closure(t, x):
        return t.scale(t.sum(t.gather(t.log_softmax_row(x["z"]), [0], [target])), -1.0)

    out, tape = record_forward(closure, {"z": logits})
    grad = backward(tape, out)["z"]
    p = np.exp(logits - logits.max())
    p /= p.sum()
    expected = p.copy()
    expected[0, target] -= 1.0
    np.testing.assert_allclose(grad, expected, atol=1e-12)
    numeric = numerical_gradient(closure, {"z": logits})["z"]
    assert relative_error(grad, numeric) < TOLERANCE


def test_two_layer_network_matches_finite_differences():
    rng = np.random.default_rng(11)
    inputs = {
        "x": rng.uniform(-2.0, 2.0, size=(4, 3)),
        "w1": rng.uniform(-1.0, 1.0, size=(3, 5)),
        "b1": rng.uniform(-1.0, 1.0, size=5),
        "w2": rng.uniform(-1.0, 1.0, size=(5, 4)),
    }
    targets = [0, 3, 1, 2]

    def closure(t, x):
        h = t.gelu(t.add_row(t.matmul(x["x"], x["w1"]), x["b1"]))
        h = t.mul_row(t.layer_norm_row(h), t.constant(np.ones(5)))
        logp = t.log_softmax_row(t.matmul(h, x["w2"]))
        return t.scale(t.mean(t.gather(logp, range(4), targets)), -1.0)

    _check(closure, inputs)

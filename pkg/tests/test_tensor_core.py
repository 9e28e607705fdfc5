import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpcube.errors import ShapeError
from fpcube.tensor_core import (
    axpy,
    contract_mode3,
    flat_index,
    inner,
    norm2,
    scale,
    unflat_index,
)


def loop_contract(m, x):
    I, J, K = x.shape
    out = np.zeros((I, J, m.shape[0]))
    for i, j, l in itertools.product(range(I), range(J), range(m.shape[0])):
        out[i, j, l] = sum(m[l, k] * x[i, j, k] for k in range(K))
    return out


def test_contract_identity(rng):
    x = rng.standard_normal((3, 4, 5))
    np.testing.assert_array_equal(contract_mode3(np.eye(5), x), x)


def test_contract_summation():
    out = contract_mode3(np.ones((1, 4)), np.ones((2, 3, 4)))
    assert out.shape == (2, 3, 1)
    np.testing.assert_array_equal(out, 4.0)


def test_contract_matches_loop_oracle(rng):
    m = rng.standard_normal((3, 2))
    x = rng.standard_normal((2, 2, 2))
    np.testing.assert_allclose(contract_mode3(m, x), loop_contract(m, x), rtol=0, atol=1e-12)


def test_contract_shape_error_names_both_shapes():
    with pytest.raises(ShapeError, match=r"\(3, 2\).*\(2, 2, 5\)"):
        contract_mode3(np.ones((3, 2)), np.ones((2, 2, 5)))


def test_contract_linear(rng):
    m = rng.standard_normal((6, 4))
    x, y = rng.standard_normal((2, 3, 3, 4))
    a, b = 1.7, -0.3
    lhs = contract_mode3(m, a * x + b * y)
    rhs = a * contract_mode3(m, x) + b * contract_mode3(m, y)
    assert np.linalg.norm(lhs - rhs) <= 1e-12 * np.linalg.norm(rhs)


def test_contract_adjoint_identity(rng):
    for _ in range(10):
        K, L = rng.integers(1, 12, size=2)
        m = rng.standard_normal((L, K))
        x = rng.standard_normal((3, 4, K))
        y = rng.standard_normal((3, 4, L))
        lhs = inner(contract_mode3(m, x), y)
        rhs = inner(x, contract_mode3(m.T, y))
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs) + 1e-12


def test_inner_examples(rng):
    ones = np.ones((2, 2, 2))
    assert inner(ones, ones) == 8.0
    checker = np.indices((2, 2, 2)).sum(axis=0) % 2 * 2.0 - 1.0
    assert inner(checker, ones) == 0.0
    a, b = rng.standard_normal((2, 3, 4, 5))
    flat = sum(p * q for p, q in zip(a.ravel(), b.ravel()))
    assert abs(inner(a, b) - flat) <= 1e-12


def test_inner_field4(rng):
    a = rng.standard_normal((2, 3, 4, 2))
    assert inner(a, a) == pytest.approx(norm2(a) ** 2, rel=1e-14)


def test_inner_shape_mismatch():
    with pytest.raises(ShapeError):
        inner(np.ones((2, 2, 2)), np.ones((2, 2, 3)))


def test_blas1():
    assert norm2(np.zeros((2, 2, 2))) == 0.0
    x = np.arange(8.0).reshape(2, 2, 2)
    np.testing.assert_array_equal(scale(1.0, x), x)
    assert norm2(np.array([[[3.0], [4.0]], [[0.0], [0.0]]])) == 5.0
    np.testing.assert_array_equal(axpy(2.0, x, x), 3 * x)
    with pytest.raises(ShapeError):
        axpy(1.0, x, np.ones((2, 2, 3)))


@settings(max_examples=50, deadline=None)
@given(dims=st.tuples(*[st.integers(1, 8)] * 3), data=st.data())
def test_layout_roundtrip(dims, data):
    idx = tuple(data.draw(st.integers(0, d - 1)) for d in dims)
    off = flat_index(idx, dims)
    assert unflat_index(off, dims) == idx
    # third mode fastest
    arr = np.arange(np.prod(dims)).reshape(dims)
    assert arr[idx] == off


def test_layout_bijective():
    dims = (3, 4, 5)
    offsets = {flat_index(idx, dims) for idx in itertools.product(*map(range, dims))}
    assert offsets == set(range(60))

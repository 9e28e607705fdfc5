import numpy as np
import pytest

from fpcube.errors import ParameterError, ShapeError
from fpcube.forward_model import (
    MatrixOperator,
    TransmittanceSpec,
    add_noise,
    airy_transmittance,
    build_transmittance,
    matrix_norm,
    measured_snr_db,
    operator_norm,
)

from conftest import adjoint_gap


def test_spec_grids():
    spec = TransmittanceSpec()
    assert spec.opd.size == 319
    assert spec.opd[0] == 0.0
    assert spec.opd[-1] == pytest.approx(7.95)
    assert np.all(np.diff(spec.opd) > 0)
    wn = spec.wavenumbers
    assert wn.size == 366 and wn[0] == 1.4 and wn[-1] == 2.5
    assert spec.wn_step == pytest.approx(1.1 / 365)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"reflectivity": 1.0},
        {"reflectivity": -0.1},
        {"opd_step": 0.0},
        {"opd_step": -1.0},
        {"wn_count": 1},
        {"wn_min": 2.5, "wn_max": 1.4},
        {"opd_count": 0},
    ],
)
def test_spec_rejects(kwargs):
    with pytest.raises(ParameterError):
        TransmittanceSpec(**kwargs)


def test_zero_opd_row_is_one():
    A = build_transmittance(TransmittanceSpec(opd_count=5, wn_count=7))
    np.testing.assert_allclose(A.a[0], 1.0, rtol=0, atol=1e-15)


def test_cosine_minimum_closed_form():
    # sigma * delta = 1/2 gives cos = -1
    a = airy_transmittance(0.255, np.array([2.0]), np.array([0.25]))
    assert a[0, 0] == pytest.approx(0.745**2 / 1.255**2, abs=1e-15)
    assert a[0, 0] == pytest.approx(0.352391, abs=1e-6)


def test_no_interference_without_reflectivity():
    A = build_transmittance(TransmittanceSpec(reflectivity=0.0, opd_count=20, wn_count=9))
    np.testing.assert_array_equal(A.a, 1.0)


def test_airy_bounds():
    for r in (0.0, 0.255, 0.6, 0.9):
        A = build_transmittance(TransmittanceSpec(reflectivity=r))
        lower = (1 - r) ** 2 / (1 + r) ** 2
        assert A.a.min() >= lower - 1e-12
        assert A.a.max() <= 1 + 1e-12


def test_apply_zero_and_hand_sum():
    A = MatrixOperator(np.array([[1.0, 2.0], [0.5, -1.0], [3.0, 0.0]]))
    np.testing.assert_array_equal(A.apply(np.zeros((1, 1, 2))), 0.0)
    out = A.apply(np.array([[[2.0, 5.0]]]))
    np.testing.assert_allclose(out[0, 0], [1 * 2 + 2 * 5, 0.5 * 2 - 5, 6.0])


def test_normal_operator_matches_dense(rng):
    A = build_transmittance(TransmittanceSpec(opd_count=4, wn_count=3, opd_step=0.3))
    x = rng.standard_normal((2, 2, 3))
    gram = A.a.T @ A.a
    expected = np.einsum("lk,ijk->ijl", gram, x)
    np.testing.assert_allclose(A.adjoint(A.apply(x)), expected, rtol=0, atol=1e-12)


def test_adjoint_identity_and_trivia(rng):
    for _ in range(20):
        K = int(rng.integers(2, 17))
        L = int(rng.integers(1, 13))
        I, J = rng.integers(1, 9, size=2)
        A = build_transmittance(TransmittanceSpec(opd_count=L, wn_count=K, opd_step=0.11))
        x = rng.standard_normal((I, J, K))
        y = rng.standard_normal((I, J, L))
        assert adjoint_gap(A.apply, A.adjoint, x, y) < 1e-10
    A = MatrixOperator(np.eye(4))
    y = rng.standard_normal((2, 3, 4))
    np.testing.assert_array_equal(A.adjoint(y), y)
    np.testing.assert_array_equal(A.adjoint(np.zeros((2, 3, 4))), 0.0)


def test_apply_shape_error():
    A = build_transmittance(TransmittanceSpec(opd_count=4, wn_count=3))
    with pytest.raises(ShapeError):
        A.apply(np.ones((2, 2, 4)))
    with pytest.raises(ShapeError):
        A.adjoint(np.ones((2, 2, 3)))


def test_operator_norm_examples(rng):
    assert matrix_norm(np.eye(5)) == pytest.approx(1.0, rel=1e-12)
    assert matrix_norm(np.diag([3.0, 1.0])) == pytest.approx(3.0, rel=1e-9)
    m = rng.standard_normal((5, 4))
    assert matrix_norm(m) == pytest.approx(np.linalg.svd(m, compute_uv=False)[0], rel=1e-6)
    assert matrix_norm(np.zeros((3, 3))) == 0.0


def test_operator_norm_generic_callables(rng):
    m = rng.standard_normal((6, 4))
    norm = operator_norm(lambda x: m @ x, lambda y: m.T @ y, (4,))
    assert norm == pytest.approx(np.linalg.norm(m, 2), rel=1e-6)


def test_operator_norm_bounds_gain(rng):
    A = build_transmittance(TransmittanceSpec(opd_count=40, wn_count=30, opd_step=0.1))
    assert A.op_norm == pytest.approx(np.linalg.norm(A.a, 2), rel=1e-6)
    for _ in range(100):
        x = rng.standard_normal((2, 2, 30))
        x /= np.linalg.norm(x)
        assert np.linalg.norm(A.apply(x)) <= A.op_norm * (1 + 1e-9)


def test_noise_vanishing():
    y = np.linspace(0, 1, 2 * 3 * 4).reshape(2, 3, 4)
    out = add_noise(y, 300.0, seed=3)
    assert np.linalg.norm(out - y) <= 1e-10 * np.linalg.norm(y)


def test_noise_deterministic():
    y = np.random.default_rng(0).random((4, 4, 8))
    np.testing.assert_array_equal(add_noise(y, 10.0, 7), add_noise(y, 10.0, 7))
    assert not np.array_equal(add_noise(y, 10.0, 7), add_noise(y, 10.0, 8))


def test_noise_calibration_full_size():
    spec = TransmittanceSpec()
    rng = np.random.default_rng(5)
    y = rng.random((96, 96, 366)) @ build_transmittance(spec).a.T
    out = add_noise(y, 10.0, seed=42)
    assert abs(measured_snr_db(y, out) - 10.0) < 0.1

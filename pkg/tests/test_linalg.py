import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from sqfun_lab.errors import DimensionMismatchError, ParameterRangeError
from sqfun_lab.linalg.factor import contraction_to_isometries, matrix_factor
from sqfun_lab.linalg.models import NormSpec, as_cmatrix
from sqfun_lab.linalg.norms import (
    conjugate_exponent,
    dual_norm_spec,
    hilbert_space,
    lp_space,
    op_norm,
    vector_norm,
    weighted_lp_space,
)


def complex_matrix(seed: int, rows: int, cols: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), rows=st.integers(1, 6), cols=st.integers(1, 6))
def test_svd_reconstructs_with_descending_values(seed, rows, cols):
    A = complex_matrix(seed, rows, cols)
    svd = matrix_factor(A, "svd")

    assert_allclose(svd.reconstruct(), A, atol=1e-12)
    assert np.all(np.diff(svd.tau) <= 0)
    assert_allclose(svd.U.conj().T @ svd.U, np.eye(rows), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 6))
def test_polar_factors(seed, d):
    A = complex_matrix(seed, d, d)
    polar = matrix_factor(A, "polar")

    assert_allclose(polar.reconstruct(), A, atol=1e-10)
    assert_allclose(polar.P, polar.P.conj().T)
    assert np.all(np.linalg.eigvalsh(polar.P) >= -1e-12)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 6), scale=st.floats(0.05, 1.0))
def test_contraction_is_a_convex_combination_of_unitaries(seed, d, scale):
    A = complex_matrix(seed, d, d)
    A *= scale / np.linalg.norm(A, 2)
    decomposition = contraction_to_isometries(A)

    assert_allclose(decomposition.reconstruct(), A, atol=1e-10)
    assert decomposition.unitarity_defect() <= 1e-10
    assert decomposition.weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(decomposition.weights >= 0)
    assert len(decomposition.terms) <= d + 1
    assert decomposition.scale == pytest.approx(scale)


def test_zero_contraction():
    decomposition = contraction_to_isometries(np.zeros((3, 3)))

    assert decomposition.scale == 0.0
    assert_allclose(decomposition.reconstruct(), np.zeros((3, 3)))


def test_isometries_need_a_square_matrix():
    with pytest.raises(DimensionMismatchError):
        contraction_to_isometries(np.ones((2, 3)))


def test_rejects_empty_and_nonfinite_matrices():
    with pytest.raises(DimensionMismatchError):
        as_cmatrix(np.zeros((0, 2)))
    with pytest.raises(ValueError):
        as_cmatrix([[1.0, np.nan]])


def test_norm_spec_validation():
    assert hilbert_space().cotype_constant == 1.0
    assert lp_space(2.0).is_hilbert
    with pytest.raises(ValueError):
        NormSpec(kind="weighted-lp", p=2.0)
    with pytest.raises(ValueError):
        NormSpec(kind="lp", p=0.5)
    with pytest.raises(DimensionMismatchError):
        weighted_lp_space(2.0, [1.0, 2.0]).check_dim(3)


@pytest.mark.parametrize("p, expected", [(1.0, math.inf), (2.0, 2.0), (4.0, 4 / 3), (math.inf, 1.0)])
def test_conjugate_exponent(p, expected):
    assert conjugate_exponent(p) == pytest.approx(expected)


def test_weighted_dual_pairs_to_the_norm():
    spec = weighted_lp_space(3.0, [1.0, 2.0, 0.5])
    dual = dual_norm_spec(spec)
    x = np.array([1.0, -2.0, 0.5j])
    # Hoelder duality is attained at x' = w |x|^{p-2} x / ||x||^{p-1}.
    w = np.asarray(spec.weights)
    norm = vector_norm(x, spec)
    x_dual = w * np.abs(x) ** (spec.p - 2) * x / norm ** (spec.p - 1)

    assert vector_norm(x_dual, dual) == pytest.approx(1.0)
    assert abs(np.vdot(x_dual, x)) == pytest.approx(norm)


def test_weighted_l1_has_no_dual():
    with pytest.raises(ParameterRangeError):
        dual_norm_spec(weighted_lp_space(1.0, [1.0, 2.0]))


def test_op_norm_closed_forms():
    A = complex_matrix(7, 4, 3)

    two = op_norm(A, hilbert_space(), hilbert_space())
    assert two.certified
    assert two.value == pytest.approx(np.linalg.norm(A, 2))

    columns = op_norm(A, lp_space(1.0), lp_space(3.0))
    assert columns.certified
    assert columns.value == pytest.approx(np.max(np.linalg.norm(A, 3, axis=0)))

    rows = op_norm(A, lp_space(4.0), lp_space(math.inf))
    assert rows.certified
    assert rows.value == pytest.approx(np.max(np.linalg.norm(A, 4 / 3, axis=1)))


def test_op_norm_estimate_is_a_lower_bound():
    A = complex_matrix(11, 3, 3)
    estimate = op_norm(A, lp_space(3.0), lp_space(4.0))

    assert not estimate.certified
    rng = np.random.default_rng(3)
    probes = rng.standard_normal((3, 2000)) + 1j * rng.standard_normal((3, 2000))
    ratios = np.linalg.norm(A @ probes, 4, axis=0) / np.linalg.norm(probes, 3, axis=0)
    assert estimate.value >= ratios.max() * 0.99
    assert estimate.value <= np.linalg.norm(A, 2) * 3 ** (1 / 2 - 1 / 3) * (1 + 1e-9)

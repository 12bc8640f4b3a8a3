import csv
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError
from scipy.integrate import quad

from sqfun_lab.calculus.functions import constant, gaussian, sech
from sqfun_lab.errors import (
    ContourMarginError,
    DimensionMismatchError,
    NotElementaryError,
    ParameterRangeError,
)
from sqfun_lab.export import write_coefficient_csv, write_frame_csv
from sqfun_lab.frames.bounds import frame_bounds, l1_frame_bound
from sqfun_lab.frames.context import with_operator_hs, with_set, with_shift_range
from sqfun_lab.frames.gabor import GaborParams, gabor_frame_build, w12_norm, w12_ratios
from sqfun_lab.frames.models import FrameSpec, frame_from_vectors, push_forward
from sqfun_lab.grids.make import make_grid
from sqfun_lab.sqfun.build import sqfun_matrix, sqfun_norm
from sqfun_lab.sqfun.kernels import shift_kernel
from sqfun_lab.suites import fixtures


@pytest.fixture
def rng():
    return np.random.default_rng(31)


def test_canonical_dual_frame(rng):
    frame = frame_from_vectors(fixtures.complex_normal(rng, 3, 5))

    assert (frame.dim, frame.size) == (3, 5)
    assert frame.defect < 1e-10
    h = fixtures.complex_normal(rng, 3)
    assert_allclose(frame.synthesize(frame.analyze(h)), h, atol=1e-10)


def test_frame_bounds_are_the_extreme_singular_values(rng):
    frame = frame_from_vectors(fixtures.complex_normal(rng, 4, 7))
    bounds = frame_bounds(frame, trials=128, seed=5)
    singular = np.linalg.svd(frame.R, compute_uv=False)

    assert bounds.lower == pytest.approx(singular.min())
    assert bounds.upper == pytest.approx(singular.max())
    assert bounds.sampled_lower == pytest.approx(bounds.lower, rel=1e-10)
    assert bounds.sampled_upper == pytest.approx(bounds.upper, rel=1e-10)
    assert not bounds.degenerate


def test_too_few_vectors_are_degenerate(rng):
    bounds = frame_bounds(frame_from_vectors(fixtures.complex_normal(rng, 3, 2)))

    assert bounds.degenerate
    assert bounds.lower == 0.0
    assert bounds.sampled_lower < 1e-10


def test_push_forward_keeps_the_reconstruction(rng):
    frame = frame_from_vectors(fixtures.complex_normal(rng, 3, 6))
    S = np.eye(3) + 0.3 * fixtures.complex_normal(rng, 3, 3)
    pushed = push_forward(frame, S)
    h = fixtures.complex_normal(rng, 3)

    assert pushed.defect < 1e-10
    assert_allclose(pushed.analyze(S @ h), frame.analyze(h), atol=1e-10)
    with pytest.raises(DimensionMismatchError):
        push_forward(frame, np.eye(2))


def test_frame_shapes_are_checked(rng):
    F = fixtures.complex_normal(rng, 3, 4)

    with pytest.raises(DimensionMismatchError):
        FrameSpec(F, F.conj().T, np.linalg.pinv(F.conj().T), ("a", "b"))
    with pytest.raises(DimensionMismatchError):
        FrameSpec(F, F, F, ("a", "b", "c", "d"))
    with pytest.raises(DimensionMismatchError):
        frame_from_vectors(F, grid=make_grid("lebesgue-line", half_width=1.0, count=9))


def test_grid_frame_lives_in_grid_coordinates():
    grid = make_grid("lebesgue-line", half_width=1.0, count=9)
    frame = frame_from_vectors(np.ones((9, 1)), grid=grid)

    assert frame.grid is grid
    assert_allclose(frame.vectors[:, 0], grid.sqrt_weights)


def test_hilbert_schmidt_bound_is_attained(rng):
    T = fixtures.complex_normal(rng, 4, 4)
    bound = l1_frame_bound(**with_operator_hs(T))

    assert bound.value == pytest.approx(np.linalg.norm(T))
    assert bound.frame is not None and bound.maximizer is not None
    assert np.linalg.norm(bound.maximizer) == pytest.approx(1.0)
    assert np.sum(np.abs(bound.frame.analyze(T @ bound.maximizer))) == pytest.approx(bound.value)

    probes = fixtures.complex_normal(rng, 4, 2000)
    probes /= np.linalg.norm(probes, axis=0)
    assert np.sum(np.abs(bound.frame.R @ (T @ probes)), axis=0).max() <= bound.value * (1 + 1e-12)


def test_set_bound_in_an_orthonormal_basis():
    frame = frame_from_vectors(np.eye(3))
    samples = [np.array([1.0, 0.0, 0.0]), np.ones(3) / math.sqrt(3)]
    bound = l1_frame_bound(**with_set(samples, frame))

    assert bound.value == pytest.approx(math.sqrt(3))
    assert_allclose(bound.profile, [1.0, math.sqrt(3)])
    with pytest.raises(ParameterRangeError):
        l1_frame_bound(**with_set([], frame))


def test_shift_range_bound_controls_the_square_function(rng):
    grid = make_grid("lebesgue-line", half_width=40.0, count=3201)
    psi = sech(2.0)
    A = fixtures.self_adjoint(rng, [-1.0, 0.0, 1.0])
    x = fixtures.complex_normal(rng, 3)
    bound = l1_frame_bound(**with_shift_range(psi, 0.5, 1.5, grid, np.linalg.eigvalsh(A)))
    value = sqfun_norm(sqfun_matrix(shift_kernel(psi, grid), A, x)).value

    assert bound.profile.shape == (3,)
    assert value <= 2 * bound.value * np.linalg.norm(x)


def test_shift_range_inputs():
    grid = make_grid("lebesgue-line", half_width=10.0, count=201)

    with pytest.raises(NotElementaryError):
        l1_frame_bound(**with_shift_range(constant(1.0), 0.5, 1.0, grid, [0.0]))
    with pytest.raises(ParameterRangeError):
        l1_frame_bound(**with_shift_range(sech(2.0), 1.0, 0.5, grid, [0.0]))
    with pytest.raises(ContourMarginError):
        l1_frame_bound(**with_shift_range(sech(1.0), 0.5, 1.5, grid, [0.0]))
    with pytest.raises(ParameterRangeError):
        l1_frame_bound(**with_shift_range(sech(2.0), 0.5, 1.5, grid, [0.8j]))


def test_unknown_l1_target():
    with pytest.raises(ValueError):
        l1_frame_bound(l1_target={"l1_variant": "lattice"})


def test_gabor_params_validation():
    with pytest.raises(ValidationError):
        GaborParams(translations=2)
    with pytest.raises(ValidationError):
        GaborParams(frequencies=40, samples=64)


def test_gabor_windows_form_a_partition_of_unity():
    frame = gabor_frame_build(GaborParams(translations=12, frequencies=32, samples=1024))

    assert frame.partition_residual() < 1e-12
    assert len(frame.labels) == 25 * 65


def test_gabor_coverage_is_checked():
    frame = gabor_frame_build(GaborParams(translations=4))

    with pytest.raises(ParameterRangeError):
        frame.coefficients(gaussian(0.01))
    with pytest.raises(ValueError):
        frame.coefficients(gaussian(), method="parts")


def test_gabor_coefficients_direct_and_by_parts_agree():
    frame = gabor_frame_build(GaborParams(translations=8, frequencies=16, samples=1024))
    g = gaussian()
    direct = frame.coefficients(g, "direct")
    by_parts = frame.coefficients(g, "ibp")

    assert direct.shape == (17, 33)
    assert_allclose(by_parts, direct, atol=1e-6)


def test_gabor_coefficients_match_the_sampled_frame():
    frame = gabor_frame_build(GaborParams(translations=8, frequencies=4, samples=256))
    spec = frame.as_frame_spec()
    g = gaussian()
    h = spec.grid.to_coordinates(g(spec.grid.nodes.astype(np.complex128)))

    assert spec.size == 17 * 9
    assert_allclose(spec.analyze(h), frame.coefficients(g).ravel(), atol=1e-6)


def test_gabor_coefficient_sums_converge():
    g = gaussian()
    coarse = gabor_frame_build(GaborParams(translations=12, frequencies=32, samples=1024)).coefficient_sum(g)
    fine = gabor_frame_build(GaborParams(translations=16, frequencies=64, samples=2048)).coefficient_sum(g)

    assert abs(fine - coarse) / fine < 0.01


def test_w12_norm_of_a_gaussian():
    grid = make_grid("lebesgue-line", half_width=12.0, count=2401)

    def second(s):
        return abs(4 * s**2 - 2) * math.exp(-(s**2))

    kink = 1 / math.sqrt(2)
    expected = math.sqrt(math.pi) + 2 + 2 * (quad(second, 0, kink)[0] + quad(second, kink, math.inf)[0])

    assert w12_norm(gaussian(), grid) == pytest.approx(expected, rel=1e-3)


def test_w12_ratios_are_bounded():
    frame = gabor_frame_build(GaborParams(translations=12, frequencies=32, samples=1024))
    grid = make_grid("lebesgue-line", half_width=12.0, count=2401)
    dictionary = [fixtures.gaussian_packet(1.0), fixtures.gaussian_packet(0.5, 1.0, 2.0)]
    ratios = w12_ratios(frame, dictionary, grid)

    assert ratios.shape == (2,)
    assert np.all((ratios > 0) & np.isfinite(ratios))


def test_frame_and_coefficient_csv(tmp_path):
    frame = frame_from_vectors(np.eye(2), labels=("a", "b"))
    with write_frame_csv(tmp_path / "frame.csv", frame).open(newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["label", "index", "re", "im"]
    assert rows[1:] == [
        ["a", "0", "1.0", "0.0"],
        ["a", "1", "0.0", "0.0"],
        ["b", "0", "0.0", "0.0"],
        ["b", "1", "1.0", "0.0"],
    ]

    gabor = gabor_frame_build(GaborParams(translations=8, frequencies=2, samples=64))
    with write_coefficient_csv(tmp_path / "coefficients.csv", gabor, gaussian()).open(newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["n", "k", "abs_coeff"]
    assert len(rows) == 1 + 17 * 5

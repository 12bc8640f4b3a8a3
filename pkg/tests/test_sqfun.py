import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from sqfun_lab.calculus.functions import constant, gaussian, sech
from sqfun_lab.errors import (
    DimensionMismatchError,
    DivergenceError,
    GridMismatchError,
    ParameterRangeError,
)
from sqfun_lab.grids.make import make_grid
from sqfun_lab.sqfun.build import calculus_matrix, spot_check_columns, sqfun_matrix, sqfun_norm
from sqfun_lab.sqfun.checks import (
    decomposition_condition,
    equivalence_check,
    integral_representation_check,
    pairing_identity_check,
)
from sqfun_lab.sqfun.kernels import (
    dilation_kernel,
    group_orbit_kernel,
    power_exp,
    resolvent_boundary_kernel,
    shift_kernel,
)
from sqfun_lab.sqfun.mcintosh import mcintosh_reconstruct, spectral_grid
from sqfun_lab.suites import fixtures


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def self_adjoint(rng):
    return fixtures.self_adjoint(rng, [-3.0, 0.5, 2.0]), fixtures.complex_normal(rng, 3)


def test_shift_gaussian_closed_form(self_adjoint):
    A, x = self_adjoint
    grid = make_grid("lebesgue-line", half_width=12.0, count=961)
    output = sqfun_matrix(shift_kernel(gaussian(), grid), A, x)

    assert output.matrix.shape == (3, 961)
    assert sqfun_norm(output).value == pytest.approx((math.pi / 2) ** 0.25 * np.linalg.norm(x), rel=1e-8)


def test_sampled_columns_match_one_by_one(self_adjoint):
    A, x = self_adjoint
    kernel = shift_kernel(gaussian(), make_grid("lebesgue-line", half_width=6.0, count=121))
    output = sqfun_matrix(kernel, A, x)

    assert spot_check_columns(output, kernel, A, x) < 1e-10


def test_dual_side_of_a_real_kernel_on_a_self_adjoint_operator(self_adjoint):
    A, x = self_adjoint
    kernel = shift_kernel(gaussian(), make_grid("lebesgue-line", half_width=12.0, count=961))
    primal = sqfun_matrix(kernel, A, x)
    dual = sqfun_matrix(kernel, A, x, side="dual")

    assert dual.side == "dual"
    assert sqfun_norm(dual).value == pytest.approx(sqfun_norm(primal).value, rel=1e-10)
    assert spot_check_columns(dual, kernel, A, x, indices=(100, 480)) < 1e-10


def test_group_orbit_closed_form(self_adjoint):
    A, x = self_adjoint
    grid = make_grid("lebesgue-line", half_width=30.0, count=2401)
    output = sqfun_matrix(group_orbit_kernel(1.0, grid), A, x)

    assert sqfun_norm(output).value == pytest.approx(math.sqrt(2.0) * np.linalg.norm(x), rel=1e-8)


def test_boundary_resolvent_closed_form(self_adjoint):
    A, x = self_adjoint
    grid = make_grid("boundary-strip", omega=1.0, half_width=1e7, count=2001, spacing="sinh")
    output = sqfun_matrix(resolvent_boundary_kernel(grid), A, x)

    assert sqfun_norm(output).value == pytest.approx(math.sqrt(2 * math.pi) * np.linalg.norm(x), rel=1e-6)


def test_sqfun_checks_dimensions(self_adjoint):
    A, _ = self_adjoint
    kernel = shift_kernel(gaussian(), make_grid("lebesgue-line", half_width=4.0, count=41))

    with pytest.raises(DimensionMismatchError):
        sqfun_matrix(kernel, A, np.ones(4))
    with pytest.raises(ValueError):
        sqfun_matrix(kernel, A, np.ones(3), side="both")


def test_kernels_check_their_grid():
    with pytest.raises(GridMismatchError):
        shift_kernel(gaussian(), make_grid("mult-haar", lower=0.1, upper=10.0, count=41))
    with pytest.raises(GridMismatchError):
        resolvent_boundary_kernel(make_grid("lebesgue-line", half_width=4.0, count=41))


def test_sector_kernels_need_a_positive_spectrum():
    grid = make_grid("mult-haar", lower=1e-3, upper=10.0, count=101)
    kernel = dilation_kernel(power_exp(0.5), grid)

    with pytest.raises(ParameterRangeError):
        calculus_matrix(kernel, np.diag([1.0, -2.0]))
    with pytest.raises(ValueError):
        dilation_kernel(gaussian(), grid)


def test_mcintosh_constant(rng):
    S = fixtures.positive_matrix(rng, 3)
    x = fixtures.complex_normal(rng, 3)
    result, c = mcintosh_reconstruct(power_exp(0.5), power_exp(0.5), S, x)

    assert c.real == pytest.approx(0.5, rel=1e-8)
    assert_allclose(result, c * x, atol=1e-6)


@pytest.mark.parametrize("spectrum", [[0.1, 1.0], [1.0, 1e4], [1.0, 3.0]])
def test_mcintosh_spread_spectrum(spectrum):
    x = np.array([1.0, 1.0 - 2.0j])
    result, c = mcintosh_reconstruct(power_exp(0.5), power_exp(0.5), np.diag(spectrum), x)

    assert c.real == pytest.approx(0.5, rel=1e-8)
    assert_allclose(result, x / 2, atol=1e-6)


@settings(max_examples=25, deadline=None)
@given(log_spectrum=st.lists(st.floats(-2.0, 2.0), min_size=1, max_size=3))
def test_mcintosh_positive_diagonal(log_spectrum):
    spectrum = 10.0 ** np.array(log_spectrum)
    x = np.arange(1, spectrum.size + 1) * (1 + 1j)
    result, c = mcintosh_reconstruct(power_exp(0.5), power_exp(0.5), np.diag(spectrum), x)

    assert_allclose(result, c * x, atol=1e-6 * np.linalg.norm(x))


def test_spectral_grid_covers_the_spectrum():
    grid = spectral_grid([0.1, 1e4])

    assert grid.nodes[0] == pytest.approx(1e-13)
    assert grid.nodes[-1] == pytest.approx(500.0)
    with pytest.raises(ParameterRangeError):
        spectral_grid([0.0, 1.0])


def test_mcintosh_short_grid_diverges():
    grid = make_grid("mult-haar", lower=1e-2, upper=5.0, count=201)

    with pytest.raises(DivergenceError):
        mcintosh_reconstruct(power_exp(0.5), power_exp(0.5), np.eye(2), np.ones(2), grid=grid)


def test_subordination_equivalence(self_adjoint):
    A, x = self_adjoint
    grid = make_grid("lebesgue-line", half_width=8.0, count=201)
    T = fixtures.complex_normal(np.random.default_rng(9), 201, 201) / 201
    report = equivalence_check("subordination", A, x, kernel=shift_kernel(gaussian(), grid), T=T)

    assert report.passed
    assert report.value < 1e-9
    assert report.details["norm_ratio"] <= report.details["opnormT"] * (1 + 1e-9)


def test_subordination_needs_matching_rows(self_adjoint):
    A, x = self_adjoint
    grid = make_grid("lebesgue-line", half_width=8.0, count=201)

    with pytest.raises(GridMismatchError):
        equivalence_check("subordination", A, x, kernel=shift_kernel(gaussian(), grid), T=np.eye(10))


def test_fourier_equivalence():
    A = fixtures.self_adjoint(np.random.default_rng(3), [-1.0, 0.0, 1.5])
    x = fixtures.complex_normal(np.random.default_rng(4), 3)
    report = equivalence_check(
        "fourier",
        A,
        x,
        psi=sech(1.0, scale=math.pi),
        grid=make_grid("lebesgue-line", half_width=24.0, count=1921),
        dual_grid=make_grid("lebesgue-line", half_width=40.0, count=3201),
        psi_check=lambda s: 1 / np.cosh(s),
    )

    assert report.passed
    assert report.details["relative_error"] < 1e-5


def test_tensor_equivalence(self_adjoint):
    A, x = self_adjoint
    first = shift_kernel(gaussian(), make_grid("lebesgue-line", half_width=5.0, count=41))
    second = shift_kernel(gaussian(2.0), make_grid("lebesgue-line", half_width=4.0, count=33))
    report = equivalence_check("tensor", A, x, kernel=first, other=second)

    assert report.passed
    assert report.details["relative_error"] < 1e-8


def test_unknown_equivalence(self_adjoint):
    A, x = self_adjoint

    with pytest.raises(ValueError):
        equivalence_check("laplace", A, x)


def test_pairing_with_a_decomposition_of_one(self_adjoint, rng):
    A, x = self_adjoint
    x_dual = fixtures.complex_normal(rng, 3)
    grid = make_grid("lebesgue-line", half_width=40.0, count=3201)
    f = group_orbit_kernel(1.0, grid, scale=0.5)
    g = group_orbit_kernel(1.0, grid, reflected=True)
    report = pairing_identity_check(f, g, A, x, x_dual)

    assert report.passed
    assert report.details["contracts_to_one"]
    assert report.details["pairing"] <= report.details["duality_bound"]


def test_pairing_needs_a_shared_grid(self_adjoint):
    A, x = self_adjoint
    f = group_orbit_kernel(1.0, make_grid("lebesgue-line", half_width=10.0, count=101))
    g = group_orbit_kernel(1.0, make_grid("lebesgue-line", half_width=10.0, count=101), reflected=True)

    with pytest.raises(GridMismatchError):
        pairing_identity_check(f, g, A, x, x)


def test_integral_representation(self_adjoint, rng):
    A, x = self_adjoint
    grid = make_grid("lebesgue-line", half_width=6.0, count=121)
    f = shift_kernel(gaussian(), grid)
    g = shift_kernel(gaussian(0.5), grid)
    m = fixtures.complex_normal(rng, 121, 2)
    probes = fixtures.complex_normal(rng, 2, 2)
    report = integral_representation_check(f, g, m, A, x, probes)

    assert report.passed
    assert report.details["probes"] == 2


def test_decomposition_condition():
    z = np.linspace(-1, 1, 11) + 0.2j

    assert decomposition_condition([constant(0.5)] * 2, [constant(0.25)] * 2, z) == pytest.approx(1.5)
    with pytest.raises(ValueError):
        decomposition_condition([constant(1.0)], [], z)


def test_sqfun_csv_export(self_adjoint, tmp_path):
    A, x = self_adjoint
    grid = make_grid("lebesgue-line", half_width=4.0, count=41)
    output = sqfun_matrix(shift_kernel(gaussian(), grid), A, x)
    path = output.to_csv(tmp_path / "curves" / "shift.csv")

    with path.open(newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["node", "re_0", "im_0", "re_1", "im_1", "re_2", "im_2"]
    assert len(rows) == 42
    value = complex(float(rows[21][1]), float(rows[21][2]))
    assert value == pytest.approx(output.node_values()[20, 0], abs=1e-12)

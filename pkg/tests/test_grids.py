import csv
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import dawsn, gamma

from sqfun_lab.errors import GridMismatchError, ParameterRangeError
from sqfun_lab.export import write_grid_csv
from sqfun_lab.grids.fourier import discrete_fourier
from sqfun_lab.grids.make import keyhole_contour, make_contour, make_grid, strip_contour
from sqfun_lab.grids.pv import interior_indices, pv_convolution


def test_line_grid_integrates_a_gaussian():
    grid = make_grid("lebesgue-line", half_width=10.0, count=401)

    assert grid.inner(np.exp(-grid.nodes**2), np.ones(grid.size)).real == pytest.approx(
        math.sqrt(math.pi), rel=1e-12
    )


def test_sinh_spacing_reaches_far_tails():
    grid = make_grid("lebesgue-line", half_width=1e7, count=2001, spacing="sinh")
    integral = np.sum(grid.weights / (1 + grid.nodes**2))

    assert integral == pytest.approx(2 * math.atan(1e7), rel=1e-10)


def test_mult_haar_grid_uses_dt_over_t():
    grid = make_grid("mult-haar", lower=1e-8, upper=60.0, count=801)

    assert np.sum(grid.weights * grid.nodes * np.exp(-grid.nodes)) == pytest.approx(1.0, abs=1e-7)


def test_grid_norm_matches_coordinates():
    grid = make_grid("lebesgue-line", half_width=3.0, count=61)
    f = np.exp(1j * grid.nodes) * np.cos(grid.nodes)

    assert grid.norm(f) == pytest.approx(np.linalg.norm(grid.to_coordinates(f)))


def test_tensor_grid():
    first = make_grid("lebesgue-line", half_width=1.0, count=9)
    second = make_grid("mult-haar", lower=0.5, upper=2.0, count=11)
    product = first.tensor(second)

    assert product.size == 99
    assert product.measure_tag == "product"
    assert product.weights.sum() == pytest.approx(first.weights.sum() * second.weights.sum())
    assert_allclose(product.nodes[12], [first.nodes[1], second.nodes[1]])


def test_grid_parameter_errors():
    with pytest.raises(ParameterRangeError):
        make_grid("lebesgue-line", count=101)
    with pytest.raises(ParameterRangeError):
        make_grid("lebesgue-line", half_width=1.0, count=3)
    with pytest.raises(ParameterRangeError):
        make_grid("mult-haar", lower=2.0, upper=1.0, count=101)
    with pytest.raises(GridMismatchError):
        make_grid("mult-haar", lower=0.5, upper=2.0, count=11).require("lebesgue-line")


@pytest.mark.parametrize("closed", [False, True])
def test_strip_contour_reproduces_cauchy_formula(closed):
    contour = make_contour("boundary-strip", closed=closed, omega=1.0, half_width=8.0, count=801)
    a = 0.3 + 0.2j
    integral = contour.integrate(np.exp(-contour.nodes**2) / (contour.nodes - a))

    assert integral == pytest.approx(2j * math.pi * np.exp(-(a**2)), rel=1e-10)


def test_strip_boundary_grid_carries_arc_length():
    grid = make_grid("boundary-strip", omega=0.5, half_width=4.0, count=101)

    assert grid.measure_tag == "boundary-strip"
    assert grid.omega == 0.5
    assert grid.weights.sum() == pytest.approx(16.0)
    assert_allclose(np.abs(grid.nodes.imag), 0.5)


def test_keyhole_contour_gives_reciprocal_gamma():
    omega = 2 * math.pi / 3
    contour = keyhole_contour(omega, 1.0, 73.0, 801)
    s = 0.5
    integral = contour.integrate(np.exp(contour.nodes) * contour.nodes ** (-s)) / (2j * math.pi)

    assert integral == pytest.approx(1 / gamma(s), rel=1e-8)


def test_keyhole_rejects_acute_angles():
    with pytest.raises(ParameterRangeError):
        keyhole_contour(1.0, 1.0, 10.0, 101)
    with pytest.raises(ParameterRangeError):
        keyhole_contour(2.5, 2.0, 1.0, 101)


def test_principal_value_of_a_gaussian():
    contour = strip_contour(1.0, 8.0, 801)
    lower = contour.segments[0]
    values = np.concatenate([np.exp(-lower.nodes.real**2), np.zeros(801)])
    j = 425
    result = pv_convolution(contour, values, points=[lower.nodes[j]])

    assert lower.nodes[j].real == pytest.approx(0.5)
    assert result[0] == pytest.approx(2 * math.sqrt(math.pi) * dawsn(0.5), abs=2e-5)


def test_principal_value_needs_grid_nodes():
    contour = strip_contour(1.0, 8.0, 101)

    assert interior_indices(contour).size == 2 * 99
    with pytest.raises(GridMismatchError):
        pv_convolution(contour, np.ones(contour.size), points=[0.123 - 1j])


def test_fourier_transform_of_a_gaussian():
    grid = make_grid("lebesgue-line", half_width=12.0, count=481)
    t = np.linspace(-3, 3, 13)
    result = discrete_fourier(grid, np.exp(-grid.nodes**2 / 2), t)

    assert result.edge_decay_ok
    assert_allclose(result.values, math.sqrt(2 * math.pi) * np.exp(-(t**2) / 2), atol=1e-12)


def test_inverse_fourier_normalization():
    grid = make_grid("lebesgue-line", half_width=12.0, count=481)
    result = discrete_fourier(grid, np.exp(-grid.nodes**2 / 2), [0.0], inverse=True)

    assert result.values[0] == pytest.approx(1 / math.sqrt(2 * math.pi))


def test_fourier_flags_missing_decay():
    grid = make_grid("lebesgue-line", half_width=2.0, count=81)

    with pytest.warns(RuntimeWarning):
        result = discrete_fourier(grid, np.exp(-grid.nodes**2 / 2), [0.0])
    assert not result.edge_decay_ok


def test_grid_csv(tmp_path):
    grid = make_grid("lebesgue-line", half_width=2.0, count=9)
    with write_grid_csv(tmp_path / "grid.csv", grid).open(newline="") as f:
        rows = list(csv.reader(f))

    assert rows[0] == ["node", "weight"]
    assert len(rows) == 10
    assert [float(value) for value in rows[1]] == [-2.0, 0.25]
    assert [float(value) for value in rows[5]] == [0.0, 0.5]

    product = grid.tensor(make_grid("mult-haar", lower=0.5, upper=2.0, count=11))
    with write_grid_csv(tmp_path / "product.csv", product).open(newline="") as f:
        assert next(csv.reader(f)) == ["node_0", "node_1", "weight"]

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sqfun_lab.calculus.apply import calculus_apply, scalar_calculus, sector_calculus
from sqfun_lab.calculus.context import with_elementary, with_gauss_cauchy, with_regularized
from sqfun_lab.calculus.diagnostics import cauchy_derivatives, certify_elementary, elementary_diagnostics
from sqfun_lab.calculus.functions import (
    constant,
    gaussian,
    inverse_power,
    resolvent_function,
    sech,
    stable_sech,
)
from sqfun_lab.calculus.hooks import use_strip_operator
from sqfun_lab.calculus.laws import calculus_law_check
from sqfun_lab.calculus.models import HolFn, admissible_height, strip_operator
from sqfun_lab.errors import ContourMarginError, MethodMismatchError, NotElementaryError


def strip_matrix(seed: int, d: int = 4, height: float = 0.3) -> np.ndarray:
    rng = np.random.default_rng(seed)
    eigenvalues = rng.uniform(-2, 2, d) + 1j * rng.uniform(-height, height, d)
    P = np.eye(d) + 0.3 * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2 * d)
    return P @ np.diag(eigenvalues) @ np.linalg.inv(P)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_elementary_calculus_matches_the_eigen_decomposition(seed):
    A = strip_matrix(seed)
    expected, _ = scalar_calculus(gaussian(), A)

    assert_allclose(calculus_apply(gaussian(), A, **with_elementary()), expected, atol=1e-9)


def test_gauss_cauchy_calculus_of_a_resolvent():
    A = strip_matrix(3)
    lam = 2.5j
    expected = np.linalg.inv(lam * np.eye(4) - A)

    assert_allclose(calculus_apply(resolvent_function(lam), A, **with_gauss_cauchy()), expected, atol=1e-9)


def test_regularized_calculus_of_a_bounded_function():
    A = strip_matrix(4)
    f = resolvent_function(0.5 + 2j)
    expected, _ = scalar_calculus(f, A)

    assert_allclose(calculus_apply(f, A, **with_regularized()), expected, atol=1e-8)


def test_constant_function_gives_the_identity():
    A = strip_matrix(5)

    assert_allclose(calculus_apply(constant(1.0), A, **with_gauss_cauchy()), np.eye(4), atol=1e-10)


def test_contour_independence():
    A = strip_matrix(6)
    f = sech(2.0)
    low = calculus_apply(f, A, **with_elementary(contour_height=0.6))
    high = calculus_apply(f, A, **with_elementary(contour_height=1.4))

    assert np.linalg.norm(low - high, 2) < 1e-9


def test_elementary_method_needs_an_elementary_function():
    with pytest.raises(NotElementaryError):
        calculus_apply(constant(1.0), strip_matrix(7), **with_elementary())


def test_contour_must_clear_the_spectrum():
    A = strip_matrix(8)
    operator = strip_operator(A)

    with pytest.raises(ContourMarginError):
        admissible_height(operator, gaussian(), operator.omega0 + 0.01)
    with pytest.raises(ContourMarginError):
        admissible_height(operator, sech(0.5), 0.6)
    with pytest.raises(ContourMarginError):
        calculus_apply(gaussian(), A, **with_elementary(contour_height=operator.omega0))


def test_resolvent_margin_is_an_absolute_distance():
    operator = strip_operator(np.diag([1.0 + 0.2j, -1.0]))

    assert operator.resolvent_margin == 0.05
    assert admissible_height(operator, gaussian(), 0.26) == 0.26
    assert admissible_height(operator, gaussian(), 50.0) == 50.0
    with pytest.raises(ContourMarginError):
        admissible_height(operator, gaussian(), 0.24)
    with pytest.raises(ContourMarginError):
        admissible_height(strip_operator(operator.A, resolvent_margin=0.2), gaussian(), 0.3)


@pytest.mark.parametrize("kind", ["multiplicative", "resolvent-consistency"])
def test_calculus_laws(kind):
    A = strip_matrix(9)
    report = calculus_law_check(
        A, gaussian(0.5), resolvent_function(0.3 + 3j), kind=kind, lam=0.5 + 2j
    )

    assert report.passed
    assert report.value < 1e-8


def test_resolvent_consistency_needs_lambda():
    with pytest.raises(ValueError):
        calculus_law_check(strip_matrix(10), gaussian(), kind="resolvent-consistency")


def test_regularizer_convergence_is_monotone():
    report = calculus_law_check(
        strip_matrix(11), resolvent_function(0.3 + 3j), kind="regularizer-convergence"
    )

    assert report.passed
    distances = report.details["distances"]
    assert distances[-1] <= distances[0]


def test_products_keep_the_strongest_tag():
    product = gaussian() * resolvent_function(2j)

    assert product.class_tag == "elementary"
    assert product.strip_half_height == 2.0
    assert (constant(1.0) * constant(2.0)).class_tag == "bounded"
    assert inverse_power(1j, 1).class_tag == "bounded"


def test_stable_sech_does_not_overflow():
    z = np.array([0.0, 0.7 + 0.2j, -3.0, 1000.0, -1000.0 + 0.5j])

    values = stable_sech(z)
    assert np.all(np.isfinite(values))
    assert_allclose(values[:3], 1 / np.cosh(z[:3]))


def test_cauchy_derivatives_of_exp():
    f = HolFn(np.exp, math.inf, "bounded", "exp")
    points = np.array([0.0, 0.3 + 0.1j, -1.0])
    first, second = cauchy_derivatives(f, points, 0.5)

    assert_allclose(first, np.exp(points), rtol=1e-12)
    assert_allclose(second, np.exp(points), rtol=1e-12)


def test_diagnostics_certify_integrable_functions():
    lorentzian = HolFn(lambda z: 1 / (1 + z**2), 1.0, "bounded", "lorentzian")
    report = elementary_diagnostics(lorentzian, 0.5)

    assert report.passed
    assert report.details["line_integrals"][4][1] == pytest.approx(math.pi, rel=1e-2)
    assert abs(complex(*report.details["boundary_integral"])) < 1e-6
    assert certify_elementary(lorentzian, 0.5).class_tag == "elementary"


def test_diagnostics_reject_constants():
    with pytest.raises(NotElementaryError):
        certify_elementary(constant(1.0), 0.5)


def test_sector_calculus_through_the_logarithm():
    rng = np.random.default_rng(12)
    Q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    S = Q @ np.diag([0.3, 1.0, 4.0]) @ Q.T
    f = HolFn(lambda z: 1 / (1 + z), math.pi, "bounded", "1/(1+z)", sector=True)

    assert_allclose(sector_calculus(S, f), np.linalg.inv(np.eye(3) + S), atol=1e-8)


def test_strip_operator_hook():
    A = strip_matrix(13)
    operator, apply, sweep = use_strip_operator(A)

    assert operator() is operator()
    assert_allclose(apply(gaussian(), **with_elementary()), calculus_apply(gaussian(), A, **with_elementary()))
    contour, kernels, integrate, _ = sweep(gaussian(), **with_elementary())
    assert kernels().shape == (contour.size, 4, 4)
    assert_allclose(integrate(np.ones(contour.size)) @ np.zeros(4), np.zeros(4))
    with pytest.raises(MethodMismatchError):
        sweep(gaussian(), **with_regularized())

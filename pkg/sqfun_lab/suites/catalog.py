"""Named suites; each builds seeded cases and leaves running them to the runner."""

import math
from typing import Callable

import numpy as np

from sqfun_lab.calculus.apply import calculus_apply
from sqfun_lab.calculus.context import with_elementary, with_gauss_cauchy, with_regularized
from sqfun_lab.calculus.functions import constant, gaussian, resolvent_function, sech
from sqfun_lab.calculus.laws import calculus_law_check
from sqfun_lab.export import write_coefficient_csv, write_multiplier_csv, write_sqfun_csv
from sqfun_lab.frames.bounds import l1_frame_bound
from sqfun_lab.frames.context import with_operator_hs, with_shift_range
from sqfun_lab.frames.gabor import GaborParams, gabor_frame_build, w12_ratios
from sqfun_lab.fp.lazy_val import lazy_val
from sqfun_lab.gamma.checks import check_contraction_principle
from sqfun_lab.gamma.context import with_hilbert_exact, with_lattice_exact, with_monte_carlo
from sqfun_lab.gamma.models import FiniteRankOp, rank_one
from sqfun_lab.gamma.norm import gamma_norm
from sqfun_lab.grids.make import make_grid
from sqfun_lab.linalg.factor import contraction_to_isometries, matrix_factor
from sqfun_lab.linalg.norms import hilbert_space, lp_space
from sqfun_lab.representations.checks import (
    cauchy_gauss_factorization_check,
    exponent_improvement_check,
    fourier_pair_check,
)
from sqfun_lab.representations.context import (
    with_gauss_cauchy_formula,
    with_laplace_formula,
    with_poisson_formula,
)
from sqfun_lab.representations.reconstruct import reconstruct
from sqfun_lab.representations.singular import singular_cauchy
from sqfun_lab.sqfun.build import sqfun_matrix, sqfun_norm
from sqfun_lab.sqfun.checks import equivalence_check, pairing_identity_check
from sqfun_lab.sqfun.kernels import (
    group_orbit_kernel,
    power_exp,
    resolvent_boundary_kernel,
    shift_kernel,
)
from sqfun_lab.sqfun.mcintosh import mcintosh_reconstruct
from sqfun_lab.suites import fixtures
from sqfun_lab.suites.models import Case, CaseResult, SuiteConfig, at_most, close_to, family_band

SuiteBuilder = Callable[[SuiteConfig], list[Case]]


def _rng(config: SuiteConfig, stream: int) -> np.random.Generator:
    return np.random.default_rng([config.seed, stream])


def _curve(config: SuiteConfig, name: str):
    return config.out / "curves" / f"{name}.csv" if config.curves else None


def cross_norm(config: SuiteConfig) -> list[Case]:
    rng = _rng(config, 1)
    shapes = [(int(rng.integers(1, 7)), int(rng.integers(1, 7))) for _ in range(100)]
    rank_ones = [(fixtures.complex_normal(rng, m), fixtures.complex_normal(rng, n)) for m, n in shapes]
    finite = [fixtures.complex_normal(rng, n, m) for m, n in shapes]
    band = family_band(5)

    def rank_one_case() -> CaseResult:
        errors = [
            abs(gamma_norm(rank_one(g, x, hilbert_space()), **with_hilbert_exact()).value
                - np.linalg.norm(g) * np.linalg.norm(x)) / (np.linalg.norm(g) * np.linalg.norm(x))
            for g, x in rank_ones
        ]
        return at_most("rank-one-cross-norm", float(max(errors)), config.scaled_tol(1e-12))

    def hilbert_schmidt_case() -> CaseResult:
        errors = []
        for M in finite:
            singular = matrix_factor(M, "svd").tau
            exact = float(np.sqrt(np.sum(singular**2)))
            value = gamma_norm(FiniteRankOp(M, hilbert_space()), **with_hilbert_exact()).value
            errors.append(abs(value - exact) / exact)
        return at_most("finite-rank-hilbert-schmidt", float(max(errors)), config.scaled_tol(1e-12))

    def monte_carlo_case() -> CaseResult:
        deviations = []
        for k, M in enumerate(finite[:5]):
            T = FiniteRankOp(M, hilbert_space())
            exact = gamma_norm(T, **with_hilbert_exact()).value
            estimate = gamma_norm(
                T, **with_monte_carlo(config.samples, config.seed + k, config.workers)
            )
            deviations.append(abs(estimate.value - exact) / estimate.stderr)
        return at_most("monte-carlo-band", float(max(deviations)), band)

    return [
        Case("rank-one-cross-norm", rank_one_case),
        Case("finite-rank-hilbert-schmidt", hilbert_schmidt_case),
        Case("monte-carlo-band", monte_carlo_case),
    ]


def contraction(config: SuiteConfig) -> list[Case]:
    rng = _rng(config, 2)
    exact_instances = []
    for _ in range(1000):
        d = int(rng.integers(1, 7))
        exact_instances.append((fixtures.complex_normal(rng, d, d), fixtures.complex_normal(rng, d, d)))
    unitaries = [fixtures.unitary(rng, d) for d in range(1, 7)]
    unitary_vectors = [fixtures.complex_normal(rng, d, d) for d in range(1, 7)]
    mc_instances = [
        (fixtures.complex_normal(rng, 4, 4), fixtures.complex_normal(rng, 5, 4)) for _ in range(100)
    ]

    def exact_case() -> CaseResult:
        excess = 0.0
        for A, X in exact_instances:
            report = check_contraction_principle(A, list(X.T), hilbert_space(), **with_hilbert_exact())
            excess = max(excess, (report.value - report.bound) / max(report.bound, 1.0))
        return at_most("hilbert-inequality", excess, config.scaled_tol(1e-12))

    def unitary_case() -> CaseResult:
        gap = 0.0
        for U, X in zip(unitaries, unitary_vectors):
            report = check_contraction_principle(U, list(X.T), hilbert_space(), **with_hilbert_exact())
            gap = max(gap, abs(report.value - report.bound) / max(report.bound, 1e-300))
        return at_most("unitary-equality", gap, config.scaled_tol(1e-12))

    def monte_carlo_case() -> CaseResult:
        band = family_band(len(mc_instances))
        worst = -math.inf
        for k, (A, X) in enumerate(mc_instances):
            context = with_monte_carlo(config.samples, config.seed + k, config.workers)
            report = check_contraction_principle(A, list(X.T), lp_space(4.0), **context)
            worst = max(worst, (report.value - report.bound) / max(report.stderr or 0.0, 1e-300))
        return at_most("l4-monte-carlo", float(worst), band)

    return [
        Case("hilbert-inequality", exact_case),
        Case("unitary-equality", unitary_case),
        Case("l4-monte-carlo", monte_carlo_case),
    ]


def isometry_decomposition(config: SuiteConfig) -> list[Case]:
    rng = _rng(config, 3)
    matrices = [fixtures.contraction(rng, int(rng.integers(1, 7))) for _ in range(1000)]

    @lazy_val
    def run() -> list[tuple[float, float, float, int]]:
        rows = []
        for A in matrices:
            decomposition = contraction_to_isometries(A)
            rows.append(
                (
                    float(np.linalg.norm(decomposition.reconstruct() - A, 2)),
                    decomposition.unitarity_defect(),
                    abs(float(decomposition.weights.sum()) - 1.0),
                    len(decomposition.terms) - (A.shape[0] + 1),
                )
            )
        return rows

    def case(name: str, column: int, tol: float) -> Case:
        def evaluate() -> CaseResult:
            return at_most(name, float(max(row[column] for row in run())), config.scaled_tol(tol))

        return Case(name, evaluate)

    return [
        case("reconstruction", 0, 1e-10),
        case("unitarity", 1, 1e-10),
        case("weights-sum", 2, 1e-12),
        case("term-count", 3, 0),
    ]


def lattice(config: SuiteConfig) -> list[Case]:
    rng = _rng(config, 4)
    instances = [fixtures.complex_normal(rng, 5, 4) for _ in range(200)]

    def p2_case() -> CaseResult:
        gap = 0.0
        for M in instances:
            lattice_value = gamma_norm(FiniteRankOp(M, lp_space(2.0)), **with_lattice_exact()).value
            hilbert_value = gamma_norm(FiniteRankOp(M, hilbert_space()), **with_hilbert_exact()).value
            gap = max(gap, abs(lattice_value - hilbert_value) / hilbert_value)
        return at_most("p2-agreement", gap, config.scaled_tol(1e-12))

    def band_case(p: float) -> Case:
        name = f"monte-carlo-ratio-p{p:g}"

        def evaluate() -> CaseResult:
            ratios = []
            for k, M in enumerate(instances):
                T = FiniteRankOp(M, lp_space(p))
                exact = gamma_norm(T, **with_lattice_exact()).value
                estimate = gamma_norm(T, **with_monte_carlo(config.samples, config.seed + k))
                ratios.append(estimate.value / exact)
            low, high = min(ratios), max(ratios)
            return CaseResult(
                name=name, value=high, expected=1.0, tol=2.0, passed=1 / 3 <= low and high <= 3
            )

        return Case(name, evaluate)

    return [Case("p2-agreement", p2_case), band_case(1.0), band_case(4.0)]


def calculus_laws(config: SuiteConfig) -> list[Case]:
    rng = _rng(config, 5)
    matrices = [fixtures.strip_matrix(rng, 4) for _ in range(5)]
    f, g = gaussian(0.5), resolvent_function(0.3 + 3j)
    nodes = config.nodes(1601)

    def multiplicative() -> CaseResult:
        residual = max(
            calculus_law_check(A, f, g, "multiplicative", **with_regularized(nodes=nodes)).value
            for A in matrices
        )
        return at_most("multiplicative", residual, config.scaled_tol(1e-8))

    def resolvent() -> CaseResult:
        residual = max(
            calculus_law_check(
                A, f, kind="resolvent-consistency", lam=0.5 + 2j, **with_regularized(nodes=nodes)
            ).value
            for A in matrices
        )
        return at_most("resolvent-consistency", residual, config.scaled_tol(1e-8))

    def contour_independence() -> CaseResult:
        h = sech(2.0)
        residual = max(
            float(
                np.linalg.norm(
                    calculus_apply(h, A, **with_elementary(contour_height=0.6, nodes=nodes))
                    - calculus_apply(h, A, **with_elementary(contour_height=1.4, nodes=nodes)),
                    2,
                )
            )
            for A in matrices
        )
        return at_most("contour-independence", residual, config.scaled_tol(1e-9))

    def method_agreement() -> CaseResult:
        residual = max(
            float(
                np.linalg.norm(
                    calculus_apply(g, A, **with_regularized(nodes=nodes))
                    - calculus_apply(g, A, **with_gauss_cauchy()),
                    2,
                )
            )
            for A in matrices
        )
        return at_most("regularized-vs-gauss-cauchy", residual, config.scaled_tol(1e-7))

    def convergence() -> CaseResult:
        report = calculus_law_check(matrices[0], g, kind="regularizer-convergence")
        return CaseResult(name="regularizer-convergence", value=report.value, passed=report.passed)

    return [
        Case("multiplicative", multiplicative),
        Case("resolvent-consistency", resolvent),
        Case("contour-independence", contour_independence),
        Case("regularized-vs-gauss-cauchy", method_agreement),
        Case("regularizer-convergence", convergence),
    ]


def cauchy_gauss(config: SuiteConfig) -> list[Case]:
    rng = _rng(config, 6)
    z = rng.uniform(-3, 3, 10) + 1j * rng.uniform(-0.5, 0.5, 10)
    A, x = fixtures.strip_matrix(rng, 4), fixtures.complex_normal(rng, 4)
    u = fixtures.lorentzian(2.0)

    def scalar(name: str, fn) -> Case:
        def evaluate() -> CaseResult:
            report = reconstruct(fn, z, **with_gauss_cauchy_formula(1.0))
            return at_most(name, report.max_error, config.scaled_tol(1e-8))

        return Case(name, evaluate)

    def operator_level() -> CaseResult:
        report = cauchy_gauss_factorization_check(u, A, x, tol=config.scaled_tol(1e-9))
        return at_most("operator-factorization", report.value, report.tol)

    return [
        scalar("lorentzian", u),
        scalar("constant", constant(1.0)),
        Case("operator-factorization", operator_level),
    ]


def poisson(config: SuiteConfig) -> list[Case]:
    z = np.array([0.0, 0.5, 0.3j])
    omega = config.omega or 1.0
    report = lazy_val(
        lambda: reconstruct(
            fixtures.lorentzian(2 * omega), z, **with_poisson_formula(omega, factor_alpha=2 * omega)
        )
    )

    def run() -> CaseResult:
        return at_most("reconstruction", report().max_error, config.scaled_tol(1e-6))

    def factorization() -> CaseResult:
        return at_most(
            "factorization", report().details["factorization_error"], config.scaled_tol(1e-10)
        )

    return [Case("reconstruction", run), Case("factorization", factorization)]


def fourier_pair(config: SuiteConfig) -> list[Case]:
    omegas = (config.omega,) if config.omega else (0.5, 1.0, 2.0)

    def case(omega: float) -> Case:
        name = f"fourier-pair-omega{omega:g}"

        def evaluate() -> CaseResult:
            report = fourier_pair_check(omega, tol=config.scaled_tol(1e-6))
            return CaseResult(
                name=name, value=report.value, expected=0.0, tol=report.tol, passed=report.passed
            )

        return Case(name, evaluate)

    return [case(omega) for omega in omegas]


def laplace(config: SuiteConfig) -> list[Case]:
    omega = config.omega or 2 * math.pi / 3
    z = np.array([0.5, 1.0, 2 * np.exp(1j * math.pi / 6)])
    t_count = config.nodes(801)
    constant_report = lazy_val(
        lambda: reconstruct(
            fixtures.sector_constant(), z, **with_laplace_formula(1.0, 1.0, omega, t_count=t_count)
        )
    )
    resolvent_report = lazy_val(
        lambda: reconstruct(
            fixtures.sector_resolvent(), z, **with_laplace_formula(1.0, 1.0, omega, t_count=t_count)
        )
    )

    def multiplier() -> CaseResult:
        report = constant_report()
        values = report.multiplier_values()
        path = _curve(config, "laplace-multiplier-constant")
        curves = [str(write_multiplier_csv(path, report.multiplier_nodes, values))] if path else []
        return at_most(
            "constant-multiplier",
            float(np.max(np.abs(values - 4.0))),
            config.scaled_tol(1e-4),
            curves=curves,
        )

    def resolvent() -> CaseResult:
        return at_most(
            "resolvent-reconstruction", resolvent_report().max_error, config.scaled_tol(1e-3)
        )

    def bound() -> CaseResult:
        report = resolvent_report()
        return CaseResult(
            name="multiplier-bound",
            value=report.multiplier_sup,
            expected=report.multiplier_bound,
            passed=report.details["within_bound"],
        )

    def constant_reconstruction() -> CaseResult:
        return at_most(
            "constant-reconstruction", constant_report().max_error, config.scaled_tol(1e-3)
        )

    return [
        Case("constant-multiplier", multiplier),
        Case("constant-reconstruction", constant_reconstruction),
        Case("resolvent-reconstruction", resolvent),
        Case("multiplier-bound", bound),
    ]


def singular_cauchy_suite(config: SuiteConfig) -> list[Case]:
    z = np.array([0.0, 0.3 + 0.2j, -0.5 - 0.3j, 1.0 + 0.4j, -1.2 + 0.1j])

    def case(name: str, f) -> list[Case]:
        report = lazy_val(lambda: singular_cauchy(f, 1.0, z))

        def residual() -> CaseResult:
            return at_most(f"{name}-residual", report().value, config.scaled_tol(1e-3))

        def norm() -> CaseResult:
            details = report().details
            return CaseResult(
                name=f"{name}-norm",
                value=details["norm_estimate"],
                tol=0.2,
                passed=details["within_bound"] and details["norm_change"] <= 0.2,
            )

        return [Case(f"{name}-residual", residual), Case(f"{name}-norm", norm)]

    return case("constant", constant(1.0)) + case("gaussian", gaussian())


def exponent_improvement(config: SuiteConfig) -> list[Case]:
    tol = config.scaled_tol(1e-6)
    half_half = lazy_val(lambda: exponent_improvement_check(0.5, 0.5, tol=tol))

    def isometry() -> CaseResult:
        return at_most("isometry", half_half().details["isometry_defect"], tol)

    def convolution() -> CaseResult:
        return at_most("convolution-half-half", half_half().details["convolution_error"], tol)

    def beta_constant() -> CaseResult:
        report = exponent_improvement_check(1.0, 0.5, tol=tol)
        return close_to("beta-constant", report.details["beta_constant"], 2 / 3, tol)

    return [
        Case("isometry", isometry),
        Case("convolution-half-half", convolution),
        Case("beta-constant", beta_constant),
    ]


def sqfun_closed_forms(config: SuiteConfig) -> list[Case]:
    rng = _rng(config, 7)
    omega = config.omega or 1.0
    spectra = ([-3.0, 0.5, 2.0], [10.0, 11.0, 12.0])
    instances = [(fixtures.self_adjoint(rng, s), fixtures.complex_normal(rng, 3)) for s in spectra]

    def shift_gaussian() -> CaseResult:
        grid = make_grid("lebesgue-line", half_width=25.0, count=config.nodes(2001))
        kernel = shift_kernel(gaussian(), grid)
        ratios = []
        for k, (A, x) in enumerate(instances):
            output = sqfun_matrix(kernel, A, x)
            if k == 0 and (path := _curve(config, "sqfun-shift-gaussian")):
                write_sqfun_csv(path, output)
            ratios.append(sqfun_norm(output).value / np.linalg.norm(x))
        value = max(ratios, key=lambda r: abs(r - (math.pi / 2) ** 0.25))
        return close_to("shift-gaussian", value, (math.pi / 2) ** 0.25, config.scaled_tol(1e-6))

    def group_orbit() -> CaseResult:
        grid = make_grid("lebesgue-line", half_width=40.0 / omega, count=config.nodes(3201))
        kernel = group_orbit_kernel(omega, grid)
        A, x = instances[0]
        value = sqfun_norm(sqfun_matrix(kernel, A, x)).value / np.linalg.norm(x)
        return close_to("group-orbit", value, math.sqrt(2 / omega), config.scaled_tol(1e-6))

    def boundary_resolvent() -> CaseResult:
        grid = make_grid(
            "boundary-strip", omega=omega, half_width=1e7, count=config.nodes(2001), spacing="sinh"
        )
        A, x = instances[0]
        value = sqfun_norm(sqfun_matrix(resolvent_boundary_kernel(grid), A, x)).value / np.linalg.norm(x)
        return close_to(
            "boundary-resolvent", value, math.sqrt(2 * math.pi / omega), config.scaled_tol(1e-6)
        )

    return [
        Case("shift-gaussian", shift_gaussian),
        Case("group-orbit", group_orbit),
        Case("boundary-resolvent", boundary_resolvent),
    ]


def equivalences(config: SuiteConfig) -> list[Case]:
    rng = _rng(config, 8)
    omega = config.omega or 1.0
    A = fixtures.self_adjoint(rng, [-1.0, 0.0, 1.5])
    x, x_dual = fixtures.complex_normal(rng, 3), fixtures.complex_normal(rng, 3)
    S = fixtures.positive_matrix(rng, 3)

    def fourier() -> CaseResult:
        grid = make_grid("lebesgue-line", half_width=30.0 * omega + 2, count=config.nodes(2401))
        dual_grid = make_grid("lebesgue-line", half_width=40.0 / omega, count=config.nodes(3201))
        report = equivalence_check(
            "fourier",
            A,
            x,
            psi=sech(omega, scale=math.pi / omega),
            grid=grid,
            dual_grid=dual_grid,
            psi_check=lambda s: 1 / np.cosh(omega * s),
            tol=config.scaled_tol(1e-5),
        )
        return CaseResult(
            name="fourier", value=report.details["relative_error"], expected=0.0, tol=report.tol,
            passed=report.passed,
        )

    def subordination() -> CaseResult:
        grid = make_grid("lebesgue-line", half_width=8.0, count=config.nodes(201))
        T = fixtures.complex_normal(_rng(config, 9), grid.size, grid.size) / grid.size
        report = equivalence_check(
            "subordination", A, x, kernel=shift_kernel(gaussian(), grid), T=T, tol=config.scaled_tol(1e-9)
        )
        return at_most("subordination", report.value, report.tol)

    def pairing() -> CaseResult:
        grid = make_grid("lebesgue-line", half_width=40.0 / omega, count=config.nodes(3201))
        f = group_orbit_kernel(omega, grid, scale=omega / 2)
        g = group_orbit_kernel(omega, grid, reflected=True)
        report = pairing_identity_check(f, g, A, x, x_dual, tol=config.scaled_tol(1e-8))
        return CaseResult(
            name="pairing", value=report.value, expected=0.0, tol=report.tol, passed=report.passed
        )

    def mcintosh() -> CaseResult:
        _, c = mcintosh_reconstruct(power_exp(0.5), power_exp(0.5), S, x)
        return close_to("mcintosh-constant", c.real, 0.5, config.scaled_tol(1e-6))

    return [
        Case("fourier", fourier),
        Case("subordination", subordination),
        Case("pairing", pairing),
        Case("mcintosh-constant", mcintosh),
    ]


def frames(config: SuiteConfig) -> list[Case]:
    rng = _rng(config, 10)
    matrices = [fixtures.complex_normal(rng, 4, 4) for _ in range(100)]
    probes = fixtures.complex_normal(rng, 4, 10_000)
    probes /= np.linalg.norm(probes, axis=0)
    base = GaborParams(translations=12, frequencies=32, samples=1024)
    refined = GaborParams(translations=16, frequencies=64, samples=2048)
    dictionary = [
        fixtures.gaussian_packet(scale, center, frequency)
        for scale, center, frequency in [
            (1.0, 0.0, 0.0), (0.5, 0.0, 0.0), (2.0, 0.0, 0.0), (1.0, 1.0, 0.0), (1.0, -2.0, 0.0),
            (1.0, 0.0, 1.0), (1.0, 0.0, 3.0), (0.7, 0.5, 2.0), (1.5, -1.0, 0.5), (3.0, 0.0, 0.0),
        ]
    ]

    def hilbert_schmidt() -> CaseResult:
        gap = excess = 0.0
        for T in matrices:
            bound = l1_frame_bound(**with_operator_hs(T))
            gap = max(gap, abs(bound.value - float(np.linalg.norm(T))))
            assert bound.frame is not None
            sampled = np.sum(np.abs(bound.frame.R @ (T @ probes)), axis=0).max()
            excess = max(excess, float(sampled) - bound.value)
        return CaseResult(
            name="hilbert-schmidt-bound",
            value=gap,
            expected=0.0,
            tol=config.scaled_tol(1e-10),
            passed=gap <= config.scaled_tol(1e-10) and excess <= 1e-9,
        )

    def partition() -> CaseResult:
        return at_most(
            "partition-of-unity", gabor_frame_build(base).partition_residual(), config.scaled_tol(1e-12)
        )

    def truncation() -> CaseResult:
        g = gaussian()
        coarse = gabor_frame_build(base).coefficient_sum(g, config.workers)
        fine = gabor_frame_build(refined).coefficient_sum(g, config.workers)
        path = _curve(config, "gabor-coefficients-gaussian")
        curves = [str(write_coefficient_csv(path, gabor_frame_build(base), g))] if path else []
        return at_most("coefficient-truncation", abs(fine - coarse) / fine, 0.01, curves=curves)

    def w12_constant() -> CaseResult:
        grid = make_grid("lebesgue-line", half_width=12.0, count=config.nodes(2401))
        fine_grid = make_grid("lebesgue-line", half_width=16.0, count=2 * config.nodes(2401) - 1)
        coarse = w12_ratios(gabor_frame_build(base), dictionary, grid, config.workers).max()
        fine = w12_ratios(gabor_frame_build(refined), dictionary, fine_grid, config.workers).max()
        return at_most("w12-constant", float(abs(fine - coarse) / coarse), 0.2)

    return [
        Case("hilbert-schmidt-bound", hilbert_schmidt),
        Case("partition-of-unity", partition),
        Case("coefficient-truncation", truncation),
        Case("w12-constant", w12_constant),
    ]


def l1_sqfe(config: SuiteConfig) -> list[Case]:
    rng = _rng(config, 11)
    spectra = ([-1.0, 0.0, 1.0], [0.5, 2.5, 4.0], [-6.0, -5.5, 3.0])
    instances = [(fixtures.self_adjoint(rng, s), fixtures.complex_normal(rng, 3)) for s in spectra]
    psi = sech(2.0)

    def run() -> CaseResult:
        grid = make_grid("lebesgue-line", half_width=40.0, count=config.nodes(3201))
        worst = 0.0
        for A, x in instances:
            spectrum = np.linalg.eigvalsh(A)
            bound = l1_frame_bound(**with_shift_range(psi, 0.5, 1.5, grid, spectrum)).value
            value = sqfun_norm(sqfun_matrix(shift_kernel(psi, grid), A, x)).value
            worst = max(worst, value / (2 * bound * np.linalg.norm(x)))
        return CaseResult(name="l1-implies-sqfe", value=worst, expected=None, tol=1.0, passed=worst <= 1.0)

    return [Case("l1-implies-sqfe", run)]


CATALOG: dict[str, tuple[str, SuiteBuilder]] = {
    "cross-norm": ("gamma norms of rank-one and finite-rank operators into Hilbert space", cross_norm),
    "contraction": ("Gaussian contraction principle, exact Hilbert form and l4 Monte Carlo", contraction),
    "isometry-decomposition": ("contractions as convex combinations of unitaries", isometry_decomposition),
    "lattice": ("lattice square-function norm against Monte Carlo", lattice),
    "calculus-laws": ("strip-type holomorphic functional calculus laws", calculus_laws),
    "cauchy-gauss": ("Gauss-Cauchy reproducing formula, scalar and operator level", cauchy_gauss),
    "poisson": ("Poisson representation on a strip and its factorization", poisson),
    "fourier-pair": ("Fourier transform of the hyperbolic secant kernel", fourier_pair),
    "laplace": ("Laplace-type representation through the keyhole inversion", laplace),
    "singular-cauchy": ("half-residue identity for the singular Cauchy operator", singular_cauchy_suite),
    "exponent-improvement": ("isometric lift and Beta convolution identity", exponent_improvement),
    "sqfun-closed-forms": ("closed-form square functions of self-adjoint matrices", sqfun_closed_forms),
    "equivalences": ("Fourier, subordination, pairing and McIntosh identities", equivalences),
    "frames": ("l1-frame bounds and the smooth Gabor frame", frames),
    "l1-sqfe": ("l1-frame-bounded range implies a square function estimate", l1_sqfe),
}


import math
from typing import Callable, Literal
from typing_extensions import NotRequired, TypedDict, Unpack

import numpy as np
import numpy.typing as npt

from sqfun_lab.calculus.apply import calculus_apply
from sqfun_lab.calculus.context import with_gauss_cauchy
from sqfun_lab.calculus.hooks import use_strip_operator
from sqfun_lab.calculus.models import HolFn
from sqfun_lab.errors import GridMismatchError
from sqfun_lab.gamma.checks import trace_pairing
from sqfun_lab.gamma.context import with_hilbert_exact, with_lattice_exact
from sqfun_lab.grids.fourier import discrete_fourier
from sqfun_lab.grids.models import DiscreteHilbert
from sqfun_lab.linalg.models import NormSpec, as_cmatrix, as_cvector
from sqfun_lab.linalg.norms import hilbert_space, op_norm
from sqfun_lab.reports import CheckReport, digest
from sqfun_lab.sqfun.build import calculus_matrix, sqfun_matrix, sqfun_norm
from sqfun_lab.sqfun.kernels import KernelFn, custom_kernel, shift_kernel, tensor_kernel

EquivalenceKind = Literal["subordination", "fourier", "tensor"]


class EquivalenceInputs(TypedDict):
    kernel: NotRequired[KernelFn]
    T: NotRequired[npt.ArrayLike]
    target_grid: NotRequired[DiscreteHilbert]
    psi: NotRequired[HolFn]
    grid: NotRequired[DiscreteHilbert]
    dual_grid: NotRequired[DiscreteHilbert]
    psi_check: NotRequired[Callable[[npt.NDArray[np.float64]], npt.NDArray[np.complex128]]]
    other: NotRequired[KernelFn]
    norm: NotRequired[NormSpec]
    tol: NotRequired[float]


def equivalence_check(
    kind: EquivalenceKind,
    A: npt.ArrayLike,
    x: npt.ArrayLike,
    **inputs: Unpack[EquivalenceInputs],
) -> CheckReport:
    match kind:
        case "subordination":
            return _subordination(
                A, x, inputs["kernel"], inputs["T"], inputs.get("target_grid"), inputs.get("tol", 1e-9)
            )
        case "fourier":
            return _fourier(
                A,
                x,
                inputs["psi"],
                inputs["grid"],
                inputs["dual_grid"],
                inputs.get("psi_check"),
                inputs.get("norm", hilbert_space()),
                inputs.get("tol", 1e-5),
            )
        case "tensor":
            return _tensor(A, x, inputs["kernel"], inputs["other"], inputs.get("tol", 1e-8))
        case unknown:
            raise ValueError(f"Unknown equivalence: {unknown}")


def subordinated_kernel(
    kernel: KernelFn, T: npt.ArrayLike, target_grid: DiscreteHilbert | None = None
) -> KernelFn:
    """k~(s_i, z) = (1 / sqrt(w~_i)) sum_j sqrt(w_j) T_ji k(t_j, z), so that Phi_k~ x = Phi_k x . T."""
    T = as_cmatrix(T)
    if T.shape[0] != kernel.grid.size:
        raise GridMismatchError(f"T has {T.shape[0]} rows but the grid has {kernel.grid.size} nodes")
    if target_grid is None:
        if T.shape[1] != kernel.grid.size:
            raise GridMismatchError("A non-square T needs a target grid")
        target_grid = kernel.grid
    if target_grid.size != T.shape[1]:
        raise GridMismatchError(f"T has {T.shape[1]} columns but the target grid has {target_grid.size} nodes")

    mixing = (T * kernel.grid.sqrt_weights[:, None]).T / target_grid.sqrt_weights[:, None]

    def evaluator(rows, z):
        return mixing[rows] @ kernel.values(z)

    return custom_kernel(
        evaluator,
        target_grid,
        kernel.strip_half_height,
        kernel.class_tag,
        f"subordinated({kernel.name})",
        kernel.preferred,
        kernel.sector,
        indexed=True,
    )


def _subordination(A, x, kernel: KernelFn, T, target_grid, tol: float) -> CheckReport:
    T = as_cmatrix(T)
    original = sqfun_matrix(kernel, A, x)
    subordinated = sqfun_matrix(subordinated_kernel(kernel, T, target_grid), A, x, **kernel.context())

    expected = original.matrix @ T
    scale = max(float(np.max(np.abs(expected))), 1e-300)
    residual = float(np.max(np.abs(subordinated.matrix - expected))) / scale

    ratio_bound = op_norm(T, hilbert_space(), hilbert_space()).value
    ratio = sqfun_norm(subordinated).value / max(sqfun_norm(original).value, 1e-300)
    return CheckReport(
        op="equivalence_check",
        inputs_digest=digest(as_cmatrix(A), as_cvector(x), T),
        value=residual,
        expected=0.0,
        bound=ratio_bound,
        tol=tol,
        passed=residual <= tol and ratio <= ratio_bound * (1 + 1e-9),
        details={"kind": "subordination", "norm_ratio": ratio, "opnormT": ratio_bound},
    )


def inverse_fourier_kernel(
    psi: HolFn,
    grid: DiscreteHilbert,
    dual_grid: DiscreteHilbert,
    psi_check: Callable[[npt.NDArray[np.float64]], npt.NDArray[np.complex128]] | None = None,
) -> KernelFn:
    """psi^v(s) e^{isz} on ``dual_grid``; psi(t + z) = int psi^v(s) e^{is(t+z)} ds."""
    grid.require("lebesgue-line")
    dual_grid.require("lebesgue-line")
    if psi_check is None:
        check = discrete_fourier(grid, psi(grid.nodes), dual_grid.nodes, inverse=True).values
    else:
        check = np.asarray(psi_check(dual_grid.nodes), dtype=np.complex128)
    s = dual_grid.nodes

    def evaluator(rows, z):
        return check[rows, None] * np.exp(1j * s[rows, None] * z[None, :])

    return custom_kernel(
        evaluator, dual_grid, psi.strip_half_height, "bounded", f"inverse({psi.name})", indexed=True
    )


def _fourier(A, x, psi, grid, dual_grid, psi_check, norm: NormSpec, tol: float) -> CheckReport:
    """||Phi_psi x|| = sqrt(2 pi) ||Phi_{psi^v(s) e^{isz}} x|| (Plancherel)."""
    method = with_hilbert_exact() if norm.is_hilbert else with_lattice_exact()
    direct = sqfun_matrix(shift_kernel(psi, grid), A, x, norm=norm)
    transformed = sqfun_matrix(inverse_fourier_kernel(psi, grid, dual_grid, psi_check), A, x, norm=norm)

    lhs = sqfun_norm(direct, **method).value
    rhs = math.sqrt(2 * math.pi) * sqfun_norm(transformed, **method).value
    relative = abs(lhs - rhs) / max(rhs, 1e-300)
    return CheckReport(
        op="equivalence_check",
        inputs_digest=digest(as_cmatrix(A), as_cvector(x), grid.nodes, dual_grid.nodes),
        value=lhs,
        expected=rhs,
        tol=tol,
        passed=relative <= tol,
        details={"kind": "fourier", "relative_error": relative},
    )


def _tensor(A, x, first: KernelFn, second: KernelFn, tol: float) -> CheckReport:
    """HS norm over H (x) K against the nested square function Phi_f(Phi_g x)."""
    direct = sqfun_norm(sqfun_matrix(tensor_kernel(first, second), A, x)).value

    inner = sqfun_matrix(second, A, x)
    B = as_cmatrix(A)
    nested_squares = [
        sqfun_norm(sqfun_matrix(first, B, column)).value ** 2 for column in inner.matrix.T
    ]
    nested = math.sqrt(sum(nested_squares))
    relative = abs(direct - nested) / max(nested, 1e-300)
    return CheckReport(
        op="equivalence_check",
        inputs_digest=digest(B, as_cvector(x)),
        value=direct,
        expected=nested,
        tol=tol,
        passed=relative <= tol,
        details={"kind": "tensor", "relative_error": relative},
    )


def pairing_identity_check(
    f: KernelFn,
    g: KernelFn,
    A: npt.ArrayLike,
    x: npt.ArrayLike,
    x_dual: npt.ArrayLike,
    tol: float = 1e-8,
) -> CheckReport:
    """<<f, g>(A) x, x'> against tr(Phi'(f) x', Phi(g) x).

    When <f, g> is identically one the report also carries the duality bound
    |<x, x'>| <= ||Phi(g) x|| ||Phi'(f) x'|| (Hilbert constants).
    """
    if f.grid is not g.grid:
        raise GridMismatchError("Pairing needs kernels on the same grid")
    x, x_dual = as_cvector(x), as_cvector(x_dual)

    contracted = f.contract(g)
    B = calculus_matrix(f, A)
    lhs = complex(np.vdot(x_dual, calculus_apply(contracted, B, **with_gauss_cauchy()) @ x))

    primal = sqfun_matrix(g, A, x)
    dual = sqfun_matrix(f, A, x_dual, side="dual")
    rhs = trace_pairing(primal.operator, dual.operator)
    residual = abs(lhs - rhs)

    probe = np.linspace(-0.5, 0.5, 5) + 0j
    identity = bool(np.allclose(contracted(probe), 1.0, atol=1e-8))
    details = {"lhs": [lhs.real, lhs.imag], "rhs": [rhs.real, rhs.imag], "contracts_to_one": identity}
    passed = residual <= tol * max(1.0, abs(lhs))
    if identity:
        bound = sqfun_norm(primal).value * sqfun_norm(dual).value
        details |= {"pairing": abs(complex(np.vdot(x_dual, x))), "duality_bound": bound}
        passed &= abs(complex(np.vdot(x_dual, x))) <= bound * (1 + 1e-8)

    return CheckReport(
        op="pairing_identity_check",
        inputs_digest=digest(as_cmatrix(A), x, x_dual),
        value=residual,
        expected=0.0,
        tol=tol,
        passed=passed,
        details=details,
    )


def integral_representation_check(
    f: KernelFn,
    g: KernelFn,
    m: npt.ArrayLike,
    A: npt.ArrayLike,
    x: npt.ArrayLike,
    probes: npt.ArrayLike,
    tol: float = 1e-7,
) -> CheckReport:
    """Phi(<h, u>) x against sum_j w_j <h, m_j> f(t_j, A) g(t_j, A) x, u(z) = sum_j w_j m_j f(t_j, z) g(t_j, z).

    ``m`` holds one vector of H = C^p per grid node, ``probes`` the vectors h.
    """
    if f.grid is not g.grid:
        raise GridMismatchError("Representation needs kernels on the same grid")
    m = np.asarray(m, dtype=np.complex128).reshape(f.grid.size, -1)
    probes = np.atleast_2d(np.asarray(probes, dtype=np.complex128))
    x = as_cvector(x)
    B = calculus_matrix(f, A)
    weights = f.grid.weights

    _, _, sweep = use_strip_operator(B)
    contour, _, integrate, _ = sweep(f.region(), **f.context())
    f_ops = integrate(f.values(contour.nodes))
    g_x = sqfun_matrix(g, A, x).node_values()

    residuals = []
    for h in probes:
        scalar = weights * (m @ np.conj(h))
        u_h = HolFn(
            lambda z, scalar=scalar: (scalar @ (f.values(np.ravel(z)) * g.values(np.ravel(z)))).reshape(np.shape(z)),
            min(f.strip_half_height, g.strip_half_height),
            "bounded",
            "<h,u>",
        )
        direct = calculus_apply(u_h, B, **with_gauss_cauchy()) @ x
        summed = np.einsum("j,jab,jb->a", scalar, f_ops, g_x)
        residuals.append(float(np.linalg.norm(direct - summed)))

    residual = max(residuals)
    return CheckReport(
        op="integral_representation_check",
        inputs_digest=digest(as_cmatrix(A), x, m, probes),
        value=residual,
        expected=0.0,
        tol=tol,
        passed=residual <= tol * max(1.0, float(np.linalg.norm(x))),
        details={"probes": len(probes), "residuals": residuals},
    )


def decomposition_condition(
    fs: list[HolFn], gs: list[HolFn], z_points: npt.ArrayLike
) -> float:
    """sup_z sum_n |f_n(z)| + |g_n(z)| over the sample points."""
    if len(fs) != len(gs):
        raise ValueError(f"Decomposition needs paired sequences, got {len(fs)} and {len(gs)}")
    z = np.asarray(z_points, dtype=np.complex128)
    total = sum((np.abs(f(z)) + np.abs(g(z)) for f, g in zip(fs, gs)), start=np.zeros(z.shape))
    return float(np.max(total))


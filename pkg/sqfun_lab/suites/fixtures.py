"""Seeded random instances shared by the suites."""

import numpy as np
import numpy.typing as npt

from sqfun_lab.calculus.models import HolFn


def complex_normal(rng: np.random.Generator, *shape: int) -> npt.NDArray[np.complex128]:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def unitary(rng: np.random.Generator, d: int) -> npt.NDArray[np.complex128]:
    Q, R = np.linalg.qr(complex_normal(rng, d, d))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def contraction(rng: np.random.Generator, d: int) -> npt.NDArray[np.complex128]:
    A = complex_normal(rng, d, d)
    return A / np.linalg.norm(A, 2) * rng.uniform(0.2, 1.0)


def self_adjoint(rng: np.random.Generator, spectrum: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    spectrum = np.asarray(spectrum, dtype=np.float64)
    U = unitary(rng, spectrum.size)
    return (U * spectrum) @ U.conj().T


def strip_matrix(
    rng: np.random.Generator, d: int, spread: float = 2.0, height: float = 0.3
) -> npt.NDArray[np.complex128]:
    """Diagonalizable with well-conditioned eigenvectors, spectrum in |Im z| <= height."""
    eigenvalues = rng.uniform(-spread, spread, d) + 1j * rng.uniform(-height, height, d)
    P = np.eye(d) + 0.3 * complex_normal(rng, d, d) / np.sqrt(d)
    return P @ np.diag(eigenvalues) @ np.linalg.inv(P)


def positive_matrix(rng: np.random.Generator, d: int) -> npt.NDArray[np.complex128]:
    return self_adjoint(rng, rng.uniform(0.2, 5.0, d))


def lorentzian(center: float = 2.0) -> HolFn:
    """1 / (center^2 + z^2), bounded on |Im z| < center."""
    return HolFn(lambda z: 1 / (center**2 + z**2), center, "bounded", f"1/({center:g}^2+z^2)")


def sector_constant() -> HolFn:
    return HolFn(lambda z: np.ones_like(z), np.pi, "bounded", "1", sector=True)


def sector_resolvent() -> HolFn:
    """(1 + z)^{-1}, bounded on every sector of angle below pi."""
    return HolFn(lambda z: 1 / (1 + z), np.pi, "bounded", "1/(1+z)", sector=True)


def gaussian_packet(scale: float, center: float = 0.0, frequency: float = 0.0) -> HolFn:
    return HolFn(
        lambda z: np.exp(-scale * (z - center) ** 2 + 1j * frequency * z),
        np.inf,
        "elementary",
        f"packet({scale:g},{center:g},{frequency:g})",
    )

"""Closed-form members of the function classes used throughout the lab.

Functions tagged ``elementary`` here are integrable on every line of their
strip by inspection; anything user-defined goes through
``certify_elementary`` first.
"""

import math

import numpy as np

from sqfun_lab.calculus.models import HolFn


def gaussian(scale: float = 1.0) -> HolFn:
    """e^{-scale z^2}."""
    return HolFn(lambda z: np.exp(-scale * z**2), math.inf, "elementary", f"exp(-{scale}z^2)")


def regularizer(n: float) -> HolFn:
    """e_n(z) = e^{-z^2/n}."""
    return HolFn(lambda z: np.exp(-(z**2) / n), math.inf, "elementary", f"e_{n:g}")


def constant(value: complex = 1.0) -> HolFn:
    return HolFn(lambda z: np.full_like(z, value), math.inf, "bounded", f"const({value})")


def resolvent_function(lam: complex) -> HolFn:
    """r_lambda(z) = 1 / (lambda - z), bounded on |Im z| < |Im lambda|."""
    if lam.imag == 0:
        raise ValueError("lambda must lie off the real axis")
    return HolFn(lambda z: 1 / (lam - z), abs(lam.imag), "bounded", f"r_{lam}")


def inverse_power(pole: complex, power: int = 2) -> HolFn:
    """(pole - z)^{-power}; elementary on |Im z| < |Im pole| once power >= 2."""
    tag = "elementary" if power >= 2 else "bounded"
    return HolFn(lambda z: (pole - z) ** (-power), abs(pole.imag), tag, f"({pole}-z)^-{power}")


def sech(omega: float, scale: float = 1.0) -> HolFn:
    """scale / cosh(pi z / 2 omega), elementary on St_omega."""
    a = math.pi / (2 * omega)
    return HolFn(lambda z: scale * stable_sech(a * z), omega, "elementary", f"sech_{omega:g}")


def stable_sech(z: np.ndarray) -> np.ndarray:
    """1 / cosh(z) without overflow for large |Re z|."""
    z = np.where(z.real < 0, -z, z)
    return 2 * np.exp(-z) / (1 + np.exp(-2 * z))

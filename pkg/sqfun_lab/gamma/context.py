from typing import Literal
from typing_extensions import TypedDict


class HilbertExactMethod(TypedDict):
    gamma_variant: Literal["hilbert-exact"]


class LatticeExactMethod(TypedDict):
    gamma_variant: Literal["lattice-exact"]


class MonteCarloMethod(TypedDict):
    gamma_variant: Literal["monte-carlo"]
    samples: int
    seed: int


GammaMethod = HilbertExactMethod | LatticeExactMethod | MonteCarloMethod


class GammaNormContext(TypedDict):
    gamma_method: GammaMethod
    num_workers: int


def with_hilbert_exact() -> GammaNormContext:
    return {"gamma_method": {"gamma_variant": "hilbert-exact"}, "num_workers": 1}


def with_lattice_exact() -> GammaNormContext:
    return {"gamma_method": {"gamma_variant": "lattice-exact"}, "num_workers": 1}


def with_monte_carlo(samples: int = 20000, seed: int = 0, num_workers: int = 1) -> GammaNormContext:
    if samples < 2:
        raise ValueError(f"Monte Carlo needs at least 2 samples, got {samples}")
    return {
        "gamma_method": {"gamma_variant": "monte-carlo", "samples": samples, "seed": seed},
        "num_workers": num_workers,
    }

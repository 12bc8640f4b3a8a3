from sqfun_lab.calculus.apply import calculus_apply
from sqfun_lab.calculus.context import with_elementary, with_gauss_cauchy, with_regularized
from sqfun_lab.calculus.hooks import use_strip_operator
from sqfun_lab.frames.bounds import frame_bounds, l1_frame_bound
from sqfun_lab.frames.context import with_operator_hs, with_set, with_shift_range
from sqfun_lab.gamma.context import with_hilbert_exact, with_lattice_exact, with_monte_carlo
from sqfun_lab.gamma.norm import gamma_norm
from sqfun_lab.grids.make import make_grid
from sqfun_lab.representations.context import (
    with_gauss_cauchy_formula,
    with_laplace_formula,
    with_poisson_formula,
)
from sqfun_lab.representations.reconstruct import reconstruct
from sqfun_lab.sqfun.build import sqfun_matrix, sqfun_norm

__all__ = (
    "calculus_apply",
    "frame_bounds",
    "gamma_norm",
    "l1_frame_bound",
    "make_grid",
    "reconstruct",
    "sqfun_matrix",
    "sqfun_norm",
    "use_strip_operator",
    "with_elementary",
    "with_gauss_cauchy",
    "with_gauss_cauchy_formula",
    "with_hilbert_exact",
    "with_laplace_formula",
    "with_lattice_exact",
    "with_monte_carlo",
    "with_operator_hs",
    "with_poisson_formula",
    "with_regularized",
    "with_set",
    "with_shift_range",
)

"""Gamma-family special functions, principal-part calculus and Euler-equation tools."""
from .config import DEFAULT, EvalConfig
from .dirichlet import beta_fn, casimir_energy, chi, eta, lfe_residual, spectral_zeta, zeta
from .eulerops import char_roots, parse_equation, solution_basis, to_delta, verify_basis
from .kurepa import const_L1, const_L2, pp_closed, res_closed
from .meromorphic import laurent_coeff, pp_contour, pp_product, pp_symmetric, residue_contour
from .specfun import digamma, expint_ei, gamma, gamma_oracle, trigamma_h1

__version__ = "0.1.0"

__all__ = [
    "DEFAULT",
    "EvalConfig",
    "beta_fn",
    "casimir_energy",
    "char_roots",
    "chi",
    "const_L1",
    "const_L2",
    "digamma",
    "eta",
    "expint_ei",
    "gamma",
    "gamma_oracle",
    "laurent_coeff",
    "lfe_residual",
    "parse_equation",
    "pp_closed",
    "pp_contour",
    "pp_product",
    "pp_symmetric",
    "res_closed",
    "residue_contour",
    "solution_basis",
    "spectral_zeta",
    "to_delta",
    "trigamma_h1",
    "verify_basis",
    "zeta",
]

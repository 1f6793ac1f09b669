"""Exact and multiprecision tools for linear forms in odd zeta values."""

__version__ = "0.1.0"

from .decomposition import CoeffTable, Params, coeff_table, oracle_coeff
from .errors import AmbiguityError, ConvergenceError, DomainError, IntegralityError, PrecisionError
from .linear_form import ZetaLinearForm, build_polys, general_z_value, scaled_integers, value_at_one
from .analytic import J_quadrature, J_residue, S_direct, SeriesValue
from .saddle import SaddleData, admissibility_check, asymptote_check, find_saddle, rate_exponent, w_family

__all__ = [
    "__version__",
    "Params",
    "CoeffTable",
    "coeff_table",
    "oracle_coeff",
    "ZetaLinearForm",
    "build_polys",
    "value_at_one",
    "general_z_value",
    "scaled_integers",
    "SeriesValue",
    "S_direct",
    "J_residue",
    "J_quadrature",
    "SaddleData",
    "w_family",
    "find_saddle",
    "admissibility_check",
    "asymptote_check",
    "rate_exponent",
    "DomainError",
    "PrecisionError",
    "ConvergenceError",
    "IntegralityError",
    "AmbiguityError",
]

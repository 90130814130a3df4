"""Certified elementary functions over Gaussian rationals.

Every approximation returns a :class:`Certified` value: an exact Gaussian
rational together with a proven additive or multiplicative error bound.
"""

from .approx import (
    abs_approx,
    error_compose,
    exp_band,
    exp_full,
    exp_strip,
    log_complex,
    log_disk,
    log_exp_strip,
    log_mult,
    log_pos,
    pi_approx,
    sqrt_complex,
    sqrt_pos,
)
from .constants import arg_approx, const_approx, nth_root, pow_complex, prod_gaussian_int, prod_gaussian_rat
from .errors import CertfunError, DomainError, ParameterError, ParseError, PrecisionError
from .oracle import IntervalBound, interval_oracle
from .rational import (
    ADDITIVE,
    MULTIPLICATIVE,
    Certified,
    Gaussian,
    bitlen,
    floor_half,
    margin_witness,
    max_bits,
    pow_int,
    prod_seq,
    round_half,
    sgn_plus,
    sum_seq,
)
from .series import (
    difference_identity,
    e_partial,
    exp_tail_bound,
    lambda_partial,
    log_tail_bound,
    sqrt_series,
    sqrt_series_error,
)
from .trig import (
    FORWARD,
    INVERSE,
    PARAMETER_TABLE,
    LatticeSpec,
    dist_lattice,
    find_param,
    forward_approx,
    inverse_approx,
    param_ok,
)

__version__ = "0.1.0"

__all__ = [
    "ADDITIVE",
    "FORWARD",
    "INVERSE",
    "MULTIPLICATIVE",
    "PARAMETER_TABLE",
    "CertfunError",
    "Certified",
    "DomainError",
    "Gaussian",
    "IntervalBound",
    "LatticeSpec",
    "ParameterError",
    "ParseError",
    "PrecisionError",
    "abs_approx",
    "arg_approx",
    "bitlen",
    "const_approx",
    "difference_identity",
    "dist_lattice",
    "e_partial",
    "error_compose",
    "exp_band",
    "exp_full",
    "exp_strip",
    "exp_tail_bound",
    "find_param",
    "floor_half",
    "forward_approx",
    "interval_oracle",
    "inverse_approx",
    "lambda_partial",
    "log_complex",
    "log_disk",
    "log_exp_strip",
    "log_mult",
    "log_pos",
    "log_tail_bound",
    "margin_witness",
    "max_bits",
    "nth_root",
    "param_ok",
    "pi_approx",
    "pow_complex",
    "pow_int",
    "prod_gaussian_int",
    "prod_gaussian_rat",
    "prod_seq",
    "round_half",
    "sgn_plus",
    "sqrt_complex",
    "sqrt_pos",
    "sqrt_series",
    "sqrt_series_error",
    "sum_seq",
]

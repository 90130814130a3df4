"""Constants, argument, complex powers, roots and exact iterated products."""

from __future__ import annotations

import math
from fractions import Fraction

from .approx import (
    _exp_band_value,
    _log_complex_value,
    _log_shift,
    exp_strip,
    log_complex,
    log_disk,
)
from .errors import DomainError
from .rational import (
    ADDITIVE,
    MULTIPLICATIVE,
    Certified,
    Gaussian,
    bitlen,
    ceil_abs,
    check_bits,
    floor_log2,
    prod_seq,
    round_half,
)

CONSTANTS = ("pi", "e", "log2")


def const_approx(tag: str, n: int) -> Certified:
    """``pi``, ``e`` or ``log2`` within ``2**-n``."""
    check_bits(n)
    if tag == "pi":
        value = log_complex(Gaussian(-1), n).value.im
    elif tag == "e":
        # relative 2**-(n+2) of e < 3 is an absolute error below 2**-n
        value = exp_strip(Gaussian(1), 1, n + 2).value.re
    elif tag == "log2":
        value = -log_disk(Gaussian(Fraction(1, 2)), 2, n).value.re
    else:
        raise DomainError("unknown-constant", f"unknown constant {tag!r}; expected one of {CONSTANTS}")
    return Certified(Gaussian(value), ADDITIVE, n)


def arg_approx(z, n: int) -> Certified:
    """Principal argument in ``(-pi, pi]`` within ``2**-n``."""
    z = Gaussian.coerce(z)
    check_bits(n)
    if z.is_zero():
        raise DomainError("zero-input", "arg of 0")
    return Certified(Gaussian(log_complex(z, n).value.im), ADDITIVE, n)


def _log_magnitude_bound(z: Gaussian) -> int:
    """Integer ``B >= |Log z|`` from the binary exponent of ``|z|**2``."""
    e = floor_log2(z.norm())
    # |log|z|| = |log|z|^2| / 2 <= (|e| + 1) log(2) / 2, and |arg z| <= pi < 4
    return abs(e) + 1 + 4


def pow_complex(z, w, n: int) -> Certified:
    """Principal ``z**w = exp(w Log z)`` with relative error ``2**-n``."""
    z = Gaussian.coerce(z)
    w = Gaussian.coerce(w)
    check_bits(n)
    if z.is_zero():
        raise DomainError("zero-base", "0**w is not defined here")
    if w.is_zero() or z == 1:
        return Certified(Gaussian(1), MULTIPLICATIVE, n)
    # log with relative error 2**-k1 perturbs w Log z by at most
    # |w| B 2**-k1 <= 2**-(n+4); exp turns that into a relative 2**-(n+3)
    k1 = n + bitlen(ceil_abs(w) + 1) + bitlen(_log_magnitude_bound(z)) + 4
    log_z = _log_complex_value(z, k1 + _log_shift(z))
    p = w * log_z
    value = _exp_band_value(p, math.ceil(abs(p.re)), n + 2)
    return Certified(value, MULTIPLICATIVE, n)


def nth_root(z, k: int, n: int) -> Certified:
    """Principal ``k``-th root with relative error ``2**-n``; the root of 0 is 0."""
    z = Gaussian.coerce(z)
    check_bits(n)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise DomainError("domain-violation", f"root index must be a positive int, got {k!r}")
    if z.is_zero():
        return Certified(Gaussian(0), MULTIPLICATIVE, n)
    if k == 1:
        return Certified(z, MULTIPLICATIVE, n)
    return pow_complex(z, Gaussian(Fraction(1, k)), n)


def _as_gaussian_int(z) -> Gaussian:
    z = Gaussian.coerce(z)
    if not z.is_integral():
        raise DomainError("non-integral", f"{z} is not a Gaussian integer")
    return z


def prod_gaussian_int(seq) -> Gaussian:
    """Exact product of Gaussian integers, computed through logarithms.

    With ``r = 1 + sum bitlen(|x_j| + |y_j|)`` and ``t = r + 3 + bitlen(len)``,
    the product is ``round_half(E(sum_j L(z_j, t), r, t))``: the rounding
    absorbs the certified error, so the result is exact.
    """
    zs = [_as_gaussian_int(z) for z in seq]
    if any(z.is_zero() for z in zs):
        return Gaussian(0)
    r = 1 + sum(bitlen(int(abs(z.re) + abs(z.im))) for z in zs)
    t = r + 3 + bitlen(len(zs))
    total = Gaussian(0)
    for z in zs:
        total = total + _log_complex_value(z, t)
    if abs(total.re) > r:  # |Re total| <= log|prod| + 2**-t < r
        raise AssertionError("logarithm sum out of range")
    return round_half(_exp_band_value(total, r, t))


def prod_gaussian_rat(seq) -> Gaussian:
    """Exact product of Gaussian rationals.

    Each factor is written as a Gaussian integer over a positive integer
    denominator; numerators go through :func:`prod_gaussian_int`.
    """
    nums, dens = [], []
    for z in seq:
        z = Gaussian.coerce(z)
        d = math.lcm(z.re.denominator, z.im.denominator)
        nums.append(z * d)
        dens.append(d)
    top = prod_gaussian_int(nums)
    return top / prod_seq(dens)


__all__ = [
    "CONSTANTS",
    "arg_approx",
    "const_approx",
    "nth_root",
    "pow_complex",
    "prod_gaussian_int",
    "prod_gaussian_rat",
]

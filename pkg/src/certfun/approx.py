"""Certified approximations of exp, sqrt, |z|, log and their compositions.

Public functions return :class:`Certified` records.  The leaf
approximators (:func:`exp_strip`, :func:`sqrt_pos`, :func:`log_disk`) return
the exact prescribed partial sums.  Composite approximators follow the same
recipes, and every nested sub-result they consume comes from a fixed-point
twin (the ``_fx`` helpers).  Each twin meets the same certificate as the
exact leaf it stands in for, with the rounding charged to a spare bit.  This
keeps intermediate denominators short.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, ParameterError
from .rational import (
    ADDITIVE,
    MULTIPLICATIVE,
    Certified,
    Gaussian,
    abs_le,
    as_fraction,
    bitlen,
    ceil_log2,
    ceil_sqrt,
    check_bits,
    floor_half,
    floor_log2,
    round_relative,
    sgn_plus,
)
from .series import (
    e_partial,
    exp_fixed,
    lambda_fixed,
    lambda_partial,
    sqrt_series,
    sqrt_series_fixed,
)

ZERO = Gaussian(0)
ONE = Gaussian(1)
HALF = Fraction(1, 2)
TWO_FIFTHS = Fraction(2, 5)
EIGHT_FIFTHS = Fraction(8, 5)


def _dyadic(num: int, K: int) -> Fraction:
    return Fraction(num, 1 << K)


def _need(cond, kind, message):
    if not cond:
        raise ParameterError(kind, message)


# ---------------------------------------------------------------------------
# exponential on a disk


def exp_strip(z, r, n) -> Certified:
    """``e(z, n + 8 r**2)``: relative error ``2**-n`` for ``|z| <= r``."""
    z = Gaussian.coerce(z)
    check_bits(n)
    check_bits(r, "r")
    _need(abs_le(z, r), "parameter-violation", f"|z| <= r fails for z={z}, r={r}")
    return Certified(e_partial(z, n + 8 * r * r), MULTIPLICATIVE, n)


def _exp_strip_fx(z: Gaussian, r: int, n: int) -> Gaussian:
    """Dyadic value within relative ``2**-n`` of ``exp z`` for ``|z| <= r``.

    It tracks the exact partial sum ``e(z, n + 1 + 8 r**2)`` to within
    ``2**-(n+1) |exp z|``.
    """
    n_terms = n + 1 + 8 * r * r
    rre = math.ceil(abs(z.re))
    lose = (3 * rre + 1) // 2  # exp(-|Re z|) >= 2**-lose
    r0 = ceil_sqrt(z.norm())
    K = n + 6 + lose + (3 * r0 + 1) // 2 + bitlen(8 * r0 + 2 * n + 64)
    while True:
        sr, si, U = exp_fixed(z, n_terms, K)
        if U <= 1 << max(0, K - lose - n - 1):
            return Gaussian(_dyadic(sr, K), _dyadic(si, K))
        K += bitlen(U)


# ---------------------------------------------------------------------------
# square roots and absolute value


def _sqrt_normalize(x: Fraction):
    """``m`` with ``2/5 <= 4**-m x <= 8/5`` and ``u = 1 - 4**-m x``."""
    e = floor_log2(x)
    m = (e + 1) // 2
    y = x / Fraction(4) ** m
    while y > EIGHT_FIFTHS:
        m += 1
        y /= 4
    while y < TWO_FIFTHS:
        m -= 1
        y *= 4
    return m, 1 - y


def _pow2(m: int) -> Fraction:
    return Fraction(1 << m) if m >= 0 else Fraction(1, 1 << -m)


def sqrt_pos(x, n) -> Certified:
    """Positive square root of a positive rational, relative error ``2**-n``."""
    x = as_fraction(x)
    check_bits(n)
    if x <= 0:
        raise DomainError("nonpositive-input", f"sqrt_pos needs x > 0, got {x}")
    m, u = _sqrt_normalize(x)
    y = sqrt_series(u, 2 * (n + 3))
    return Certified(Gaussian(_pow2(m) * (1 - 2 * y)), MULTIPLICATIVE, n)


def _sqrt_pos_fx(x: Fraction, n: int) -> Fraction:
    m, u = _sqrt_normalize(x)
    n_terms = 2 * (n + 4)
    K = n + 6 + 2 * bitlen(n_terms)
    while True:
        s, U = sqrt_series_fixed(u, n_terms, K)
        # 2**m * 2 * U * 2**-K <= 2**-(n+1) * sqrt(x), with sqrt(x) >= 2**(m-1)
        if U <= 1 << (K - n - 3):
            return _pow2(m) * _dyadic((1 << K) - 2 * s, K)
        K += bitlen(U)


def _abs_value(z: Gaussian, n: int, mode: str, sqrt) -> Fraction:
    if mode == ADDITIVE:
        m = max(0, ceil_log2(abs(z.re) + abs(z.im)))
        return sqrt(z.norm(), n + m)
    return sqrt(z.norm(), n)


def abs_approx(z, n, mode=MULTIPLICATIVE) -> Certified:
    """``|z|`` with an additive or multiplicative bound."""
    z = Gaussian.coerce(z)
    check_bits(n)
    if mode not in (ADDITIVE, MULTIPLICATIVE):
        raise ValueError(f"unknown mode {mode!r}")
    if z.is_zero():
        if mode == MULTIPLICATIVE:
            raise DomainError("zero-input", "|0| has no multiplicative approximation")
        return Certified(ZERO, ADDITIVE, n)
    exact = lambda q, k: sqrt_pos(q, k).value.re  # noqa: E731
    return Certified(Gaussian(_abs_value(z, n, mode, exact)), mode, n)


def _abs_fx(z: Gaussian, n: int, mode: str = MULTIPLICATIVE) -> Fraction:
    if z.is_zero():
        return Fraction(0)
    return _abs_value(z, n, mode, _sqrt_pos_fx)


def _sqrt_complex_value(z: Gaussian, n: int) -> Gaussian:
    if z.re < 0:
        return _sqrt_complex_value(-z, n).mul_i() * sgn_plus(z.im)
    r = _abs_fx(z, n + 1)
    u = _sqrt_pos_fx((r + z.re) / 2, n + 1)
    return Gaussian(u, z.im / (2 * u))


def sqrt_complex(z, n) -> Certified:
    """Principal square root, relative error ``2**-n`` (needs ``n >= 2``)."""
    z = Gaussian.coerce(z)
    check_bits(n)
    if z.is_zero():
        raise DomainError("zero-input", "sqrt_complex(0) has no certified form")
    if n < 2:
        raise ParameterError("precision-too-small", "sqrt_complex needs n >= 2")
    return Certified(_sqrt_complex_value(z, n), MULTIPLICATIVE, n)


def _sqrt_complex_fx(z: Gaussian, n: int) -> Gaussian:
    return round_relative(_sqrt_complex_value(z, n + 1), n + 3)


# ---------------------------------------------------------------------------
# logarithms


def log_disk(z, r, n) -> Certified:
    """``-lambda(1 - z, n r)`` for ``|z - 1| <= 1 - 1/r``; additive ``2**-n``."""
    z = Gaussian.coerce(z)
    check_bits(n)
    check_bits(r, "r")
    _need(r >= 1, "parameter-violation", "log_disk needs r >= 1")
    _need(abs_le(z - 1, 1 - Fraction(1, r)), "parameter-violation", f"|z-1| <= 1-1/r fails for z={z}, r={r}")
    return Certified(-lambda_partial(1 - z, n * r), ADDITIVE, n)


def _log_disk_fx(z: Gaussian, r: int, n: int) -> Gaussian:
    w = 1 - z
    if w.is_zero():
        return ZERO
    rho = min(1 - Fraction(1, r), Fraction(ceil_sqrt(w.norm() * (1 << 32)), 1 << 16))
    if rho >= 1:
        raise ParameterError("parameter-violation", f"log disk argument {z} too far from 1")
    n_terms = (n + 1) * r
    K = n + 8 + 2 * bitlen(n_terms)
    while True:
        sr, si, U = lambda_fixed(w, n_terms, K, rho)
        if U <= 1 << (K - n - 1):
            return Gaussian(-_dyadic(sr, K), -_dyadic(si, K))
        K += bitlen(U)


@lru_cache(maxsize=256)
def _log_half_fx(n: int) -> Fraction:
    return _log_disk_fx(Gaussian(HALF), 2, n).re


def _log_pos_value(x: Fraction, n: int) -> Fraction:
    m = ceil_log2(x)
    xp = x / _pow2(m)
    head = _log_disk_fx(Gaussian(xp), 2, n + 1).re
    if m == 0:
        return head
    return head - m * _log_half_fx(n + abs(m))


def log_pos(x, n) -> Certified:
    """Real logarithm of a positive rational; additive ``2**-n``."""
    x = as_fraction(x)
    check_bits(n)
    if x <= 0:
        raise DomainError("nonpositive-input", f"log_pos needs x > 0, got {x}")
    return Certified(Gaussian(_log_pos_value(x, n)), ADDITIVE, n)


def _log_complex_value(z: Gaussian, n: int) -> Gaussian:
    if z == ONE:
        return ZERO
    z1 = _sqrt_complex_fx(z, n + 7)
    z2 = _sqrt_complex_fx(z1, n + 7)
    z3 = _sqrt_complex_fx(z2, n + 7)
    x = _sqrt_pos_fx(z3.norm(), n + 7)
    w = z3 / x
    if not abs_le(w - 1, HALF):  # guaranteed by the construction
        raise AssertionError(f"eighth root {w} left the disk")
    return _log_pos_value(x, n + 5) * 8 + _log_disk_fx(w, 2, n + 5) * 8


def log_complex(z, n) -> Certified:
    """Principal logarithm (``Im`` in ``(-pi, pi]``); additive ``2**-n``."""
    z = Gaussian.coerce(z)
    check_bits(n)
    if z.is_zero():
        raise DomainError("zero-input", "log of 0")
    return Certified(_log_complex_value(z, n), ADDITIVE, n)


def _log_shift(z: Gaussian) -> int:
    """``h`` such that ``|Log z| >= 2**-h``."""
    q = (z - 1).norm()
    if q >= Fraction(1, 4):
        return 2
    return bitlen(math.ceil(1 / q))


def log_mult(z, n) -> Certified:
    """Principal logarithm with relative error ``2**-n``."""
    z = Gaussian.coerce(z)
    check_bits(n)
    if z.is_zero():
        raise DomainError("zero-input", "log of 0")
    if z == ONE:
        raise DomainError("log-is-zero", "log 1 = 0 has no multiplicative approximation")
    return Certified(_log_complex_value(z, n + _log_shift(z)), MULTIPLICATIVE, n)


def log_exp_strip(z, r, n) -> Certified:
    """``log(exp z)`` on the strip ``|Im z| < 1``; equals ``z`` within ``2**-n``."""
    z = Gaussian.coerce(z)
    check_bits(n)
    check_bits(r, "r")
    _need(abs_le(z, r), "parameter-violation", f"|z| <= r fails for z={z}, r={r}")
    _need(abs(z.im) < 1, "strip-violation", f"|Im z| < 1 fails for z={z}")
    e = _exp_strip_fx(z, r, n + 2)
    return Certified(_log_complex_value(e, n + 1), ADDITIVE, n)


# ---------------------------------------------------------------------------
# pi, and exp with argument reduction

_PI_CACHE: dict[int, Fraction] = {}
_PI_LOCK = threading.Lock()


def pi_approx(k: int) -> Fraction:
    """``Im log(-1)`` at precision ``k``: within ``2**-k`` of pi (memoized)."""
    with _PI_LOCK:
        cached = _PI_CACHE.get(k)
    if cached is not None:
        return cached
    value = _log_complex_value(Gaussian(-1), k).im
    with _PI_LOCK:
        return _PI_CACHE.setdefault(k, value)


def _resolve_r(z: Gaussian, r):
    if r == "auto" or r is None:
        return math.ceil(abs(z.re))
    return r


def _exp_band_value(z: Gaussian, r: int, n: int) -> Gaussian:
    y = z.im
    if abs(y) < 3:
        shift = 0  # |y| / (2P) < 1/2 whatever P in (3.1, 3.2) is used
    else:
        m = max(3, ceil_log2(abs(y)))
        P = pi_approx(n + m + 1)
        shift = 2 * P * floor_half(y / (2 * P))
    zr = Gaussian(z.re, y - shift)
    if not abs_le(zr, r + 4):  # guaranteed by |Re z| <= r
        raise AssertionError(f"reduced argument {zr} exceeds r + 4")
    return _exp_strip_fx(zr, r + 4, n + 2)


def exp_band(z, r, n) -> Certified:
    """``exp z`` for ``|Re z| <= r`` and any ``Im z``; relative ``2**-n``.

    ``r="auto"`` takes ``ceil(|Re z|)``.
    """
    z = Gaussian.coerce(z)
    check_bits(n)
    r = check_bits(_resolve_r(z, r), "r")
    _need(abs(z.re) <= r, "parameter-violation", f"|Re z| <= r fails for z={z}, r={r}")
    return Certified(_exp_band_value(z, r, n), MULTIPLICATIVE, n)


def exp_full(z, r, n) -> Certified:
    """``exp z`` for ``Re z <= r``; additive ``2**-n`` (0 below ``Re z < -n``)."""
    z = Gaussian.coerce(z)
    check_bits(n)
    r = check_bits(_resolve_r(z, r) if r != "auto" else max(0, math.ceil(z.re)), "r")
    _need(z.re <= r, "parameter-violation", f"Re z <= r fails for z={z}, r={r}")
    if z.re < -n:
        return Certified(ZERO, ADDITIVE, n)
    return Certified(_exp_band_value(z, max(n, r), n + 2 * r), ADDITIVE, n)


# ---------------------------------------------------------------------------
# error calculus


def _largest_exponent(bound: Fraction) -> int:
    """Largest ``k`` with ``2**-k >= bound``."""
    return -ceil_log2(bound)


def error_compose(e1, e2, op):
    """Combine two bounds ``(mode, exponent)``.

    ``mul`` and ``recip`` work on multiplicative bounds, ``add`` on additive
    ones.  The result is the best exponent ``k`` whose ``2**-k`` still covers
    the composed error.
    """
    mode1, n1 = e1
    if op == "recip":
        if mode1 != MULTIPLICATIVE:
            raise ParameterError("incompatible-modes", "recip needs a multiplicative bound")
        # |z-1| <= 2**-n1 <= eps/(1+eps)  gives  |1/z - 1| <= eps
        eps_in = Fraction(1, 1 << n1)
        if eps_in >= 1:
            raise ParameterError("incompatible-modes", "reciprocal of a bound >= 1 is unbounded")
        return MULTIPLICATIVE, _largest_exponent(eps_in / (1 - eps_in))
    if e2 is None:
        raise ParameterError("incompatible-modes", f"{op} needs two bounds")
    mode2, n2 = e2
    a, b = Fraction(1, 1 << n1), Fraction(1, 1 << n2)
    if op == "mul":
        if mode1 != MULTIPLICATIVE or mode2 != MULTIPLICATIVE:
            raise ParameterError("incompatible-modes", "mul needs multiplicative bounds")
        return MULTIPLICATIVE, _largest_exponent(a + b + a * b)
    if op == "add":
        if mode1 != ADDITIVE or mode2 != ADDITIVE:
            raise ParameterError("incompatible-modes", "add needs additive bounds")
        return ADDITIVE, _largest_exponent(a + b)
    raise ValueError(f"unknown op {op!r}")

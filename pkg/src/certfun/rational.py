"""Exact rational and Gaussian-rational arithmetic.

Scalars are :class:`fractions.Fraction` (always in lowest terms).  A
:class:`Gaussian` is an immutable pair of them.  The module also hosts the
small integer utilities shared by the approximators and the precision
ceiling.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, ParameterError, PrecisionError

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"
MODES = (ADDITIVE, MULTIPLICATIVE)

DEFAULT_MAX_BITS = 4096


def max_bits():
    """Current precision ceiling (``CERTFUN_MAX_BITS`` overrides the default)."""
    raw = os.environ.get("CERTFUN_MAX_BITS")
    if raw is None or not raw.strip():
        return DEFAULT_MAX_BITS
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError("bad-ceiling", f"CERTFUN_MAX_BITS={raw!r} is not an integer") from None
    if value < 0:
        raise ParameterError("bad-ceiling", "CERTFUN_MAX_BITS must be nonnegative")
    return value


def check_bits(n, name="n"):
    """Validate a precision, truncation or magnitude parameter."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 0:
        raise ParameterError("negative-parameter", f"{name} must be nonnegative, got {n}")
    ceiling = max_bits()
    if n > ceiling:
        raise PrecisionError("precision-ceiling", f"{name}={n} exceeds the ceiling {ceiling}")
    return n


def as_fraction(x) -> Fraction:
    """Coerce an exact scalar to ``Fraction``; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Gaussian:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("im", "re")

    def __init__(self, re=0, im=0):
        if isinstance(re, Gaussian):
            if im != 0:
                raise TypeError("cannot combine a Gaussian real part with an imaginary part")
            re, im = re.re, re.im
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gaussian values are immutable")

    @classmethod
    def coerce(cls, value) -> Gaussian:
        if isinstance(value, Gaussian):
            return value
        if isinstance(value, complex):
            raise TypeError("complex floats are not exact; build a Gaussian instead")
        return cls(value)

    # predicates -----------------------------------------------------------
    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_real(self):
        return self.im == 0

    def is_imaginary(self):
        """True on the imaginary axis (including 0)."""
        return self.re == 0

    def is_integral(self):
        return self.re.denominator == 1 and self.im.denominator == 1

    # arithmetic -----------------------------------------------------------
    def conj(self):
        return Gaussian(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        if not isinstance(other, Gaussian):
            try:
                other = Gaussian.coerce(other)
            except TypeError:
                return NotImplemented
        return Gaussian(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Gaussian):
            try:
                other = Gaussian.coerce(other)
            except TypeError:
                return NotImplemented
        return Gaussian(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        try:
            other = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if not isinstance(other, Gaussian):
            try:
                f = as_fraction(other)
            except TypeError:
                return NotImplemented
            return Gaussian(self.re * f, self.im * f)
        a, b, c, d = self.re, self.im, other.re, other.im
        return Gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def reciprocal(self):
        q = self.norm()
        if q == 0:
            raise ZeroDivisionError("reciprocal of 0")
        return Gaussian(self.re / q, -self.im / q)

    def __truediv__(self, other):
        if not isinstance(other, Gaussian):
            try:
                f = as_fraction(other)
            except TypeError:
                return NotImplemented
            if f == 0:
                raise ZeroDivisionError("division by 0")
            return Gaussian(self.re / f, self.im / f)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        try:
            other = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return other * self.reciprocal()

    def __pow__(self, n):
        if isinstance(n, bool) or not isinstance(n, int):
            return NotImplemented
        return pow_int(self, n)

    def mul_i(self):
        """Exact multiplication by ``i``."""
        return Gaussian(-self.im, self.re)

    def scale2(self, k):
        """Exact multiplication by ``2**k`` (``k`` may be negative)."""
        if k >= 0:
            f = Fraction(1 << k)
        else:
            f = Fraction(1, 1 << -k)
        return Gaussian(self.re * f, self.im * f)

    # comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (complex, str)):
            return NotImplemented
        try:
            f = as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.im == 0 and self.re == f

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return format_gaussian(self)

    def __repr__(self):
        return f"Gaussian({format_gaussian(self)!r})"


ZERO = Gaussian(0)
ONE = Gaussian(1)
I = Gaussian(0, 1)


def _format_part(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_gaussian(z: Gaussian) -> str:
    """Canonical text form, accepted back by the CLI parser."""
    if z.im == 0:
        return _format_part(z.re)
    im = _format_part(z.im) + "i"
    if z.re == 0:
        return im
    sign = "" if z.im < 0 else "+"
    return f"{_format_part(z.re)}{sign}{im}"


@dataclass(frozen=True)
class Certified:
    """An approximation with a proven error bound.

    ``additive``: ``|value - f| <= 2**-exponent``.
    ``multiplicative``: ``|value - f| <= 2**-exponent * |f|``.
    """

    value: Gaussian
    mode: str
    exponent: int

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not isinstance(self.value, Gaussian):
            object.__setattr__(self, "value", Gaussian.coerce(self.value))

    @property
    def bound(self) -> Fraction:
        return Fraction(1, 1 << self.exponent)

    def abs_error_bound(self) -> Fraction:
        """A rational upper bound on ``|value - f|``."""
        eps = self.bound
        if self.mode == ADDITIVE:
            return eps
        if eps >= 1:
            raise ParameterError("no-finite-bound", "multiplicative exponent 0 gives no absolute bound")
        # |f| <= |value| / (1 - eps); bound |value| by |re| + |im|.
        size = abs(self.value.re) + abs(self.value.im)
        return eps * size / (1 - eps)

    def compact(self) -> Certified:
        """Round to a short dyadic and give up one bit of the bound."""
        if self.exponent < 1:
            return self
        if self.mode == ADDITIVE:
            v = round_gaussian(self.value, self.exponent + 2)
        else:
            v = round_relative(self.value, self.exponent + 3)
        return Certified(v, self.mode, self.exponent - 1)


# ---------------------------------------------------------------------------
# integer utilities


def bitlen(x: int) -> int:
    """Least ``k`` with ``2**k > x`` for ``x >= 0``."""
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError("bitlen expects an int")
    if x < 0:
        raise DomainError("negative-input", "bitlen is defined for nonnegative integers")
    return x.bit_length()


def abs_le(z, r) -> bool:
    """Exact test of ``|z| <= r``."""
    z = Gaussian.coerce(z)
    r = as_fraction(r)
    return r >= 0 and r * r >= z.norm()


def floor_half(x: Fraction) -> int:
    """``floor(x + 1/2)``."""
    x = as_fraction(x)
    return math.floor(x + Fraction(1, 2))


def round_half(z) -> Gaussian:
    """Componentwise ``floor(t + 1/2)``."""
    z = Gaussian.coerce(z)
    return Gaussian(floor_half(z.re), floor_half(z.im))


def sgn_plus(y) -> int:
    """+1 for ``y >= 0``, -1 otherwise."""
    return 1 if as_fraction(y) >= 0 else -1


def pow_int(z, n: int) -> Gaussian:
    """Exact ``z**n`` by repeated squaring."""
    z = Gaussian.coerce(z)
    if n < 0:
        if z.is_zero():
            raise DomainError("zero-base-negative-exponent", "0 has no negative powers")
        return pow_int(z.reciprocal(), -n)
    result = ONE
    base = z
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def _tree(items, op, empty):
    items = list(items)
    if not items:
        return empty
    while len(items) > 1:
        paired = [op(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def sum_seq(seq) -> Gaussian:
    """Exact sum, reduced pairwise."""
    return _tree((Gaussian.coerce(z) for z in seq), lambda a, b: a + b, ZERO)


def prod_seq(seq) -> Fraction:
    """Exact product of rationals, reduced pairwise."""
    return _tree((as_fraction(x) for x in seq), lambda a, b: a * b, Fraction(1))


def margin_witness(x, y) -> int:
    """Least ``h`` with ``x <= y - 1/h``; requires ``x < y``."""
    x, y = as_fraction(x), as_fraction(y)
    if not x < y:
        raise DomainError("non-strict-order", f"need x < y, got {x} >= {y}")
    return math.ceil(1 / (y - x))


# ---------------------------------------------------------------------------
# dyadic rounding and magnitude bounds


def rdiv(x: int, d: int) -> int:
    """``x / d`` rounded to nearest, ties away from zero (``d > 0``)."""
    q = (2 * abs(x) + d) // (2 * d)
    return q if x >= 0 else -q


def round_fraction(q: Fraction, bits: int) -> Fraction:
    """Nearest multiple of ``2**-bits``; error at most ``2**-(bits+1)``."""
    if bits >= 0:
        return Fraction(rdiv(q.numerator << bits, q.denominator), 1 << bits)
    return Fraction(rdiv(q.numerator, q.denominator << -bits) << -bits)


def round_gaussian(z: Gaussian, bits: int) -> Gaussian:
    """Componentwise :func:`round_fraction`; error below ``2**-(bits+1/2)``."""
    return Gaussian(round_fraction(z.re, bits), round_fraction(z.im, bits))


def floor_log2(q: Fraction) -> int:
    """Largest ``e`` with ``2**e <= q`` for ``q > 0``."""
    q = as_fraction(q)
    if q <= 0:
        raise DomainError("nonpositive-input", "floor_log2 needs a positive argument")
    e = q.numerator.bit_length() - q.denominator.bit_length()
    if e >= 0:
        if q.numerator < q.denominator << e:
            e -= 1
    elif q.numerator << -e < q.denominator:
        e -= 1
    return e


def round_relative(z: Gaussian, bits: int) -> Gaussian:
    """Round so that ``|result - z| <= 2**-bits * |z|``; keeps 0 exact."""
    if z.is_zero():
        return z
    top = max(abs(z.re), abs(z.im))
    e = floor_log2(top)
    # grid 2**(e - bits): error <= 2**(e-bits) / sqrt(2) < 2**-bits * top <= 2**-bits * |z|
    return round_gaussian(z, bits - e)


def ceil_sqrt(q: Fraction) -> int:
    """Least integer ``k >= 0`` with ``k*k >= q``."""
    q = as_fraction(q)
    if q <= 0:
        return 0
    k = math.isqrt(q.numerator // q.denominator)
    while k * k < q:
        k += 1
    return k


def abs_upper(z: Gaussian) -> Fraction:
    """A cheap rational upper bound on ``|z|`` (within a factor sqrt(2))."""
    return abs(z.re) + abs(z.im)


def abs_lower(z: Gaussian) -> Fraction:
    """A cheap rational lower bound on ``|z|``."""
    return max(abs(z.re), abs(z.im))


def ceil_abs(z: Gaussian) -> int:
    """Least integer ``k`` with ``|z| <= k``."""
    return ceil_sqrt(z.norm())


def ceil_log2(q: Fraction) -> int:
    """Least ``m`` with ``2**m >= q`` for ``q > 0``."""
    e = floor_log2(q)
    return e if Fraction(2) ** e == q else e + 1

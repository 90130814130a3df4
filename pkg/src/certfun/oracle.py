"""Independent rigorous enclosures, used to check certified results.

Nothing here goes through the certified approximators.  Values are carried
as rectangles of real intervals whose endpoints are integers at a common
binary scale ``2**-W`` and are rounded outward after every operation; the
working scale is raised until the enclosure is narrow enough.  pi comes from
Machin's formula, exp from scaling and squaring with a factorial tail bound,
log from a real logarithm of the squared modulus plus an interval arctangent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, PrecisionError
from .rational import Gaussian, check_bits, max_bits

Interval = tuple  # (lo, hi) integers, meaning [lo, hi] * 2**-W
Box = tuple  # (re: Interval, im: Interval)


class _Retry(Exception):
    """The working scale is too coarse to decide a sign."""


@dataclass(frozen=True)
class IntervalBound:
    """Componentwise enclosure ``lo <= value <= hi``."""

    lo: Gaussian
    hi: Gaussian

    def __post_init__(self):
        if self.lo.re > self.hi.re or self.lo.im > self.hi.im:
            raise ValueError("empty enclosure")

    @property
    def width(self) -> Fraction:
        return max(self.hi.re - self.lo.re, self.hi.im - self.lo.im)

    def contains(self, z, slack=0) -> bool:
        """Whether ``z`` lies in the enclosure widened by ``slack`` per component."""
        z = Gaussian.coerce(z)
        s = Fraction(slack)
        return self.lo.re - s <= z.re <= self.hi.re + s and self.lo.im - s <= z.im <= self.hi.im + s

    def midpoint(self) -> Gaussian:
        return Gaussian((self.lo.re + self.hi.re) / 2, (self.lo.im + self.hi.im) / 2)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class _Ctx:
    """Outward-rounded interval arithmetic at scale ``2**-W``."""

    def __init__(self, W: int):
        self.W = W
        self.S = 1 << W

    # -- real intervals ------------------------------------------------------

    def const(self, q) -> Interval:
        q = Fraction(q)
        num = q.numerator * self.S
        return num // q.denominator, _ceil_div(num, q.denominator)

    def add(self, a, b):
        return a[0] + b[0], a[1] + b[1]

    def sub(self, a, b):
        return a[0] - b[1], a[1] - b[0]

    def neg(self, a):
        return -a[1], -a[0]

    def mul(self, a, b):
        p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
        return min(p) >> self.W, _ceil_div(max(p), self.S)

    def sq(self, a):
        if a[0] <= 0 <= a[1]:
            return 0, _ceil_div(max(a[0] * a[0], a[1] * a[1]), self.S)
        return self.mul(a, a)

    def div(self, a, b):
        if b[0] <= 0 <= b[1]:
            raise _Retry()
        q = [x * self.S for x in a]
        cands = [(x, y) for x in q for y in b]
        lo = min(x // y for x, y in cands)
        hi = max(_ceil_div(x, y) for x, y in cands)
        return lo, hi

    def div_int(self, a, k: int):
        return a[0] // k, _ceil_div(a[1], k)

    def shift(self, a, s: int):
        """Multiply by ``2**-s``."""
        return a[0] >> s, -((-a[1]) >> s)

    def widen(self, a, e: Fraction):
        d = _ceil_div(e.numerator * self.S, e.denominator)
        return a[0] - d, a[1] + d

    def sqrt(self, a):
        lo = math.isqrt(max(a[0], 0) * self.S)
        x = max(a[1], 0) * self.S
        hi = math.isqrt(x)
        if hi * hi < x:
            hi += 1
        return lo, hi

    def absv(self, a):
        if a[0] >= 0:
            return a
        if a[1] <= 0:
            return self.neg(a)
        return 0, max(-a[0], a[1])

    def mag(self, a) -> int:
        """Integer upper bound on ``max |a|`` (in real units)."""
        return _ceil_div(max(abs(a[0]), abs(a[1])), self.S)

    # -- boxes ---------------------------------------------------------------

    def cbox(self, z: Gaussian) -> Box:
        return self.const(z.re), self.const(z.im)

    def cadd(self, a, b):
        return self.add(a[0], b[0]), self.add(a[1], b[1])

    def csub(self, a, b):
        return self.sub(a[0], b[0]), self.sub(a[1], b[1])

    def cneg(self, a):
        return self.neg(a[0]), self.neg(a[1])

    def cmul(self, a, b):
        re = self.sub(self.mul(a[0], b[0]), self.mul(a[1], b[1]))
        im = self.add(self.mul(a[0], b[1]), self.mul(a[1], b[0]))
        return re, im

    def cmul_i(self, a):
        return self.neg(a[1]), a[0]

    def cmul_neg_i(self, a):
        return a[1], self.neg(a[0])

    def cnorm(self, a):
        return self.add(self.sq(a[0]), self.sq(a[1]))

    def cdiv(self, a, b):
        n = self.cnorm(b)
        re = self.add(self.mul(a[0], b[0]), self.mul(a[1], b[1]))
        im = self.sub(self.mul(a[1], b[0]), self.mul(a[0], b[1]))
        return self.div(re, n), self.div(im, n)

    def cscale_half(self, a):
        return self.shift(a[0], 1), self.shift(a[1], 1)

    def cwiden(self, a, e: Fraction):
        return self.widen(a[0], e), self.widen(a[1], e)


# ---------------------------------------------------------------------------
# real kernels


def _atan_small(c: _Ctx, t: Interval) -> Interval:
    """``atan t`` for ``|t| <= 1/2``: alternating series plus its first omitted term."""
    t2 = c.sq(t)
    power = t
    total = t
    j = 0
    while True:
        j += 1
        power = c.mul(power, t2)
        bound = Fraction(1, 1 << (2 * j + 1)) / (2 * j + 1)
        term = c.div_int(power, 2 * j + 1)
        total = c.sub(total, term) if j % 2 else c.add(total, term)
        if bound * (1 << 2) <= Fraction(1, c.S):
            return c.widen(total, bound / 4)


@lru_cache(maxsize=64)
def _pi(W: int) -> Interval:
    c = _Ctx(W)
    a = _atan_small(c, c.const(Fraction(1, 5)))
    b = _atan_small(c, c.const(Fraction(1, 239)))
    return c.sub(c.mul(c.const(16), a), c.mul(c.const(4), b))


def _atan_point(c: _Ctx, t: int) -> Interval:
    """Enclosure of ``atan(t * 2**-W)`` for a single scaled endpoint."""
    if t < 0:
        return c.neg(_atan_point(c, -t))
    if 2 * t <= c.S:
        return _atan_small(c, (t, t))
    pi = _pi(c.W)
    if t <= 2 * c.S:
        u = c.div((t - c.S, t - c.S), (t + c.S, t + c.S))
        return c.add(c.shift(pi, 2), _atan_small(c, u))
    u = c.div((c.S, c.S), (t, t))
    return c.sub(c.shift(pi, 1), _atan_small(c, u))


def _atan(c: _Ctx, t: Interval) -> Interval:
    return _atan_point(c, t[0])[0], _atan_point(c, t[1])[1]


@lru_cache(maxsize=64)
def _ln2(W: int) -> Interval:
    c = _Ctx(W)
    return _lambda(c, c.const(Fraction(1, 2)))


def _lambda(c: _Ctx, u: Interval) -> Interval:
    """``-log(1-u)`` for ``|u| <= 1/2``; tail ``rho**(N+1) / ((N+1)(1-rho))``."""
    power = u
    total = u
    j = 1
    while True:
        tail = Fraction(2, (j + 1) << (j + 1))
        if tail <= Fraction(1, c.S):
            return c.widen(total, tail)
        j += 1
        power = c.mul(power, u)
        total = c.add(total, c.div_int(power, j))


def _ln_point(c: _Ctx, x: int) -> Interval:
    """Enclosure of ``ln(x * 2**-W)`` for a positive scaled integer."""
    if x <= 0:
        raise _Retry()
    q = Fraction(x, c.S)
    e = q.numerator.bit_length() - q.denominator.bit_length()
    while q / Fraction(2) ** e >= Fraction(3, 2):
        e += 1
    while q / Fraction(2) ** e < Fraction(3, 4):
        e -= 1
    head = c.neg(_lambda(c, c.const(1 - q / Fraction(2) ** e)))
    return c.add(head, c.mul(c.const(e), _ln2(c.W)))


def _ln(c: _Ctx, a: Interval) -> Interval:
    return _ln_point(c, a[0])[0], _ln_point(c, a[1])[1]


# ---------------------------------------------------------------------------
# complex kernels


def _exp(c: _Ctx, z: Box) -> Box:
    x, y = z
    if x == y == (0, 0):
        return c.const(1), (0, 0)
    pi = _pi(c.W)
    mid_y = Fraction(y[0] + y[1], 2 * c.S)
    mid_pi = Fraction(pi[0] + pi[1], 2 * c.S)
    k = math.floor(mid_y / (2 * mid_pi) + Fraction(1, 2))
    if k:
        y = c.sub(y, c.mul(c.const(2 * k), pi))
    bound = c.mag(x) + c.mag(y)
    s = max(0, (4 * bound).bit_length())
    w = (c.shift(x, s), c.shift(y, s))
    one = c.const(1)
    total = (one, (0, 0))
    term = total
    j = 0
    fact = 1
    while True:
        j += 1
        fact *= j
        tail = Fraction(2, fact << (2 * j))
        if tail <= Fraction(1, c.S):
            total = c.cwiden(total, tail)
            break
        term = c.cmul(term, w)
        term = (c.div_int(term[0], j), c.div_int(term[1], j))
        total = c.cadd(total, term)
    for _ in range(s):
        total = c.cmul(total, total)
    return total


def _arg(c: _Ctx, z: Box) -> Interval:
    x, y = z
    pi = _pi(c.W)
    if x[0] > 0:
        return _atan(c, c.div(y, x))
    if y[0] > 0:
        return c.sub(c.shift(pi, 1), _atan(c, c.div(x, y)))
    if y[1] < 0:
        return c.sub(c.neg(c.shift(pi, 1)), _atan(c, c.div(x, y)))
    if y == (0, 0) and x[1] < 0:
        return pi
    raise _Retry()


def _log(c: _Ctx, z: Box) -> Box:
    return c.shift(_ln(c, c.cnorm(z)), 1), _arg(c, z)


def _sqrt(c: _Ctx, z: Box) -> Box:
    x, y = z
    if y == (0, 0):
        if x[0] >= 0:
            return c.sqrt(x), (0, 0)
        if x[1] <= 0:
            return (0, 0), c.sqrt(c.neg(x))
        raise _Retry()
    r = c.sqrt(c.cnorm(z))
    if x[0] + x[1] >= 0:
        u = c.sqrt(c.shift(c.add(r, x), 1))
        return u, c.div(y, c.add(u, u))
    if y[0] >= 0:
        sign = 1
    elif y[1] < 0:
        sign = -1
    else:
        raise _Retry()
    v = c.sqrt(c.shift(c.sub(r, x), 1))
    re = c.div(c.absv(y), c.add(v, v))
    return (re, v) if sign > 0 else (re, c.neg(v))


def _recip(c: _Ctx, z: Box) -> Box:
    return c.cdiv((c.const(1), (0, 0)), z)


def _sign_split(c: _Ctx, z: Box):
    """``(s, e**(-s z), e**(-2 s z))`` with ``s`` the sign of the real midpoint."""
    s = 1 if z[0][0] + z[0][1] >= 0 else -1
    sz = z if s > 0 else c.cneg(z)
    e1 = _exp(c, c.cneg(sz))
    return s, e1, c.cmul(e1, e1)


def _hyp(c: _Ctx, tag: str, z: Box) -> Box:
    one = (c.const(1), (0, 0))
    if tag in ("sinh", "cosh"):
        a, b = _exp(c, z), _exp(c, c.cneg(z))
        return c.cscale_half(c.csub(a, b) if tag == "sinh" else c.cadd(a, b))
    s, e1, u = _sign_split(c, z)
    if tag == "tanh":
        out = c.cdiv(c.csub(one, u), c.cadd(one, u))
    elif tag == "coth":
        out = c.cdiv(c.cadd(one, u), c.csub(one, u))
    elif tag == "sech":
        return c.cdiv(c.cadd(e1, e1), c.cadd(one, u))
    else:
        out = c.cdiv(c.cadd(e1, e1), c.csub(one, u))
    return out if s > 0 else c.cneg(out)


_TRIG = {"sin": "sinh", "cos": "cosh", "tan": "tanh", "cot": "coth", "sec": "sech", "csc": "csch"}
# multiply the hyperbolic value at i z by: -i (sin, tan), 1 (cos, sec), i (cot, csc)
_TRIG_FACTOR = {"sin": -1, "tan": -1, "cos": 0, "sec": 0, "cot": 1, "csc": 1}


def _forward(c: _Ctx, tag: str, z: Box) -> Box:
    if tag in _TRIG:
        h = _hyp(c, _TRIG[tag], c.cmul_i(z))
        f = _TRIG_FACTOR[tag]
        return h if f == 0 else (c.cmul_i(h) if f > 0 else c.cmul_neg_i(h))
    return _hyp(c, tag, z)


def _inverse(c: _Ctx, tag: str, z: Box) -> Box:
    one = (c.const(1), (0, 0))
    half_pi = (c.shift(_pi(c.W), 1), (0, 0))
    if tag == "arsinh":
        return _log(c, c.cadd(z, _sqrt(c, c.cadd(c.cmul(z, z), one))))
    if tag == "arcsin":
        return c.cmul_neg_i(_inverse(c, "arsinh", c.cmul_i(z)))
    if tag == "arcosh":
        q = c.cmul(_sqrt(c, c.cadd(z, one)), _sqrt(c, c.csub(z, one)))
        return _log(c, c.cadd(z, q))
    if tag == "arccos":
        return c.csub(half_pi, _inverse(c, "arcsin", z))
    if tag == "artanh":
        return c.cscale_half(_log(c, c.cdiv(c.cadd(one, z), c.csub(one, z))))
    if tag == "arctan":
        return c.cmul_neg_i(_inverse(c, "artanh", c.cmul_i(z)))
    if tag == "arcoth":
        return c.cscale_half(_log(c, c.cdiv(c.cadd(z, one), c.csub(z, one))))
    if tag == "arccot":
        return c.csub(half_pi, _inverse(c, "arctan", z))
    base = {"arsech": "arcosh", "arcsec": "arccos", "arcsch": "arsinh", "arccsc": "arcsin"}[tag]
    return _inverse(c, base, _recip(c, z))


# ---------------------------------------------------------------------------
# public entry point

_FORWARD = ("sinh", "sin", "cosh", "cos", "tanh", "tan", "coth", "cot", "sech", "sec", "csch", "csc")
_INVERSE = (
    "arsinh", "arcsin", "arcosh", "arccos", "artanh", "arctan",
    "arcoth", "arccot", "arsech", "arcsec", "arcsch", "arccsc",
)  # fmt: skip
ORACLE_FUNCTIONS = ("exp", "log", "sqrt", "abs", "arg", "pow", "root", "pi", "e", "log2") + _FORWARD + _INVERSE

_POLES = {"coth": 0, "csch": 0, "cot": 0, "csc": 0}
_EXCLUDED = {
    "artanh": (1, -1),
    "arcoth": (1, -1),
    "arctan": (Gaussian(0, 1), Gaussian(0, -1)),
    "arccot": (Gaussian(0, 1), Gaussian(0, -1)),
    "arsech": (0,),
    "arcsec": (0,),
    "arcsch": (0,),
    "arccsc": (0,),
    "log": (0,),
    "arg": (0,),
}


def _check_domain(function: str, z: Gaussian, aux):
    if function not in ORACLE_FUNCTIONS:
        raise DomainError("unknown-function", f"the oracle has no {function!r}")
    if z in _EXCLUDED.get(function, ()) or (function in _POLES and z.is_zero()):
        raise DomainError("domain-violation", f"{function} is undefined at {z}")
    if function == "pow":
        if aux is None:
            raise DomainError("domain-violation", "pow needs an exponent")
        if z.is_zero():
            raise DomainError("domain-violation", "0**w is not defined here")
    if function == "root" and (not isinstance(aux, int) or isinstance(aux, bool) or aux < 1):
        raise DomainError("domain-violation", "root needs a positive integer index")


def _evaluate(c: _Ctx, function: str, z: Gaussian, aux) -> Box:
    box = c.cbox(z)
    if function == "exp":
        return _exp(c, box)
    if function == "log":
        return _log(c, box)
    if function == "sqrt":
        return _sqrt(c, box)
    if function == "abs":
        return c.sqrt(c.cnorm(box)), (0, 0)
    if function == "arg":
        return _arg(c, box), (0, 0)
    if function == "pow":
        return _exp(c, c.cmul(c.cbox(Gaussian.coerce(aux)), _log(c, box)))
    if function == "root":
        if z.is_zero():
            return box
        lg = _log(c, box)
        return _exp(c, (c.div_int(lg[0], aux), c.div_int(lg[1], aux)))
    if function == "pi":
        return _pi(c.W), (0, 0)
    if function == "e":
        return _exp(c, (c.const(1), (0, 0)))
    if function == "log2":
        return _ln2(c.W), (0, 0)
    if function in _FORWARD:
        return _forward(c, function, box)
    return _inverse(c, function, box)


def interval_oracle(function: str, point=0, bits: int = 53, aux=None) -> IntervalBound:
    """Enclosure of ``function(point)`` with componentwise width ``<= 2**-bits``.

    ``aux`` is the exponent for ``pow`` and the index for ``root``.  Constants
    (``pi``, ``e``, ``log2``) ignore ``point``.
    """
    z = Gaussian.coerce(point)
    check_bits(bits, "bits")
    _check_domain(function, z, aux)
    W = bits + 24
    cap = 8 * max(bits, 64) + 4 * max_bits()
    while W <= cap:
        c = _Ctx(W)
        try:
            re, im = _evaluate(c, function, z, aux)
        except (_Retry, ZeroDivisionError):
            W += W // 2
            continue
        width = max(re[1] - re[0], im[1] - im[0])
        if width << bits <= c.S:
            lo = Gaussian(Fraction(re[0], c.S), Fraction(im[0], c.S))
            hi = Gaussian(Fraction(re[1], c.S), Fraction(im[1], c.S))
            return IntervalBound(lo, hi)
        # widths scale like 2**-W; add the missing bits plus some margin
        missing = max(width.bit_length() + bits - W, 0)
        W += missing + 16 + W // 4
    raise PrecisionError("width-not-achieved", f"no enclosure of width 2**-{bits} below {cap} working bits")


__all__ = ["ORACLE_FUNCTIONS", "IntervalBound", "interval_oracle"]

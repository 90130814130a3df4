"""Hyperbolic and trigonometric functions and their inverses.

Forward functions are assembled from certified exponentials.  Each
intermediate is carried as a *ball* (a center plus a rational radius) and
the working precision is raised until the final radius meets the requested
bound.  The magnitude parameter ``r`` is checked against the admissibility
table in :data:`PARAMETER_TABLE` before anything is computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .approx import (
    _abs_fx,
    _exp_band_value,
    _log_complex_value,
    _sqrt_complex_fx,
    pi_approx,
)
from .errors import DomainError, ParameterError, PrecisionError
from .rational import (
    ADDITIVE,
    MODES,
    MULTIPLICATIVE,
    Certified,
    Gaussian,
    abs_lower,
    abs_upper,
    bitlen,
    ceil_abs,
    ceil_log2,
    check_bits,
    floor_half,
    max_bits,
    round_gaussian,
    round_relative,
    sgn_plus,
)

FORWARD = ("sinh", "sin", "cosh", "cos", "tanh", "tan", "coth", "cot", "sech", "sec", "csch", "csc")
INVERSE = (
    "arsinh", "arcsin", "arcosh", "arccos", "artanh", "arctan",
    "arcoth", "arccot", "arsech", "arcsec", "arcsch", "arccsc",
)  # fmt: skip

_I = Gaussian(0, 1)
_HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# distance to pi-scaled lattices


@dataclass(frozen=True)
class LatticeSpec:
    """The progression ``pi (beta + alpha Z)``, optionally without ``k = 0``."""

    alpha: Gaussian
    beta: Gaussian = Gaussian(0)
    nonzero_only: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alpha", Gaussian.coerce(self.alpha))
        object.__setattr__(self, "beta", Gaussian.coerce(self.beta))
        if self.alpha.is_zero():
            raise DomainError("domain-violation", "lattice step alpha must be nonzero")
        if self.nonzero_only and not self.beta.is_zero():
            raise DomainError("domain-violation", "nonzero_only applies to lattices through 0")


def _lattice_shift(spec: LatticeSpec, z: Gaussian) -> int:
    """``m`` large enough that ``pi`` to ``2**-(n+m)`` fixes the nearest points."""
    a, b = spec.alpha, spec.beta
    c = 1
    # 2**c |alpha| pi**2 >= 1, using pi**2 > 9
    while Fraction(4) ** c * 81 * a.norm() < 1:
        c += 1
    # 2**(c-2) >= 2|beta| + (5/2)|alpha|
    while Fraction(2) ** (c - 2) < 2 * abs_upper(b) + Fraction(5, 2) * abs_upper(a):
        c += 1
    size = abs(z.re) + abs(z.im) + 1
    return c + max(0, ceil_log2(size))


def dist_lattice(z, spec: LatticeSpec, n: int) -> Certified:
    """Distance from ``z`` to ``pi (beta + alpha Z)`` within ``2**-n``."""
    z = Gaussian.coerce(z)
    check_bits(n)
    return Certified(Gaussian(_dist_value(z, spec, n)), ADDITIVE, n)


def _dist_value(z: Gaussian, spec: LatticeSpec, n: int) -> Fraction:
    m = _lattice_shift(spec, z)
    P = pi_approx(n + m)
    alpha, beta = spec.alpha, spec.beta
    N = floor_half((alpha.reciprocal() * (z / P - beta)).re)
    candidates = {N - 1, N, N + 1}
    if spec.nonzero_only:
        candidates |= {-1, 1}
        candidates.discard(0)
    return min(_abs_fx(z - (beta + alpha * k) * P, n + 1, ADDITIVE) for k in sorted(candidates))


# ---------------------------------------------------------------------------
# admissible magnitude parameters

_RE = ("re",)
_IM = ("im",)


def _dist(axis, alpha, beta=0, nonzero=False):
    return ("dist", axis, LatticeSpec(Gaussian.coerce(alpha), Gaussian.coerce(beta), nonzero))


_PI_I_HALF = _dist("imag", _I, Gaussian(0, _HALF))
_PI_HALF = _dist("real", 1, _HALF)
_PI_I_NZ = _dist("imag", _I, 0, True)
_PI_NZ = _dist("real", 1, 0, True)
_HALF_PI_I_NZ = _dist("imag", Gaussian(0, _HALF), 0, True)
_HALF_PI_NZ = _dist("real", _HALF, 0, True)

#: (additive conditions, extra multiplicative conditions) per function
PARAMETER_TABLE = {
    "sinh": ((_RE,), (_PI_I_NZ,)),
    "sin": ((_IM,), (_PI_NZ,)),
    "cosh": ((_RE,), (_PI_I_HALF,)),
    "cos": ((_IM,), (_PI_HALF,)),
    "tanh": ((_PI_I_HALF,), (_HALF_PI_I_NZ,)),
    "tan": ((_PI_HALF,), (_HALF_PI_NZ,)),
    "coth": ((_PI_I_NZ,), (_HALF_PI_I_NZ,)),
    "cot": ((_PI_NZ,), (_HALF_PI_NZ,)),
    "sech": ((_PI_I_HALF,), (_RE,)),
    "sec": ((_PI_HALF,), (_IM,)),
    "csch": ((_PI_I_NZ,), (_RE,)),
    "csc": ((_PI_NZ,), (_IM,)),
}


def _conditions(tag, mode):
    add, mult = PARAMETER_TABLE[tag]
    return add if mode == ADDITIVE else add + mult


def _holds(cond, z: Gaussian, r: int) -> bool:
    if cond[0] == "re":
        return abs(z.re) <= r
    if cond[0] == "im":
        return abs(z.im) <= r
    _, axis, spec = cond
    if axis == "imag" and z.re != 0:
        return True
    if axis == "real" and z.im != 0:
        return True
    return _dist_value(z, spec, r + 1) >= Fraction(1, 1 << r)


def _check_tag(tag, allowed):
    if tag not in allowed:
        raise DomainError("unknown-function", f"unknown function {tag!r}")


def _check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")


def param_ok(tag: str, z, r: int, mode: str) -> bool:
    """Whether ``r`` satisfies the table condition for ``(tag, mode)``."""
    _check_tag(tag, FORWARD)
    _check_mode(mode)
    z = Gaussian.coerce(z)
    return all(_holds(c, z, r) for c in _conditions(tag, mode))


def find_param(tag: str, z, mode: str) -> int:
    """Search ``r = 1, 2, 4, ...`` for an admissible parameter."""
    z = Gaussian.coerce(z)
    r = 1
    ceiling = max_bits()
    while r <= ceiling:
        if param_ok(tag, z, r, mode):
            return r
        r *= 2
    raise ParameterError("parameter-violation", f"no admissible r <= {ceiling} for {tag} at {z}")


# ---------------------------------------------------------------------------
# balls


class _Short(Exception):
    """Working precision too low to separate a denominator from 0."""


@dataclass(frozen=True)
class Ball:
    """Center ``c`` and radius ``rad``: the set ``{w : |w - c| <= rad}``."""

    c: Gaussian
    rad: Fraction

    @classmethod
    def additive(cls, v: Gaussian, k: int):
        return cls(v, Fraction(1, 1 << k))

    @classmethod
    def multiplicative(cls, v: Gaussian, k: int):
        eps = Fraction(1, 1 << k)
        return cls(v, eps * abs_upper(v) / (1 - eps))

    @classmethod
    def exact(cls, v):
        return cls(Gaussian.coerce(v), Fraction(0))

    def __add__(self, o):
        return Ball(self.c + o.c, self.rad + o.rad)

    def __sub__(self, o):
        return Ball(self.c - o.c, self.rad + o.rad)

    def __neg__(self):
        return Ball(-self.c, self.rad)

    def scale(self, g):
        g = Gaussian.coerce(g)
        return Ball(self.c * g, self.rad * abs_upper(g))

    def __mul__(self, o):
        return Ball(
            self.c * o.c,
            abs_upper(self.c) * o.rad + abs_upper(o.c) * self.rad + self.rad * o.rad,
        )

    def inv(self, bits: int):
        low = abs_lower(self.c)
        if low <= self.rad:
            raise _Short()
        rad = self.rad / (low * (low - self.rad))
        center = round_gaussian(self.c.reciprocal(), bits)
        return Ball(center, rad + Fraction(1, 1 << bits))

    def __truediv__(self, o):
        return self * o.inv(self._bits_hint(o))

    @staticmethod
    def _bits_hint(o):
        return 64 + max(0, -ceil_log2(o.rad)) if o.rad > 0 else 256

    def trim(self, bits: int):
        """Round the center to ``2**-bits`` and push the radius up to a dyadic."""
        c = round_gaussian(self.c, bits)
        rad = self.rad + Fraction(1, 1 << bits)
        scaled = rad * (1 << (bits + 2))
        rad = Fraction(-(-scaled.numerator // scaled.denominator), 1 << (bits + 2))
        return Ball(c, rad)


def _finish(ball_at, n: int, mode: str, start: int) -> Gaussian:
    """Raise the working precision until ``ball_at(k)`` certifies ``2**-n``."""
    k = start
    cap = 2 * max_bits() + n + 64
    target = Fraction(1, 1 << (n + 1))
    while True:
        try:
            b = ball_at(k)
        except _Short:
            b = None
        if b is not None:
            if mode == ADDITIVE:
                if b.rad <= target:
                    return round_gaussian(b.c, n + 2)
                deficit = ceil_log2(b.rad / target)
            else:
                low = abs_lower(b.c) - b.rad
                if low > 0 and b.rad <= target * low:
                    return round_relative(b.c, n + 2)
                deficit = ceil_log2(b.rad / (target * low)) if low > 0 else k // 2
        else:
            deficit = k // 2
        k += max(deficit, 4) + 2
        if k > cap:
            raise PrecisionError("precision-ceiling", f"working precision passed {cap} bits")


# ---------------------------------------------------------------------------
# forward functions

# tag -> (hyperbolic kernel, factor applied to the kernel, rotate argument by i)
_TRIG = {
    "sin": ("sinh", Gaussian(0, -1)),
    "cos": ("cosh", Gaussian(1)),
    "tan": ("tanh", Gaussian(0, -1)),
    "cot": ("coth", _I),
    "sec": ("sech", Gaussian(1)),
    "csc": ("csch", _I),
}
_ODD = {"sinh", "tanh", "coth", "csch"}


def _exp_add(w: Gaussian, r: int, k: int) -> Gaussian:
    """``exp w`` within ``2**-k`` for ``Re w <= r`` (no ceiling check)."""
    if w.re < -k:
        return Gaussian(0)
    # relative 2**-(k+2r) of a value below e**r < 2**(2r)
    return _exp_band_value(w, max(k, r), k + 2 * r)


def _exp_ball(w: Gaussian, k: int) -> Ball:
    r = math.ceil(abs(w.re))
    return Ball.multiplicative(_exp_band_value(w, r, k), k)


def _hyperbolic(kernel: str, w: Gaussian, r: int, n: int, mode: str) -> Gaussian:
    x = w.re
    s = sgn_plus(x)
    if kernel in ("sinh", "tanh") and w.is_zero():
        return Gaussian(0)
    if kernel in ("coth", "csch") and w.is_zero():
        raise DomainError("pole-input", f"{kernel} has a pole at 0")
    if kernel in ("tanh", "coth") and abs(x) > max(n, 1):
        # |f - sgn x| <= 2 e^{-2|x|} / (1 - e^{-2|x|}) <= 2**-n here
        return Gaussian(s)
    if kernel in ("sech", "csch") and mode == ADDITIVE and abs(x) >= n + 2:
        # |f| <= 2 e^{-|x|} / (1 - e^{-2|x|}) <= 2**-n here
        return Gaussian(0)

    if kernel in ("sinh", "cosh"):
        sign = -1 if kernel == "sinh" else 1

        def ball_at(k):
            a = Ball.additive(_exp_add(w, r, k), k)
            b = Ball.additive(_exp_add(-w, r, k), k)
            total = a - b if sign < 0 else a + b
            return Ball(total.c / 2, total.rad / 2)

        if mode == ADDITIVE:
            # the prescribed sum is already within 2**-n; no search needed
            return ball_at(n).c
        return _finish(ball_at, n, mode, n + 2)

    one = Ball.exact(1)

    def ball_at(k):
        u = _exp_ball(-2 * s * w, k)
        if kernel == "tanh":
            out = (one - u) / (one + u)
        elif kernel == "coth":
            out = (one + u) / (one - u)
        else:
            e = _exp_ball(-s * w, k).scale(2)
            out = e / (one + u) if kernel == "sech" else e / (one - u)
        if kernel != "sech":
            out = out.scale(s)
        return out.trim(k + 4)

    return _finish(ball_at, n, mode, n + 4)


def forward_approx(tag: str, z, r, n: int, mode: str = ADDITIVE) -> Certified:
    """Certified value of one of the 12 hyperbolic/trigonometric functions.

    ``r`` must satisfy the table condition for ``(tag, mode)``; pass
    ``"auto"`` to search for one.
    """
    _check_tag(tag, FORWARD)
    _check_mode(mode)
    z = Gaussian.coerce(z)
    check_bits(n)
    if r == "auto":
        r = find_param(tag, z, mode)
    check_bits(r, "r")
    if not param_ok(tag, z, r, mode):
        raise ParameterError("parameter-violation", f"r={r} is not admissible for {tag} ({mode}) at {z}")
    if tag in _TRIG:
        kernel, factor = _TRIG[tag]
        value = _hyperbolic(kernel, z.mul_i(), r, n, mode) * factor
    else:
        value = _hyperbolic(tag, z, r, n, mode)
    return Certified(value, mode, n)


# ---------------------------------------------------------------------------
# inverse functions


def _log_add(s: Gaussian, n: int) -> Gaussian:
    return _log_complex_value(s, n)


def _arsinh(z: Gaussian, n: int) -> Gaussian:
    q = z * z + 1
    if q.is_zero():
        return _log_add(z, n)
    M = ceil_abs(z)
    # |sqrt(q)| <= M + 1 and |s| >= 1 / (M + |sqrt q|), so a relative error
    # 2**-k in sqrt(q) is a relative 2**-k (M+1)(2M+1) in s
    k = n + 3 + bitlen((M + 1) * (2 * M + 1))
    s = z + _sqrt_complex_fx(q, k)
    return _log_add(s, n + 1)


def _arcosh(z: Gaussian, n: int) -> Gaussian:
    if z == 1:
        return Gaussian(0)
    if z == -1:
        return _log_add(z, n)
    M = ceil_abs(z)
    err_scale = 6 * (M + 1)
    k = n + 3 + bitlen(err_scale)
    q = _sqrt_complex_fx(z + 1, k) * _sqrt_complex_fx(z - 1, k)
    s = z + q
    want = sgn_plus(z.im)
    if sgn_plus(s.im) != want:
        if want > 0:
            s = Gaussian(s.re, 0)
        else:
            s = Gaussian(s.re, -Fraction(3 * (M + 1), 1 << (k + 2)))
    return _log_add(s, n + 1)


def _half_pi(n: int) -> Fraction:
    return pi_approx(n + 1) / 2


def _recip(z: Gaussian) -> Gaussian:
    if z.is_zero():
        raise DomainError("domain-violation", "0 is outside the domain")
    return z.reciprocal()


def _inverse_additive(tag: str, z: Gaussian, n: int) -> Gaussian:
    if tag == "arsinh":
        return _arsinh(z, n)
    if tag == "arcsin":
        return _arsinh(z.mul_i(), n) * Gaussian(0, -1)
    if tag == "arcosh":
        return _arcosh(z, n)
    if tag == "arccos":
        return Gaussian(_half_pi(n + 1)) - _inverse_additive("arcsin", z, n + 1)
    if tag in ("artanh", "arcoth"):
        if z == 1 or z == -1:
            raise DomainError("domain-violation", f"{tag} is undefined at {z}")
        w = (1 + z) / (1 - z) if tag == "artanh" else (z + 1) / (z - 1)
        return _log_add(w, n) / 2
    if tag == "arctan":
        if z == _I or z == -_I:
            raise DomainError("domain-violation", f"arctan is undefined at {z}")
        return _inverse_additive("artanh", z.mul_i(), n) * Gaussian(0, -1)
    if tag == "arccot":
        if z == _I or z == -_I:
            raise DomainError("domain-violation", f"arccot is undefined at {z}")
        return Gaussian(_half_pi(n + 1)) - _inverse_additive("arctan", z, n + 1)
    base = {"arsech": "arcosh", "arcsec": "arccos", "arcsch": "arsinh", "arccsc": "arcsin"}[tag]
    return _inverse_additive(base, _recip(z), n)


_ZEROS = {
    "arsinh": 0, "arcsin": 0, "artanh": 0, "arctan": 0,
    "arcosh": 1, "arccos": 1, "arsech": 1, "arcsec": 1,
}  # fmt: skip


def inverse_approx(tag: str, z, n: int, mode: str = ADDITIVE) -> Certified:
    """Certified principal value of one of the 12 inverse functions."""
    _check_tag(tag, INVERSE)
    _check_mode(mode)
    z = Gaussian.coerce(z)
    check_bits(n)
    if mode == ADDITIVE:
        return Certified(_inverse_additive(tag, z, n), ADDITIVE, n)
    if tag in _ZEROS and z == _ZEROS[tag]:
        raise DomainError("zero-of-g", f"{tag}({z}) = 0 has no multiplicative approximation")

    def ball_at(k):
        return Ball.additive(_inverse_additive(tag, z, k), k)

    return Certified(_finish(ball_at, n, MULTIPLICATIVE, n + 2), MULTIPLICATIVE, n)

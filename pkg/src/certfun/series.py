"""Truncated power series and their tail bounds.

Exact partial sums are evaluated by binary splitting: the terms are combined
along a balanced tree with integer numerators and one common denominator,
so the only gcd is taken once at the end.

The ``*_fixed`` evaluators approximate the same partial sums in binary fixed
point.  Each returns the scaled integer sum together with a bound, in units of
the last place, on its distance from the exact partial sum.  They let the
composed approximators stay fast without giving up the certificate.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cache

from .errors import DomainError, ParameterError
from .rational import Gaussian, as_fraction, ceil_sqrt, check_bits, rdiv

THREE_FIFTHS = Fraction(3, 5)


@cache
def factorial(n: int) -> int:
    """Memoized ``n!``."""
    return math.factorial(n)


def _gauss_parts(z: Gaussian):
    """Write ``z = (a + b i) / d`` with integers and ``d > 0``."""
    d = z.re.denominator * z.im.denominator // math.gcd(z.re.denominator, z.im.denominator)
    return z.re.numerator * (d // z.re.denominator), z.im.numerator * (d // z.im.denominator), d


def _split(p, q, lo, hi):
    """Binary splitting of ``sum_{j=lo}^{hi-1} prod_{k=lo}^{j} p(k)/q(k)``.

    ``p(k)`` is a Gaussian integer ``(re, im)``, ``q(k)`` a positive integer.
    Returns ``(P, Q, T)`` with the sum equal to ``T / Q``.
    """
    if hi - lo == 1:
        pk = p(lo)
        return pk, q(lo), pk
    mid = (lo + hi) // 2
    p1, q1, t1 = _split(p, q, lo, mid)
    p2, q2, t2 = _split(p, q, mid, hi)
    pr = (p1[0] * p2[0] - p1[1] * p2[1], p1[0] * p2[1] + p1[1] * p2[0])
    tr = (
        t1[0] * q2 + p1[0] * t2[0] - p1[1] * t2[1],
        t1[1] * q2 + p1[0] * t2[1] + p1[1] * t2[0],
    )
    return pr, q1 * q2, tr


def _ratio_sum(p, q, lo, hi) -> Gaussian:
    if hi <= lo:
        return Gaussian(0)
    _, qq, (tre, tim) = _split(p, q, lo, hi)
    return Gaussian(Fraction(tre, qq), Fraction(tim, qq))


def e_partial(z, n: int) -> Gaussian:
    """``sum_{j<n} z**j / j!`` exactly."""
    z = Gaussian.coerce(z)
    check_bits(n, "terms")
    if n == 0:
        return Gaussian(0)
    a, b, d = _gauss_parts(z)
    # term j / term (j-1) = z / j
    return Gaussian(1) + _ratio_sum(lambda k: (a, b), lambda k: d * k, 1, n)


def exp_tail_bound(r: int, n: int) -> Fraction:
    """``2 r**n / n!``: bounds ``|e(z,m) - e(z,n)|`` for ``|z| <= r``, ``m >= n``."""
    check_bits(r, "r")
    check_bits(n, "terms")
    if n < 2 * r:
        raise ParameterError("precondition-violation", f"need n >= 2r, got n={n}, r={r}")
    return Fraction(2 * r**n, factorial(n))


def lambda_partial(z, n: int) -> Gaussian:
    """``sum_{j=1}^{n} z**j / j`` exactly (the series of ``-log(1-z)``)."""
    z = Gaussian.coerce(z)
    check_bits(n, "terms")
    a, b, d = _gauss_parts(z)
    # term 1 = z; term k / term (k-1) = z (k-1) / k
    return _ratio_sum(
        lambda k: (a, b) if k == 1 else (a * (k - 1), b * (k - 1)),
        lambda k: d if k == 1 else d * k,
        1,
        n + 1,
    )


def log_tail_bound(h: int, n: int) -> Fraction:
    """``(h/(n+1)) (1 - 1/h)**(n+1)``: tail of ``lambda`` for ``|z| <= 1 - 1/h``."""
    if isinstance(h, bool) or not isinstance(h, int):
        raise TypeError("h must be an int")
    if h < 1:
        raise DomainError("domain-violation", "h must be positive")
    check_bits(n, "terms")
    return Fraction(h, n + 1) * Fraction(h - 1, h) ** (n + 1)


def _check_sqrt_arg(u: Fraction):
    if abs(u) > THREE_FIFTHS:
        raise DomainError("domain-violation", f"sqrt_series needs |u| <= 3/5, got {u}")


def sqrt_series(u, N: int) -> Fraction:
    """``y_N = sum_{j=1}^{N} C(2j-2, j-1) (1/j) (u/4)**j``.

    ``y_N`` approaches ``(1 - sqrt(1-u)) / 2`` within ``(5/2)(3/5)**N``.
    """
    u = as_fraction(u)
    check_bits(N, "terms")
    _check_sqrt_arg(u)
    a, d = u.numerator, u.denominator
    # term 1 = u/4; term k / term (k-1) = (2k-3) u / (2k)
    s = _ratio_sum(
        lambda k: (a, 0) if k == 1 else ((2 * k - 3) * a, 0),
        lambda k: 4 * d if k == 1 else 2 * k * d,
        1,
        N + 1,
    )
    return s.re


def sqrt_series_error(N: int) -> Fraction:
    """``(5/2)(3/5)**N``."""
    return Fraction(5, 2) * THREE_FIFTHS**N


def difference_identity(h: int, n: int, x) -> Fraction:
    """``sum_{k=0}^{n} C(n,k) (-1)**k (x-k)(x-k-1)...(x-k-h+1)``."""
    x = as_fraction(x)
    if h < 0 or n < 1:
        raise DomainError("domain-violation", "need h >= 0 and n >= 1")
    total = Fraction(0)
    for k in range(n + 1):
        falling = Fraction(1)
        for i in range(h):
            falling *= x - k - i
        total += (-1) ** k * math.comb(n, k) * falling
    return total


# ---------------------------------------------------------------------------
# fixed-point evaluation of the same partial sums


def _ratio_parts(rho: Fraction):
    """``rho / (1 - rho)`` as an integer pair ``(p, q)``, for ``0 <= rho < 1``."""
    ratio = rho / (1 - rho)
    return ratio.numerator, ratio.denominator


def exp_fixed(z: Gaussian, n_terms: int, K: int):
    """Approximate ``e(z, n_terms) * 2**K`` by Gaussian integers.

    Returns ``(S_re, S_im, U)`` with ``|S/2**K - e(z, n_terms)| <= U 2**-K``.
    Once the remaining terms are provably small they are skipped and their
    total is charged to ``U``.
    """
    if n_terms == 0:
        return 0, 0, 0
    a, b, d = _gauss_parts(z)
    R = ceil_sqrt(z.norm())
    tr, ti = 1 << K, 0
    sr, si = tr, ti
    err = 0  # error of the current term, in units
    total = 0
    for k in range(1, n_terms):
        if k >= 2 * R and abs(tr) + abs(ti) <= err:
            # every later term is at most half the previous one, so the
            # skipped tail is bounded by the current term plus its error
            total += abs(tr) + abs(ti) + err
            break
        q = d * k
        tr, ti = rdiv(tr * a - ti * b, q), rdiv(tr * b + ti * a, q)
        err = 1 + -(-R * err // k)
        total += err
        sr += tr
        si += ti
    return sr, si, total


def lambda_fixed(w: Gaussian, n_terms: int, K: int, rho: Fraction):
    """Approximate ``lambda(w, n_terms) * 2**K``; ``rho >= |w|`` with ``rho < 1``."""
    if n_terms == 0:
        return 0, 0, 0
    a, b, d = _gauss_parts(w)
    p, q = _ratio_parts(rho)
    tr = rdiv(a << K, d)
    ti = rdiv(b << K, d)
    sr, si = tr, ti
    err = 1
    total = 1
    for k in range(2, n_terms + 1):
        # skipped tail <= (|t| + err) * rho / (1 - rho); stop once that is <= err
        if (abs(tr) + abs(ti) + err) * p <= q * err:
            total += err
            break
        div = d * k
        m = k - 1
        tr, ti = rdiv((tr * a - ti * b) * m, div), rdiv((tr * b + ti * a) * m, div)
        err += 1
        total += err
        sr += tr
        si += ti
    return sr, si, total


def sqrt_series_fixed(u: Fraction, n_terms: int, K: int):
    """Approximate ``sqrt_series(u, n_terms) * 2**K``; returns ``(S, U)``."""
    _check_sqrt_arg(u)
    if n_terms == 0 or u == 0:
        return 0, 0
    a, d = u.numerator, u.denominator
    p, q = _ratio_parts(abs(u))
    t = rdiv(a << K, 4 * d)
    s = t
    err = 1
    total = 1
    for k in range(2, n_terms + 1):
        if (abs(t) + err) * p <= q * err:
            total += err
            break
        t = rdiv(t * a * (2 * k - 3), 2 * k * d)
        err += 1
        total += err
        s += t
    return s, total

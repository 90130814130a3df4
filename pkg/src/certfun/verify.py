"""Seeded self-check suites behind ``certfun verify``.

Each suite draws its inputs from ``random.Random(seed)``, so a report is a
pure function of ``(suite, seed, samples)``.  Certified values are compared
with :func:`~certfun.oracle.interval_oracle` or with exact arithmetic.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .approx import (
    abs_approx,
    error_compose,
    exp_band,
    exp_full,
    exp_strip,
    log_complex,
    log_disk,
    log_exp_strip,
    log_pos,
    sqrt_complex,
    sqrt_pos,
)
from .constants import prod_gaussian_int
from .errors import CertfunError, ParameterError
from .oracle import interval_oracle
from .rational import (
    ADDITIVE,
    MULTIPLICATIVE,
    Gaussian,
    abs_le,
    ceil_abs,
    ceil_sqrt,
    format_gaussian,
)
from .trig import FORWARD, PARAMETER_TABLE, find_param, forward_approx, param_ok

SUITES = ("identities", "bounds", "table3", "prod", "roundtrip")

_DENS = (1, 2, 3, 4, 5, 7, 8, 16, 100, 1024)


def _rat(rng: random.Random, bound) -> Fraction:
    den = rng.choice(_DENS)
    return Fraction(rng.randint(-int(bound * den), int(bound * den)), den)


def _gauss(rng, re_bound, im_bound=None) -> Gaussian:
    return Gaussian(_rat(rng, re_bound), _rat(rng, re_bound if im_bound is None else im_bound))


def _nonzero(rng, bound) -> Gaussian:
    while True:
        z = _gauss(rng, bound)
        if not z.is_zero():
            return z


def _within(a: Gaussian, b: Gaussian, bound: Fraction) -> bool:
    """``|a - b| <= bound``, decided exactly."""
    return (a - b).norm() <= bound * bound


def _abs_up(z: Gaussian) -> Fraction:
    """Upper bound on ``|z|`` within ``2**-20``."""
    return Fraction(ceil_sqrt(z.norm() * (1 << 40)), 1 << 20)


class _Recorder:
    def __init__(self):
        self.entries = []

    def add(self, check: str, ok: bool, **detail):
        entry = {"index": len(self.entries), "check": check, "ok": bool(ok)}
        if not ok:
            entry.update({k: v if isinstance(v, (int, str)) else str(v) for k, v in detail.items()})
        self.entries.append(entry)


# ---------------------------------------------------------------------------
# bounds


def _bounds_cases(rng: random.Random, n: int):
    """Yield ``(name, certificate_thunk, oracle_tag, oracle_point)`` per function."""
    z = _gauss(rng, 3)
    r = max(1, ceil_abs(z))
    yield "exp_strip", (lambda: exp_strip(z, r, n)), "exp", z

    z2 = _gauss(rng, 8, 100)
    yield "exp_band", (lambda: exp_band(z2, "auto", n)), "exp", z2

    z3 = Gaussian(_rat(rng, 24) - 16, _rat(rng, 50))
    r3 = max(0, math.ceil(z3.re))
    yield "exp_full", (lambda: exp_full(z3, r3, n)), "exp", z3

    x = abs(_rat(rng, 1000)) or Fraction(1, 3)
    yield "sqrt_pos", (lambda: sqrt_pos(x, n)), "sqrt", Gaussian(x)

    z4 = _nonzero(rng, 50)
    yield "sqrt_complex", (lambda: sqrt_complex(z4, n)), "sqrt", z4

    z5 = _nonzero(rng, 50)
    mode = rng.choice((ADDITIVE, MULTIPLICATIVE))
    yield "abs_approx", (lambda: abs_approx(z5, n, mode)), "abs", z5

    h = rng.randint(2, 5)
    while True:
        w = Gaussian(1) + _gauss(rng, 1)
        if abs_le(w - 1, 1 - Fraction(1, h)):
            break
    yield "log_disk", (lambda: log_disk(w, h, n)), "log", w

    y = abs(_rat(rng, 500)) or Fraction(7, 5)
    yield "log_pos", (lambda: log_pos(y, n)), "log", Gaussian(y)

    z6 = _nonzero(rng, 50)
    yield "log_complex", (lambda: log_complex(z6, n)), "log", z6


def _suite_bounds(rng, samples, rec):
    for n in (8, 24, 48):
        for _ in range(samples):
            for name, thunk, tag, point in _bounds_cases(rng, n):
                cert = thunk()
                box = interval_oracle(tag, point, n + 8)
                ok = box.contains(cert.value, cert.abs_error_bound())
                rec.add(name, ok, n=n, point=format_gaussian(point), value=cert.value)


# ---------------------------------------------------------------------------
# parameter table


def _invalid_triple(rng: random.Random, tag: str):
    """A ``(z, r)`` violating the additive condition for ``tag``."""
    cond = PARAMETER_TABLE[tag][0][0]
    if cond[0] in ("re", "im"):
        r = rng.randint(0, 6)
        big = r + Fraction(rng.randint(1, 40), rng.choice((1, 3, 8)))
        other = _rat(rng, 3)
        big = big if rng.random() < 0.5 else -big
        return (Gaussian(big, other) if cond[0] == "re" else Gaussian(other, big)), r
    spec = cond[2]
    k = 0
    while k == 0 and spec.nonzero_only:
        k = rng.randint(-3, 3)
    if not spec.nonzero_only:
        k = rng.randint(-3, 3)
    lattice_point = spec.beta + spec.alpha * k
    # 355/113 is within 3e-7 of pi, so the point sits within 2**-20 of a pole
    z = lattice_point * Fraction(355, 113)
    return z, rng.randint(2, 15)


def _suite_table3(rng, samples, rec):
    invalid = -(-samples // 4)
    for tag in FORWARD:
        for _ in range(samples):
            z = _gauss(rng, 4)
            mode = rng.choice((ADDITIVE, MULTIPLICATIVE))
            if tag in ("coth", "csch", "cot", "csc") and z.is_zero():
                z = Gaussian(1, 1)  # step off the pole at 0
            r = find_param(tag, z, mode) + rng.randint(0, 2)
            if not param_ok(tag, z, r, mode):
                r = find_param(tag, z, mode)
            n = rng.choice((8, 24, 40))
            cert = forward_approx(tag, z, r, n, mode)
            box = interval_oracle(tag, z, n + 8)
            ok = box.contains(cert.value, cert.abs_error_bound())
            rec.add(f"valid:{tag}", ok, z=format_gaussian(z), r=r, n=n, mode=mode, value=cert.value)
        for _ in range(invalid):
            z, r = _invalid_triple(rng, tag)
            mode = rng.choice((ADDITIVE, MULTIPLICATIVE))
            try:
                cert = forward_approx(tag, z, r, 20, mode)
            except ParameterError as exc:
                ok = exc.kind == "parameter-violation"
                rec.add(f"invalid:{tag}", ok, z=format_gaussian(z), r=r, mode=mode, kind=exc.kind)
            else:
                rec.add(f"invalid:{tag}", False, z=format_gaussian(z), r=r, mode=mode, value=cert.value)


# ---------------------------------------------------------------------------
# identities

_EPS40 = Fraction(1, 1 << 40)


def _pythagoras(z: Gaussian):
    """Certified disc for ``sin**2 + cos**2``: returns (center, radius)."""
    s = forward_approx("sin", z, 2, 40).value
    c = forward_approx("cos", z, 2, 40).value
    e = _EPS40
    center = s * s + c * c
    radius = 2 * e * (_abs_up(s) + _abs_up(c)) + 2 * e * e
    return center, radius


def _addition(z: Gaussian, w: Gaussian):
    """Discs for ``sin(z+w)`` and ``sin z cos w + cos z sin w``; do they meet?"""
    lhs = forward_approx("sin", z + w, 2, 40).value
    sz, cz = (forward_approx(t, z, 1, 40).value for t in ("sin", "cos"))
    sw, cw = (forward_approx(t, w, 1, 40).value for t in ("sin", "cos"))
    e = _EPS40
    rhs = sz * cw + cz * sw
    rad = e * (_abs_up(sz) + _abs_up(cw) + _abs_up(cz) + _abs_up(sw)) + 2 * e * e
    return _within(lhs, rhs, e + rad)


_EVEN = {"cosh", "cos", "sech", "sec"}


def _suite_identities(rng, samples, rec):
    width = Fraction(1, 1 << 36)
    for _ in range(samples):
        z = Gaussian(_rat(rng, 4), _rat(rng, 2))
        center, radius = _pythagoras(z)
        rec.add("pythagoras", _within(center, Gaussian(1), radius) and radius <= width, z=format_gaussian(z))

        a, b = Gaussian(_rat(rng, 3), _rat(rng, 1)), Gaussian(_rat(rng, 3), _rat(rng, 1))
        rec.add("addition", _addition(a, b), z=format_gaussian(a), w=format_gaussian(b))

        tag = rng.choice(FORWARD)
        mode = rng.choice((ADDITIVE, MULTIPLICATIVE))
        u = _nonzero(rng, 3)
        try:
            r = max(find_param(tag, u, mode), find_param(tag, u.conj(), mode))
            f = forward_approx(tag, u, r, 40, mode).value
            g = forward_approx(tag, u.conj(), r, 40, mode).value
            rm = max(r, find_param(tag, -u, mode))
            h = forward_approx(tag, -u, rm, 40, mode).value
        except CertfunError as exc:
            rec.add(f"symmetry:{tag}", False, z=format_gaussian(u), error=exc.kind)
            continue
        rec.add(f"conjugation:{tag}", g == f.conj(), z=format_gaussian(u), mode=mode)
        expected = f if tag in _EVEN else -f
        slack = Fraction(2, 1 << 40) * (1 if mode == ADDITIVE else 2 * _abs_up(f) + 1)
        rec.add(f"parity:{tag}", _within(h, expected, slack), z=format_gaussian(u), mode=mode)


# ---------------------------------------------------------------------------
# products and round trips


def _naive_product(seq) -> Gaussian:
    out = Gaussian(1)
    for z in seq:
        out = out * z
    return out


def _gaussian_int_sequence(rng: random.Random, index: int):
    bound = (1 << 16) - 1
    if index == 0:
        return []
    length = 1 if index == 1 else rng.randint(0, 32)
    seq = [Gaussian(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(length)]
    if index == 2:
        seq.insert(rng.randint(0, len(seq)), Gaussian(0))
    return seq


def _suite_prod(rng, samples, rec):
    for i in range(samples):
        seq = _gaussian_int_sequence(rng, i)
        got = prod_gaussian_int(seq)
        rec.add("prod", got == _naive_product(seq), length=len(seq), seq=" ".join(map(format_gaussian, seq)))


def _suite_roundtrip(rng, samples, rec):
    eps32 = Fraction(1, 1 << 32)
    for _ in range(samples):
        while True:
            z = Gaussian(_rat(rng, 4), _rat(rng, 1))
            if abs(z.im) < 1:
                break
        r = max(1, ceil_abs(z))
        v = log_exp_strip(z, r, 32).value
        rec.add("log-exp", _within(v, z, eps32), z=format_gaussian(z))
    # exp(L) with |L - Log z| <= 2**-40 is within relative 2**-39 of z;
    # the certified exp adds its own relative 2**-40
    _, k = error_compose((MULTIPLICATIVE, 39), (MULTIPLICATIVE, 40), "mul")
    slack = Fraction(1, 1 << k)
    for _ in range(samples):
        z = _nonzero(rng, 8)
        lg = log_complex(z, 40).value
        e = exp_band(lg, "auto", 40).value
        rec.add("exp-log", (e - z).norm() <= slack * slack * z.norm(), z=format_gaussian(z))


_RUNNERS = {
    "identities": _suite_identities,
    "bounds": _suite_bounds,
    "table3": _suite_table3,
    "prod": _suite_prod,
    "roundtrip": _suite_roundtrip,
}


def run_verify(suite: str, seed: int = 0, samples: int = 20) -> dict:
    """Run one suite; the report lists every failing check with its inputs."""
    if suite not in _RUNNERS:
        raise ParameterError("unknown-suite", f"suite must be one of {SUITES}")
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 0:
        raise ParameterError("negative-parameter", "samples must be a nonnegative int")
    rec = _Recorder()
    _RUNNERS[suite](random.Random(seed), samples, rec)
    counts = {}
    for entry in rec.entries:
        ok, total = counts.get(entry["check"], (0, 0))
        counts[entry["check"]] = (ok + entry["ok"], total + 1)
    failures = [e for e in rec.entries if not e["ok"]]
    return {
        "suite": suite,
        "seed": seed,
        "samples": samples,
        "checks": len(rec.entries),
        "failed": len(failures),
        "passed": not failures,
        "counts": {k: {"passed": v[0], "total": v[1]} for k, v in sorted(counts.items())},
        "failures": failures,
    }


__all__ = ["SUITES", "run_verify"]

"""``certfun`` command line: evaluate, print constants, multiply, self-check.

Every successful command prints one JSON line on stdout.  Failures print a
JSON object with ``error`` and ``message`` on stderr and exit with
2 (parse), 3 (domain or parameter), 4 (precision ceiling) or 5 (verify).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .approx import abs_approx, exp_band, exp_full, log_complex, log_mult, sqrt_complex
from .constants import CONSTANTS, arg_approx, const_approx, nth_root, pow_complex, prod_gaussian_int
from .errors import CertfunError, DomainError, ParameterError, ParseError
from .rational import (
    ADDITIVE,
    MODES,
    MULTIPLICATIVE,
    Certified,
    Gaussian,
    abs_upper,
    ceil_log2,
    format_gaussian,
)
from .trig import FORWARD, INVERSE, forward_approx, inverse_approx

BASIC = ("exp", "log", "sqrt", "abs", "arg", "pow", "root")
FUNCTIONS = BASIC + FORWARD + INVERSE

EXIT_VERIFY = 5


# ---------------------------------------------------------------------------
# parsing


def _scan_digits(chars, i):
    j = i
    while j < len(chars) and chars[j][0].isdigit():
        j += 1
    return j


def parse_gaussian(text: str) -> Gaussian:
    """Parse ``a``, ``a/b``, ``a/b+c/di`` or ``c/di``; whitespace is ignored.

    >>> parse_gaussian("3/2 + 1/3i")
    Gaussian('3/2+1/3i')
    """
    if not isinstance(text, str):
        raise TypeError("parse_gaussian expects a str")
    # keep each significant character with its byte offset in the original
    chars = []
    offset = 0
    for ch in text:
        if not ch.isspace():
            chars.append((ch, offset))
        offset += len(ch.encode("utf-8"))
    end = offset

    def where(i):
        return chars[i][1] if i < len(chars) else end

    def number(i, signed):
        neg = False
        if signed and i < len(chars) and chars[i][0] == "-":
            neg = True
            i += 1
        j = _scan_digits(chars, i)
        if j == i:
            raise ParseError("expected digits", where(i))
        num = int("".join(c for c, _ in chars[i:j]))
        den = 1
        if j < len(chars) and chars[j][0] == "/":
            k = _scan_digits(chars, j + 1)
            if k == j + 1:
                raise ParseError("expected a denominator", where(j + 1))
            den = int("".join(c for c, _ in chars[j + 1 : k]))
            if den == 0:
                raise ParseError("zero denominator", where(j + 1))
            j = k
        q = Fraction(num, den)
        return (-q if neg else q), j

    if not chars:
        raise ParseError("empty input", end)
    first, i = number(0, signed=True)
    if i == len(chars):
        return Gaussian(first)
    if chars[i][0] == "i":
        if i + 1 != len(chars):
            raise ParseError("unexpected character", where(i + 1))
        return Gaussian(0, first)
    if chars[i][0] not in "+-":
        raise ParseError("unexpected character", where(i))
    sign = -1 if chars[i][0] == "-" else 1
    second, j = number(i + 1, signed=False)
    if j == len(chars) or chars[j][0] != "i":
        raise ParseError("expected 'i'", where(j))
    if j + 1 != len(chars):
        raise ParseError("unexpected character", where(j + 1))
    return Gaussian(first, sign * second)


# ---------------------------------------------------------------------------
# serialization


def _fraction_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def gaussian_json(z: Gaussian) -> dict:
    return {"re": _fraction_json(z.re), "im": _fraction_json(z.im)}


def certificate_record(value: Gaussian, mode: str, exponent, function: str, point) -> dict:
    return {
        "value": gaussian_json(value),
        "mode": mode,
        "exponent": exponent,
        "function": function,
        "point": None if point is None else format_gaussian(point),
    }


def gaussian_from_json(obj) -> Gaussian:
    """Inverse of :func:`gaussian_json`."""
    return Gaussian(
        Fraction(obj["re"]["num"], obj["re"]["den"]),
        Fraction(obj["im"]["num"], obj["im"]["den"]),
    )


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


# ---------------------------------------------------------------------------
# evaluation


def _to_additive(at, n: int) -> Gaussian:
    """Additive ``2**-n`` from a multiplicative evaluator ``at(k)``."""
    v = at(n + 2).value
    # |f| <= (4/3)|v| < 2**(k-n-2) (4/3) once k >= n + 2 + log2(|v| + 1)
    k = n + 2 + max(0, ceil_log2(abs_upper(v) + 1))
    return at(k).value


def _to_multiplicative(at, n: int) -> Gaussian:
    """Relative ``2**-n`` from an additive evaluator ``at(k)`` (value nonzero)."""
    k = n + 2
    while True:
        v = at(k).value
        low = max(abs(v.re), abs(v.im)) - Fraction(1, 1 << k)
        if low > 0 and Fraction(1, 1 << k) <= low / (1 << (n + 1)):
            return v
        k += max(k // 2, 8)


def evaluate(function: str, z, n: int, mode: str = ADDITIVE, r="auto", w=None, k=None) -> Certified:
    """Dispatch one evaluation request and return its certificate."""
    if mode not in MODES:
        raise ParameterError("bad-mode", f"mode must be one of {MODES}")
    z = Gaussian.coerce(z)
    if function in FORWARD:
        return forward_approx(function, z, r, n, mode)
    if function in INVERSE:
        return inverse_approx(function, z, n, mode)
    if function not in BASIC:
        raise DomainError("unknown-function", f"unknown function {function!r}")
    if (function == "pow") != (w is not None):
        raise ParameterError("bad-arity", "an exponent w goes with pow and only with pow")
    if (function == "root") != (k is not None):
        raise ParameterError("bad-arity", "an index k goes with root and only with root")

    if function == "exp":
        if mode == MULTIPLICATIVE:
            return exp_band(z, r, n)
        return exp_full(z, r, n)
    if function == "log":
        return log_mult(z, n) if mode == MULTIPLICATIVE else log_complex(z, n)
    if function == "abs":
        return abs_approx(z, n, mode)
    if function == "arg":
        if mode == ADDITIVE:
            return arg_approx(z, n)
        if z.is_real() and z.re > 0:
            raise DomainError("zero-of-g", "arg of a positive real is 0")
        return Certified(_to_multiplicative(lambda j: arg_approx(z, j), n), MULTIPLICATIVE, n)

    at = {
        "sqrt": lambda j: sqrt_complex(z, max(j, 2)),
        "pow": lambda j: pow_complex(z, Gaussian.coerce(w), j),
        "root": lambda j: nth_root(z, k, j),
    }[function]
    if function == "sqrt" and z.is_zero():
        if mode == MULTIPLICATIVE:
            raise DomainError("zero-input", "sqrt of 0 has no multiplicative approximation")
        return Certified(Gaussian(0), ADDITIVE, n)
    if mode == MULTIPLICATIVE:
        return Certified(at(n).value, MULTIPLICATIVE, n)
    return Certified(_to_additive(at, n), ADDITIVE, n)


def _read_factors(path: str):
    """One factor per nonblank line; parse offsets are reported for the whole file."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            lines = fh.read().splitlines(keepends=True)
    except OSError as exc:
        raise ParameterError("io-error", str(exc)) from None
    factors = []
    base = 0
    for line in lines:
        if line.strip():
            try:
                factors.append(parse_gaussian(line))
            except ParseError as exc:
                raise ParseError(exc.reason, base + exc.offset) from None
        base += len(line.encode("utf-8"))
    return factors


# ---------------------------------------------------------------------------
# command line


def _param(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="certfun", description="Certified elementary functions over Gaussian rationals.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="certified value of one function at one point")
    ev.add_argument("--fn", required=True, choices=FUNCTIONS, metavar="FN")
    ev.add_argument("--z", required=True, help="Gaussian rational, e.g. 3/2+1/3i")
    group = ev.add_mutually_exclusive_group()
    group.add_argument("--w", help="exponent for pow")
    group.add_argument("--k", type=int, help="index for root")
    ev.add_argument("--bits", type=int, required=True)
    ev.add_argument("--mode", choices=MODES, default=ADDITIVE)
    ev.add_argument("--r", type=_param, default="auto", help="magnitude parameter or 'auto'")

    const = sub.add_parser("const", help="pi, e or log2 within 2**-bits")
    const.add_argument("name", choices=CONSTANTS)
    const.add_argument("--bits", type=int, required=True)

    prod = sub.add_parser("prod", help="exact product of the Gaussian integers in a file")
    prod.add_argument("--input", required=True)

    ver = sub.add_parser("verify", help="run a self-check suite")
    ver.add_argument("--suite", required=True, choices=("identities", "bounds", "table3", "prod", "roundtrip"))
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--samples", type=int, default=20)
    return parser


def _run(args) -> tuple[dict, int]:
    if args.command == "eval":
        z = parse_gaussian(args.z)
        w = parse_gaussian(args.w) if args.w is not None else None
        cert = evaluate(args.fn, z, args.bits, args.mode, args.r, w=w, k=args.k)
        return certificate_record(cert.value, cert.mode, cert.exponent, args.fn, z), 0
    if args.command == "const":
        cert = const_approx(args.name, args.bits)
        return certificate_record(cert.value, cert.mode, cert.exponent, args.name, None), 0
    if args.command == "prod":
        value = prod_gaussian_int(_read_factors(args.input))
        return certificate_record(value, "exact", None, "prod", None), 0
    from .verify import run_verify

    report = run_verify(args.suite, args.seed, args.samples)
    return report, 0 if report["passed"] else EXIT_VERIFY


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    try:
        out, code = _run(args)
    except CertfunError as exc:
        err = {"error": exc.kind, "message": str(exc)}
        if isinstance(exc, ParseError):
            err["offset"] = exc.offset
        print(_dumps(err), file=sys.stderr)
        return exc.exit_code
    except (TypeError, ValueError) as exc:
        print(_dumps({"error": "parameter-violation", "message": str(exc)}), file=sys.stderr)
        return 3
    print(_dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import gaussian_integers, gaussians, nonzero_gaussians, rationals

from certfun import (
    ADDITIVE,
    MULTIPLICATIVE,
    Certified,
    DomainError,
    Gaussian,
    ParameterError,
    PrecisionError,
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
from certfun.rational import (
    abs_le,
    abs_lower,
    abs_upper,
    as_fraction,
    ceil_abs,
    ceil_log2,
    ceil_sqrt,
    check_bits,
    floor_log2,
    format_gaussian,
    rdiv,
    round_fraction,
    round_relative,
)

I = Gaussian(0, 1)


class TestBitlen:
    @pytest.mark.parametrize("x, expected", [(0, 0), (1, 1), (5, 3), (8, 4), (2**100, 101)])
    def test_values(self, x, expected):
        assert bitlen(x) == expected

    @given(st.integers(1, 2**200))
    def test_brackets(self, x):
        b = bitlen(x)
        assert 2 ** (b - 1) <= x < 2**b

    def test_rejects_negative_and_non_int(self):
        with pytest.raises(DomainError):
            bitlen(-1)
        with pytest.raises(TypeError):
            bitlen(1.0)
        with pytest.raises(TypeError):
            bitlen(True)


class TestAbsLe:
    def test_pythagorean_boundary(self):
        assert abs_le(Gaussian(3, 4), 5)
        assert not abs_le(Gaussian(3, 4), Fraction(99, 20))
        assert abs_le(0, 0)

    def test_negative_radius(self):
        assert not abs_le(0, -1)

    @given(gaussians(), rationals(20))
    def test_matches_norm(self, z, r):
        assert abs_le(z, r) == (r >= 0 and z.norm() <= r * r)


class TestRounding:
    @pytest.mark.parametrize(
        "z, expected",
        [
            (Fraction(1, 2), Gaussian(1)),
            (Fraction(-1, 2), Gaussian(0)),
            (Gaussian(Fraction(3, 4), Fraction(5, 2)), Gaussian(1, 3)),
        ],
    )
    def test_round_half(self, z, expected):
        assert round_half(z) == expected

    @given(gaussians(100))
    def test_round_half_is_nearest(self, z):
        w = round_half(z)
        assert w.is_integral()
        assert -Fraction(1, 2) < z.re - w.re <= Fraction(1, 2)
        assert -Fraction(1, 2) < z.im - w.im <= Fraction(1, 2)

    @given(st.integers(-(10**12), 10**12), st.integers(1, 10**6))
    def test_rdiv_symmetric_and_nearest(self, x, d):
        q = rdiv(x, d)
        assert rdiv(-x, d) == -q
        assert abs(Fraction(x, d) - q) <= Fraction(1, 2)

    @given(rationals(1000), st.integers(-10, 80))
    def test_round_fraction(self, q, bits):
        r = round_fraction(q, bits)
        assert abs(r - q) <= Fraction(1, 2) * Fraction(2) ** -bits
        assert (r * Fraction(2) ** bits).denominator == 1

    @given(nonzero_gaussians(1000), st.integers(0, 80))
    def test_round_relative(self, z, bits):
        w = round_relative(z, bits)
        assert (w - z).norm() <= Fraction(1, 4**bits) * z.norm()

    def test_round_relative_keeps_zero(self):
        assert round_relative(Gaussian(0), 10) == 0


class TestSigns:
    @pytest.mark.parametrize("y, expected", [(0, 1), (Fraction(-3, 7), -1), (2, 1)])
    def test_sgn_plus(self, y, expected):
        assert sgn_plus(y) == expected

    @given(rationals(100))
    def test_floor_half(self, x):
        k = floor_half(x)
        assert k <= x + Fraction(1, 2) < k + 1


class TestPowers:
    def test_examples(self):
        assert pow_int(Gaussian(1, 1), 2) == Gaussian(0, 2)
        assert pow_int(Gaussian(7, -3), 0) == 1
        assert pow_int(Gaussian(0), 0) == 1
        assert pow_int(2, -1) == Fraction(1, 2)

    def test_zero_negative_power(self):
        with pytest.raises(DomainError) as err:
            pow_int(0, -2)
        assert err.value.kind == "zero-base-negative-exponent"

    @given(nonzero_gaussians(3, 10), st.integers(-6, 6), st.integers(-6, 6))
    def test_exponent_law(self, z, a, b):
        assert pow_int(z, a + b) == pow_int(z, a) * pow_int(z, b)

    @given(gaussians(5, 10), st.integers(0, 12))
    def test_dunder_pow(self, z, n):
        expected = Gaussian(1)
        for _ in range(n):
            expected = expected * z
        assert z**n == expected


class TestFolds:
    def test_examples(self):
        assert sum_seq([]) == 0
        assert sum_seq([Fraction(1, 2), Fraction(1, 3), Gaussian(0, Fraction(1, 6))]) == Gaussian(
            Fraction(5, 6), Fraction(1, 6)
        )
        assert prod_seq([Fraction(2, 3), Fraction(3, 4)]) == Fraction(1, 2)
        assert prod_seq([]) == 1

    @given(st.lists(gaussians(), max_size=40))
    def test_sum_matches_fold(self, seq):
        total = Gaussian(0)
        for z in seq:
            total = total + z
        assert sum_seq(seq) == total

    @given(st.lists(rationals(), max_size=40))
    def test_prod_matches_fold(self, seq):
        total = Fraction(1)
        for q in seq:
            total *= q
        assert prod_seq(seq) == total


class TestMarginWitness:
    @pytest.mark.parametrize("x, y, h", [(0, 1, 1), (Fraction(1, 2), Fraction(2, 3), 6), (0, Fraction(3, 7), 3)])
    def test_values(self, x, y, h):
        assert margin_witness(x, y) == h

    @given(rationals(), rationals())
    def test_least_witness(self, x, y):
        if x >= y:
            with pytest.raises(DomainError):
                margin_witness(x, y)
            return
        h = margin_witness(x, y)
        assert x <= y - Fraction(1, h)
        assert h == 1 or x > y - Fraction(1, h - 1)


class TestMagnitudes:
    @given(nonzero_gaussians(1000))
    def test_cheap_bounds_bracket_modulus(self, z):
        assert abs_lower(z) ** 2 <= z.norm() <= abs_upper(z) ** 2

    @given(gaussians(1000))
    def test_ceil_abs(self, z):
        k = ceil_abs(z)
        assert k * k >= z.norm()
        assert k == 0 or (k - 1) ** 2 < z.norm()

    @given(rationals(10**6).filter(lambda q: q > 0))
    def test_log2_bounds(self, q):
        e = floor_log2(q)
        assert Fraction(2) ** e <= q < Fraction(2) ** (e + 1)
        m = ceil_log2(q)
        assert Fraction(2) ** (m - 1) < q <= Fraction(2) ** m

    @given(rationals(10**6).filter(lambda q: q >= 0))
    def test_ceil_sqrt(self, q):
        k = ceil_sqrt(q)
        assert k * k >= q and (k == 0 or (k - 1) ** 2 < q)


class TestGaussian:
    def test_immutable(self):
        z = Gaussian(1, 2)
        with pytest.raises(AttributeError):
            z.re = 3

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            Gaussian(0.5)
        with pytest.raises(TypeError):
            Gaussian.coerce(1j)
        with pytest.raises(TypeError):
            as_fraction(1.5)

    def test_equality_and_hash_with_integers(self):
        assert Gaussian(3) == 3
        assert hash(Gaussian(3)) == hash(3)
        assert Gaussian(3, 1) != 3
        assert Gaussian(1) != "1"

    @pytest.mark.parametrize(
        "z, text",
        [
            (Gaussian(Fraction(3, 2), Fraction(1, 3)), "3/2+1/3i"),
            (Gaussian(-5), "-5"),
            (Gaussian(0, 2), "2i"),
            (I, "1i"),
            (Gaussian(1, -1), "1-1i"),
        ],
    )
    def test_format(self, z, text):
        assert format_gaussian(z) == text

    @given(gaussians(), gaussians(), gaussians())
    def test_ring_laws(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a - b) + b == a

    @given(gaussians(), nonzero_gaussians())
    def test_division(self, a, b):
        assert (a / b) * b == a
        assert b * b.reciprocal() == 1

    @given(gaussians(), st.integers(-20, 20))
    def test_scale2_and_mul_i(self, z, k):
        assert z.scale2(k) == z * Fraction(2) ** k
        assert z.mul_i() == z * I
        assert z.conj().conj() == z

    @given(gaussian_integers())
    def test_integrality(self, z):
        assert z.is_integral()
        assert not (z + Fraction(1, 2)).is_integral()


class TestCeiling:
    def test_default(self, monkeypatch):
        monkeypatch.delenv("CERTFUN_MAX_BITS", raising=False)
        assert max_bits() == 4096

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("CERTFUN_MAX_BITS", "64")
        assert check_bits(64) == 64
        with pytest.raises(PrecisionError) as err:
            check_bits(65)
        assert err.value.kind == "precision-ceiling"

    def test_bad_env(self, monkeypatch):
        monkeypatch.setenv("CERTFUN_MAX_BITS", "lots")
        with pytest.raises(ParameterError):
            max_bits()

    def test_negative_and_non_int(self):
        with pytest.raises(ParameterError):
            check_bits(-1)
        with pytest.raises(TypeError):
            check_bits(3.0)


class TestCertified:
    def test_bounds(self):
        c = Certified(Gaussian(2), ADDITIVE, 3)
        assert c.bound == Fraction(1, 8)
        assert c.abs_error_bound() == Fraction(1, 8)
        m = Certified(Gaussian(2), MULTIPLICATIVE, 3)
        assert m.abs_error_bound() == Fraction(2, 7)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            Certified(Gaussian(1), "relative", 3)

    @given(gaussians(100), st.integers(1, 60), st.sampled_from([ADDITIVE, MULTIPLICATIVE]))
    def test_compact_stays_within_the_weaker_bound(self, v, n, mode):
        c = Certified(v, mode, n)
        d = c.compact()
        assert d.exponent == n - 1
        moved = (d.value - v).norm()
        if mode == ADDITIVE:
            # old error 2**-n plus the move must fit in 2**-(n-1)
            assert moved <= (Fraction(1, 2**n)) ** 2
        else:
            assert moved <= Fraction(1, 4 ** (n + 3)) * v.norm()

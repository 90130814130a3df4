from fractions import Fraction

import pytest
import reference as R
from hypothesis import given
from hypothesis import strategies as st
from strategies import gaussians, nonzero_gaussians

from certfun import (
    ADDITIVE,
    FORWARD,
    INVERSE,
    MULTIPLICATIVE,
    DomainError,
    Gaussian,
    LatticeSpec,
    ParameterError,
    const_approx,
    dist_lattice,
    find_param,
    forward_approx,
    interval_oracle,
    inverse_approx,
    param_ok,
)

I = Gaussian(0, 1)
HALF = Fraction(1, 2)
PI = R.ref(R.PI).re
MODES = st.sampled_from([ADDITIVE, MULTIPLICATIVE])


def inside(cert, tag, z):
    box = interval_oracle(tag, z, cert.exponent + 8)
    return box.contains(cert.value, cert.abs_error_bound())


def pi_over(k):
    return (str(PI / k), "0")


class TestDistLattice:
    def test_origin(self):
        assert dist_lattice(0, LatticeSpec(1), 20).value == 0

    def test_nonzero_only_skips_origin(self):
        v = dist_lattice(3, LatticeSpec(1, 0, True), 12).value
        assert R.close(v, R.PI_M3, Fraction(1, 2**12))
        assert R.close(dist_lattice(0, LatticeSpec(1, 0, True), 12).value, R.PI, Fraction(1, 2**12))

    def test_shifted_imaginary_lattice(self):
        spec = LatticeSpec(I, Gaussian(0, HALF))
        v = dist_lattice(Gaussian(0, Fraction(3, 2)), spec, 10).value
        assert R.close(v, R.DIST_3_2, Fraction(1, 2**10))

    def test_spec_validation(self):
        with pytest.raises(DomainError):
            LatticeSpec(0)
        with pytest.raises(DomainError):
            LatticeSpec(1, HALF, True)

    @given(gaussians(50, 100), st.integers(0, 40))
    def test_integer_lattice_by_reduction(self, z, n):
        # distance to pi Z: compare against |z - k pi| for the nearest k
        v = dist_lattice(z, LatticeSpec(1), n).value.re
        k = round(z.re / PI)
        best = min(abs(complex(z) - j * float(PI)) for j in (k - 1, k, k + 1))
        assert abs(float(v) - best) <= 2.0**-n + 1e-9

    @given(gaussians(20, 100), st.integers(0, 30))
    def test_is_lipschitz(self, z, n):
        spec = LatticeSpec(Gaussian(1, 1), Gaussian(0, HALF))
        a = dist_lattice(z, spec, n).value.re
        b = dist_lattice(z + Fraction(1, 8), spec, n).value.re
        assert abs(a - b) <= Fraction(1, 8) + Fraction(2, 2**n)


class TestForwardExamples:
    def test_sinh_zero(self):
        assert forward_approx("sinh", 0, 0, 30).value == 0

    def test_cos_one(self):
        c = forward_approx("cos", 1, 1, 12)
        assert R.close(c.value, R.COS1, Fraction(1, 2**12))

    def test_tanh_large(self):
        c = forward_approx("tanh", 50, 1, 10, MULTIPLICATIVE)
        assert R.rel_close(c.value, ("1", "0"), Fraction(1, 2**10))

    @pytest.mark.parametrize(
        "tag, z, pair",
        [
            ("sinh", Gaussian(1, 2), R.SINH_1_2I),
            ("tan", Gaussian(1, 1), R.TAN_1_1I),
            ("sec", Gaussian(3, -1), R.SEC_3_M1I),
            ("coth", Gaussian(-2, 1), R.COTH_M2_1I),
            ("csch", Gaussian(HALF), R.CSCH_HALF),
        ],
    )
    @pytest.mark.parametrize("mode", [ADDITIVE, MULTIPLICATIVE])
    def test_reference_values(self, tag, z, pair, mode):
        c = forward_approx(tag, z, "auto", 30, mode)
        if mode == ADDITIVE:
            assert R.close(c.value, pair, Fraction(1, 2**30))
        else:
            assert R.rel_close(c.value, pair, Fraction(1, 2**30))

    def test_poles_at_zero(self):
        for tag in ("coth", "csch", "cot", "csc"):
            with pytest.raises(DomainError) as err:
                forward_approx(tag, 0, "auto", 8)
            assert err.value.kind == "pole-input"

    def test_unknown_tag(self):
        with pytest.raises(DomainError):
            forward_approx("versin", 1, 1, 8)


class TestParameterTable:
    def test_additive_bounds_on_real_part(self):
        assert param_ok("sinh", Gaussian(3, 100), 3, ADDITIVE)
        assert not param_ok("sinh", Gaussian(3, 100), 2, ADDITIVE)
        assert param_ok("sin", Gaussian(100, 3), 3, ADDITIVE)
        assert not param_ok("sin", Gaussian(100, 3), 2, ADDITIVE)

    def test_rational_near_pole(self):
        # 355/113 is within 3e-7 of pi, so cot needs r of about 22
        z = Fraction(355, 113)
        assert not param_ok("cot", z, 2, ADDITIVE)
        with pytest.raises(ParameterError) as err:
            forward_approx("cot", z, 2, 10)
        assert err.value.kind == "parameter-violation"
        r = find_param("cot", z, ADDITIVE)
        assert r >= 16
        assert inside(forward_approx("cot", z, r, 10), "cot", z)

    def test_off_axis_distance_conditions_hold(self):
        assert param_ok("tan", Gaussian(Fraction(355, 226), Fraction(1, 10**9)), 1, ADDITIVE)

    def test_multiplicative_adds_conditions(self):
        z = Gaussian(0, Fraction(355, 113))
        assert param_ok("sinh", z, 1, ADDITIVE)
        assert not param_ok("sinh", z, 1, MULTIPLICATIVE)

    @given(st.sampled_from(FORWARD), gaussians(6, 32), MODES)
    def test_found_parameter_is_admissible(self, tag, z, mode):
        try:
            r = find_param(tag, z, mode)
        except ParameterError:
            return
        assert param_ok(tag, z, r, mode)
        if r > 1:
            assert not param_ok(tag, z, r // 2, mode)

    @given(st.sampled_from(FORWARD), st.integers(-4, 4).filter(bool), st.integers(2, 12), MODES)
    def test_invalid_parameters_never_certify(self, tag, k, r, mode):
        axis = I if tag in ("sinh", "cosh", "tanh", "coth", "sech", "csch") else Gaussian(1)
        z = axis * Fraction(355 * k, 113 * 2)
        if param_ok(tag, z, r, mode):
            assert inside(forward_approx(tag, z, r, 12, mode), tag, z)
        else:
            with pytest.raises(ParameterError):
                forward_approx(tag, z, r, 12, mode)


class TestForwardSoundness:
    @given(st.sampled_from(FORWARD), nonzero_gaussians(6, 64), st.integers(1, 48), MODES)
    def test_against_oracle(self, tag, z, n, mode):
        try:
            c = forward_approx(tag, z, "auto", n, mode)
        except ParameterError:
            return
        assert c.mode == mode and c.exponent == n
        assert inside(c, tag, z)

    @given(st.integers(-3, 3).filter(bool), st.integers(10, 40), st.integers(8, 30))
    def test_sinh_near_imaginary_zeros(self, k, e, n):
        z = Gaussian(Fraction(1, 2**e), Fraction(355 * k, 113))
        assert inside(forward_approx("sinh", z, "auto", n, MULTIPLICATIVE), "sinh", z)

    @given(st.sampled_from(FORWARD), gaussians(4, 64), st.integers(0, 30), MODES)
    def test_conjugation_is_exact(self, tag, z, n, mode):
        try:
            a = forward_approx(tag, z, "auto", n, mode)
        except (ParameterError, DomainError):
            return
        b = forward_approx(tag, z.conj(), "auto", n, mode)
        assert b.value == a.value.conj()

    @given(st.sampled_from(FORWARD), nonzero_gaussians(4, 64), st.integers(2, 30))
    def test_parity(self, tag, z, n):
        try:
            a = forward_approx(tag, z, "auto", n).value
            b = forward_approx(tag, -z, "auto", n).value
        except ParameterError:
            return
        odd = tag not in ("cosh", "cos", "sech", "sec")
        d = a + b if odd else a - b
        assert d.norm() <= Fraction(4, 4**n)


class TestIdentities:
    @given(gaussians(3, 64).filter(lambda z: abs(z.im) <= 2))
    def test_pythagoras(self, z):
        n = 40
        s = forward_approx("sin", z, "auto", n).value
        c = forward_approx("cos", z, "auto", n).value
        eps = Fraction(1, 2**n)
        # |s^2 + c^2 - 1| <= eps (2|s| + 2|c| + 2 eps), with |s|, |c| <= cosh 2 < 4
        slack = eps * (16 + 2 * eps)
        assert (s * s + c * c - 1).norm() <= slack * slack

    @given(gaussians(2, 32), gaussians(2, 32))
    def test_addition_formula(self, z, w):
        n = 40
        f = {t: {p: forward_approx(t, p, "auto", n).value for p in (z, w)} for t in ("sin", "cos")}
        lhs = forward_approx("sin", z + w, "auto", n).value
        rhs = f["sin"][z] * f["cos"][w] + f["cos"][z] * f["sin"][w]
        eps = Fraction(1, 2**n)
        slack = eps + 2 * eps * (4 + 4 + eps)
        assert (lhs - rhs).norm() <= slack * slack


class TestInverseExamples:
    def test_artanh_zero(self):
        assert inverse_approx("artanh", 0, 20).value == 0

    def test_artanh_half(self):
        assert R.close(inverse_approx("artanh", HALF, 14).value, R.HALF_LOG3, Fraction(1, 2**14))

    def test_arcsin_one(self):
        v = inverse_approx("arcsin", 1, 14).value
        assert R.close(v, pi_over(2), Fraction(1, 2**14))
        assert abs(v.re - const_approx("pi", 16).value.re / 2) <= Fraction(1, 2**14) + Fraction(1, 2**17)

    @pytest.mark.parametrize(
        "tag, z, pair",
        [
            ("arcosh", Gaussian(-3), R.ARCOSH_M3),
            ("arsinh", Gaussian(0, 2), R.ARSINH_2I),
            ("arctan", Gaussian(2, 1), R.ARCTAN_2_1I),
            ("arccot", Gaussian(Fraction(-3, 4), Fraction(-14, 5)), R.ARCCOT_M34_M145I),
            ("arsech", Gaussian(HALF), R.ARSECH_HALF),
            ("arcsec", Gaussian(-2), R.ARCSEC_M2),
            ("arccsc", Gaussian(1, 1), R.ARCCSC_1_1I),
            ("arcoth", Gaussian(3), R.ARCOTH_3),
            ("arccos", Gaussian(2), R.ARCCOS_2),
        ],
    )
    @pytest.mark.parametrize("mode", [ADDITIVE, MULTIPLICATIVE])
    def test_reference_values(self, tag, z, pair, mode):
        c = inverse_approx(tag, z, 30, mode)
        if mode == ADDITIVE:
            assert R.close(c.value, pair, Fraction(1, 2**30))
        else:
            assert R.rel_close(c.value, pair, Fraction(1, 2**30))

    @pytest.mark.parametrize(
        "tag, z",
        [("artanh", 1), ("artanh", -1), ("arcoth", 1), ("arctan", I), ("arccot", -I),
         ("arsech", 0), ("arcsec", 0), ("arcsch", 0), ("arccsc", 0)],
    )  # fmt: skip
    def test_excluded_points(self, tag, z):
        with pytest.raises(DomainError):
            inverse_approx(tag, z, 10)

    @pytest.mark.parametrize("tag, z", [("arsinh", 0), ("arcsin", 0), ("arcosh", 1), ("arccos", 1), ("arsech", 1)])
    def test_zero_of_g(self, tag, z):
        assert inverse_approx(tag, z, 10).value.norm() <= Fraction(1, 4**10)
        with pytest.raises(DomainError) as err:
            inverse_approx(tag, z, 10, MULTIPLICATIVE)
        assert err.value.kind == "zero-of-g"


def _in_domain(tag, z):
    if tag in ("artanh", "arcoth") and z in (1, -1):
        return False
    if tag in ("arctan", "arccot") and z in (I, -I):
        return False
    return not (tag in ("arsech", "arcsec", "arcsch", "arccsc") and z.is_zero())


class TestInverseSoundness:
    @given(st.sampled_from(INVERSE), gaussians(8, 64), st.integers(1, 48), MODES)
    def test_against_oracle(self, tag, z, n, mode):
        if not _in_domain(tag, z):
            return
        try:
            c = inverse_approx(tag, z, n, mode)
        except DomainError as exc:
            assert exc.kind == "zero-of-g" and mode == MULTIPLICATIVE
            return
        assert inside(c, tag, z)

    @given(gaussians(8, 64), st.integers(0, 40))
    def test_codomains(self, z, n):
        eps = Fraction(1, 2**n)
        half_pi = PI / 2
        v = inverse_approx("arsinh", z, n).value
        assert abs(v.im) <= half_pi + eps
        v = inverse_approx("arcsin", z, n).value
        assert abs(v.re) <= half_pi + eps
        v = inverse_approx("arcosh", z, n).value
        assert v.re >= -eps and -PI - eps < v.im <= PI + eps
        v = inverse_approx("arccos", z, n).value
        assert -eps <= v.re <= PI + eps
        if _in_domain("artanh", z):
            v = inverse_approx("artanh", z, n).value
            assert abs(v.im) <= half_pi + eps

    @given(
        st.sampled_from(
            [
                ("sinh", "arsinh"),
                ("tanh", "artanh"),
                ("sin", "arcsin"),
                ("tan", "arctan"),
                ("cosh", "arcosh"),
                ("cos", "arccos"),
            ]
        ),
        gaussians(3, 32),
    )
    def test_round_trip(self, pair, z):
        f, g = pair
        if not _in_domain(g, z) or z.re == 0 or z.im == 0:
            return  # keep clear of the branch cuts
        n = 30
        w = inverse_approx(g, z, n + 16).value
        try:
            back = forward_approx(f, w, "auto", n).value
        except ParameterError:
            return
        # a 2**-(n+16) shift in w moves f by at most |f'| 2**-(n+16); |f'| stays small here
        slack = Fraction(1, 2**n) + Fraction(2**12, 2 ** (n + 16))
        assert (back - z).norm() <= slack * slack

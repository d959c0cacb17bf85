from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypomean.polynomials import (
    Polynomial,
    RationalFunction,
    count_roots_above,
    poly_gcd,
    square_free_part,
)

F = Fraction

coeff = st.fractions(-20, 20, max_denominator=12)
small_poly = st.lists(coeff, min_size=0, max_size=6).map(Polynomial)
nonzero_poly = small_poly.filter(lambda p: not p.is_zero)


def P(*coeffs):
    return Polynomial(coeffs)


class TestPolynomialArithmetic:
    def test_square_of_linear(self):
        assert P(1, 1) * P(1, 1) == P(1, 2, 1)

    def test_eval_q_numerator_at_one(self):
        assert P(7, 66, 104, 60, 12).eval(1) == 249

    def test_self_subtraction_is_zero(self):
        p = P(1, 0, 1)
        assert (p - p).is_zero
        assert (p - p).degree == -1

    def test_trailing_zeros_stripped(self):
        assert P(1, 2, 0, 0).coeffs == (F(1), F(2))

    def test_variable_mismatch_raises(self):
        with pytest.raises(ValueError):
            Polynomial((1, 1), "n") + Polynomial((1, 1), "m")

    def test_constants_compare_across_variables(self):
        assert Polynomial((5,), "n") == Polynomial((5,), "m")

    @given(a=small_poly, b=small_poly)
    @settings(max_examples=80)
    def test_mul_commutes_and_eval_homomorphism(self, a, b):
        assert a * b == b * a
        x = F(3, 7)
        assert (a * b).eval(x) == a.eval(x) * b.eval(x)
        assert (a + b).eval(x) == a.eval(x) + b.eval(x)

    @given(a=small_poly, b=nonzero_poly)
    @settings(max_examples=80)
    def test_quo_rem_identity(self, a, b):
        q, r = a.quo_rem(b)
        assert q * b + r == a
        assert r.degree < b.degree

    def test_compose_and_shift(self):
        p = P(0, 0, 1)  # x^2
        assert p.shift(1) == P(1, 2, 1)
        assert p.compose(P(1, 1)) == P(1, 2, 1)
        q = Polynomial((0, 1), "m").compose(Polynomial((1, 1), "n"))
        assert q.var == "n"

    def test_power(self):
        assert P(1, 1) ** 3 == P(1, 3, 3, 1)
        assert P(2) ** 0 == P(1)

    def test_gcd(self):
        a = P(1, 1) * P(2, 1)
        b = P(1, 1) * P(3, 1)
        assert poly_gcd(a, b) == P(1, 1)

    def test_primitive_preserves_signs(self):
        p = P(F(-2, 3), F(4, 9))
        prim, factor = p.primitive()
        assert factor > 0
        assert prim == p.scale(factor)
        assert prim.coeffs == (F(-3), F(2))

    def test_str_rendering(self):
        assert str(P(178, 35022)) == "35022*n + 178"
        assert str(P(0)) == "0"
        assert str(P(-1, 0, 1)) == "n^2 - 1"


class TestRootCounting:
    def test_two_roots_above_one(self):
        p = P(6, -5, 1)  # (x-2)(x-3)
        assert count_roots_above(p, 1) == 2
        assert count_roots_above(p, F(5, 2)) == 1
        assert count_roots_above(p, 4) == 0

    def test_no_real_roots(self):
        assert count_roots_above(P(1, 0, 1), 0) == 0

    def test_multiple_root_counted_once(self):
        p = P(25, -10, 1)  # (x-5)^2
        assert square_free_part(p) == P(-5, 1)
        assert count_roots_above(p, 1) == 1

    def test_degenerate_cases(self):
        assert count_roots_above(P(3), 0) == 0
        assert count_roots_above(Polynomial(()), 0) == 0


class TestRationalFunction:
    def test_canonical_form_is_monic_and_reduced(self):
        rf = RationalFunction(P(2, 2), P(4, 8))  # (2x+2)/(8x+4) -> (x+1)/4(x+1/2)
        assert rf.den.leading == 1
        assert rf.is_canonical

    def test_cross_form_equality(self):
        a = RationalFunction(P(1, 1), P(2, 1))
        b = RationalFunction(P(2, 2), P(4, 2))
        assert a == b

    def test_gcd_cancellation(self):
        num = P(1, 1) * P(5, 3)
        den = P(1, 1) * P(7, 2)
        rf = RationalFunction(num, den)
        assert rf == RationalFunction(P(5, 3), P(7, 2))

    def test_canonicalization_idempotent(self):
        rf = RationalFunction(P(6, 12, 6), P(3, 3))
        again = RationalFunction(rf.num, rf.den)
        assert again.num.coeffs == rf.num.coeffs
        assert again.den.coeffs == rf.den.coeffs

    @given(n1=small_poly, d1=nonzero_poly, n2=small_poly, d2=nonzero_poly)
    @settings(max_examples=60)
    def test_arithmetic_matches_pointwise(self, n1, d1, n2, d2):
        a = RationalFunction(n1, d1)
        b = RationalFunction(n2, d2)
        x = F(9, 5)
        if a.den.eval(x) == 0 or b.den.eval(x) == 0:
            return
        s = a + b
        p = a * b
        if s.den.eval(x) != 0:
            assert s.eval(x) == a.eval(x) + b.eval(x)
        if p.den.eval(x) != 0:
            assert p.eval(x) == a.eval(x) * b.eval(x)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(P(1), Polynomial(()))
        with pytest.raises(ZeroDivisionError):
            RationalFunction(P(1), P(1)) / RationalFunction(P(0), P(1))

    def test_pole_evaluation_raises(self):
        rf = RationalFunction(P(1), P(-1, 1))
        with pytest.raises(ZeroDivisionError):
            rf.eval(1)

    def test_compose(self):
        rf = RationalFunction(P(0, 1), P(1, 1))  # x/(x+1)
        shifted = rf.compose(P(1, 1))
        assert shifted == RationalFunction(P(1, 1), P(2, 1))

    def test_degree_pair(self):
        rf = RationalFunction(P(1, 0, 3), P(0, 0, 0, 1))
        assert rf.degree_pair == (2, 3)

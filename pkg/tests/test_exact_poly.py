from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import from_sympy, rationals, to_sympy
from core.exact_poly import ExactPoly, to_rational
from core.exceptions import DomainError
from utils.helpers import format_fraction

coefficient_lists = st.lists(rationals, min_size=0, max_size=6)


class TestRationalParsing:

    def test_accepts_fraction_strings(self):
        assert to_rational(" -7/4 ") == Fraction(-7, 4)
        assert to_rational(3) == Fraction(3)

    @pytest.mark.parametrize("bad", [0.5, "1.5", "1e3", "abc", "1/0", True])
    def test_rejects_inexact_or_malformed_values(self, bad):
        with pytest.raises(DomainError):
            to_rational(bad)

    def test_format_drops_unit_denominator(self):
        assert format_fraction(Fraction(4, 2)) == "2"
        assert format_fraction(Fraction(-3, 6)) == "-1/2"

    def test_coefficient_strings_share_the_formatter(self):
        p = ExactPoly([Fraction(1, 2), 2, Fraction(-4, 6)])
        assert p.to_strings() == [format_fraction(c) for c in p.coeffs] == ["1/2", "2", "-2/3"]


class TestExactPoly:

    def test_trailing_zeros_are_normalized(self):
        assert ExactPoly([1, 2, 0, 0]).degree == 1
        assert ExactPoly([0, 0]).is_zero()
        assert ExactPoly().degree == -1

    def test_derivative_of_bell_three(self):
        assert ExactPoly([0, 1, 3, 1]).derivative() == ExactPoly([1, 6, 3])

    def test_gcd_is_monic(self):
        x = ExactPoly.x()
        assert (x * x).gcd(x) == x
        assert ExactPoly([2, 2]).gcd(ExactPoly([4, 4])) == ExactPoly([1, 1])

    def test_exact_evaluation(self):
        assert ExactPoly([2, 4, 1])(-1) == -1
        assert ExactPoly([Fraction(1, 2), 0, 1])(Fraction(1, 2)) == Fraction(3, 4)

    def test_division_by_zero_polynomial(self):
        with pytest.raises(DomainError):
            ExactPoly([1, 1]).divmod(ExactPoly())

    def test_immutable(self):
        with pytest.raises(AttributeError):
            ExactPoly([1]).foo = 2

    def test_lowest_degree_and_strip(self):
        p = ExactPoly([0, 0, 3, 1])
        assert p.lowest_degree() == 2
        assert p.strip_x_power() == (2, ExactPoly([3, 1]))

    def test_string_form(self):
        assert str(ExactPoly([2, 4, 1])) == "x^2 + 4*x + 2"
        assert str(ExactPoly([0, -1, 0, Fraction(1, 2)])) == "1/2*x^3 - x"
        assert ExactPoly().to_strings() == ["0"]

    @given(coefficient_lists, coefficient_lists)
    def test_product_matches_sympy(self, a, b):
        p, q = ExactPoly(a), ExactPoly(b)
        assert p * q == from_sympy(to_sympy(p) * to_sympy(q))

    @given(coefficient_lists, coefficient_lists.filter(lambda c: any(v != 0 for v in c)))
    def test_division_reconstructs_dividend(self, a, b):
        p, d = ExactPoly(a), ExactPoly(b)
        quotient, remainder = p.divmod(d)
        assert quotient * d + remainder == p
        assert remainder.degree < d.degree

    @given(st.lists(rationals, min_size=1, max_size=5))
    def test_cauchy_bound_encloses_roots(self, shifts):
        p = ExactPoly.from_linear_factors(shifts)
        bound = p.cauchy_bound()
        assert all(abs(s) < bound for s in shifts)

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import phi_sequences
from core.exceptions import DomainError
from core.phi_sequence import PhiSequence, parse_phi
from core.series_oracles import (
    compare_oracles,
    exact_value,
    hypergeometric_eval,
    poisson_moment_eval,
    ratio_form_allowed,
    relative_error,
)

positive_points = st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(5), Fraction(10)])


class TestPoissonMoment:

    def test_mean_of_poisson(self):
        assert poisson_moment_eval(PhiSequence.zero(), 1, 2) == pytest.approx(2.0, rel=1e-12)

    def test_total_mass(self):
        assert poisson_moment_eval(parse_phi("3,-1/2"), 0, Fraction(7, 3)) == pytest.approx(1.0, rel=1e-12)

    def test_matches_exact_evaluation(self):
        assert poisson_moment_eval(parse_phi("1,2"), 2, 1) == pytest.approx(7.0, rel=1e-10)

    @pytest.mark.parametrize("x, tol", [(0, 1e-12), (-1, 1e-12), (1, 0), (1, -1e-3)])
    def test_domain(self, x, tol):
        with pytest.raises(DomainError):
            poisson_moment_eval(PhiSequence.zero(), 1, x, tol)


class TestHypergeometric:

    def test_linear_case(self):
        assert hypergeometric_eval(parse_phi("1"), 1, 1) == pytest.approx(2 * math.e, rel=1e-10)

    @pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(2), Fraction(-1, 2)])
    def test_degree_zero_is_exponential(self, x):
        assert hypergeometric_eval(PhiSequence.zero(), 0, x) == pytest.approx(math.exp(float(x)), rel=1e-10)

    def test_ratio_form(self):
        assert hypergeometric_eval(parse_phi("1,2"), 2, 1, form="ratio") == pytest.approx(7 * math.e, rel=1e-10)

    def test_ratio_form_rejects_nonpositive_integers(self):
        assert not ratio_form_allowed(parse_phi("1,-2"), 2)
        with pytest.raises(DomainError):
            hypergeometric_eval(parse_phi("1,-2"), 2, 1, form="ratio")

    def test_unknown_form(self):
        with pytest.raises(DomainError):
            hypergeometric_eval(parse_phi("1"), 1, 1, form="closed")


class TestOracleComparison:

    def test_relative_error_formula(self):
        assert relative_error(3.0, Fraction(1)) == pytest.approx(1.0)
        assert relative_error(0.0, Fraction(0)) == 0.0

    def test_inapplicable_oracles_are_none(self):
        result = compare_oracles(parse_phi("0,1"), 2, Fraction(-1))
        assert result["poisson"] is None and result["poisson_error"] is None
        assert result["hyper_ratio"] is None
        assert result["hyper_raw_error"] < 1e-9

    @settings(max_examples=25, deadline=None)
    @given(phi_sequences(nonnegative=True), st.integers(min_value=0, max_value=12), positive_points)
    def test_all_oracles_agree_with_exact_values(self, phi, n, x):
        result = compare_oracles(phi, n, x)
        assert result["exact"] == pytest.approx(float(exact_value(phi, n, x)))
        errors = [v for k, v in result.items() if k.endswith("_error") and v is not None]
        assert errors and max(errors) <= 1e-9

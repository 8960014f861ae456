from fractions import Fraction

import pytest

from core.exceptions import DomainError
from core.genbell import genbell_via_recurrence
from core.phi_sequence import PhiSequence, parse_phi
from core.roots import multiplicity_at_zero
from core.zero_predictions import (
    check_leftmost_bounds,
    h_set,
    leftmost_zero_bounds,
    positive_zero_prediction,
    predicted_zero_multiplicity,
    real_count_floor,
    shifted_maximum,
    support_polynomial,
    zero_multiplicity_from_support,
)


class TestHSet:

    @pytest.mark.parametrize("text, size", [("-3/2", 1), ("1,2,3", 0), ("-3/2,-7/2", 2), ("0", 0)])
    def test_sizes(self, text, size):
        assert positive_zero_prediction(parse_phi(text)) == size

    def test_members(self):
        assert h_set(parse_phi("-3/2")) == [1]
        assert h_set(parse_phi("-3/2,-7/2")) == [1, 3]

    def test_negative_integer_entries_are_rejected(self):
        with pytest.raises(DomainError):
            h_set(parse_phi("1,-2"))

    def test_needs_a_zero_tail(self):
        with pytest.raises(DomainError):
            h_set(PhiSequence.constant(1))

    def test_support_polynomial(self):
        P = support_polynomial(parse_phi("-3/2,-7/2"))
        assert P(1) == Fraction(5, 4) and P(2) == Fraction(-3, 4)


class TestZeroMultiplicity:

    @pytest.mark.parametrize("text, n, expected", [("-1", 2, 2), ("1,2", 3, 1), ("-1,-2", 4, 3), ("-2,-1,5", 5, 3)])
    def test_examples(self, text, n, expected):
        phi = parse_phi(text)
        assert multiplicity_at_zero(genbell_via_recurrence(phi, n)) == expected
        assert predicted_zero_multiplicity(phi) == expected
        assert zero_multiplicity_from_support(phi) == expected

    def test_real_count_floor(self):
        assert real_count_floor(5, 3) == 3
        assert real_count_floor(5, 2) == 3
        with pytest.raises(DomainError):
            real_count_floor(1, 2)


class TestLeftmostBounds:

    @pytest.mark.parametrize("text, n, alpha_n, lower", [
        ("5,0,0", 3, 4, -18),
        ("1,2,3", 3, 0, -14),
        ("0", 4, -1, -17),
    ])
    def test_bound_values(self, text, n, alpha_n, lower):
        phi = parse_phi(text)
        assert shifted_maximum(phi, n) == alpha_n
        assert leftmost_zero_bounds(phi, n).lower == lower

    @pytest.mark.parametrize("text, n", [("5,0,0", 3), ("1,2,3", 6), ("1/2", 8), ("0", 5)])
    def test_bounds_hold(self, text, n):
        result = check_leftmost_bounds(parse_phi(text), n)
        assert result["lower_holds"] and result["upper_holds"] and result["satisfied"]

    def test_domain(self):
        with pytest.raises(DomainError):
            leftmost_zero_bounds(parse_phi("1,-1"), 2)
        with pytest.raises(DomainError):
            leftmost_zero_bounds(parse_phi("1"), 0)

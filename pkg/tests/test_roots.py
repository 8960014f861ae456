from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import phi_sequences, to_sympy
from core.combinatorics import bell_poly
from core.exact_poly import ExactPoly
from core.exceptions import DomainError, UndecidedError
from core.genbell import genbell_via_recurrence
from core.phi_sequence import parse_phi
from core.roots import (
    ExactPoint,
    Interval,
    check_interlace,
    compare_root_to,
    interlace_roots,
    isolate_roots,
    multiplicity_at_zero,
    real_root_count,
    separate,
    square_free_decomposition,
    square_free_part,
    strictly_left,
    sturm_count,
)

QUADRATIC = ExactPoly([2, 4, 1])  # roots -2 +- sqrt(2)


def points(*values):
    return [ExactPoint(Fraction(v)) for v in values]


class TestSturmCounts:

    def test_examples(self):
        assert sturm_count(QUADRATIC, -4, 0) == 2
        assert sturm_count(ExactPoly([1, 0, 1]), -10, 10) == 0
        assert sturm_count(ExactPoly([0, 0, 1]), -1, 1) == 1

    def test_half_open_interval(self):
        p = ExactPoly([-1, 1])  # root at 1
        assert sturm_count(p, 0, 1) == 1
        assert sturm_count(p, 1, 2) == 0

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            sturm_count(ExactPoly(), 0, 1)
        with pytest.raises(DomainError):
            sturm_count(QUADRATIC, 1, 1)

    def test_real_root_counts(self):
        assert real_root_count(ExactPoly([1, 0, 1])) == 0
        assert real_root_count(genbell_via_recurrence(parse_phi("-2,-2"), 4)) == 2
        assert real_root_count(ExactPoly([0, 0, 1]), multiplicity=False) == 1

    def test_multiplicity_at_zero(self):
        assert multiplicity_at_zero(QUADRATIC) == 0
        assert multiplicity_at_zero(genbell_via_recurrence(parse_phi("-1"), 2)) == 2
        assert multiplicity_at_zero(bell_poly(3)) == 1

    def test_square_free_decomposition(self):
        p = ExactPoly.from_linear_factors([1, 1, 1, -2, -2, 3])
        assert square_free_decomposition(p) == [
            (1, ExactPoly([3, 1])), (2, ExactPoly([-2, 1])), (3, ExactPoly([1, 1])),
        ]
        assert square_free_part(p) == ExactPoly.from_linear_factors([1, -2, 3])


class TestIsolation:

    def test_quadratic_intervals(self):
        iso = isolate_roots(QUADRATIC, Fraction(1, 100))
        assert iso.distinct_count() == 2
        assert all(not e.is_point and e.width < Fraction(1, 100) for e in iso.roots)
        approx = iso.approximations()
        assert approx[0] == pytest.approx(-3.41421356, abs=0.01)
        assert approx[1] == pytest.approx(-0.58578644, abs=0.01)

    def test_double_root_at_zero(self):
        iso = isolate_roots(ExactPoly([0, 0, 1]))
        assert iso.roots == [ExactPoint(Fraction(0), 2)]
        assert iso.counts()["zero"] == 2

    def test_classical_bell_three(self):
        iso = isolate_roots(bell_poly(3))
        assert iso.roots[-1] == ExactPoint(Fraction(0), 1)
        assert len(iso.negative()) == 2

    def test_rational_roots_become_points(self):
        iso = isolate_roots(ExactPoly.from_linear_factors([Fraction(1, 3), Fraction(-5, 2)]))
        assert [e.value for e in iso.roots] == [Fraction(-1, 3), Fraction(5, 2)]

    def test_non_real_count(self):
        iso = isolate_roots(genbell_via_recurrence(parse_phi("-2,-2"), 4))
        assert iso.counts() == {"negative": 1, "zero": 1, "positive": 0, "nonreal": 2, "distinct_real": 2}

    def test_zero_polynomial_and_bad_width(self):
        with pytest.raises(DomainError):
            isolate_roots(ExactPoly())
        with pytest.raises(DomainError):
            isolate_roots(QUADRATIC, 0)

    def test_exhausted_budget_is_undecided(self):
        iso = isolate_roots(QUADRATIC, Fraction(1, 4), budget=2)
        with pytest.raises(UndecidedError):
            for _ in range(3):
                iso.bisect(0)

    @settings(max_examples=30, deadline=None)
    @given(phi_sequences(nonnegative=True), st.integers(min_value=1, max_value=10))
    def test_nonnegative_phi_has_simple_nonpositive_zeros(self, phi, n):
        iso = isolate_roots(genbell_via_recurrence(phi, n))
        assert iso.real_count() == n
        assert iso.all_simple()
        assert not iso.positive()

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(min_value=-4, max_value=4), min_size=1, max_size=6))
    def test_counts_match_sympy(self, coeffs):
        p = ExactPoly(coeffs + [1])
        iso = isolate_roots(p)
        assert iso.real_count() == len(sp.real_roots(sp.Poly(to_sympy(p))))
        distinct = sorted(set(sp.real_roots(sp.Poly(to_sympy(p)))), key=float)
        for entry, root in zip(iso.roots, distinct):
            assert float(entry.lo) - 1e-9 <= float(root) <= float(entry.hi) + 1e-9


class TestInterlacing:

    def test_examples(self):
        assert check_interlace(points(-3, -1), points(-2)).holds
        assert check_interlace(points(-3, -1), points(-2, 0)).holds
        assert not check_interlace(points(-2, 0), points(-3, -1)).holds

    def test_empty_sets_interlace(self):
        assert check_interlace([], []).holds

    def test_cardinality_mismatch(self):
        verdict = check_interlace(points(-5, -3, -1), points(-2))
        assert not verdict.holds
        assert "cardinalities" in verdict.witness

    def test_overlapping_entries_are_undecided(self):
        with pytest.raises(UndecidedError):
            check_interlace([Interval(Fraction(-2), Fraction(0))], points(-1))

    def test_consecutive_classical_bell(self):
        verdict = interlace_roots(isolate_roots(bell_poly(5)), isolate_roots(bell_poly(4)), "negative", "negative")
        assert verdict.holds

    def test_shared_root_is_undecided(self):
        with pytest.raises(UndecidedError):
            separate(isolate_roots(bell_poly(3)), isolate_roots(bell_poly(2)))

    def test_strictly_left_and_compare(self):
        a = isolate_roots(ExactPoly([2, 4, 1]))
        b = isolate_roots(ExactPoly([4, 5, 1]))  # roots -4, -1
        assert strictly_left(b, 0, a, 0)
        assert strictly_left(b, 1, a, 1)
        assert compare_root_to(a, 0, Fraction(-3)) < 0
        assert compare_root_to(b, 1, Fraction(-1)) == 0

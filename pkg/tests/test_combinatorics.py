from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st
from sympy.functions.combinatorial.numbers import stirling

from conftest import X, from_sympy
from core.combinatorics import (
    bell_poly,
    bell_poly_recursive,
    elementary_symmetric,
    stirling2,
    stirling2_explicit,
    stirling_row,
    symmetric_from_factors,
    t_operator,
)
from core.exact_poly import ExactPoly
from core.exceptions import DomainError
from core.phi_sequence import PhiSequence


class TestStirling:

    def test_small_values(self):
        assert stirling2(0, 0) == 1
        assert stirling2(3, 2) == 3
        assert all(stirling2(n, n) == 1 for n in range(12))

    def test_j_above_n_is_rejected(self):
        with pytest.raises(DomainError):
            stirling2(2, 3)
        with pytest.raises(DomainError):
            stirling2_explicit(2, 3)

    @given(st.integers(min_value=0, max_value=40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
    def test_table_matches_sympy_and_explicit_sum(self, nj):
        n, j = nj
        assert stirling2(n, j) == int(stirling(n, j)) == stirling2_explicit(n, j)

    def test_concurrent_growth_gives_complete_rows(self):
        with ThreadPoolExecutor(max_workers=8) as pool:
            rows = list(pool.map(stirling_row, range(60, 0, -1)))
        assert all(sum(row) == int(sp.bell(n)) for n, row in zip(range(60, 0, -1), rows))

    def test_row_is_a_copy(self):
        row = stirling_row(4)
        row[0] = 99
        assert stirling_row(4)[0] == 0


class TestBellPolynomials:

    def test_examples(self):
        assert bell_poly(0) == ExactPoly([1])
        assert bell_poly(1) == ExactPoly.x()
        assert bell_poly(3) == ExactPoly([0, 1, 3, 1])

    @pytest.mark.parametrize("n", [0, 1, 5, 12, 25])
    def test_matches_sympy_touchard(self, n):
        assert bell_poly(n) == from_sympy(sp.bell(n, X))

    @pytest.mark.parametrize("n", range(15))
    def test_t_operator_steps_the_index(self, n):
        assert t_operator(bell_poly(n)) == bell_poly(n + 1)
        assert bell_poly_recursive(n) == bell_poly(n)

    def test_negative_index(self):
        with pytest.raises(DomainError):
            bell_poly(-1)


class TestElementarySymmetric:

    def test_consecutive_integers(self):
        phi = PhiSequence.affine(0)
        assert elementary_symmetric(phi, 3) == [1, 6, 11, 6]

    def test_zero_sequence(self):
        assert elementary_symmetric(PhiSequence.zero(), 5) == [1, 0, 0, 0, 0, 0]

    @given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), max_size=6))
    def test_agrees_with_expanded_product(self, values):
        phi = PhiSequence.from_values(values)
        assert elementary_symmetric(phi, len(values)) == symmetric_from_factors([Fraction(v) for v in values])

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import X, from_sympy
from core.exact_poly import ExactPoly
from core.exceptions import DomainError
from core.laguerre import (
    check_laguerre_bridge,
    check_multiple_orthogonality,
    classical_laguerre_oracle,
    laguerre_phi_sequence,
    multiple_laguerre,
    orthogonality_table,
)
from core.phi_sequence import AlphaVector, MultiIndex

alphas = st.fractions(min_value=Fraction(-4, 5), max_value=5, max_denominator=5)


def alpha(*values):
    return AlphaVector(tuple(Fraction(v) for v in values))


class TestPhiSequence:

    def test_single_block(self):
        phi = laguerre_phi_sequence(alpha("1/2"), MultiIndex((3,)))
        assert phi.values(4) == [Fraction(3, 2), Fraction(5, 2), Fraction(7, 2), 0]

    def test_blocks_in_order(self):
        phi = laguerre_phi_sequence(alpha("1/2", 0), MultiIndex((1, 1)))
        assert list(phi.prefix) == [Fraction(3, 2), 1]

    def test_empty_block(self):
        phi = laguerre_phi_sequence(alpha(0, "1/3"), MultiIndex((0, 1)))
        assert list(phi.prefix) == [Fraction(4, 3)]

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            laguerre_phi_sequence(alpha(0), MultiIndex((1, 1)))


class TestClassicalLaguerre:

    def test_examples(self):
        assert classical_laguerre_oracle(0, 0) == ExactPoly([1])
        assert classical_laguerre_oracle(0, 1) == ExactPoly([1, -1])
        assert classical_laguerre_oracle(0, 2) == ExactPoly([1, -2, Fraction(1, 2)])

    @pytest.mark.parametrize("a, n", [(0, 4), (Fraction(1, 2), 5), (Fraction(-1, 3), 6)])
    def test_matches_sympy(self, a, n):
        expected = from_sympy(sp.assoc_laguerre(n, sp.Rational(a.numerator, a.denominator) if isinstance(a, Fraction) else a, X))
        assert classical_laguerre_oracle(a, n) == expected

    @settings(max_examples=20, deadline=None)
    @given(alphas, st.integers(min_value=0, max_value=12))
    def test_bridge_to_generalized_bell(self, a, n):
        assert check_laguerre_bridge(a, n)


class TestMultipleLaguerre:

    def test_monic_normalization(self):
        assert multiple_laguerre(alpha(0), MultiIndex((1,))) == ExactPoly([-1, 1])
        assert multiple_laguerre(alpha(0), MultiIndex((0,))) == ExactPoly([1])

    def test_degree_is_total_index(self):
        assert multiple_laguerre(alpha(0, "1/2"), MultiIndex((2, 1))).degree == 3

    def test_orthogonality_examples(self):
        assert check_multiple_orthogonality(alpha(0), MultiIndex((2,)))
        assert check_multiple_orthogonality(alpha(0), MultiIndex((0,)))
        assert check_multiple_orthogonality(alpha(0, "1/2"), MultiIndex((1, 1)))

    def test_table_shape(self):
        table = orthogonality_table(alpha(0, "1/2"), MultiIndex((2, 1)))
        assert [(j, k) for j, k, _ in table] == [(1, 0), (1, 1), (2, 0)]
        assert all(moment == 0 for _, _, moment in table)

    def test_divergent_weight(self):
        with pytest.raises(DomainError):
            orthogonality_table(alpha(-1), MultiIndex((2,)))

    @settings(max_examples=20, deadline=None)
    @given(st.tuples(alphas, alphas).filter(lambda p: (p[0] - p[1]).denominator != 1),
           st.tuples(st.integers(0, 3), st.integers(0, 3)))
    def test_two_weight_orthogonality(self, params, parts):
        assert check_multiple_orthogonality(AlphaVector(params), MultiIndex(parts))

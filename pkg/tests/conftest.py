"""Shared fixtures and strategies for the genbell test-suite."""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import strategies as st

from core.exact_poly import ExactPoly
from core.phi_sequence import PhiSequence
from utils.config import get_config, reset_config

X = sp.Symbol("x")


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch, tmp_path):
    """Every test sees the built-in defaults, untouched by a local .env or config file"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("BELL_LOG_LEVEL", raising=False)
    monkeypatch.delenv("APP_ENV", raising=False)
    monkeypatch.delenv("BELL_CONFIG", raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def config():
    return get_config()


def to_sympy(p: ExactPoly) -> sp.Expr:
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * X ** j for j, c in enumerate(p.coeffs)])


def from_sympy(expr: sp.Expr) -> ExactPoly:
    coeffs = sp.Poly(sp.expand(expr), X).all_coeffs()[::-1]
    return ExactPoly([Fraction(int(sp.numer(c)), int(sp.denom(c))) for c in coeffs])


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)
nonnegative_rationals = st.fractions(min_value=0, max_value=6, max_denominator=6)


@st.composite
def phi_sequences(draw, nonnegative: bool = False, max_len: int = 5):
    values = draw(st.lists(nonnegative_rationals if nonnegative else rationals, min_size=1, max_size=max_len))
    return PhiSequence.from_values(values)

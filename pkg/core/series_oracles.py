"""
Floating-point oracles for generalized Bell polynomials.

Be_n^phi(x) is the expectation of (t + phi_1)...(t + phi_n) under the
Poisson distribution with mean x, so e^x Be_n^phi(x) is the power series
sum_j prod_i (j + phi_i) x^j / j!. Partial sums are accumulated exactly and
converted with mpmath only at the end; the ratio form goes through
``mpmath.hyper``.
"""

import logging
from fractions import Fraction
from math import ceil
from typing import Dict, Optional, Tuple

import mpmath

from core.exact_poly import RationalLike, to_rational
from core.exceptions import DomainError
from core.genbell import genbell_via_recurrence
from core.phi_sequence import PhiSequence

# Set up logging
logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_TERMS_FACTOR = 10
WORKING_DPS = 40


def _to_mpf(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator


def _term_weight(values, j: int) -> Fraction:
    w = Fraction(1)
    for v in values:
        w *= j + v
    return w


def _raw_series(values, x: Fraction, tol: float, max_terms_factor: int) -> Tuple[Fraction, int]:
    """
    Exact partial sum of sum_j prod_i (j + phi_i) x^j / j!

    Summation stops once j > |x| + n, every factor j + phi_i is positive (so
    successive term ratios decrease) and the geometric bound on the remaining
    tail falls below tol relative to the partial sum.

    Returns:
        Tuple[Fraction, int]: Partial sum and the number of terms used
    """
    n = len(values)
    cap = max_terms_factor * (n + ceil(abs(x)) + 50)
    power = Fraction(1)  # x^j / j!
    total = Fraction(0)
    for j in range(cap):
        if j > 0:
            power = power * x / j
        total += _term_weight(values, j) * power

        if j <= abs(x) + n or any(j + 1 + v <= 0 for v in values):
            continue
        nxt = abs(_term_weight(values, j + 1) * power * x / (j + 1))
        # ratio of |t_{j+2}| to |t_{j+1}|; bounds every later ratio
        ratio = abs(x) / (j + 2)
        for v in values:
            ratio *= (j + 2 + v) / (j + 1 + v)
        if ratio >= 1:
            continue
        tail = nxt / (1 - ratio)
        if tail < Fraction(tol) * max(Fraction(1), abs(total)):
            return total, j + 1

    logger.warning(f"Series hit the hard cap of {cap} terms (n={n}, x={x})")
    return total, cap


def poisson_moment_eval(
    phi: PhiSequence,
    n: int,
    x: RationalLike,
    tol: float = DEFAULT_TOLERANCE,
    max_terms_factor: int = DEFAULT_MAX_TERMS_FACTOR,
) -> float:
    """
    Be_n^phi(x) as the generalized Poisson moment e^{-x} sum_j prod_i (j + phi_i) x^j / j!

    Args:
        phi (PhiSequence): Parameter sequence
        n (int): Degree
        x (RationalLike): Poisson mean, x > 0
        tol (float): Relative truncation tolerance
        max_terms_factor (int): Hard cap multiplier on the number of terms

    Returns:
        float: Approximation of Be_n^phi(x)

    Raises:
        DomainError: If x <= 0 or tol <= 0
    """
    if tol <= 0:
        raise DomainError(f"Tolerance must be positive, got {tol}")
    x = to_rational(x)
    if x <= 0:
        raise DomainError(f"The Poisson mean must be positive, got {x}")
    total, terms = _raw_series(phi.values(n), x, tol, max_terms_factor)
    logger.debug(f"Poisson moment series used {terms} terms (n={n}, x={x})")
    with mpmath.workdps(WORKING_DPS):
        return float(_to_mpf(total) * mpmath.exp(-_to_mpf(x)))


def hypergeometric_eval(
    phi: PhiSequence,
    n: int,
    x: RationalLike,
    tol: float = DEFAULT_TOLERANCE,
    form: str = "raw",
    max_terms_factor: int = DEFAULT_MAX_TERMS_FACTOR,
) -> float:
    """
    e^x Be_n^phi(x) through its hypergeometric series

    The raw form sums prod_i (j + phi_i) x^j / j! directly and accepts any phi.
    The ratio form evaluates (phi_1...phi_n) nFn(phi + 1; phi; x) with mpmath and
    needs phi_i outside {0, -1, -2, ...}.

    Raises:
        DomainError: On tol <= 0, an unknown form, or a forbidden phi_i for the ratio form
    """
    if tol <= 0:
        raise DomainError(f"Tolerance must be positive, got {tol}")
    x = to_rational(x)
    values = phi.values(n)

    if form == "raw":
        total, terms = _raw_series(values, x, tol, max_terms_factor)
        logger.debug(f"Raw hypergeometric series used {terms} terms (n={n}, x={x})")
        return float(total)

    if form == "ratio":
        bad = [i for i, v in enumerate(values, start=1) if v <= 0 and v.denominator == 1]
        if bad:
            raise DomainError(f"Ratio form needs phi_i not in {{0, -1, -2, ...}}; violated at i={bad}")
        with mpmath.workdps(WORKING_DPS):
            upper = [_to_mpf(v) + 1 for v in values]
            lower = [_to_mpf(v) for v in values]
            prefactor = mpmath.fprod(lower)
            return float(prefactor * mpmath.hyper(upper, lower, _to_mpf(x)))

    raise DomainError(f"Unknown hypergeometric form {form!r}; expected 'raw' or 'ratio'")


def ratio_form_allowed(phi: PhiSequence, n: int) -> bool:
    return not any(v <= 0 and v.denominator == 1 for v in phi.values(n))


def exact_value(phi: PhiSequence, n: int, x: RationalLike) -> Fraction:
    return genbell_via_recurrence(phi, n)(x)


def relative_error(approx: float, exact: Fraction) -> float:
    """|approx - exact| / (1 + |exact|), evaluated in extended precision"""
    with mpmath.workdps(WORKING_DPS):
        e = _to_mpf(exact)
        return float(abs(mpmath.mpf(approx) - e) / (1 + abs(e)))


def compare_oracles(phi: PhiSequence, n: int, x: RationalLike, tol: float = DEFAULT_TOLERANCE) -> Dict[str, Optional[float]]:
    """
    Evaluate every applicable oracle at x and measure it against the exact value

    Returns:
        Dict[str, Optional[float]]: Oracle values and relative errors; entries
        that do not apply (x <= 0 for the Poisson form, forbidden phi for the
        ratio form) are None
    """
    x = to_rational(x)
    exact = exact_value(phi, n, x)
    with mpmath.workdps(WORKING_DPS):
        ex = mpmath.exp(_to_mpf(x))
        scaled_exact = _to_mpf(exact) * ex

        def _scaled_error(value: float) -> float:
            return float(abs(mpmath.mpf(value) - scaled_exact) / (1 + abs(scaled_exact)))

        result: Dict[str, Optional[float]] = {"exact": float(exact)}

        if x > 0:
            poisson = poisson_moment_eval(phi, n, x, tol)
            result["poisson"] = poisson
            result["poisson_error"] = relative_error(poisson, exact)
        else:
            result["poisson"] = result["poisson_error"] = None

        raw = hypergeometric_eval(phi, n, x, tol, form="raw")
        result["hyper_raw"] = raw
        result["hyper_raw_error"] = _scaled_error(raw)

        if ratio_form_allowed(phi, n):
            ratio = hypergeometric_eval(phi, n, x, tol, form="ratio")
            result["hyper_ratio"] = ratio
            result["hyper_ratio_error"] = _scaled_error(ratio)
        else:
            result["hyper_ratio"] = result["hyper_ratio_error"] = None
    return result

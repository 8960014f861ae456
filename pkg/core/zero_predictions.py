"""
Closed-form predictions about the zeros of Be_n^phi.

Everything here is computed from phi alone (the polynomial P(x) = prod (x + phi_i)
of a finitely supported sequence, or the shifted maximum alpha_n) and is
compared against certified isolations by the verification suites.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Dict, List

from core.combinatorics import bell_poly
from core.exact_poly import ExactPoly
from core.exceptions import DomainError
from core.genbell import genbell_via_recurrence
from core.phi_sequence import PhiSequence
from core.roots import DEFAULT_WIDTH, RootIsolation, compare_root_to, isolate_roots, separate, precedes_entry
from utils.helpers import format_fraction

# Set up logging
logger = logging.getLogger(__name__)


def check_no_negative_integers(phi: PhiSequence) -> None:
    """Reject a finitely supported phi with some phi_i in {-1, -2, ...}"""
    for i, v in enumerate(phi.prefix, start=1):
        if v < 0 and v.denominator == 1:
            raise DomainError(f"phi_{i} = {v} is a negative integer; the positive-zero analysis excludes it")


def support_polynomial(phi: PhiSequence) -> ExactPoly:
    """P(x) = prod_{i<=K} (x + phi_i) for phi supported on 1..K"""
    return ExactPoly.from_linear_factors(phi.prefix[: phi.support_length()])


def h_set(phi: PhiSequence) -> List[int]:
    """
    Positive integers l with P(l) P(l+1) < 0

    Args:
        phi (PhiSequence): Sequence with a zero tail and no negative integer entry

    Returns:
        List[int]: Elements of H in increasing order

    Raises:
        DomainError: If the tail is not zero or some phi_i is a negative integer
    """
    check_no_negative_integers(phi)
    P = support_polynomial(phi)
    top = ceil(max((abs(v) for v in phi.prefix), default=Fraction(0))) + 1
    return [l for l in range(1, top + 1) if P(l) * P(l + 1) < 0]


def positive_zero_prediction(phi: PhiSequence) -> int:
    """Eventual number of positive zeros of Be_n^phi, |H|"""
    return len(h_set(phi))


def predicted_zero_multiplicity(phi: PhiSequence) -> int:
    """
    Multiplicity of x = 0 as a root of Be_n^phi for n > K

    Equals 1 + L, where L is the largest integer such that each of -1..-L
    occurs among phi_1..phi_K.
    """
    values = set(phi.prefix[: phi.support_length()])
    run = 0
    while Fraction(-(run + 1)) in values:
        run += 1
    return run + 1


def zero_multiplicity_from_support(phi: PhiSequence) -> int:
    """min{m >= 1 : P(m) != 0}, the same multiplicity read off P"""
    P = support_polynomial(phi)
    m = 1
    while P(m) == 0:
        m += 1
    return m


def real_count_floor(n: int, K: int) -> int:
    """Lower bound on the real zeros of Be_n^phi for n >= K: n - K + 1 when K is odd, else n - K"""
    if n < K:
        raise DomainError(f"The real-count floor needs n >= K, got n={n}, K={K}")
    return n - K + 1 if K % 2 else n - K


def shifted_maximum(phi: PhiSequence, n: int) -> Fraction:
    """alpha_n = max{-1, phi_1 - 1, ..., phi_n - n}"""
    return max([Fraction(-1)] + [v - i for i, v in enumerate(phi.values(n), start=1)])


@dataclass
class LeftmostBounds:
    n: int
    alpha_n: Fraction
    lower: Fraction
    classical: RootIsolation

    @property
    def xi_1(self):
        """Isolation entry of the leftmost zero of the classical Be_n"""
        return self.classical.roots[0]

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "alpha_n": format_fraction(self.alpha_n),
            "lower": format_fraction(self.lower),
            "xi_1": self.xi_1.to_dict(),
        }


def leftmost_zero_bounds(phi: PhiSequence, n: int, width=DEFAULT_WIDTH) -> LeftmostBounds:
    """
    Bounds -4n - alpha_n - 2 < zeta_1 <= xi_1 on the leftmost zero of Be_n^phi

    Args:
        phi (PhiSequence): Sequence with phi_i >= 0 for i <= n
        n (int): Degree, n >= 1
        width (Fraction): Isolation width for xi_1

    Returns:
        LeftmostBounds: The rational lower bound and the isolated leftmost zero of Be_n

    Raises:
        DomainError: If n < 1 or some phi_i < 0
    """
    if n < 1:
        raise DomainError(f"The leftmost-zero bounds need n >= 1, got {n}")
    negative = phi.negative_indices(n)
    if negative:
        raise DomainError(f"The leftmost-zero bounds need phi_i >= 0; negative at i={negative}")
    alpha_n = shifted_maximum(phi, n)
    lower = -4 * n - alpha_n - 2
    return LeftmostBounds(n, alpha_n, lower, isolate_roots(bell_poly(n), width))


def check_leftmost_bounds(phi: PhiSequence, n: int, width=DEFAULT_WIDTH) -> Dict:
    """
    Decide lower < zeta_1(n) <= xi_1 with certified comparisons

    Returns:
        Dict: The bounds, the isolated zeta_1, and the booleans
        ``lower_holds``, ``upper_holds`` and ``satisfied``

    Raises:
        UndecidedError: If the refinement budget runs out
    """
    bounds = leftmost_zero_bounds(phi, n, width)
    poly = genbell_via_recurrence(phi, n)
    iso = isolate_roots(poly, width)
    lower_holds = compare_root_to(iso, 0, bounds.lower) > 0
    if poly == bell_poly(n):
        upper_holds = True
    else:
        separate(iso, bounds.classical, [0], [0])
        upper_holds = precedes_entry(iso.roots[0], bounds.classical.roots[0])
    result = bounds.to_dict()
    result.update(
        {
            "zeta_1": iso.roots[0].to_dict(),
            "lower_holds": lower_holds,
            "upper_holds": upper_holds,
            "satisfied": lower_holds and upper_holds,
        }
    )
    return result

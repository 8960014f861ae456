"""
Multiple Laguerre polynomials of the first kind as generalized Bell polynomials.

For parameters alpha = (alpha_1..alpha_q) and a multi-index n = (n_1..n_q) the
sequence phi^{alpha,n} lists alpha_j + 1, ..., alpha_j + n_j block by block, and

    L_n^alpha(-x) = (-1)^{|n|} Be_{|n|}^{phi^{alpha,n}}(x).

With this normalization L is monic. The classical q = 1 polynomial is
n! (-1)^n times smaller; ``classical_laguerre_oracle`` rebuilds it from the
three-term recurrence as an independent check.
"""

import logging
from fractions import Fraction
from math import factorial
from typing import List, Tuple

from core.exact_poly import ExactPoly, RationalLike, to_rational
from core.exceptions import DomainError
from core.genbell import genbell_via_recurrence
from core.phi_sequence import AlphaVector, MultiIndex, PhiSequence

# Set up logging
logger = logging.getLogger(__name__)


def laguerre_phi_sequence(alpha: AlphaVector, nvec: MultiIndex) -> PhiSequence:
    """
    Build phi^{alpha,n}

    Args:
        alpha (AlphaVector): Parameters alpha_1..alpha_q
        nvec (MultiIndex): Block sizes n_1..n_q

    Returns:
        PhiSequence: Prefix of length |n| with a zero tail

    Raises:
        DomainError: If the lengths differ
    """
    if len(alpha) != len(nvec):
        raise DomainError(f"alpha has {len(alpha)} entries but the multi-index has {len(nvec)}")
    prefix: List[Fraction] = []
    for a, size in zip(alpha.values, nvec.parts):
        prefix.extend(a + i for i in range(1, size + 1))
    return PhiSequence(tuple(prefix))


def multiple_laguerre(alpha: AlphaVector, nvec: MultiIndex) -> ExactPoly:
    """L_n^alpha(x) = (-1)^{|n|} Be_{|n|}^{phi^{alpha,n}}(-x)"""
    phi = laguerre_phi_sequence(alpha, nvec)
    total = nvec.total
    be = genbell_via_recurrence(phi, total)
    poly = be.reflect()
    return -poly if total % 2 else poly


def classical_laguerre_oracle(alpha: RationalLike, n: int) -> ExactPoly:
    """
    Classical generalized Laguerre polynomial L_n^alpha(x)

    Uses (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}
    from L_0 = 1 and L_1 = 1 + alpha - x.
    """
    if n < 0:
        raise DomainError(f"Laguerre degree must be nonnegative, got {n}")
    a = to_rational(alpha)
    prev = ExactPoly.constant(1)
    if n == 0:
        return prev
    cur = ExactPoly([1 + a, -1])
    for k in range(1, n):
        step = ExactPoly([2 * k + 1 + a, -1])
        nxt = (step * cur - prev.scale(k + a)).scale(Fraction(1, k + 1))
        prev, cur = cur, nxt
    return cur


def check_laguerre_bridge(alpha: RationalLike, n: int) -> bool:
    """n! L_n^alpha(-x) == Be_n^{phi^alpha}(x) with phi^alpha_i = alpha + i"""
    oracle = classical_laguerre_oracle(alpha, n).reflect().scale(factorial(n))
    return oracle == genbell_via_recurrence(PhiSequence.affine(alpha), n)


def _rising(base: Fraction, length: int) -> Fraction:
    """(base)(base + 1)...(base + length - 1)"""
    value = Fraction(1)
    for i in range(length):
        value *= base + i
    return value


def orthogonality_table(alpha: AlphaVector, nvec: MultiIndex) -> List[Tuple[int, int, Fraction]]:
    """
    Exact moments int_0^inf L(x) x^k x^{alpha_j} e^{-x} dx / Gamma(alpha_j + 1)

    Args:
        alpha (AlphaVector): Parameters, each alpha_j > -1
        nvec (MultiIndex): Multi-index

    Returns:
        List[Tuple[int, int, Fraction]]: (j, k, moment) for j = 1..q and 0 <= k < n_j

    Raises:
        DomainError: If some alpha_j <= -1
    """
    for j, a in enumerate(alpha.values, start=1):
        if a <= -1:
            raise DomainError(f"alpha_{j} = {a} must exceed -1 for the weight x^alpha e^-x to be integrable")
    coeffs = multiple_laguerre(alpha, nvec).coeffs
    table = []
    for j, (a, size) in enumerate(zip(alpha.values, nvec.parts), start=1):
        for k in range(size):
            moment = sum((c * _rising(a + 1, k + m) for m, c in enumerate(coeffs)), Fraction(0))
            table.append((j, k, moment))
    return table


def check_multiple_orthogonality(alpha: AlphaVector, nvec: MultiIndex) -> bool:
    table = orthogonality_table(alpha, nvec)
    failures = [(j, k) for j, k, moment in table if moment != 0]
    if failures:
        logger.warning(f"Orthogonality fails for alpha={alpha.values}, n={nvec.parts} at (j, k) in {failures}")
    return not failures

"""
Generalized Bell polynomials Be_n^phi.

Three independent constructions are provided (symmetric-function expansion
over classical Bell polynomials, the first-order recurrence, and the
falling-factorial coordinates rho_{n,j}), together with exact checks of the
structural identities relating neighbouring sequences.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from core.combinatorics import bell_poly, elementary_symmetric, t_operator
from core.exact_poly import ExactPoly, RationalLike, to_rational
from core.exceptions import DomainError, InvariantError
from core.phi_sequence import PhiSequence

# Set up logging
logger = logging.getLogger(__name__)

ROUTES = ("definition", "recurrence", "rho")


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"Polynomial index must be a nonnegative integer, got {n!r}")


def genbell_via_definition(phi: PhiSequence, n: int) -> ExactPoly:
    """Be_n^phi = sum_j Phi_{n-j}^n Be_j"""
    _check_n(n)
    sym = elementary_symmetric(phi, n)
    result = ExactPoly()
    for j in range(n + 1):
        if sym[n - j] != 0:
            result = result + bell_poly(j).scale(sym[n - j])
    return result


def genbell_via_recurrence(phi: PhiSequence, n: int) -> ExactPoly:
    """Iterate Be_{k+1}^phi = x(1 + d/dx) Be_k^phi + phi_{k+1} Be_k^phi from Be_0^phi = 1"""
    _check_n(n)
    return _recurrence_cached(tuple(phi.values(n)))


@lru_cache(maxsize=4096)
def _recurrence_cached(values: Tuple[Fraction, ...]) -> ExactPoly:
    p = ExactPoly.constant(1)
    for v in values:
        p = t_operator(p) + p.scale(v)
    return p


def rho_coefficients(phi: PhiSequence, n: int) -> List[Fraction]:
    """
    Coordinates of prod_{i<=n} (x + phi_i) in the falling-factorial basis

    Args:
        phi (PhiSequence): Parameter sequence
        n (int): Degree

    Returns:
        List[Fraction]: rho_{n,0..n}, built row by row from rho_{0,0} = 1
    """
    _check_n(n)
    rho = [Fraction(1)]
    for k in range(n):
        v = phi[k + 1]
        nxt = [Fraction(0)] * (k + 2)
        nxt[0] = v * rho[0]
        for j in range(1, k + 1):
            nxt[j] = rho[j - 1] + (v + j) * rho[j]
        nxt[k + 1] = rho[k]
        rho = nxt
    return rho


def genbell_via_rho(phi: PhiSequence, n: int) -> ExactPoly:
    """Be_n^phi = sum_j rho_{n,j}^phi x^j"""
    return ExactPoly(rho_coefficients(phi, n))


_ROUTE_TABLE = {
    "definition": genbell_via_definition,
    "recurrence": genbell_via_recurrence,
    "rho": genbell_via_rho,
}


def genbell(phi: PhiSequence, n: int, route: str = "recurrence") -> ExactPoly:
    """
    Generalized Bell polynomial through the named construction

    Args:
        phi (PhiSequence): Parameter sequence
        n (int): Degree
        route (str): One of "definition", "recurrence", "rho"

    Returns:
        ExactPoly: Be_n^phi
    """
    try:
        builder = _ROUTE_TABLE[route]
    except KeyError:
        raise DomainError(f"Unknown construction route {route!r}; expected one of {ROUTES}")
    return builder(phi, n)


def construct_all_routes(phi: PhiSequence, n: int) -> Dict[str, ExactPoly]:
    return {route: genbell(phi, n, route) for route in ROUTES}


def routes_agree(phi: PhiSequence, n: int) -> bool:
    polys = list(construct_all_routes(phi, n).values())
    return all(p == polys[0] for p in polys[1:])


def genbell_checked(phi: PhiSequence, n: int) -> ExactPoly:
    """Be_n^phi after confirming that all three routes coincide"""
    polys = construct_all_routes(phi, n)
    reference = polys["recurrence"]
    for route, p in polys.items():
        if p != reference:
            logger.error(f"Route {route} disagrees for phi={phi}, n={n}")
            raise InvariantError(f"Construction route {route} disagrees with the recurrence for phi={phi}, n={n}")
    return reference


def check_general_recurrence(phi: PhiSequence, l: int, n: int) -> bool:
    """Be_{n+1}^phi == phi_l Be_n^{phi^{l}} + x(1 + d/dx) Be_n^{phi^{l}}, for n >= l - 1"""
    if l < 1 or n < l - 1:
        raise DomainError(f"The general recurrence needs l >= 1 and n >= l - 1, got l={l}, n={n}")
    reduced = phi.materialized(n + 1).remove_term(l)
    q = genbell_via_recurrence(reduced, n)
    rhs = q.scale(phi[l]) + t_operator(q)
    return genbell_via_definition(phi, n + 1) == rhs


def check_perturbation_identity(phi: PhiSequence, l: int, M: RationalLike, n: int) -> bool:
    """Be_n^{phi^{l,M}} == Be_n^phi + M Be_{n-1}^{phi^{l}}, for 1 <= l <= n"""
    if l < 1 or n < l:
        raise DomainError(f"The perturbation identity needs 1 <= l <= n, got l={l}, n={n}")
    M = to_rational(M)
    lhs = genbell_via_definition(phi.perturb(l, M), n)
    reduced = phi.materialized(n).remove_term(l)
    rhs = genbell_via_recurrence(phi, n) + genbell_via_recurrence(reduced, n - 1).scale(M)
    return lhs == rhs


def partial_derivative_wrt_phi(phi: PhiSequence, i: int, n: int) -> ExactPoly:
    """d Be_n^phi / d phi_i = Be_{n-1}^{phi^{i}}, for 1 <= i <= n"""
    if i < 1 or n < i:
        raise DomainError(f"The phi-derivative needs 1 <= i <= n, got i={i}, n={n}")
    return genbell_via_recurrence(phi.materialized(n).remove_term(i), n - 1)


def difference_quotient(phi: PhiSequence, i: int, n: int, h: RationalLike = 1) -> ExactPoly:
    """(Be_n^{phi^{i,h}} - Be_n^phi) / h; exact since Be_n^phi is affine in each phi_i"""
    h = to_rational(h)
    if h == 0:
        raise DomainError("Difference quotient step must be nonzero")
    bumped = genbell_via_recurrence(phi.perturb(i, h), n)
    return (bumped - genbell_via_recurrence(phi, n)).scale(1 / h)


def check_partial_derivative(phi: PhiSequence, i: int, n: int, h: RationalLike = 1) -> bool:
    return partial_derivative_wrt_phi(phi, i, n) == difference_quotient(phi, i, n, h)


def check_t_operator(n: int) -> bool:
    """T(Be_n) == Be_{n+1}"""
    return t_operator(bell_poly(n)) == bell_poly(n + 1)


def constant_term(phi: PhiSequence, n: int) -> Fraction:
    """Be_n^phi(0), which equals the product phi_1 ... phi_n"""
    return genbell_via_recurrence(phi, n).coefficient(0)

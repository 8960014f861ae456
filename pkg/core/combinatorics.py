import logging
import threading
from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence

from core.exact_poly import ExactPoly
from core.exceptions import DomainError
from core.phi_sequence import PhiSequence

# Set up logging
logger = logging.getLogger(__name__)


class StirlingTable:
    """
    Growable triangle of Stirling numbers of the second kind.

    Row n holds S(n, 0..n) and is produced from row n-1 by
    S(n, j) = j*S(n-1, j) + S(n-1, j-1). Growth happens under a lock, so
    concurrent readers always see complete rows.
    """

    def __init__(self):
        self._rows: List[List[int]] = [[1]]
        self._lock = threading.Lock()

    def _grow_to(self, n: int) -> None:
        with self._lock:
            while len(self._rows) <= n:
                prev = self._rows[-1]
                m = len(prev)
                row = [0] * (m + 1)
                for j in range(1, m + 1):
                    above = prev[j] if j < m else 0
                    row[j] = j * above + prev[j - 1]
                self._rows.append(row)
            logger.debug(f"Stirling table grown to {len(self._rows) - 1} rows")

    def row(self, n: int) -> List[int]:
        """Return a copy of row n"""
        if n < 0:
            raise DomainError(f"Stirling row index must be nonnegative, got {n}")
        if n >= len(self._rows):
            self._grow_to(n)
        return list(self._rows[n])

    def get(self, n: int, j: int) -> int:
        if n < 0 or j < 0:
            raise DomainError(f"Stirling indices must be nonnegative, got ({n}, {j})")
        if j > n:
            raise DomainError(f"S(n, j) requires j <= n, got ({n}, {j})")
        if n >= len(self._rows):
            self._grow_to(n)
        return self._rows[n][j]

    @property
    def size(self) -> int:
        return len(self._rows)


_table = StirlingTable()


def stirling2(n: int, j: int) -> int:
    """
    Stirling number of the second kind S(n, j) from the memoized table

    Args:
        n (int): Set size, n >= 0
        j (int): Number of blocks, 0 <= j <= n

    Returns:
        int: S(n, j)

    Raises:
        DomainError: If j > n or an index is negative
    """
    return _table.get(n, j)


def stirling2_explicit(n: int, j: int) -> int:
    """S(n, j) through the alternating sum over i of (-1)^(j-i) i^n / ((j-i)! i!)"""
    if n < 0 or j < 0 or j > n:
        raise DomainError(f"S(n, j) requires 0 <= j <= n, got ({n}, {j})")
    total = Fraction(0)
    for i in range(j + 1):
        total += Fraction((-1) ** (j - i) * i ** n, factorial(j - i) * factorial(i))
    if total.denominator != 1:
        raise DomainError(f"Alternating sum for S({n}, {j}) is not integral: {total}")
    return total.numerator


def stirling_row(n: int) -> List[int]:
    return _table.row(n)


def bell_poly(n: int) -> ExactPoly:
    """Classical Bell polynomial Be_n(x) = sum_j S(n, j) x^j"""
    if n < 0:
        raise DomainError(f"Bell polynomial index must be nonnegative, got {n}")
    return ExactPoly(stirling_row(n))


def t_operator(p: ExactPoly) -> ExactPoly:
    """T(p)(x) = x (p(x) + p'(x))"""
    return (p + p.derivative()).times_x()


def bell_poly_recursive(n: int) -> ExactPoly:
    """Be_n built by iterating Be_{k+1} = x (1 + d/dx) Be_k from Be_0 = 1"""
    if n < 0:
        raise DomainError(f"Bell polynomial index must be nonnegative, got {n}")
    p = ExactPoly.constant(1)
    for _ in range(n):
        p = t_operator(p)
    return p


def bell_polys(n_max: int) -> List[ExactPoly]:
    """Be_0..Be_{n_max} in one pass"""
    return [bell_poly(n) for n in range(n_max + 1)]


def symmetric_functions(values: Sequence[Fraction]) -> List[Fraction]:
    """Elementary symmetric functions (e_0, ..., e_n) of the given values, e_0 = 1"""
    e = [Fraction(1)] + [Fraction(0)] * len(values)
    for k, v in enumerate(values, start=1):
        for i in range(k, 0, -1):
            e[i] += v * e[i - 1]
    return e


def elementary_symmetric(phi: PhiSequence, n: int) -> List[Fraction]:
    """
    Phi_i^n(phi) for i = 0..n

    Args:
        phi (PhiSequence): Parameter sequence
        n (int): Number of leading entries phi_1..phi_n taken

    Returns:
        List[Fraction]: (Phi_0^n, ..., Phi_n^n) with Phi_0^n = 1
    """
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    return symmetric_functions(phi.values(n))


def symmetric_from_factors(values: Sequence[Fraction]) -> List[Fraction]:
    """Read Phi_i^n off the expanded product of (x + phi_i)"""
    product = ExactPoly.from_linear_factors(values)
    n = len(values)
    return [product.coefficient(n - i) for i in range(n + 1)]


def stirling_cache_info() -> Dict[str, int]:
    return {"rows": _table.size}

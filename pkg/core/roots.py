"""
Certified real-root isolation over the rationals.

Roots are isolated with Sturm sequences of the square-free part and refined by
exact bisection. Exact rational roots (x = 0 in particular) come back as
points; everything else stays an open interval (lo, hi) with rational ends
that are not roots. Interval pairs taken from two different polynomials can be
separated with ``separate`` before they are compared, and
``check_interlace`` decides whether one separated set interlaces another.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Dict, List, Optional, Sequence, Tuple, Union

from core.exact_poly import ExactPoly
from core.exceptions import DomainError, UndecidedError
from utils.helpers import format_fraction

# Set up logging
logger = logging.getLogger(__name__)

DEFAULT_WIDTH = Fraction(1, 2 ** 20)
DEFAULT_BUDGET = 64


# Sturm machinery

def square_free_part(p: ExactPoly) -> ExactPoly:
    """p / gcd(p, p'), monic"""
    if p.is_zero():
        raise DomainError("The zero polynomial has no square-free part")
    if p.is_constant():
        return ExactPoly.constant(1)
    g = p.gcd(p.derivative())
    return (p // g).monic()


def square_free_decomposition(p: ExactPoly) -> List[Tuple[int, ExactPoly]]:
    """
    Yun's square-free decomposition

    Args:
        p (ExactPoly): Nonzero polynomial

    Returns:
        List[Tuple[int, ExactPoly]]: (multiplicity, factor) pairs with monic,
        square-free, pairwise coprime factors whose product with multiplicities
        is the monic form of p
    """
    if p.is_zero():
        raise DomainError("The zero polynomial has no square-free decomposition")
    f = p.monic()
    if f.is_constant():
        return []
    a0 = f.gcd(f.derivative())
    b = f // a0
    c = f.derivative() // a0
    d = c - b.derivative()
    factors = []
    i = 1
    while not b.is_constant():
        a = b.gcd(d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if not a.is_constant():
            factors.append((i, a.monic()))
        i += 1
    return factors


def sturm_sequence(p: ExactPoly) -> List[ExactPoly]:
    """Sturm sequence s, s', -rem(...), ... of the square-free part s of p"""
    s = square_free_part(p)
    seq = [s, s.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        # any positive rescaling keeps the sign pattern
        seq.append(r if r.is_zero() else r.scale(-1 / abs(r.leading)))
    return seq[:-1]


def _variations(seq: Sequence[ExactPoly], point: Fraction) -> int:
    signs = [q.sign_at(point) for q in seq]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_with_sequence(seq: Sequence[ExactPoly], lo: Fraction, hi: Fraction) -> int:
    return _variations(seq, lo) - _variations(seq, hi)


def sturm_count(p: ExactPoly, lo, hi) -> int:
    """
    Number of distinct real roots of p in (lo, hi]

    Args:
        p (ExactPoly): Nonzero polynomial
        lo: Left end (excluded)
        hi: Right end (included)

    Returns:
        int: Exact distinct-root count

    Raises:
        DomainError: If p is the zero polynomial or lo >= hi
    """
    if p.is_zero():
        raise DomainError("Sturm count of the zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise DomainError(f"Sturm count needs lo < hi, got ({lo}, {hi}]")
    if p.is_constant():
        return 0
    return _count_with_sequence(sturm_sequence(p), lo, hi)


def real_root_count(p: ExactPoly, multiplicity: bool = True) -> int:
    """
    Global real-root count on (-B, B] for the Cauchy bound B, plus the exact check at -B

    Args:
        p (ExactPoly): Nonzero polynomial
        multiplicity (bool): Count roots with multiplicity (True) or distinct roots

    Returns:
        int: Number of real roots
    """
    if p.is_zero():
        raise DomainError("Real-root count of the zero polynomial")
    if p.is_constant():
        return 0
    bound = p.cauchy_bound()
    if not multiplicity:
        return sturm_count(p, -bound, bound) + (1 if p(-bound) == 0 else 0)
    total = 0
    for m, factor in square_free_decomposition(p):
        distinct = sturm_count(factor, -bound, bound) + (1 if factor(-bound) == 0 else 0)
        total += m * distinct
    return total


def multiplicity_at_zero(p: ExactPoly) -> int:
    """Multiplicity of x = 0 as a root of p"""
    return p.lowest_degree()


def power_of_two_bound(p: ExactPoly) -> Fraction:
    """
    A power of two strictly above every root modulus of p (p(0) != 0)

    Twice the Fujiwara bound 2 max_j |c_{n-j} / c_n|^{1/j}, rounded up to a
    power of two; tracks the root scale far better than the Cauchy bound
    when coefficients are large.
    """
    n = p.degree
    lead = abs(p.leading)
    exponent = None
    for j in range(1, n + 1):
        t = abs(p.coefficient(n - j)) / lead
        if t == 0:
            continue
        # smallest e with 2^(e*j) >= t
        e = (t.numerator.bit_length() - t.denominator.bit_length()) // j - 1
        while Fraction(2) ** (e * j) < t:
            e += 1
        exponent = e if exponent is None else max(exponent, e)
    if exponent is None:
        return Fraction(1)
    return Fraction(2) ** (exponent + 2)


# Isolation entries

@dataclass(frozen=True)
class ExactPoint:
    value: Fraction
    multiplicity: int = 1

    is_point = True

    @property
    def lo(self) -> Fraction:
        return self.value

    @property
    def hi(self) -> Fraction:
        return self.value

    @property
    def width(self) -> Fraction:
        return Fraction(0)

    def to_dict(self) -> Dict:
        return {"point": True, "value": format_fraction(self.value), "multiplicity": self.multiplicity}

    def __str__(self) -> str:
        return format_fraction(self.value)


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi) holding exactly one distinct root; neither end is a root"""

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    is_point = False

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_dict(self) -> Dict:
        return {
            "point": False,
            "interval": [format_fraction(self.lo), format_fraction(self.hi)],
            "multiplicity": self.multiplicity,
        }

    def __str__(self) -> str:
        return f"({format_fraction(self.lo)}, {format_fraction(self.hi)})"


RootEntry = Union[ExactPoint, Interval]


def overlaps(a: RootEntry, b: RootEntry) -> bool:
    """Whether two entries cannot yet be ordered"""
    if a.is_point and b.is_point:
        return a.value == b.value
    if a.is_point:
        return b.lo < a.value < b.hi
    if b.is_point:
        return a.lo < b.value < a.hi
    return a.lo < b.hi and b.lo < a.hi


def precedes_entry(a: RootEntry, b: RootEntry) -> bool:
    """a lies strictly left of b (entries must not overlap)"""
    return a.hi <= b.lo and not (a.is_point and b.is_point and a.value == b.value)


def _approx(entry: RootEntry) -> float:
    if entry.is_point:
        return float(entry.value)
    return float(entry.midpoint)


@dataclass
class RootIsolation:
    """
    Certified isolation of the real roots of ``poly``.

    Entries are sorted and pairwise disjoint; each holds one distinct root
    together with its multiplicity. ``square_free_part`` is the monic
    square-free part of the whole polynomial. Refinement mutates the entries in
    place and is limited to ``budget`` bisections per entry.
    """

    poly: ExactPoly
    roots: List[RootEntry]
    square_free_part: ExactPoly
    core: ExactPoly = field(repr=False, default_factory=lambda: ExactPoly.constant(1))
    budget: int = DEFAULT_BUDGET
    steps: List[int] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if len(self.steps) != len(self.roots):
            self.steps = [0] * len(self.roots)

    # Counts

    @property
    def degree(self) -> int:
        return self.poly.degree

    def distinct_count(self) -> int:
        return len(self.roots)

    def real_count(self) -> int:
        return sum(e.multiplicity for e in self.roots)

    def nonreal_count(self) -> int:
        return self.degree - self.real_count()

    def zero_multiplicity(self) -> int:
        for e in self.roots:
            if e.is_point and e.value == 0:
                return e.multiplicity
        return 0

    def negative(self) -> List[RootEntry]:
        return [e for e in self.roots if e.hi <= 0 and not (e.is_point and e.value == 0)]

    def positive(self) -> List[RootEntry]:
        return [e for e in self.roots if e.lo >= 0 and not (e.is_point and e.value == 0)]

    def nonpositive(self) -> List[RootEntry]:
        return [e for e in self.roots if e.hi <= 0]

    def all_real(self) -> bool:
        return self.nonreal_count() == 0

    def all_simple(self) -> bool:
        return all(e.multiplicity == 1 for e in self.roots)

    def all_real_and_simple(self) -> bool:
        return self.all_real() and self.all_simple()

    def counts(self) -> Dict[str, int]:
        return {
            "negative": sum(e.multiplicity for e in self.negative()),
            "zero": self.zero_multiplicity(),
            "positive": sum(e.multiplicity for e in self.positive()),
            "nonreal": self.nonreal_count(),
            "distinct_real": self.distinct_count(),
        }

    # Refinement

    def index_of(self, entry: RootEntry) -> int:
        for i, e in enumerate(self.roots):
            if e is entry:
                return i
        raise DomainError(f"Entry {entry} does not belong to this isolation")

    def bisect(self, i: int) -> RootEntry:
        """Halve entry i once; an exact root met at the midpoint becomes a point"""
        entry = self.roots[i]
        if entry.is_point:
            return entry
        self.steps[i] += 1
        if self.steps[i] > self.budget:
            raise UndecidedError(
                f"Refinement budget of {self.budget} bisections exhausted",
                witness=f"root {i + 1} of {self.poly} still in {entry}",
            )
        mid = entry.midpoint
        v = self.core.sign_at(mid)
        if v == 0:
            new: RootEntry = ExactPoint(mid, entry.multiplicity)
        elif v != self.core.sign_at(entry.lo):
            new = Interval(entry.lo, mid, entry.multiplicity)
        else:
            new = Interval(mid, entry.hi, entry.multiplicity)
        self.roots[i] = new
        return new

    def split_at(self, i: int, point: Fraction) -> RootEntry:
        """Shrink entry i to the side of ``point`` holding the root; point must not be a root"""
        entry = self.roots[i]
        if entry.is_point or not (entry.lo < point < entry.hi):
            return entry
        v = self.core.sign_at(point)
        if v == 0:
            new: RootEntry = ExactPoint(point, entry.multiplicity)
        elif v != self.core.sign_at(entry.lo):
            new = Interval(entry.lo, point, entry.multiplicity)
        else:
            new = Interval(point, entry.hi, entry.multiplicity)
        self.roots[i] = new
        return new

    def refine(self, width: Fraction) -> "RootIsolation":
        """Bisect every interval until it is narrower than ``width``"""
        for i in range(len(self.roots)):
            while not self.roots[i].is_point and self.roots[i].width >= width:
                if self.steps[i] >= self.budget:
                    logger.warning(f"Root {i + 1} of {self.poly} left at width {float(self.roots[i].width):.3g}")
                    break
                self.bisect(i)
        return self

    def approximations(self) -> List[float]:
        return [_approx(e) for e in self.roots]

    def to_dict(self) -> Dict:
        return {
            "roots": [e.to_dict() for e in self.roots],
            "counts": self.counts(),
            "simple": self.all_simple(),
            "square_free_part": self.square_free_part.to_strings(),
        }


def _rational_candidate(core: ExactPoly, lo: Fraction, hi: Fraction, denom: int) -> Optional[Fraction]:
    """The multiple of 1/denom inside (lo, hi) when exactly one exists and it is a root"""
    first = floor(lo * denom) + 1
    last = ceil(hi * denom) - 1
    if first != last:
        return None
    candidate = Fraction(first, denom)
    return candidate if core(candidate) == 0 else None


def isolate_roots(p: ExactPoly, width=DEFAULT_WIDTH, budget: int = DEFAULT_BUDGET) -> RootIsolation:
    """
    Isolate every real root of p

    Args:
        p (ExactPoly): Nonzero polynomial
        width (Fraction): Target interval width
        budget (int): Bisections allowed per root

    Returns:
        RootIsolation: Sorted, disjoint entries with multiplicities

    Raises:
        DomainError: If p is the zero polynomial or width is not positive
    """
    if p.is_zero():
        raise DomainError("Cannot isolate the roots of the zero polynomial")
    width = Fraction(width)
    if width <= 0:
        raise DomainError(f"Isolation width must be positive, got {width}")

    zero_mult, q = p.strip_x_power()
    decomposition = square_free_decomposition(q)
    core = ExactPoly.constant(1)
    for _, factor in decomposition:
        core = core * factor
    full_sqf = core.times_x() if zero_mult else core

    entries: List[RootEntry] = []
    if not core.is_constant():
        seq = sturm_sequence(core)
        bound = power_of_two_bound(core)
        stack = [(Fraction(0), bound), (-bound, Fraction(0))]
        while stack:
            lo, hi = stack.pop()
            n = _count_with_sequence(seq, lo, hi)
            if n == 0:
                continue
            if n == 1:
                entries.append(Interval(lo, hi))
                continue
            mid = (lo + hi) / 2
            if core(mid) == 0:
                delta = (hi - lo) / 4
                while core(mid - delta) == 0 or core(mid + delta) == 0 or \
                        _count_with_sequence(seq, mid - delta, mid + delta) != 1:
                    delta /= 2
                entries.append(ExactPoint(mid))
                stack.append((mid + delta, hi))
                stack.append((lo, mid - delta))
            else:
                stack.append((mid, hi))
                stack.append((lo, mid))

    # attach multiplicities from the factor vanishing on each entry
    with_mult: List[RootEntry] = []
    for e in entries:
        m = 1
        for mult, factor in decomposition:
            if e.is_point:
                hit = factor(e.value) == 0
            else:
                hit = factor.sign_at(e.lo) != factor.sign_at(e.hi)
            if hit:
                m = mult
                break
        with_mult.append(ExactPoint(e.value, m) if e.is_point else Interval(e.lo, e.hi, m))
    if zero_mult:
        with_mult.append(ExactPoint(Fraction(0), zero_mult))
    with_mult.sort(key=lambda e: e.lo)

    iso = RootIsolation(p, with_mult, full_sqf, core=core, budget=budget)
    iso.refine(width)

    if not core.is_constant():
        denom = core.integer_coefficients()[-1]
        for i, e in enumerate(iso.roots):
            if not e.is_point:
                c = _rational_candidate(core, e.lo, e.hi, abs(denom))
                if c is not None:
                    iso.roots[i] = ExactPoint(c, e.multiplicity)
    # the per-root budget governs refinement past the requested width
    iso.steps = [0] * len(iso.roots)

    logger.debug(
        f"Isolated {iso.distinct_count()} distinct real roots of a degree {p.degree} polynomial "
        f"({iso.nonreal_count()} non-real)"
    )
    return iso


# Cross-isolation comparisons

def separate(a: RootIsolation, b: RootIsolation, ua: Optional[List[int]] = None, ub: Optional[List[int]] = None) -> None:
    """
    Refine entries of two isolations until no entry of one overlaps an entry of the other

    Args:
        a (RootIsolation): First isolation
        b (RootIsolation): Second isolation
        ua (Optional[List[int]]): Indices of a to consider (all by default)
        ub (Optional[List[int]]): Indices of b to consider (all by default)

    Raises:
        UndecidedError: On a shared root or an exhausted refinement budget
    """
    ua = list(range(len(a.roots))) if ua is None else ua
    ub = list(range(len(b.roots))) if ub is None else ub
    progress = True
    while progress:
        progress = False
        for i in ua:
            for j in ub:
                ea, eb = a.roots[i], b.roots[j]
                if not overlaps(ea, eb):
                    continue
                progress = True
                if ea.is_point and eb.is_point:
                    raise UndecidedError("Shared root", witness=f"both polynomials vanish at {ea}")
                if ea.is_point:
                    if b.core(ea.value) == 0:
                        raise UndecidedError("Shared root", witness=f"both polynomials vanish at {ea}")
                    b.split_at(j, ea.value)
                elif eb.is_point:
                    if a.core(eb.value) == 0:
                        raise UndecidedError("Shared root", witness=f"both polynomials vanish at {eb}")
                    a.split_at(i, eb.value)
                elif ea.width >= eb.width:
                    a.bisect(i)
                else:
                    b.bisect(j)


@dataclass(frozen=True)
class InterlacingVerdict:
    holds: bool
    witness: str = ""

    def to_dict(self) -> Dict:
        return {"holds": self.holds, "witness": self.witness}


def check_interlace(U: Sequence[RootEntry], V: Sequence[RootEntry]) -> InterlacingVerdict:
    """
    Decide whether U interlaces V

    Between every two consecutive elements of U there must be exactly one
    element of V, with |U| = |V| + 1, or |U| = |V| and max U < max V.
    Two empty sets interlace vacuously.

    Args:
        U (Sequence[RootEntry]): Entries of the first set, pairwise disjoint from V
        V (Sequence[RootEntry]): Entries of the second set

    Returns:
        InterlacingVerdict: Verdict with the first violated clause as witness

    Raises:
        UndecidedError: If some entry of U overlaps some entry of V
    """
    for u in U:
        for v in V:
            if overlaps(u, v):
                raise UndecidedError("Interlacing needs separated entries", witness=f"{u} overlaps {v}")
    us = sorted(U, key=lambda e: e.lo)
    vs = sorted(V, key=lambda e: e.lo)
    k, kappa = len(us), len(vs)
    if k == 0 and kappa == 0:
        return InterlacingVerdict(True, "both sets empty")
    if k not in (kappa, kappa + 1):
        return InterlacingVerdict(False, f"cardinalities |U|={k}, |V|={kappa} admit no interlacing")
    for i in range(k - 1):
        left, right = us[i], us[i + 1]
        inside = sum(1 for v in vs if precedes_entry(left, v) and precedes_entry(v, right))
        if inside != 1:
            return InterlacingVerdict(
                False, f"gap {i + 1} between {left} and {right} holds {inside} elements of V"
            )
    if k == kappa and not precedes_entry(us[-1], vs[-1]):
        return InterlacingVerdict(False, f"max U at {us[-1]} is not below max V at {vs[-1]}")
    return InterlacingVerdict(True)


def interlace_roots(
    a: RootIsolation, b: RootIsolation, pick_a: str = "all", pick_b: str = "all"
) -> InterlacingVerdict:
    """
    Separate two isolations and decide whether the chosen roots of a interlace those of b

    ``pick_a`` and ``pick_b`` select "all", "negative", "positive" or
    "nonpositive" roots.
    """
    sa, sb = _pick(a, pick_a), _pick(b, pick_b)
    separate(a, b, [a.index_of(e) for e in sa], [b.index_of(e) for e in sb])
    return check_interlace(_pick(a, pick_a), _pick(b, pick_b))


def _pick(iso: RootIsolation, which: str) -> List[RootEntry]:
    if which == "all":
        return list(iso.roots)
    if which == "negative":
        return iso.negative()
    if which == "positive":
        return iso.positive()
    if which == "nonpositive":
        return iso.nonpositive()
    raise DomainError(f"Unknown root selection {which!r}")


def compare_root_to(iso: RootIsolation, i: int, value: Fraction) -> int:
    """Sign of (root i of iso) - value, settled exactly"""
    value = Fraction(value)
    entry = iso.roots[i]
    if entry.is_point:
        return (entry.value > value) - (entry.value < value)
    if value <= entry.lo:
        return 1
    if value >= entry.hi:
        return -1
    if iso.core(value) == 0:
        iso.roots[i] = ExactPoint(value, entry.multiplicity)
        return 0
    entry = iso.split_at(i, value)
    return 1 if entry.lo >= value else -1


def strictly_left(a: RootIsolation, i: int, b: RootIsolation, j: int) -> bool:
    """
    Whether root i of a lies strictly left of root j of b, refining as needed

    Raises:
        UndecidedError: If the two roots coincide or the budget runs out
    """
    separate(a, b, [i], [j])
    return precedes_entry(a.roots[i], b.roots[j])

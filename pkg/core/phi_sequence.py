import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from core.exact_poly import RationalLike, to_rational
from core.exceptions import DomainError
from utils.helpers import format_fraction

# Set up logging
logger = logging.getLogger(__name__)


class TailKind(str, Enum):
    ZERO = "zero"
    CONSTANT = "const"
    AFFINE = "affine"


@dataclass(frozen=True)
class Tail:
    """Rule giving phi_i beyond the explicit prefix"""

    kind: TailKind = TailKind.ZERO
    value: Fraction = Fraction(0)

    def at(self, i: int) -> Fraction:
        if self.kind is TailKind.ZERO:
            return Fraction(0)
        if self.kind is TailKind.CONSTANT:
            return self.value
        return self.value + i

    def shifted(self, s: Fraction) -> "Tail":
        if self.kind is TailKind.ZERO:
            return Tail(TailKind.CONSTANT, s)
        return Tail(self.kind, self.value + s)

    def to_spec(self) -> str:
        if self.kind is TailKind.ZERO:
            return "zero"
        return f"{self.kind.value}:{format_fraction(self.value)}"


@dataclass(frozen=True)
class PhiSequence:
    """
    Parameter sequence phi = (phi_i), i >= 1.

    The first ``len(prefix)`` entries are explicit; every later entry follows
    the tail rule (zero, constant r, or affine alpha + i). Indices are 1-based.
    """

    prefix: Tuple[Fraction, ...] = ()
    tail: Tail = field(default_factory=Tail)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(to_rational(v) for v in self.prefix))

    @classmethod
    def from_values(cls, values: Iterable[RationalLike], tail: Optional[Tail] = None) -> "PhiSequence":
        return cls(tuple(to_rational(v) for v in values), tail or Tail())

    @classmethod
    def zero(cls) -> "PhiSequence":
        return cls()

    @classmethod
    def constant(cls, r: RationalLike) -> "PhiSequence":
        """The r-Bell sequence phi_i = r"""
        return cls((), Tail(TailKind.CONSTANT, to_rational(r)))

    @classmethod
    def affine(cls, alpha: RationalLike) -> "PhiSequence":
        """The Laguerre sequence phi_i = alpha + i"""
        return cls((), Tail(TailKind.AFFINE, to_rational(alpha)))

    @property
    def prefix_length(self) -> int:
        return len(self.prefix)

    def __getitem__(self, i: int) -> Fraction:
        if not isinstance(i, int) or i < 1:
            raise DomainError(f"phi is indexed from 1, got {i!r}")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.tail.at(i)

    def values(self, n: int) -> List[Fraction]:
        """phi_1..phi_n"""
        return [self[i] for i in range(1, n + 1)]

    def materialized(self, length: int) -> "PhiSequence":
        """Same sequence with the prefix extended to at least ``length`` entries"""
        if length <= len(self.prefix):
            return self
        return PhiSequence(tuple(self.values(length)), self.tail)

    def remove_term(self, l: int) -> "PhiSequence":
        """
        The sequence phi^{l} obtained by deleting phi_l

        Args:
            l (int): 1-based position to remove

        Returns:
            PhiSequence: Entries after position l shift one place to the left

        Raises:
            DomainError: If l < 1, or l falls inside an affine tail
        """
        if l < 1:
            raise DomainError(f"Removal index must be positive, got {l}")
        if l <= len(self.prefix):
            prefix = self.prefix[: l - 1] + self.prefix[l:]
            tail = self.tail
            if tail.kind is TailKind.AFFINE:
                # phi'_i = phi_{i+1} = (alpha + 1) + i past the shortened prefix
                tail = Tail(TailKind.AFFINE, tail.value + 1)
            return PhiSequence(prefix, tail)
        if self.tail.kind is TailKind.AFFINE:
            raise DomainError(f"Cannot remove term {l} inside an affine tail")
        return self

    def perturb(self, l: int, M: RationalLike) -> "PhiSequence":
        """The sequence phi^{l,M} with phi_l replaced by phi_l + M"""
        if l < 1:
            raise DomainError(f"Perturbation index must be positive, got {l}")
        M = to_rational(M)
        if M == 0:
            return self
        values = list(self.materialized(l).prefix)
        values[l - 1] += M
        return PhiSequence(tuple(values), self.tail)

    def shift(self, s: RationalLike) -> "PhiSequence":
        """Entrywise s + phi, tail included"""
        s = to_rational(s)
        return PhiSequence(tuple(v + s for v in self.prefix), self.tail.shifted(s))

    def is_nonnegative(self, n: int) -> bool:
        return all(v >= 0 for v in self.values(n))

    def negative_indices(self, n: int) -> List[int]:
        return [i for i, v in enumerate(self.values(n), start=1) if v < 0]

    def first_zero_index(self, limit: int) -> Optional[int]:
        """Smallest i <= limit with phi_i = 0, or None"""
        for i in range(1, limit + 1):
            if self[i] == 0:
                return i
        return None

    def support_length(self) -> int:
        """K of the finite-support assumption: phi_i = 0 for every i > K"""
        if self.tail.kind is not TailKind.ZERO:
            raise DomainError(f"Sequence tail is {self.tail.kind.value}, not zero")
        return len(self.prefix)

    def equivalent(self, other: "PhiSequence", n: int) -> bool:
        """Agreement of phi_1..phi_n"""
        return self.values(n) == other.values(n)

    def to_spec(self) -> str:
        body = ",".join(format_fraction(v) for v in self.prefix)
        if self.tail.kind is TailKind.ZERO:
            return body
        return f"{body};tail={self.tail.to_spec()}"

    def __str__(self) -> str:
        return self.to_spec() or ";tail=zero"


def parse_phi(text: str) -> PhiSequence:
    """
    Parse the textual form ``r1,r2,...,rL[;tail=zero|const:R|affine:A]``

    Args:
        text (str): Sequence specification

    Returns:
        PhiSequence: Parsed sequence (tail defaults to zero)

    Raises:
        DomainError: With the character offset of the first invalid token
    """
    body, sep, tail_text = text.partition(";")
    values = []
    offset = 0
    if body.strip():
        for token in body.split(","):
            try:
                values.append(to_rational(token))
            except DomainError as e:
                raise DomainError(f"Invalid rational {token.strip()!r} at position {offset}") from e
            offset += len(token) + 1
    tail = Tail()
    if sep:
        tail_offset = len(body) + 1
        tail_text = tail_text.strip()
        if not tail_text.startswith("tail="):
            raise DomainError(f"Expected 'tail=' at position {tail_offset}, got {tail_text!r}")
        rule = tail_text[len("tail="):]
        kind_text, _, value_text = rule.partition(":")
        try:
            kind = TailKind(kind_text.strip())
        except ValueError as e:
            raise DomainError(f"Unknown tail rule {kind_text!r} at position {tail_offset + 5}") from e
        if kind is TailKind.ZERO:
            if value_text.strip():
                raise DomainError(f"Tail 'zero' takes no value (position {tail_offset + 5})")
            tail = Tail()
        else:
            try:
                tail = Tail(kind, to_rational(value_text))
            except DomainError as e:
                raise DomainError(
                    f"Invalid tail value {value_text!r} at position {tail_offset + 5 + len(kind_text) + 1}"
                ) from e
    return PhiSequence(tuple(values), tail)


def parse_rational_list(text: str) -> List[Fraction]:
    values = []
    offset = 0
    for token in text.split(","):
        try:
            values.append(to_rational(token))
        except DomainError as e:
            raise DomainError(f"Invalid rational {token.strip()!r} at position {offset}") from e
        offset += len(token) + 1
    return values


def precedes(phi: PhiSequence, psi: PhiSequence, n: int) -> bool:
    """phi < psi in the entrywise order on the first n entries"""
    a, b = phi.values(n), psi.values(n)
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


@dataclass(frozen=True)
class MultiIndex:
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise DomainError("A multi-index needs at least one part")
        if any(p < 0 for p in parts):
            raise DomainError(f"Multi-index parts must be nonnegative, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class AlphaVector:
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(to_rational(v) for v in self.values)
        if not values:
            raise DomainError("An alpha vector needs at least one entry")
        object.__setattr__(self, "values", values)
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                if (values[i] - values[j]).denominator == 1:
                    logger.warning(
                        f"alpha_{i + 1} - alpha_{j + 1} = {format_fraction(values[i] - values[j])} is an integer; "
                        "the multiple orthogonality interpretation does not apply"
                    )

    def __len__(self) -> int:
        return len(self.values)

    def has_integer_differences(self) -> bool:
        v = self.values
        return any((v[i] - v[j]).denominator == 1 for i in range(len(v)) for j in range(i + 1, len(v)))

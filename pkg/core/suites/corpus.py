"""Seeded random parameter corpora for the theorem suites."""

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from core.exceptions import DomainError
from core.phi_sequence import AlphaVector, MultiIndex, PhiSequence, Tail, TailKind
from utils.config import ConfigManager, get_config

# Set up logging
logger = logging.getLogger(__name__)


class PhiCorpus:
    """
    Deterministic generator of rational parameters.

    Numerators are drawn from [0, max_numerator], denominators from
    [1, max_denominator] and prefix lengths from [1, max_prefix], all through a
    single ``numpy.random.Generator`` seeded once, so a seed replays the whole
    corpus.
    """

    def __init__(self, seed: int, config: Optional[ConfigManager] = None):
        config = config or get_config()
        self.seed = seed
        self.max_prefix = int(config.get('verify.max_prefix', 8))
        self.max_numerator = int(config.get('verify.max_numerator', 20))
        self.max_denominator = int(config.get('verify.max_denominator', 8))
        self.rng = np.random.default_rng(seed)

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]"""
        return int(self.rng.integers(lo, hi + 1))

    def rational(self, positive: bool = False) -> Fraction:
        num = self.integer(1 if positive else 0, max(self.max_numerator, 1))
        den = self.integer(1, self.max_denominator)
        return Fraction(num, den)

    def signed_rational(self) -> Fraction:
        value = self.rational()
        return -value if self.integer(0, 1) else value

    def prefix_length(self) -> int:
        return self.integer(1, self.max_prefix)

    def nonnegative(self) -> PhiSequence:
        return PhiSequence(tuple(self.rational() for _ in range(self.prefix_length())))

    def signed(self) -> PhiSequence:
        return PhiSequence(tuple(self.signed_rational() for _ in range(self.prefix_length())))

    def ordered_pair(self, n: int) -> Tuple[PhiSequence, PhiSequence]:
        """Nonnegative phi and psi with phi < psi entrywise on the first n entries"""
        phi = self.nonnegative().materialized(n)
        bumps = [self.rational() if self.integer(0, 1) else Fraction(0) for _ in range(n)]
        if all(b == 0 for b in bumps):
            bumps[self.integer(0, n - 1)] = self.rational(positive=True)
        psi = PhiSequence(tuple(v + b for v, b in zip(phi.values(n), bumps)) + phi.prefix[n:], phi.tail)
        return phi, psi

    def one_negative(self) -> PhiSequence:
        """Exactly one negative entry phi_m, every other entry positive (constant positive tail)"""
        length = self.prefix_length()
        values = [self.rational(positive=True) for _ in range(length)]
        m = self.integer(1, length)
        values[m - 1] = -self.rational(positive=True)
        return PhiSequence(tuple(values), Tail(TailKind.CONSTANT, self.rational(positive=True)))

    def alpha(self) -> Fraction:
        """Rational alpha > -1"""
        return self.rational(positive=True) - 1

    def alpha_vector(self, q: int) -> AlphaVector:
        """alpha_1..alpha_q > -1 with pairwise non-integer differences"""
        if q > 1 and self.max_denominator < 2:
            raise DomainError("Non-integer alpha differences need verify.max_denominator >= 2")
        values: List[Fraction] = []
        while len(values) < q:
            a = self.alpha()
            if all((a - b).denominator != 1 for b in values):
                values.append(a)
        return AlphaVector(tuple(values))

    def multi_index(self, q: int, max_part: int = 3) -> MultiIndex:
        parts = [self.integer(0, max_part) for _ in range(q)]
        if sum(parts) == 0:
            parts[0] = 1
        return MultiIndex(tuple(parts))


def nonnegative_corpus(trials: int, seed: int, config: Optional[ConfigManager] = None) -> List[PhiSequence]:
    corpus = PhiCorpus(seed, config)
    return [corpus.nonnegative() for _ in range(trials)]


def one_negative_corpus(trials: int, seed: int, config: Optional[ConfigManager] = None) -> List[PhiSequence]:
    corpus = PhiCorpus(seed, config)
    return [corpus.one_negative() for _ in range(trials)]

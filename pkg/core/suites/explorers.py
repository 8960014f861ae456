"""
Explorers for questions the theory leaves open.

Their observations are report-only: a finite scan can neither show that a
shift s belongs to the interlacing set nor settle the realness conjecture.
The clauses that are theorems (the T-operator identity and the persistence of
real simple zeros) are still checked pass/fail.
"""

import logging
from math import ceil
from typing import Any, Dict, List, Optional, Sequence

from core.combinatorics import bell_polys, t_operator
from core.exact_poly import ExactPoly, RationalLike, to_rational
from core.exceptions import DomainError, UndecidedError
from core.genbell import genbell_via_recurrence
from core.phi_sequence import PhiSequence
from core.roots import interlace_roots
from core.suites.base_suite import BaseSuite, VerificationReport

# Set up logging
logger = logging.getLogger(__name__)


class ShiftExplorer(BaseSuite):
    """Does s + phi keep the zeros of Be_n^{s+phi} interlacing those of Be_n^phi?"""

    name = "shift"

    def __init__(self, phi: PhiSequence, s: RationalLike, n_max: int, **kwargs):
        super().__init__(**kwargs)
        self.phi = phi
        self.s = to_rational(s)
        self.n_max = n_max
        if self.s <= 0:
            raise DomainError(f"The shift must be positive, got {self.s}")
        negative = phi.negative_indices(n_max)
        if negative:
            raise DomainError(f"The shift explorer needs phi_i >= 0; negative at i={negative}")

    def parameters(self) -> Dict[str, Any]:
        return {"phi": str(self.phi), "s": self.s, "n_max": self.n_max, "width": self.width}

    def run_cases(self) -> None:
        shifted = self.phi.shift(self.s)
        first_failure: Optional[int] = None
        for n in range(1, self.n_max + 1):
            inputs = {"phi": str(self.phi), "s": self.s, "n": n}
            clause = "zeros of Be_n^{s+phi} interlace those of Be_n^phi"
            try:
                verdict = interlace_roots(self.isolate(genbell_via_recurrence(shifted, n)),
                                          self.isolate(genbell_via_recurrence(self.phi, n)))
            except UndecidedError as e:
                self.undecided(inputs, clause, e.witness)
                continue
            self.report_only(inputs, clause, verdict)
            if not verdict.holds and first_failure is None:
                first_failure = n
        self.report.findings["first_failure"] = first_failure
        if first_failure is None:
            self.report.findings["message"] = f"no failure up to n_max={self.n_max}"
        else:
            logger.info(f"Shift s={self.s} breaks interlacing for phi={self.phi} at n={first_failure}")


def conjecture_polynomial(gamma: Sequence[RationalLike]) -> ExactPoly:
    """P(x) = sum_j gamma_j x^{K-j}"""
    values = [to_rational(g) for g in gamma]
    return ExactPoly(list(reversed(values)))


def p_sequence(gamma: Sequence[RationalLike], n_max: int) -> Dict[int, ExactPoly]:
    """p_n = sum_j gamma_j Be_{n-j} for K <= n <= n_max"""
    values = [to_rational(g) for g in gamma]
    K = len(values) - 1
    bells = bell_polys(n_max)
    result = {}
    for n in range(K, n_max + 1):
        p = ExactPoly()
        for j, g in enumerate(values):
            if g != 0:
                p = p + bells[n - j].scale(g)
        result[n] = p
    return result


class ConjectureExplorer(BaseSuite):
    """
    Realness of p_n = sum_j gamma_j Be_{n-j} for large n.

    When P(m) != 0 at every positive integer m, the zeros of p_n are expected
    to become real for n big enough. The first such n is report-only. Once
    they are real and simple they stay so, which is asserted, and so is
    p_n = T^{n-K}(p_K).
    """

    name = "conjecture"

    def __init__(self, gamma: Sequence[RationalLike], n_max: int, **kwargs):
        super().__init__(**kwargs)
        self.gamma: List = [to_rational(g) for g in gamma]
        if not self.gamma or self.gamma[0] != 1:
            raise DomainError(f"gamma_0 must be 1, got {self.gamma[:1]}")
        self.K = len(self.gamma) - 1
        if n_max < self.K:
            raise DomainError(f"n_max must be at least K = {self.K}, got {n_max}")
        self.n_max = n_max
        P = conjecture_polynomial(self.gamma)
        if not P.is_constant():
            for m in range(1, ceil(P.cauchy_bound()) + 1):
                if P(m) == 0:
                    raise DomainError(f"P({m}) = 0; the realness conjecture assumes P(m) != 0 at positive integers")

    def parameters(self) -> Dict[str, Any]:
        return {"gamma": self.gamma, "K": self.K, "n_max": self.n_max, "width": self.width}

    def run_cases(self) -> None:
        label = [str(g) for g in self.gamma]
        polys = p_sequence(self.gamma, self.n_max)

        iterate = polys[self.K]
        mismatches = []
        for n in range(self.K + 1, self.n_max + 1):
            iterate = t_operator(iterate)
            if iterate != polys[n]:
                mismatches.append(n)
        self.record({"gamma": label, "n_max": self.n_max}, "p_n = T^{n-K}(p_K)",
                    {"mismatches": mismatches}, not mismatches)

        real: Dict[int, bool] = {}
        real_simple: Dict[int, bool] = {}
        for n in range(max(self.K, 1), self.n_max + 1):
            iso = self.isolate(polys[n])
            real[n] = iso.all_real()
            real_simple[n] = iso.all_real_and_simple()
            self.report_only({"gamma": label, "n": n}, "zero counts", {**iso.counts(), "simple": iso.all_simple()})

        first_real = next((n for n in sorted(real) if real[n]), None)
        first_simple = next((n for n in sorted(real_simple) if real_simple[n]), None)
        self.report.findings.update({"first_all_real": first_real, "first_real_simple": first_simple})
        self.report_only({"gamma": label, "n_max": self.n_max}, "first n with only real zeros",
                         {"first_all_real": first_real})
        if first_simple is None:
            logger.info(f"No p_n with real simple zeros up to n={self.n_max}")
            return
        broken = [n for n in sorted(real_simple) if n > first_simple and not real_simple[n]]
        self.record({"gamma": label, "from_n": first_simple, "to_n": self.n_max},
                    "real simple zeros persist", {"first": first_simple, "broken_at": broken}, not broken)


# Utility functions for standalone use

def explore_shift_interlacing(phi: PhiSequence, s: RationalLike, n_max: int, **kwargs) -> VerificationReport:
    """
    Scan n <= n_max for the first n where Be_n^{s+phi} stops interlacing Be_n^phi

    Returns:
        VerificationReport: Report-only cases; findings["first_failure"] is the
        first failing n or None
    """
    return ShiftExplorer(phi, s, n_max, **kwargs).run()


def explore_conjecture(gamma: Sequence[RationalLike], n_max: int, **kwargs) -> VerificationReport:
    return ConjectureExplorer(gamma, n_max, **kwargs).run()

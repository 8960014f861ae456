"""
Zeros of Be_n^phi when exactly one entry phi_m is negative.

For n < m every zero is negative and simple; from n = m on one zero turns
positive. The suite checks that split, the interlacing with the reduced
sequences phi^{l}, the direction in which each zero moves when one entry of
phi grows, and the interlacing of perturbed sequences phi^{l,M}.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from core.exceptions import DomainError
from core.genbell import genbell_via_recurrence
from core.phi_sequence import PhiSequence
from core.roots import RootIsolation, strictly_left
from core.suites.base_suite import BaseSuite, VerificationReport
from core.suites.corpus import PhiCorpus

# Set up logging
logger = logging.getLogger(__name__)


def negative_position(phi: PhiSequence, n_max: int) -> int:
    """
    Index m of the single negative entry among phi_1..phi_{n_max}

    Raises:
        DomainError: If there is no negative entry or more than one
    """
    negative = phi.negative_indices(n_max)
    if len(negative) != 1:
        raise DomainError(
            f"Exactly one negative entry is required among phi_1..phi_{n_max}, found {len(negative)} at {negative}"
        )
    return negative[0]


def hypothesis_horizon(phi: PhiSequence, m: int, limit: int) -> int:
    """Largest h <= limit with phi_i > 0 for every i <= h other than m"""
    for i in range(1, limit + 1):
        if i != m and phi[i] <= 0:
            return i - 1
    return limit


def _positive_index(iso: RootIsolation) -> Optional[int]:
    positive = iso.positive()
    if len(positive) != 1:
        return None
    return iso.index_of(positive[0])


class OneNegativeSuite(BaseSuite):
    """Theorem suite for sequences with phi_m < 0 and phi_i > 0 for i != m"""

    name = "one-negative"

    def __init__(self, phis: Sequence[PhiSequence], n_max: int, l_probes: Sequence[int] = (1, 2, 3), **kwargs):
        super().__init__(**kwargs)
        self.phis = list(phis)
        self.n_max = n_max
        self.l_probes = list(l_probes)
        self.positions = [negative_position(phi, n_max) for phi in self.phis]

    @classmethod
    def from_corpus(cls, trials: int, n_max: int, seed: int, **kwargs) -> "OneNegativeSuite":
        corpus = PhiCorpus(seed, kwargs.get("config"))
        phis = []
        while len(phis) < trials:
            phi = corpus.one_negative()
            # the corpus may place m past n_max; such sequences carry no negative entry in range
            if len(phi.negative_indices(n_max)) == 1:
                phis.append(phi)
        return cls(phis, n_max, seed=seed, **kwargs)

    def parameters(self) -> Dict[str, Any]:
        return {"phis": [str(phi) for phi in self.phis], "n_max": self.n_max,
                "l_probes": self.l_probes, "width": self.width}

    def run_cases(self) -> None:
        horizons = {}
        for phi, m in zip(self.phis, self.positions):
            top = min(self.n_max, hypothesis_horizon(phi, m, self.n_max + 1))
            if top < self.n_max:
                logger.warning(f"phi={phi} has a non-positive entry at {top + 1}; checking n <= {top} only")
                horizons[str(phi)] = top
            self._run_phi(phi, m, top)
        self.report.findings["sequences"] = len(self.phis)
        if horizons:
            self.report.findings["truncated_horizons"] = horizons

    def _run_phi(self, phi: PhiSequence, m: int, top: int) -> None:
        label = str(phi)
        isolations: Dict[int, RootIsolation] = {
            n: self.isolate(genbell_via_recurrence(phi, n)) for n in range(1, top + 1)
        }

        for n, iso in isolations.items():
            counts = iso.counts()
            expected = {"negative": n, "positive": 0} if n < m else {"negative": n - 1, "positive": 1}
            ok = (counts["negative"] == expected["negative"] and counts["positive"] == expected["positive"]
                  and iso.all_real_and_simple())
            self.record({"phi": label, "n": n, "m": m}, "zero split: n negative below m, n-1 negative and 1 positive from m on",
                        {"counts": counts, "expected": expected}, ok)

        probes = sorted(set(self.l_probes) | {m})
        for l in probes:
            for n in range(max(l - 1, 1), top):
                self._reduced_interlacing(phi, m, l, n, isolations[n + 1])

        for l in probes:
            self._monotonicity_probe(phi, m, l, top, isolations)
            for n in range(max(m, l), top + 1):
                self._perturbation_interlacing(phi, m, l, n, isolations[n])

    def _reduced_interlacing(self, phi: PhiSequence, m: int, l: int, n: int, iso_next: RootIsolation) -> None:
        reduced = phi.materialized(n + 1).remove_term(l)
        iso_q = self.isolate(genbell_via_recurrence(reduced, n))
        inputs = {"phi": str(phi), "n": n, "l": l, "m": m}
        if l == m:
            self.interlace(inputs, "zeros of Be_{n+1}^phi interlace those of Be_n^{phi^{m}}", iso_next, iso_q)
            return
        self.interlace(inputs, "negative zeros of Be_{n+1}^phi interlace those of Be_n^{phi^{l}}",
                       iso_next, iso_q, "negative", "negative")
        if n >= m:
            self.check(inputs, "positive zero of Be_{n+1}^phi lies below that of Be_n^{phi^{l}}",
                       lambda: self._positive_order(iso_next, iso_q))

    def _positive_order(self, lower: RootIsolation, upper: RootIsolation) -> Tuple[bool, Any]:
        """Whether the single positive zero of ``lower`` lies strictly below that of ``upper``"""
        i, j = _positive_index(lower), _positive_index(upper)
        if i is None or j is None:
            return False, {"positive_counts": [len(lower.positive()), len(upper.positive())]}
        holds = strictly_left(lower, i, upper, j)
        return holds, {"lower": lower.roots[i], "upper": upper.roots[j]}

    def _monotonicity_probe(self, phi: PhiSequence, m: int, l: int, top: int,
                            isolations: Dict[int, RootIsolation]) -> None:
        # grow phi_l while keeping phi_m negative
        M = -phi[m] / 2 if l == m else Fraction(1)
        bumped = phi.perturb(l, M)
        for n in range(l, top + 1):
            iso_phi = isolations[n]
            iso_psi = self.isolate(genbell_via_recurrence(bumped, n))
            inputs = {"phi": str(phi), "n": n, "l": l, "M": M, "m": m}

            def negative_zeros(iso_phi=iso_phi, iso_psi=iso_psi):
                count = len(iso_phi.negative())
                if len(iso_psi.negative()) != count:
                    return False, {"negative_counts": [count, len(iso_psi.negative())]}
                violations = [k + 1 for k in range(count) if not strictly_left(iso_psi, k, iso_phi, k)]
                return not violations, {"violations": violations}

            self.check(inputs, "negative zeros decrease as phi grows", negative_zeros)
            if n < m:
                continue
            if l == m:
                self.check(inputs, "positive zero decreases in phi_m",
                           lambda iso_phi=iso_phi, iso_psi=iso_psi: self._positive_order(iso_psi, iso_phi))
            else:
                self.check(inputs, "positive zero increases in phi_l for l != m",
                           lambda iso_phi=iso_phi, iso_psi=iso_psi: self._positive_order(iso_phi, iso_psi))

    def _perturbation_interlacing(self, phi: PhiSequence, m: int, l: int, n: int, iso_phi: RootIsolation) -> None:
        if l == m:
            probes: List[Fraction] = [-phi[m] / 2, phi[m] / 2]
        else:
            probes = [Fraction(1), -phi[l] / 2]
        for M in probes:
            iso_p = self.isolate(genbell_via_recurrence(phi.perturb(l, M), n))
            inputs = {"phi": str(phi), "n": n, "l": l, "M": M, "m": m}
            if l == m:
                if M > 0:
                    self.interlace(inputs, "zeros of Be_n^{phi^{m,M}} interlace those of Be_n^phi", iso_p, iso_phi)
                else:
                    self.interlace(inputs, "zeros of Be_n^phi interlace those of Be_n^{phi^{m,M}}", iso_phi, iso_p)
            elif M > 0:
                self.interlace(inputs, "negative zeros of Be_n^{phi^{l,M}} interlace those of Be_n^phi",
                               iso_p, iso_phi, "negative", "negative")
                self.check(inputs, "positive zero of Be_n^{phi^{l,M}} exceeds that of Be_n^phi",
                           lambda iso_p=iso_p: self._positive_order(iso_phi, iso_p))
            else:
                self.interlace(inputs, "negative zeros of Be_n^phi interlace those of Be_n^{phi^{l,M}}",
                               iso_phi, iso_p, "negative", "negative")
                self.check(inputs, "positive zero of Be_n^phi exceeds that of Be_n^{phi^{l,M}}",
                           lambda iso_p=iso_p: self._positive_order(iso_p, iso_phi))


# Utility function for standalone use
def verify_one_negative(phi: PhiSequence, n_max: int, l_probes: Sequence[int] = (1, 2, 3),
                        **kwargs) -> VerificationReport:
    """
    Run the one-negative-entry suite on a single sequence

    Args:
        phi (PhiSequence): Sequence with exactly one negative entry among phi_1..phi_{n_max}
        n_max (int): Largest degree checked
        l_probes (Sequence[int]): Removal and perturbation positions; m is always probed

    Returns:
        VerificationReport: Suite report

    Raises:
        DomainError: If phi has no negative entry or more than one
    """
    return OneNegativeSuite([phi], n_max, l_probes, **kwargs).run()

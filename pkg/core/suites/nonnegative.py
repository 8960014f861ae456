import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from core.exact_poly import RationalLike, to_rational
from core.exceptions import DomainError
from core.genbell import genbell_via_recurrence
from core.phi_sequence import PhiSequence, precedes
from core.roots import RootIsolation, strictly_left
from core.suites.base_suite import BaseSuite, VerificationReport
from core.suites.corpus import PhiCorpus
from core.zero_predictions import check_leftmost_bounds

# Set up logging
logger = logging.getLogger(__name__)

Perturbation = Tuple[int, Fraction]


def _require_nonnegative(phi: PhiSequence, n: int) -> None:
    negative = phi.negative_indices(n)
    if negative:
        raise DomainError(f"Sequence {phi} has negative entries at i={negative}; phi_i >= 0 is required")


def default_perturbations(phi: PhiSequence, l_probes: Iterable[int]) -> List[Perturbation]:
    """M = 1 for every probed l, plus M = -phi_l / 2 where phi_l > 0"""
    probes: List[Perturbation] = []
    for l in l_probes:
        probes.append((l, Fraction(1)))
        if phi[l] > 0:
            probes.append((l, -phi[l] / 2))
    return probes


class NonnegativeSuite(BaseSuite):
    """
    Zeros of Be_n^phi for nonnegative phi.

    Checks the constant-term clause (Be_n^phi(0) vanishes exactly from the
    first zero entry on), that every Be_n^phi has n simple nonpositive zeros,
    that the negative zeros of Be_{n+1}^phi interlace those of Be_n^{phi^{l}},
    and the interlacing direction for perturbed sequences phi^{l,M}.
    """

    name = "nonneg"

    def __init__(self, phis: Sequence[PhiSequence], n_max: int, l_probes: Sequence[int] = (1, 2, 3),
                 perturbations: Optional[Sequence[Tuple[int, RationalLike]]] = None, **kwargs):
        super().__init__(**kwargs)
        self.phis = list(phis)
        self.n_max = n_max
        self.l_probes = list(l_probes)
        self.perturbations = None if perturbations is None else [(l, to_rational(M)) for l, M in perturbations]
        for phi in self.phis:
            _require_nonnegative(phi, n_max + 1)
            for l, M in self._perturbations_for(phi):
                if M == 0 or M <= -phi[l]:
                    raise DomainError(f"Perturbation (l={l}, M={M}) needs M != 0 and M > -phi_l = {-phi[l]}")

    @classmethod
    def from_corpus(cls, trials: int, n_max: int, seed: int, **kwargs) -> "NonnegativeSuite":
        corpus = PhiCorpus(seed, kwargs.get("config"))
        return cls([corpus.nonnegative() for _ in range(trials)], n_max, seed=seed, **kwargs)

    def _perturbations_for(self, phi: PhiSequence) -> List[Perturbation]:
        if self.perturbations is not None:
            return self.perturbations
        return default_perturbations(phi, self.l_probes)

    def parameters(self) -> Dict[str, Any]:
        return {
            "phis": [str(phi) for phi in self.phis],
            "n_max": self.n_max,
            "l_probes": self.l_probes,
            "perturbations": self.perturbations,
            "width": self.width,
        }

    def run_cases(self) -> None:
        for phi in self.phis:
            self._run_phi(phi)
        self.report.findings["sequences"] = len(self.phis)

    def _run_phi(self, phi: PhiSequence) -> None:
        label = str(phi)
        polys = [genbell_via_recurrence(phi, n) for n in range(self.n_max + 1)]

        i0 = phi.first_zero_index(self.n_max)
        mismatches = [
            n for n, p in enumerate(polys)
            if (p(0) != 0) != (i0 is None or n < i0)
        ]
        self.record({"phi": label, "n_max": self.n_max}, "constant term vanishes exactly from i0 on",
                    {"i0": i0, "mismatches": mismatches}, not mismatches)

        isolations: Dict[int, RootIsolation] = {n: self.isolate(polys[n]) for n in range(1, self.n_max + 1)}
        for n, iso in isolations.items():
            counts = iso.counts()
            ok = (iso.real_count() == n and iso.all_simple() and counts["positive"] == 0
                  and iso.square_free_part.degree == n)
            self.record({"phi": label, "n": n}, "n simple nonpositive zeros", counts, ok)

        for l in self.l_probes:
            for n in range(1, self.n_max):
                reduced = phi.materialized(n + 1).remove_term(l)
                iso_q = self.isolate(genbell_via_recurrence(reduced, n))
                self.interlace({"phi": label, "n": n, "l": l},
                               "negative zeros of Be_{n+1}^phi interlace those of Be_n^{phi^{l}}",
                               isolations[n + 1], iso_q, "negative", "negative")

        for l, M in self._perturbations_for(phi):
            for n in range(max(l, 1), self.n_max + 1):
                iso_p = self.isolate(genbell_via_recurrence(phi.perturb(l, M), n))
                inputs = {"phi": label, "n": n, "l": l, "M": M}
                if M > 0:
                    self.interlace(inputs, "negative zeros of Be_n^{phi^{l,M}} interlace those of Be_n^phi",
                                   iso_p, isolations[n], "negative", "negative")
                else:
                    self.interlace(inputs, "negative zeros of Be_n^phi interlace those of Be_n^{phi^{l,M}}",
                                   isolations[n], iso_p, "negative", "negative")


class MonotonicitySuite(BaseSuite):
    """zeta_k(psi) < zeta_k(phi) for nonnegative phi < psi, each k"""

    name = "monotonicity"

    def __init__(self, pairs: Sequence[Tuple[PhiSequence, PhiSequence, int]], **kwargs):
        super().__init__(**kwargs)
        self.pairs = list(pairs)
        for phi, psi, n in self.pairs:
            _require_nonnegative(phi, n)
            _require_nonnegative(psi, n)
            if not precedes(phi, psi, n):
                raise DomainError(f"Need phi < psi on the first {n} entries, got phi={phi}, psi={psi}")

    @classmethod
    def from_corpus(cls, trials: int, n_max: int, seed: int, **kwargs) -> "MonotonicitySuite":
        corpus = PhiCorpus(seed, kwargs.get("config"))
        pairs = []
        for _ in range(trials):
            phi, psi = corpus.ordered_pair(n_max)
            pairs.append((phi, psi, n_max))
        return cls(pairs, seed=seed, **kwargs)

    def parameters(self) -> Dict[str, Any]:
        return {"pairs": [[str(phi), str(psi), n] for phi, psi, n in self.pairs], "width": self.width}

    def run_cases(self) -> None:
        for phi, psi, n in self.pairs:
            iso_phi = self.isolate(genbell_via_recurrence(phi, n))
            iso_psi = self.isolate(genbell_via_recurrence(psi, n))
            inputs = {"phi": str(phi), "psi": str(psi), "n": n}

            def predicate(iso_phi=iso_phi, iso_psi=iso_psi, n=n):
                if iso_phi.distinct_count() != n or iso_psi.distinct_count() != n:
                    return False, {"distinct": [iso_phi.distinct_count(), iso_psi.distinct_count()]}
                violations = []
                for k in range(n):
                    a, b = iso_psi.roots[k], iso_phi.roots[k]
                    if a.is_point and b.is_point and a.value == b.value == 0:
                        continue
                    if not strictly_left(iso_psi, k, iso_phi, k):
                        violations.append(k + 1)
                return not violations, {"violations": violations}

            self.check(inputs, "zeta_k(psi) < zeta_k(phi) for every k", predicate)


class LeftmostBoundSuite(BaseSuite):
    """-4n - alpha_n - 2 < zeta_1(n) <= xi_1 for nonnegative phi"""

    name = "leftmost-bound"

    def __init__(self, phis: Sequence[PhiSequence], n_max: int, **kwargs):
        super().__init__(**kwargs)
        self.phis = list(phis)
        self.n_max = n_max
        for phi in self.phis:
            _require_nonnegative(phi, n_max)

    @classmethod
    def from_corpus(cls, trials: int, n_max: int, seed: int, **kwargs) -> "LeftmostBoundSuite":
        corpus = PhiCorpus(seed, kwargs.get("config"))
        return cls([corpus.nonnegative() for _ in range(trials)], n_max, seed=seed, **kwargs)

    def parameters(self) -> Dict[str, Any]:
        return {"phis": [str(phi) for phi in self.phis], "n_max": self.n_max, "width": self.width}

    def run_cases(self) -> None:
        for phi in self.phis:
            for n in range(1, self.n_max + 1):
                def predicate(phi=phi, n=n):
                    result = check_leftmost_bounds(phi, n, self.width)
                    return result["satisfied"], result
                self.check({"phi": str(phi), "n": n}, "-4n - alpha_n - 2 < zeta_1 <= xi_1", predicate)


# Utility functions for standalone use

def verify_nonneg_theorem(phi: PhiSequence, n_max: int, l_probe: Union[int, Sequence[int]] = 1,
                          perturbations: Optional[Sequence[Tuple[int, RationalLike]]] = None,
                          **kwargs) -> VerificationReport:
    """
    Run the nonnegative-sequence theorem suite on one sequence

    Args:
        phi (PhiSequence): Sequence with phi_i >= 0
        n_max (int): Largest degree checked
        l_probe (int | Sequence[int]): Removal positions probed for interlacing
        perturbations (Sequence[Tuple[int, RationalLike]], optional): (l, M) pairs with M > -phi_l

    Returns:
        VerificationReport: Suite report
    """
    probes = [l_probe] if isinstance(l_probe, int) else list(l_probe)
    return NonnegativeSuite([phi], n_max, probes, perturbations, **kwargs).run()


def verify_monotonicity(phi: PhiSequence, psi: PhiSequence, n: int, width: Optional[RationalLike] = None,
                        **kwargs) -> VerificationReport:
    return MonotonicitySuite([(phi, psi, n)], width=width, **kwargs).run()


def verify_leftmost_bounds(phis: Sequence[PhiSequence], n_max: int, **kwargs) -> VerificationReport:
    return LeftmostBoundSuite(phis, n_max, **kwargs).run()

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from core.combinatorics import bell_poly, bell_poly_recursive, stirling2_explicit
from core.exact_poly import RationalLike, to_rational
from core.exceptions import DomainError
from core.genbell import (
    check_general_recurrence,
    check_partial_derivative,
    check_perturbation_identity,
    check_t_operator,
    construct_all_routes,
    genbell_via_recurrence,
)
from core.laguerre import check_laguerre_bridge, check_multiple_orthogonality, laguerre_phi_sequence
from core.phi_sequence import AlphaVector, MultiIndex, PhiSequence, precedes
from core.roots import strictly_left
from core.series_oracles import compare_oracles
from core.suites.base_suite import BaseSuite, VerificationReport
from core.suites.corpus import PhiCorpus

# Set up logging
logger = logging.getLogger(__name__)

ORACLE_POINTS = (Fraction(1, 2), Fraction(1), Fraction(5), Fraction(10))


class ClassicalReductionSuite(BaseSuite):
    """Be_n^0 = Be_n with Stirling coefficients, and T(Be_n) = Be_{n+1}"""

    name = "classical"

    def __init__(self, n_max: int = 40, **kwargs):
        super().__init__(**kwargs)
        self.n_max = n_max

    def parameters(self) -> Dict[str, Any]:
        return {"n_max": self.n_max}

    def run_cases(self) -> None:
        zero = PhiSequence.zero()
        for n in range(self.n_max + 1):
            be = bell_poly(n)
            self.record({"n": n}, "Be_n^0 equals Be_n", None, genbell_via_recurrence(zero, n) == be)
            wrong = [j for j in range(n + 1) if be.coefficient(j) != stirling2_explicit(n, j)]
            self.record({"n": n}, "coefficients are S(n, j)", {"mismatched_j": wrong}, not wrong)
            self.record({"n": n}, "T(Be_n) equals Be_{n+1}", None, check_t_operator(n))
            self.record({"n": n}, "iterated T from Be_0 equals Be_n", None, bell_poly_recursive(n) == be)


class IdentitySuite(BaseSuite):
    """
    Exact structural identities over a random corpus.

    Each trial draws a signed phi, a degree n, a position l and a nonzero
    M, then checks the general recurrence, the perturbation identity and the
    phi-derivative identity. Route agreement and the basic shape of Be_n^phi
    (monic, constant term prod phi_i, symmetric in phi_1..phi_n, blind to
    phi_{n+1}) are checked on a separate nonnegative corpus up to route_n_max.
    """

    name = "identities"

    def __init__(self, trials: int, n_max: int = 12, route_trials: Optional[int] = None, route_n_max: int = 25,
                 **kwargs):
        super().__init__(**kwargs)
        self.trials = trials
        self.n_max = n_max
        self.route_trials = trials if route_trials is None else route_trials
        self.route_n_max = route_n_max

    def parameters(self) -> Dict[str, Any]:
        return {"trials": self.trials, "n_max": self.n_max, "route_trials": self.route_trials,
                "route_n_max": self.route_n_max, "seed": self.seed}

    def run_cases(self) -> None:
        corpus = PhiCorpus(self.seed, self.config)
        for _ in range(self.trials):
            phi = corpus.signed()
            n = corpus.integer(1, self.n_max)
            l = corpus.integer(1, n)
            M = corpus.rational(positive=True) * (1 if corpus.integer(0, 1) else -1)
            inputs = {"phi": str(phi), "n": n, "l": l, "M": M}
            self.record(inputs, "general recurrence", None, check_general_recurrence(phi, l, n - 1))
            self.record(inputs, "perturbation identity", None, check_perturbation_identity(phi, l, M, n))
            self.record(inputs, "phi-derivative identity", None, check_partial_derivative(phi, l, n, M))

        for _ in range(self.route_trials):
            phi = corpus.nonnegative()
            self._structure(phi)

    def _structure(self, phi: PhiSequence) -> None:
        label = str(phi)
        disagreements = []
        shape_failures: Dict[str, List[int]] = {"monic": [], "constant_term": [], "symmetric": [], "dependence": []}
        for n in range(self.route_n_max + 1):
            polys = construct_all_routes(phi, n)
            reference = polys["recurrence"]
            if any(p != reference for p in polys.values()):
                disagreements.append(n)
            if not reference.is_monic():
                shape_failures["monic"].append(n)
            product = Fraction(1)
            for v in phi.values(n):
                product *= v
            if reference.coefficient(0) != product:
                shape_failures["constant_term"].append(n)
            reversed_phi = PhiSequence(tuple(reversed(phi.values(n))))
            if genbell_via_recurrence(reversed_phi, n) != reference:
                shape_failures["symmetric"].append(n)
            bumped = phi.perturb(n + 1, 1)
            if genbell_via_recurrence(bumped, n) != reference:
                shape_failures["dependence"].append(n)
        self.record({"phi": label, "n_max": self.route_n_max}, "construction routes agree",
                    {"disagree_at": disagreements}, not disagreements)
        for key, failures in shape_failures.items():
            self.record({"phi": label, "n_max": self.route_n_max}, f"shape: {key}",
                        {"failed_at": failures}, not failures)


class OracleSuite(BaseSuite):
    """Series and hypergeometric evaluations against exact values"""

    name = "oracles"

    def __init__(self, trials: int, n_max: int = 15, points: Sequence[RationalLike] = ORACLE_POINTS,
                 rel_tol: float = 1e-9, **kwargs):
        super().__init__(**kwargs)
        self.trials = trials
        self.n_max = n_max
        self.points = [to_rational(x) for x in points]
        self.rel_tol = rel_tol
        self.tolerance = float(self.config.get('series.tolerance', 1e-12))

    def parameters(self) -> Dict[str, Any]:
        return {"trials": self.trials, "n_max": self.n_max, "points": self.points,
                "rel_tol": self.rel_tol, "tolerance": self.tolerance, "seed": self.seed}

    def run_cases(self) -> None:
        corpus = PhiCorpus(self.seed, self.config)
        worst = 0.0
        for _ in range(self.trials):
            phi = corpus.nonnegative()
            n = corpus.integer(0, self.n_max)
            for x in self.points:
                result = compare_oracles(phi, n, x, self.tolerance)
                errors = {k: v for k, v in result.items() if k.endswith("_error") and v is not None}
                worst = max([worst] + list(errors.values()))
                observed = {**result, "approx": True}
                self.record({"phi": str(phi), "n": n, "x": x}, f"oracles within relative {self.rel_tol}",
                            observed, all(e <= self.rel_tol for e in errors.values()))
        self.report.findings["worst_relative_error"] = worst


class LaguerreBridgeSuite(BaseSuite):
    """Classical bridge for q = 1 and exact multiple orthogonality for q = 2"""

    name = "laguerre"

    def __init__(self, trials: int, n_max: int = 12, orth_trials: int = 10, **kwargs):
        super().__init__(**kwargs)
        self.trials = trials
        self.n_max = n_max
        self.orth_trials = orth_trials

    def parameters(self) -> Dict[str, Any]:
        return {"trials": self.trials, "n_max": self.n_max, "orth_trials": self.orth_trials, "seed": self.seed}

    def run_cases(self) -> None:
        corpus = PhiCorpus(self.seed, self.config)
        for _ in range(self.trials):
            alpha = corpus.alpha()
            failures = [n for n in range(self.n_max + 1) if not check_laguerre_bridge(alpha, n)]
            self.record({"alpha": alpha, "n_max": self.n_max}, "n! L_n^alpha(-x) equals Be_n^{alpha+i}",
                        {"failed_n": failures}, not failures)
        for _ in range(self.orth_trials):
            alpha = corpus.alpha_vector(2)
            nvec = corpus.multi_index(2)
            self.record({"alpha": list(alpha.values), "nvec": list(nvec.parts)}, "exact multiple orthogonality",
                        None, check_multiple_orthogonality(alpha, nvec))


class LaguerreMonotonicitySuite(BaseSuite):
    """Zeros of L_n^alpha increase strictly when alpha grows"""

    name = "laguerre-monotonicity"

    def __init__(self, cases: Sequence[Tuple[AlphaVector, AlphaVector, MultiIndex]], **kwargs):
        super().__init__(**kwargs)
        self.cases = list(cases)
        for alpha, gamma, nvec in self.cases:
            for a in alpha.values + gamma.values:
                if a <= -1:
                    raise DomainError(f"Laguerre parameters must exceed -1, got {a}")
            n = nvec.total
            if not precedes(laguerre_phi_sequence(alpha, nvec), laguerre_phi_sequence(gamma, nvec), n):
                raise DomainError(f"Need alpha <= gamma entrywise with alpha != gamma, got {alpha.values}, {gamma.values}")

    @classmethod
    def from_corpus(cls, trials: int, q: int, seed: int, **kwargs) -> "LaguerreMonotonicitySuite":
        corpus = PhiCorpus(seed, kwargs.get("config"))
        cases = []
        for _ in range(trials):
            alpha = corpus.alpha_vector(q)
            nvec = corpus.multi_index(q)
            bump = corpus.rational(positive=True)
            gamma = AlphaVector(tuple(a + bump for a in alpha.values))
            cases.append((alpha, gamma, nvec))
        return cls(cases, seed=seed, **kwargs)

    def parameters(self) -> Dict[str, Any]:
        return {"cases": [[list(a.values), list(g.values), list(nv.parts)] for a, g, nv in self.cases]}

    def run_cases(self) -> None:
        for alpha, gamma, nvec in self.cases:
            n = nvec.total
            # zeros of L are the negated zeros of Be, so L zeros grow as Be zeros fall
            iso_alpha = self.isolate(genbell_via_recurrence(laguerre_phi_sequence(alpha, nvec), n))
            iso_gamma = self.isolate(genbell_via_recurrence(laguerre_phi_sequence(gamma, nvec), n))
            inputs = {"alpha": list(alpha.values), "gamma": list(gamma.values), "nvec": list(nvec.parts)}

            def predicate(iso_alpha=iso_alpha, iso_gamma=iso_gamma, n=n):
                if iso_alpha.distinct_count() != n or iso_gamma.distinct_count() != n:
                    return False, {"distinct": [iso_alpha.distinct_count(), iso_gamma.distinct_count()]}
                violations = [k + 1 for k in range(n) if not strictly_left(iso_gamma, k, iso_alpha, k)]
                return not violations, {"violations": violations}

            self.check(inputs, "zeros of L_n^alpha increase with alpha", predicate)


# Utility functions for standalone use

def verify_classical_reduction(n_max: int = 40, **kwargs) -> VerificationReport:
    return ClassicalReductionSuite(n_max, **kwargs).run()


def verify_identities(trials: int, n_max: int = 12, **kwargs) -> VerificationReport:
    return IdentitySuite(trials, n_max, **kwargs).run()


def verify_oracles(trials: int, n_max: int = 15, **kwargs) -> VerificationReport:
    return OracleSuite(trials, n_max, **kwargs).run()


def verify_laguerre_bridge(trials: int, n_max: int = 12, orth_trials: int = 10, **kwargs) -> VerificationReport:
    return LaguerreBridgeSuite(trials, n_max, orth_trials, **kwargs).run()


def verify_laguerre_monotonicity(alpha: AlphaVector, gamma: AlphaVector, nvec: MultiIndex,
                                 **kwargs) -> VerificationReport:
    """
    Compare the zeros of L_n^alpha and L_n^gamma for alpha <= gamma

    Raises:
        DomainError: If some parameter is <= -1 or alpha is not below gamma
    """
    return LaguerreMonotonicitySuite([(alpha, gamma, nvec)], **kwargs).run()

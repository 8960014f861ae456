import logging
from typing import Any, Dict, Optional, Sequence, Tuple

from core.exceptions import DomainError, UndecidedError
from core.genbell import genbell_via_recurrence
from core.phi_sequence import PhiSequence
from core.roots import RootIsolation, interlace_roots, multiplicity_at_zero
from core.suites.base_suite import BaseSuite, VerificationReport
from core.zero_predictions import (
    check_no_negative_integers,
    h_set,
    predicted_zero_multiplicity,
    real_count_floor,
    zero_multiplicity_from_support,
)

# Set up logging
logger = logging.getLogger(__name__)


class FiniteSupportSuite(BaseSuite):
    """
    Eventual behaviour of Be_n^phi when phi_i = 0 for i > K.

    Scans n over a finite range. For n >= K the real-zero count must reach
    the floor n - K + 1 (K odd) or n - K (K even), and once Be_n^phi has only
    real zeros (real and simple zeros) so do all later polynomials.

    The eventual clauses are only claimed for n large enough, so n_0 is the
    smallest n from which every degree up to the end of the range has real
    simple zeros, exactly |H| of them positive, and both the negative and the
    positive zero sets interlace with those of the next degree. A clean
    window of ``window`` steps starting at some n_0 <= ``search_limit`` is
    recorded case by case; no such window is undecided, not a failure.
    """

    name = "finite-support"

    def __init__(self, phi: PhiSequence, n_range: Optional[Tuple[int, int]] = None,
                 search_limit: Optional[int] = None, window: Optional[int] = None, **kwargs):
        super().__init__(**kwargs)
        self.phi = phi
        self.K = phi.support_length()
        check_no_negative_integers(phi)
        self.search_limit = int(search_limit if search_limit is not None else self.config.get('verify.search_limit', 30))
        self.window = int(window if window is not None else self.config.get('verify.window', 15))
        if self.window < 1:
            raise DomainError(f"The window needs at least one step, got {self.window}")
        if n_range is None:
            n_range = (max(self.K, 1), self.search_limit + self.window)
        n_lo, n_hi = n_range
        if n_lo < 1 or n_hi < n_lo:
            raise DomainError(f"Invalid n range ({n_lo}, {n_hi})")
        self.n_lo, self.n_hi = n_lo, n_hi

    def parameters(self) -> Dict[str, Any]:
        return {"phi": str(self.phi), "K": self.K, "n_range": [self.n_lo, self.n_hi],
                "search_limit": self.search_limit, "window": self.window, "width": self.width}

    def run_cases(self) -> None:
        label = str(self.phi)
        H = h_set(self.phi)
        s = len(H)
        self.report.findings.update({"K": self.K, "H": H, "s": s})

        isolations: Dict[int, RootIsolation] = {}
        for n in range(self.n_lo, self.n_hi + 1):
            iso = self.isolate(genbell_via_recurrence(self.phi, n))
            isolations[n] = iso
            self.report_only({"phi": label, "n": n}, "zero counts", {**iso.counts(), "simple": iso.all_simple()})
            if n >= self.K:
                floor = real_count_floor(n, self.K)
                self.record({"phi": label, "n": n}, "real-zero count reaches the floor",
                            {"real": iso.real_count(), "floor": floor}, iso.real_count() >= floor)
            if n >= self.K + 1:
                self.record({"phi": label, "n": n}, "zero at x = 0 is simple",
                            {"zero": iso.zero_multiplicity()}, iso.zero_multiplicity() == 1)

        self._persistence(label, isolations, "all zeros real", lambda iso: iso.all_real())
        self._persistence(label, isolations, "all zeros real and simple", lambda iso: iso.all_real_and_simple())

        start = max(self.n_lo, self.K + 1)
        n_star = self._eventual_start(isolations, start, s)
        self.report.findings["n_0"] = n_star
        clause = "eventual real simple zeros with |H| positive and interlacing"
        inputs = {"phi": label, "n_range": [start, self.n_hi]}
        if n_star is None:
            self.undecided(inputs, clause, f"degree {self.n_hi} itself lacks real simple zeros with {s} positive")
            return
        if n_star > self.search_limit:
            self.undecided(inputs, clause, f"n_0 = {n_star} exceeds the search limit {self.search_limit}")
            return
        if self.n_hi - n_star < self.window:
            self.undecided(inputs, clause,
                           f"only {self.n_hi - n_star} steps after n_0 = {n_star}, the window needs {self.window}")
            return

        logger.info(f"{label}: n_0 = {n_star}, checking degrees {n_star}..{n_star + self.window}")
        for n in range(n_star, n_star + self.window + 1):
            iso = isolations[n]
            positive = len(iso.positive())
            self.record({"phi": label, "n": n}, "real simple zeros with exactly |H| positive",
                        {"positive": positive, "s": s, "nonreal": iso.nonreal_count(), "simple": iso.all_simple()},
                        iso.all_real_and_simple() and positive == s)
        for n in range(n_star, n_star + self.window):
            inputs = {"phi": label, "n": n}
            self.interlace(inputs, "negative zeros of Be_{n+1}^phi interlace those of Be_n^phi",
                           isolations[n + 1], isolations[n], "negative", "negative")
            self.interlace(inputs, "positive zeros of Be_{n+1}^phi interlace those of Be_n^phi",
                           isolations[n + 1], isolations[n], "positive", "positive")

    def _eventual_start(self, isolations: Dict[int, RootIsolation], start: int, s: int) -> Optional[int]:
        """Smallest n >= start such that every degree from n to n_hi is good and interlaces its successor"""
        def good(n: int) -> bool:
            iso = isolations[n]
            return iso.all_real_and_simple() and len(iso.positive()) == s

        def interlaces(n: int) -> bool:
            try:
                return all(interlace_roots(isolations[n + 1], isolations[n], pick, pick).holds
                           for pick in ("negative", "positive"))
            except UndecidedError as e:
                logger.debug(f"Interlacing at n = {n} undecided: {e.witness}")
                return False

        if start > self.n_hi or not good(self.n_hi):
            return None
        n_star = self.n_hi
        while n_star > start and good(n_star - 1) and interlaces(n_star - 1):
            n_star -= 1
        return n_star

    def _persistence(self, label: str, isolations: Dict[int, RootIsolation], clause: str, holds) -> None:
        first = next((n for n in sorted(isolations) if n >= self.K and holds(isolations[n])), None)
        key = "first_all_real" if clause == "all zeros real" else "first_real_simple"
        self.report.findings[key] = first
        if first is None:
            return
        broken = [n for n in sorted(isolations) if n > first and not holds(isolations[n])]
        self.record({"phi": label, "from_n": first, "to_n": self.n_hi}, f"{clause} persists",
                    {"first": first, "broken_at": broken}, not broken)


class ZeroMultiplicitySuite(BaseSuite):
    """Multiplicity of x = 0 against the run -1, -2, ..., -(l-1) hit by phi"""

    name = "zero-multiplicity"

    def __init__(self, phi: PhiSequence, n: int, n_prime: Optional[int] = None, **kwargs):
        super().__init__(**kwargs)
        self.phi = phi
        self.K = phi.support_length()
        if n < self.K + 1:
            raise DomainError(f"The zero multiplicity lemma needs n >= K + 1 = {self.K + 1}, got {n}")
        self.n = n
        self.n_prime = n_prime if n_prime is not None else n + 1
        if self.n_prime < self.K + 1:
            raise DomainError(f"The second degree must be >= K + 1 = {self.K + 1}, got {self.n_prime}")

    def parameters(self) -> Dict[str, Any]:
        return {"phi": str(self.phi), "n": self.n, "n_prime": self.n_prime}

    def run_cases(self) -> None:
        label = str(self.phi)
        observed = multiplicity_at_zero(genbell_via_recurrence(self.phi, self.n))
        predicted = predicted_zero_multiplicity(self.phi)
        hit = set(self.phi.prefix)
        missing = [-j for j in range(1, observed) if -j not in hit]
        inputs = {"phi": label, "n": self.n}

        self.record(inputs, "multiplicity l at zero implies phi hits -1..-(l-1)",
                    {"multiplicity": observed, "missing": missing}, not missing)
        self.record(inputs, "phi hitting -1..-L gives multiplicity 1 + L",
                    {"multiplicity": observed, "predicted": predicted}, observed == predicted)
        from_support = zero_multiplicity_from_support(self.phi)
        self.record(inputs, "multiplicity equals min{m >= 1 : P(m) != 0}",
                    {"multiplicity": observed, "from_support": from_support}, observed == from_support)
        other = multiplicity_at_zero(genbell_via_recurrence(self.phi, self.n_prime))
        self.record({"phi": label, "n": self.n, "n_prime": self.n_prime}, "multiplicity does not depend on n > K",
                    {"n": observed, "n_prime": other}, observed == other)


class NegativePairSuite(BaseSuite):
    """phi_1 = phi_2 = -m with a zero tail: zero at 0, two non-real zeros, n - 3 negative"""

    name = "negative-pair"

    def __init__(self, m_values: Sequence[int], n_max: int, **kwargs):
        super().__init__(**kwargs)
        for m in m_values:
            if not isinstance(m, int) or m < 2:
                raise DomainError(f"The negative pair needs an integer m >= 2, got {m!r}")
        if n_max < 3:
            raise DomainError(f"The negative pair needs n_max >= 3, got {n_max}")
        self.m_values = list(m_values)
        self.n_max = n_max

    def parameters(self) -> Dict[str, Any]:
        return {"m": self.m_values, "n_max": self.n_max, "width": self.width}

    def run_cases(self) -> None:
        for m in self.m_values:
            phi = PhiSequence.from_values([-m, -m])
            previous = self.isolate(genbell_via_recurrence(phi, 2))
            for n in range(3, self.n_max + 1):
                iso = self.isolate(genbell_via_recurrence(phi, n))
                counts = iso.counts()
                inputs = {"m": m, "n": n}
                ok = (counts["zero"] == 1 and counts["nonreal"] == 2 and counts["negative"] == n - 3
                      and iso.all_simple())
                self.record(inputs, "simple zero at 0, two non-real zeros, n - 3 simple negative zeros", counts, ok)
                self.interlace(inputs, "negative zeros of Be_n^phi interlace those of Be_{n-1}^phi",
                               iso, previous, "negative", "negative")
                previous = iso


# Utility functions for standalone use

def verify_finite_support(phi: PhiSequence, n_range: Optional[Tuple[int, int]] = None,
                          **kwargs) -> VerificationReport:
    """
    Run the finite-support suite

    Args:
        phi (PhiSequence): Sequence with a zero tail and no entry in {-1, -2, ...}
        n_range (Tuple[int, int], optional): Degrees scanned; defaults to
            (K, verify.search_limit + verify.window)
        **kwargs: ``search_limit`` and ``window`` override the config; the
            rest go to the suite

    Returns:
        VerificationReport: Suite report; findings carry K, H, s and n_0

    Raises:
        DomainError: If the tail is not zero or some phi_i is a negative integer
    """
    return FiniteSupportSuite(phi, n_range, **kwargs).run()


def verify_zero_multiplicity(phi: PhiSequence, n: int, **kwargs) -> VerificationReport:
    return ZeroMultiplicitySuite(phi, n, **kwargs).run()


def verify_negative_pair(m: int, n_max: int, **kwargs) -> VerificationReport:
    return NegativePairSuite([m], n_max, **kwargs).run()

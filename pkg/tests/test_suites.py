from fractions import Fraction
from types import SimpleNamespace

import pytest

from core.exceptions import DomainError, UndecidedError
from core.genbell import genbell_via_recurrence
from core.phi_sequence import AlphaVector, MultiIndex, parse_phi
from core.roots import isolate_roots
from core.suites import (
    SUITES,
    BaseSuite,
    ClassicalReductionSuite,
    ConjectureExplorer,
    FiniteSupportSuite,
    IdentitySuite,
    LaguerreBridgeSuite,
    LaguerreMonotonicitySuite,
    LeftmostBoundSuite,
    MonotonicitySuite,
    NegativePairSuite,
    NonnegativeSuite,
    OneNegativeSuite,
    OracleSuite,
    Outcome,
    ShiftExplorer,
    ZeroMultiplicitySuite,
)
from core.suites import finite_support
from core.suites.explorers import conjecture_polynomial, explore_shift_interlacing, p_sequence
from core.suites.finite_support import verify_finite_support, verify_zero_multiplicity
from core.suites.nonnegative import default_perturbations, verify_monotonicity, verify_nonneg_theorem
from core.suites.one_negative import hypothesis_horizon, negative_position, verify_one_negative


def passed(report):
    return not report.failed and report.summary["fail"] == 0


class _Undecidable(BaseSuite):
    name = "undecidable"

    def parameters(self):
        return {}

    def run_cases(self):
        def predicate():
            raise UndecidedError("budget", witness="root 1 still in (0, 1)")
        self.check({"n": 1}, "never settles", predicate)
        self.report_only({"n": 1}, "just looking", {"value": Fraction(1, 3)})


class TestBaseSuite:

    def test_undecided_and_report_only_do_not_fail(self):
        report = _Undecidable(seed=9).run()
        assert not report.failed
        assert report.summary == {"pass": 0, "fail": 0, "undecided": 1, "report-only": 1, "total": 2}
        data = report.to_dict()
        assert data["seed"] == 9
        assert data["cases"][0]["observed"] == {"reason": "root 1 still in (0, 1)"}
        assert data["cases"][1]["observed"] == {"value": "1/3"}

    def test_registry_names(self):
        assert set(SUITES) == {
            "nonneg", "monotonicity", "leftmost-bound", "one-negative", "finite-support", "zero-multiplicity",
            "negative-pair", "shift", "conjecture", "classical", "identities", "oracles", "laguerre",
            "laguerre-monotonicity",
        }


class TestNonnegative:

    def test_consecutive_integers(self):
        assert passed(verify_nonneg_theorem(parse_phi("1,2,3"), 10, l_probe=2))

    def test_zero_first_entry(self):
        report = verify_nonneg_theorem(parse_phi("0"), 6)
        constant = next(c for c in report.cases if c.clause.startswith("constant term"))
        assert constant.outcome is Outcome.PASS
        assert constant.observed["i0"] == 1

    def test_positive_perturbation(self):
        assert passed(verify_nonneg_theorem(parse_phi("1/2,1/3"), 8, perturbations=[(1, 1)]))

    def test_default_perturbations(self):
        assert default_perturbations(parse_phi("2,0"), [1, 2]) == [(1, 1), (1, -1), (2, 1)]

    def test_seeded_corpus(self):
        first = NonnegativeSuite.from_corpus(6, 8, seed=7)
        second = NonnegativeSuite.from_corpus(6, 8, seed=7)
        assert first.parameters() == second.parameters()
        assert passed(first.run())

    def test_domain(self):
        with pytest.raises(DomainError):
            NonnegativeSuite([parse_phi("1,-1")], 4)
        with pytest.raises(DomainError):
            NonnegativeSuite([parse_phi("1,2")], 4, perturbations=[(2, -2)])
        with pytest.raises(DomainError):
            NonnegativeSuite([parse_phi("1,2")], 4, perturbations=[(1, 0)])


class TestMonotonicityAndBounds:

    def test_explicit_quadratics(self):
        assert passed(verify_monotonicity(parse_phi("1,2"), parse_phi("2,2"), 2))

    def test_shared_zero_at_origin_is_allowed(self):
        assert passed(verify_monotonicity(parse_phi("0,1"), parse_phi("0,3"), 4))

    def test_equal_sequences_are_rejected(self):
        with pytest.raises(DomainError):
            MonotonicitySuite([(parse_phi("1,2"), parse_phi("1,2"), 2)])

    def test_corpus(self):
        assert passed(MonotonicitySuite.from_corpus(5, 7, seed=11).run())

    def test_leftmost_bounds(self):
        assert passed(LeftmostBoundSuite([parse_phi("5,0,0"), parse_phi("1/2,7")], 8).run())


class TestOneNegative:

    def test_single_zero_at_minus_phi_one(self):
        iso = isolate_roots(genbell_via_recurrence(parse_phi("-5/3"), 1))
        assert iso.positive()[0].value == Fraction(5, 3)

    def test_negative_first_entry(self):
        report = verify_one_negative(parse_phi("-1/2,1,2"), 8)
        assert passed(report)
        assert report.findings["truncated_horizons"] == {"-1/2,1,2": 3}

    def test_negative_second_entry(self):
        report = verify_one_negative(parse_phi("3,-5/2,1;tail=const:2"), 7, l_probes=[1, 3])
        assert passed(report)
        split = [c for c in report.cases if c.clause.startswith("zero split") and c.inputs["n"] >= 2]
        assert split and all(c.observed["counts"]["positive"] == 1 for c in split)

    def test_horizon_and_position(self):
        phi = parse_phi("2,-1,3")
        assert negative_position(phi, 5) == 2
        assert hypothesis_horizon(phi, 2, 6) == 3
        with pytest.raises(DomainError):
            negative_position(parse_phi("-1,-2"), 4)
        with pytest.raises(DomainError):
            negative_position(parse_phi("1,2"), 4)

    def test_corpus(self):
        assert passed(OneNegativeSuite.from_corpus(3, 6, seed=5, l_probes=[1, 2]).run())


class TestFiniteSupport:

    def test_single_negative_half_integer(self):
        report = FiniteSupportSuite(parse_phi("-3/2"), (2, 15), window=5).run()
        assert passed(report)
        assert report.findings["s"] == 1
        assert report.findings["n_0"] <= 10
        window = [c for c in report.cases if c.clause.startswith("real simple zeros with exactly")]
        assert len(window) == 6

    def test_nonnegative_reduces_to_real_nonpositive(self):
        report = FiniteSupportSuite(parse_phi("1,2"), (2, 12), window=5).run()
        assert passed(report)
        assert report.findings["s"] == 0
        assert report.findings["first_real_simple"] == 2
        assert report.findings["n_0"] == 3

    def test_short_range_is_undecided(self):
        report = FiniteSupportSuite(parse_phi("1,2"), (2, 12)).run()
        assert passed(report)
        eventual = [c for c in report.cases if c.clause.startswith("eventual")]
        assert [c.outcome for c in eventual] == [Outcome.UNDECIDED]
        assert "window needs 15" in eventual[0].observed["reason"]

    def test_late_start_is_undecided(self):
        report = FiniteSupportSuite(parse_phi("1,2"), (2, 12), search_limit=2, window=3).run()
        assert report.findings["n_0"] == 3
        assert report.summary["undecided"] == 1
        assert not report.failed

    def test_transient_miss_moves_the_start(self, monkeypatch):
        # good at K + 1, bad at K + 2, good from K + 3 on
        monkeypatch.setattr(finite_support, "interlace_roots", lambda *args: SimpleNamespace(holds=True))
        suite = FiniteSupportSuite(parse_phi("1,2"), (2, 12), window=5)
        isolations = {
            n: SimpleNamespace(all_real_and_simple=lambda n=n: n != 4, positive=lambda: [])
            for n in range(2, 13)
        }
        assert suite._eventual_start(isolations, 3, 0) == 5
        isolations[12] = SimpleNamespace(all_real_and_simple=lambda: False, positive=lambda: [])
        assert suite._eventual_start(isolations, 3, 0) is None

    @pytest.mark.slow
    @pytest.mark.parametrize("text, H", [("-3/2", [1]), ("-3/2,-7/2", [1, 3]), ("5/2,-1/2,-9/2", [4])])
    def test_eventual_window_on_default_range(self, text, H):
        report = verify_finite_support(parse_phi(text))
        assert report.findings["H"] == H
        assert report.findings["n_0"] <= 30
        assert report.summary["fail"] == 0 and report.summary["undecided"] == 0
        window = [c for c in report.cases if c.clause.startswith("real simple zeros with exactly")]
        assert [c.inputs["n"] for c in window] == list(range(report.findings["n_0"], report.findings["n_0"] + 16))

    def test_domain(self):
        with pytest.raises(DomainError):
            FiniteSupportSuite(parse_phi("1,-2"), (2, 5))
        with pytest.raises(DomainError):
            FiniteSupportSuite(parse_phi("1;tail=const:1"), (2, 5))
        with pytest.raises(DomainError):
            FiniteSupportSuite(parse_phi("1,2"), (2, 5), window=0)

    @pytest.mark.parametrize("text, n, expected", [("-1", 2, 2), ("1,2", 3, 1), ("-1,-2", 4, 3)])
    def test_zero_multiplicity(self, text, n, expected):
        report = verify_zero_multiplicity(parse_phi(text), n)
        assert passed(report)
        assert report.cases[1].observed["multiplicity"] == expected

    def test_zero_multiplicity_needs_n_above_support(self):
        with pytest.raises(DomainError):
            ZeroMultiplicitySuite(parse_phi("-1,-2"), 2)

    def test_negative_pair(self):
        report = NegativePairSuite([2, 3], 10).run()
        assert passed(report)
        counts = next(c.observed for c in report.cases if c.inputs == {"m": 2, "n": 10} and "simple zero" in c.clause)
        assert (counts["zero"], counts["nonreal"], counts["negative"]) == (1, 2, 7)

    @pytest.mark.slow
    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_negative_pair_up_to_degree_25(self, m):
        report = NegativePairSuite([m], 25).run()
        assert report.summary["fail"] == 0 and report.summary["undecided"] == 0
        counts = next(c.observed for c in report.cases if c.inputs == {"m": m, "n": 25} and "simple zero" in c.clause)
        assert (counts["zero"], counts["nonreal"], counts["negative"]) == (1, 2, 22)

    @pytest.mark.parametrize("m, n_max", [(1, 5), (2, 2)])
    def test_negative_pair_domain(self, m, n_max):
        with pytest.raises(DomainError):
            NegativePairSuite([m], n_max)


class TestExplorers:

    def test_shift_counterexample(self):
        report = explore_shift_interlacing(parse_phi("1/2"), Fraction(3, 2), 4)
        assert report.findings["first_failure"] == 4
        assert not report.failed
        assert report.summary["report-only"] + report.summary["undecided"] == 4

    def test_unit_shift_keeps_interlacing(self):
        report = ShiftExplorer(parse_phi("1/2"), 1, 12).run()
        assert report.findings["first_failure"] is None
        assert report.findings["message"] == "no failure up to n_max=12"

    @pytest.mark.parametrize("phi, s", [("1/2", 0), ("1/2", -1), ("-1", 1)])
    def test_shift_domain(self, phi, s):
        with pytest.raises(DomainError):
            ShiftExplorer(parse_phi(phi), s, 4)

    def test_conjecture_sequence_matches_finite_support(self):
        gamma = [1, -5, Fraction(21, 4)]
        assert conjecture_polynomial(gamma)(Fraction(3, 2)) == 0
        polys = p_sequence(gamma, 10)
        phi = parse_phi("-3/2,-7/2")
        assert all(polys[n] == genbell_via_recurrence(phi, n) for n in range(2, 11))

    def test_conjecture_exploration(self):
        report = ConjectureExplorer([1, -1, Fraction(1, 2)], 30).run()
        assert passed(report)
        assert "first_all_real" in report.findings
        assert any(c.clause == "p_n = T^{n-K}(p_K)" and c.outcome is Outcome.PASS for c in report.cases)

    @pytest.mark.parametrize("gamma, n_max", [([2, 1], 5), ([1, -3, 2], 5), ([1, 0, 1], 1)])
    def test_conjecture_domain(self, gamma, n_max):
        with pytest.raises(DomainError):
            ConjectureExplorer(gamma, n_max)


class TestIdentitySuites:

    def test_classical_reduction(self):
        assert passed(ClassicalReductionSuite(15).run())

    def test_identities(self):
        assert passed(IdentitySuite(6, n_max=8, route_trials=2, route_n_max=10, seed=3).run())

    def test_oracles(self):
        report = OracleSuite(3, n_max=8, seed=4).run()
        assert passed(report)
        assert report.findings["worst_relative_error"] <= 1e-9

    def test_laguerre_bridge(self):
        assert passed(LaguerreBridgeSuite(3, n_max=8, orth_trials=3, seed=2).run())

    def test_laguerre_monotonicity(self):
        alpha = AlphaVector((Fraction(0), Fraction(1, 2)))
        gamma = AlphaVector((Fraction(1, 3), Fraction(1, 2)))
        assert passed(LaguerreMonotonicitySuite([(alpha, gamma, MultiIndex((1, 2)))]).run())
        assert passed(LaguerreMonotonicitySuite.from_corpus(3, 2, seed=5).run())

    def test_laguerre_monotonicity_domain(self):
        low = AlphaVector((Fraction(-1),))
        with pytest.raises(DomainError):
            LaguerreMonotonicitySuite([(low, AlphaVector((Fraction(1),)), MultiIndex((2,)))])

import abc
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

from core.exact_poly import ExactPoly, RationalLike, to_rational
from core.exceptions import UndecidedError
from core.roots import RootIsolation, interlace_roots, isolate_roots
from utils.config import ConfigManager, get_config
from utils.helpers import Stopwatch, format_duration, to_jsonable

# Set up logging
logger = logging.getLogger(__name__)


class Outcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDECIDED = "undecided"
    REPORT_ONLY = "report-only"


@dataclass
class CaseResult:
    """One checked clause: the inputs that replay it, what was expected and what was seen"""

    inputs: Dict[str, Any]
    clause: str
    observed: Any
    outcome: Outcome

    def to_dict(self) -> Dict[str, Any]:
        return {
            "inputs": to_jsonable(self.inputs),
            "clause": self.clause,
            "observed": to_jsonable(self.observed),
            "outcome": self.outcome.value,
        }


@dataclass
class VerificationReport:
    """Structured record of one suite run"""

    suite: str
    seed: Optional[int] = None
    parameters: Dict[str, Any] = field(default_factory=dict)
    cases: List[CaseResult] = field(default_factory=list)
    findings: Dict[str, Any] = field(default_factory=dict)

    @property
    def summary(self) -> Dict[str, int]:
        counts = {outcome.value: 0 for outcome in Outcome}
        for case in self.cases:
            counts[case.outcome.value] += 1
        counts["total"] = len(self.cases)
        return counts

    @property
    def failed(self) -> bool:
        return any(case.outcome is Outcome.FAIL for case in self.cases)

    @property
    def overall(self) -> str:
        return "fail" if self.failed else "pass"

    def cases_with(self, outcome: Outcome) -> List[CaseResult]:
        return [case for case in self.cases if case.outcome is outcome]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "parameters": to_jsonable(self.parameters),
            "summary": self.summary,
            "overall": self.overall,
            "findings": to_jsonable(self.findings),
            "cases": [case.to_dict() for case in self.cases],
        }

    def to_rows(self) -> List[Dict[str, Any]]:
        """One flat row per case for tabular export"""
        rows = []
        for index, case in enumerate(self.cases):
            data = case.to_dict()
            rows.append(
                {
                    "suite": self.suite,
                    "seed": self.seed,
                    "case": index,
                    "clause": data["clause"],
                    "outcome": data["outcome"],
                    "inputs": data["inputs"],
                    "observed": data["observed"],
                }
            )
        return rows


class BaseSuite(abc.ABC):
    """Abstract base class for all theorem suites and explorers"""

    name: str = ""

    def __init__(self, width: Optional[RationalLike] = None, seed: Optional[int] = None,
                 config: Optional[ConfigManager] = None):
        """
        Initialize a suite with shared isolation settings

        Args:
            width (RationalLike, optional): Isolation width; defaults to roots.isolation_width
            seed (int, optional): Seed recorded in the report; defaults to verify.seed
            config (ConfigManager, optional): Configuration source
        """
        self.config = config or get_config()
        self.width = to_rational(width if width is not None else str(self.config.get('roots.isolation_width')))
        self.budget = int(self.config.get('roots.refinement_budget', 64))
        self.seed = seed if seed is not None else self.config.get('verify.seed', 1)
        self.report = VerificationReport(self.name, self.seed)

    @abc.abstractmethod
    def parameters(self) -> Dict[str, Any]:
        """
        Suite inputs echoed into the report

        Returns:
            Dict[str, Any]: Parameters that replay the run
        """
        pass

    @abc.abstractmethod
    def run_cases(self) -> None:
        """Check every clause, recording each through ``record`` or ``check``"""
        pass

    def run(self) -> VerificationReport:
        """
        Run the suite

        Returns:
            VerificationReport: Report with one case per checked clause
        """
        timer = Stopwatch()
        self.report = VerificationReport(self.name, self.seed, self.parameters())
        logger.info(f"Running suite {self.name}")
        self.run_cases()
        summary = self.report.summary
        logger.info(
            f"Suite {self.name} finished in {format_duration(timer.elapsed)}: "
            f"{summary['pass']} pass, {summary['fail']} fail, "
            f"{summary['undecided']} undecided, {summary['report-only']} report-only"
        )
        return self.report

    def record(self, inputs: Dict[str, Any], clause: str, observed: Any, passed: bool) -> CaseResult:
        case = CaseResult(inputs, clause, observed, Outcome.PASS if passed else Outcome.FAIL)
        if not passed:
            logger.warning(f"[{self.name}] {clause} failed for {to_jsonable(inputs)}: {to_jsonable(observed)}")
        self.report.cases.append(case)
        return case

    def report_only(self, inputs: Dict[str, Any], clause: str, observed: Any) -> CaseResult:
        case = CaseResult(inputs, clause, observed, Outcome.REPORT_ONLY)
        self.report.cases.append(case)
        return case

    def undecided(self, inputs: Dict[str, Any], clause: str, reason: str) -> CaseResult:
        logger.warning(f"[{self.name}] {clause} undecided for {to_jsonable(inputs)}: {reason}")
        case = CaseResult(inputs, clause, {"reason": reason}, Outcome.UNDECIDED)
        self.report.cases.append(case)
        return case

    def check(self, inputs: Dict[str, Any], clause: str,
              predicate: Callable[[], Tuple[bool, Any]]) -> Optional[CaseResult]:
        """
        Evaluate a clause, turning an undecided comparison into an undecided case

        Args:
            inputs (Dict[str, Any]): Replay inputs
            clause (str): Clause name
            predicate (Callable): Returns (passed, observed)

        Returns:
            Optional[CaseResult]: The recorded case
        """
        try:
            passed, observed = predicate()
        except UndecidedError as e:
            return self.undecided(inputs, clause, e.witness)
        return self.record(inputs, clause, observed, passed)

    def isolate(self, poly: ExactPoly) -> RootIsolation:
        return isolate_roots(poly, self.width, self.budget)

    def interlace(self, inputs: Dict[str, Any], clause: str, u: RootIsolation, v: RootIsolation,
                  pick_u: str = "all", pick_v: str = "all") -> Optional[CaseResult]:
        """Record whether the picked zeros of u interlace the picked zeros of v"""
        def predicate():
            verdict = interlace_roots(u, v, pick_u, pick_v)
            return verdict.holds, verdict
        return self.check(inputs, clause, predicate)

# Theorem suites and explorers
from .base_suite import BaseSuite, CaseResult, Outcome, VerificationReport
from .nonnegative import LeftmostBoundSuite, MonotonicitySuite, NonnegativeSuite
from .one_negative import OneNegativeSuite
from .finite_support import FiniteSupportSuite, NegativePairSuite, ZeroMultiplicitySuite
from .explorers import ConjectureExplorer, ShiftExplorer
from .identities import (
    ClassicalReductionSuite,
    IdentitySuite,
    LaguerreBridgeSuite,
    LaguerreMonotonicitySuite,
    OracleSuite,
)

SUITES = {
    suite.name: suite
    for suite in (
        NonnegativeSuite,
        MonotonicitySuite,
        LeftmostBoundSuite,
        OneNegativeSuite,
        FiniteSupportSuite,
        ZeroMultiplicitySuite,
        NegativePairSuite,
        ShiftExplorer,
        ConjectureExplorer,
        ClassicalReductionSuite,
        IdentitySuite,
        OracleSuite,
        LaguerreBridgeSuite,
        LaguerreMonotonicitySuite,
    )
}

__all__ = [
    'BaseSuite',
    'CaseResult',
    'Outcome',
    'VerificationReport',
    'NonnegativeSuite',
    'MonotonicitySuite',
    'LeftmostBoundSuite',
    'OneNegativeSuite',
    'FiniteSupportSuite',
    'ZeroMultiplicitySuite',
    'NegativePairSuite',
    'ShiftExplorer',
    'ConjectureExplorer',
    'ClassicalReductionSuite',
    'IdentitySuite',
    'OracleSuite',
    'LaguerreBridgeSuite',
    'LaguerreMonotonicitySuite',
    'SUITES',
]

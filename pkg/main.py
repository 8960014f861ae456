#!/usr/bin/env python3
"""
genbell: generalized Bell polynomials from the command line

Usage:
    python main.py construct --phi "1,2" -n 2 --route all
    python main.py roots --phi "-2,-2" -n 4
    python main.py verify nonneg --trials 50 --n-max 12 --seed 7
    python main.py verify shift --phi 1/2 --s 3/2 --n-max 4
    python main.py laguerre --alpha 0 --nvec 2 --check-orth

Exit codes: 0 success, 1 a suite case failed, 2 invalid input, 3 internal
disagreement between constructions.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Tuple

from core.exact_poly import to_rational
from core.exceptions import DomainError, InvariantError, UndecidedError
from core.genbell import ROUTES, construct_all_routes, genbell
from core.laguerre import laguerre_phi_sequence, multiple_laguerre, orthogonality_table
from core.phi_sequence import AlphaVector, MultiIndex, PhiSequence, parse_phi, parse_rational_list
from core.report_export import FORMATS, ReportEnvelope, render, write_output
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
    ShiftExplorer,
    ZeroMultiplicitySuite,
)
from core.zero_predictions import check_leftmost_bounds
from utils.config import get_config, setup_logging
from utils.helpers import Stopwatch, format_fraction

# Set up logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_DOMAIN = 2
EXIT_INVARIANT = 3


def _require(value, flag: str, suite: str):
    if value is None:
        raise DomainError(f"Suite {suite} needs {flag}")
    return value


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as e:
        raise DomainError(f"Expected a comma list of integers, got {text!r}") from e


def _perturbations(text: Optional[str]) -> Optional[List[Tuple[int, object]]]:
    """Parse "l:M,l:M" pairs"""
    if not text:
        return None
    pairs = []
    for token in text.split(","):
        l_text, sep, m_text = token.partition(":")
        if not sep:
            raise DomainError(f"Perturbation {token!r} must be written l:M")
        pairs.append((_int_list(l_text)[0], to_rational(m_text)))
    return pairs


def cmd_construct(args, config) -> Tuple[ReportEnvelope, int]:
    """Coefficients of Be_n^phi through one route or all of them"""
    phi = parse_phi(args.phi)
    if args.n < 0:
        raise DomainError(f"n must be nonnegative, got {args.n}")
    inputs = {"phi": phi.to_spec(), "n": args.n, "route": args.route}
    if args.route == "all":
        polys = construct_all_routes(phi, args.n)
        reference = polys["recurrence"]
        agree = all(p == reference for p in polys.values())
        if not agree:
            logger.error(f"Construction routes disagree for phi={phi}, n={args.n}")
            raise InvariantError(f"Construction routes disagree for phi={phi}, n={args.n}")
        results = {"polynomials": {route: p.to_strings() for route, p in polys.items()}, "agree": agree}
    else:
        results = {"polynomials": {args.route: genbell(phi, args.n, args.route).to_strings()}}
    return ReportEnvelope("construct", inputs, results), EXIT_OK


def cmd_roots(args, config) -> Tuple[ReportEnvelope, int]:
    """Certified isolation of the real zeros of Be_n^phi"""
    phi = parse_phi(args.phi)
    if args.n < 1:
        raise DomainError(f"Root isolation needs n >= 1, got {args.n}")
    width = args.width
    budget = int(config.get('roots.refinement_budget', 64))
    iso = isolate_roots(genbell(phi, args.n), width, budget)
    results = iso.to_dict()
    results["approximations"] = iso.approximations()
    if phi.is_nonnegative(args.n):
        try:
            results["leftmost_bounds"] = check_leftmost_bounds(phi, args.n, width)
        except UndecidedError as e:
            logger.warning(f"Leftmost-zero bounds undecided: {e.witness}")
            results["leftmost_bounds"] = {"undecided": e.witness}
    inputs = {"phi": phi.to_spec(), "n": args.n, "width": width}
    return ReportEnvelope("roots", inputs, results), EXIT_OK


def _build_suite(args, config) -> BaseSuite:
    """Instantiate the suite named on the command line from its flags"""
    name = args.suite
    trials = args.trials or int(config.get('verify.trials', 20))
    n_max = args.n_max or int(config.get('verify.n_max', 12))
    seed = args.seed
    common = {"width": args.width, "config": config}
    phi = parse_phi(args.phi) if args.phi is not None else None

    if name == NonnegativeSuite.name:
        probes = _int_list(args.l) if args.l else [1, 2, 3]
        if phi is not None:
            return NonnegativeSuite([phi], n_max, probes, _perturbations(args.perturbations), seed=seed, **common)
        return NonnegativeSuite.from_corpus(trials, n_max, seed, l_probes=probes, **common)
    if name == MonotonicitySuite.name:
        if phi is not None:
            psi = parse_phi(_require(args.psi, "--psi", name))
            return MonotonicitySuite([(phi, psi, args.n or n_max)], seed=seed, **common)
        return MonotonicitySuite.from_corpus(trials, n_max, seed, **common)
    if name == LeftmostBoundSuite.name:
        if phi is not None:
            return LeftmostBoundSuite([phi], n_max, seed=seed, **common)
        return LeftmostBoundSuite.from_corpus(trials, n_max, seed, **common)
    if name == OneNegativeSuite.name:
        probes = _int_list(args.l) if args.l else [1, 2, 3]
        if phi is not None:
            return OneNegativeSuite([phi], n_max, probes, seed=seed, **common)
        return OneNegativeSuite.from_corpus(trials, n_max, seed, l_probes=probes, **common)
    if name == FiniteSupportSuite.name:
        n_range = tuple(_int_list(args.n_range)) if args.n_range else None
        if n_range is not None and len(n_range) != 2:
            raise DomainError(f"--n-range takes two integers lo,hi, got {args.n_range!r}")
        return FiniteSupportSuite(_require(phi, "--phi", name), n_range, seed=seed, **common)
    if name == ZeroMultiplicitySuite.name:
        return ZeroMultiplicitySuite(_require(phi, "--phi", name), _require(args.n, "-n", name), seed=seed, **common)
    if name == NegativePairSuite.name:
        m_values = _int_list(args.m) if args.m else [2, 3, 4, 5]
        return NegativePairSuite(m_values, args.n_max or 25, seed=seed, **common)
    if name == ShiftExplorer.name:
        return ShiftExplorer(_require(phi, "--phi", name), to_rational(_require(args.s, "--s", name)), n_max,
                             seed=seed, **common)
    if name == ConjectureExplorer.name:
        gamma = parse_rational_list(_require(args.gamma, "--gamma", name))
        return ConjectureExplorer(gamma, n_max, seed=seed, **common)
    if name == ClassicalReductionSuite.name:
        return ClassicalReductionSuite(args.n_max or 40, seed=seed, **common)
    if name == IdentitySuite.name:
        return IdentitySuite(trials, n_max, seed=seed, **common)
    if name == OracleSuite.name:
        return OracleSuite(trials, args.n_max or 15, seed=seed, **common)
    if name == LaguerreBridgeSuite.name:
        return LaguerreBridgeSuite(trials, n_max, seed=seed, **common)
    if name == LaguerreMonotonicitySuite.name:
        if args.alpha:
            alpha = AlphaVector(tuple(parse_rational_list(args.alpha)))
            upper = AlphaVector(tuple(parse_rational_list(_require(args.alpha_upper, "--alpha-upper", name))))
            nvec = MultiIndex(tuple(_int_list(_require(args.nvec, "--nvec", name))))
            return LaguerreMonotonicitySuite([(alpha, upper, nvec)], seed=seed, **common)
        return LaguerreMonotonicitySuite.from_corpus(trials, 2, seed, **common)
    raise DomainError(f"Unknown suite {name!r}; expected one of {sorted(SUITES)}")


def cmd_verify(args, config) -> Tuple[ReportEnvelope, int]:
    """Run a theorem suite or explorer"""
    suite = _build_suite(args, config)
    report = suite.run()
    inputs = {"suite": args.suite, "seed": suite.seed, "parameters": suite.parameters()}
    code = EXIT_FAILED if report.failed else EXIT_OK
    return ReportEnvelope("verify", inputs, report.to_dict()), code


def cmd_laguerre(args, config) -> Tuple[ReportEnvelope, int]:
    """Multiple Laguerre polynomial as a generalized Bell polynomial"""
    alpha = AlphaVector(tuple(parse_rational_list(args.alpha)))
    nvec = MultiIndex(tuple(_int_list(args.nvec)))
    phi = laguerre_phi_sequence(alpha, nvec)
    results = {
        "phi": [format_fraction(v) for v in phi.prefix],
        "coefficients": multiple_laguerre(alpha, nvec).to_strings(),
    }
    if args.check_orth:
        results["orthogonality"] = [
            {"j": j, "k": k, "moment": moment, "orthogonal": moment == 0}
            for j, k, moment in orthogonality_table(alpha, nvec)
        ]
    inputs = {"alpha": list(alpha.values), "nvec": list(nvec.parts), "check_orth": args.check_orth}
    return ReportEnvelope("laguerre", inputs, results), EXIT_OK


COMMANDS: Dict[str, Callable] = {
    "construct": cmd_construct,
    "roots": cmd_roots,
    "verify": cmd_verify,
    "laguerre": cmd_laguerre,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="Output format (default: export.default_format)")
    common.add_argument("--out", default=None, help="Output file (default: stdout)")
    common.add_argument("--width", default=None, help="Isolation width as p/q (default: roots.isolation_width)")
    common.add_argument("--seed", type=int, default=None, help="Seed for randomized suites (default: verify.seed)")
    common.add_argument("--log-level", default=None, help="Log level (default: app.log_level)")
    common.add_argument("--config", default=None, help="JSON5 configuration file")

    parser = argparse.ArgumentParser(prog="genbell", description="Generalized Bell polynomials: construction, zeros and theorem suites")
    subparsers = parser.add_subparsers(dest="command")

    construct = subparsers.add_parser("construct", parents=[common], help="Coefficients of Be_n^phi")
    construct.add_argument("--phi", required=True, help="Sequence r1,r2,...[;tail=zero|const:R|affine:A]")
    construct.add_argument("-n", type=int, required=True, help="Degree")
    construct.add_argument("--route", choices=ROUTES + ("all",), default="recurrence", help="Construction route")

    roots = subparsers.add_parser("roots", parents=[common], help="Certified real zeros of Be_n^phi")
    roots.add_argument("--phi", required=True, help="Sequence r1,r2,...[;tail=...]")
    roots.add_argument("-n", type=int, required=True, help="Degree, n >= 1")

    verify = subparsers.add_parser("verify", parents=[common], help="Run a theorem suite or explorer")
    verify.add_argument("suite", choices=sorted(SUITES), help="Suite name")
    verify.add_argument("--trials", type=int, default=None, help="Corpus size (default: verify.trials)")
    verify.add_argument("--n-max", type=int, default=None, help="Largest degree (default: verify.n_max)")
    verify.add_argument("-n", type=int, default=None, help="Single degree for pointwise suites")
    verify.add_argument("--n-range", default=None, help="lo,hi degrees scanned by finite-support")
    verify.add_argument("--phi", default=None, help="Sequence; omit to draw a seeded corpus")
    verify.add_argument("--psi", default=None, help="Upper sequence for monotonicity")
    verify.add_argument("--l", default=None, help="Comma list of probed positions")
    verify.add_argument("--perturbations", default=None, help="Comma list of l:M pairs")
    verify.add_argument("--s", default=None, help="Shift for the shift explorer")
    verify.add_argument("--gamma", default=None, help="gamma_0,...,gamma_K for the conjecture explorer")
    verify.add_argument("--m", default=None, help="Comma list of m >= 2 for negative-pair")
    verify.add_argument("--alpha", default=None, help="Lower Laguerre parameters")
    verify.add_argument("--alpha-upper", default=None, help="Upper Laguerre parameters")
    verify.add_argument("--nvec", default=None, help="Multi-index for Laguerre monotonicity")

    laguerre = subparsers.add_parser("laguerre", parents=[common], help="Multiple Laguerre polynomial")
    laguerre.add_argument("--alpha", required=True, help="Comma list of rationals")
    laguerre.add_argument("--nvec", required=True, help="Comma list of nonnegative integers")
    laguerre.add_argument("--check-orth", action="store_true", help="Emit exact orthogonality moments")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_OK

    config = get_config(args.config)
    setup_logging(args.log_level)
    for section, errors in config.validate_config().items():
        for error in errors:
            logger.warning(f"Config [{section}]: {error}")

    timer = Stopwatch()
    try:
        args.width = to_rational(args.width if args.width is not None else str(config.get('roots.isolation_width')))
        if args.width <= 0:
            raise DomainError(f"Isolation width must be positive, got {args.width}")
        if args.seed is None:
            args.seed = int(config.get('verify.seed', 1))
        envelope, code = COMMANDS[args.command](args, config)
    except DomainError as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except InvariantError as e:
        logger.error(f"{args.command}: {e}")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT

    envelope.timing_ms = timer.elapsed_ms
    write_output(render(envelope, args.format or config.get('export.default_format', 'json')), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())

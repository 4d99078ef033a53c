"""
Command-line front end.

    congruence-lab verify --suite harmonic --pmin 5 --pmax 97 --format json
    congruence-lab seq genocchi --max 12
    congruence-lab oracle dumont --n 4
    congruence-lab identities --max-n 8
    congruence-lab represent 13
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from .arith import PrimeRange, represent_a2_plus_4b2, to_residue
from .config import MOD_EXP_CHOICES, REPORT_FORMATS, build_config
from .congruences import run_suite
from .errors import CongruenceLabError, NotInvertible
from .identities import IdentityRegistry
from .oracles import ORACLE_FAMILIES, oracle_pair
from .sequences import SequenceEngine
from .series import DEFAULT_ORDER

logger = logging.getLogger(__name__)

SEQ_FAMILIES = ("eulerian", "euler", "genocchi", "tangent", "zigzag", "bernoulli", "ehat")
SCALAR_ORACLES = ("alternating", "dumont", "guns")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def configure_logging(verbose: int = 0, quiet: bool = False) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def cmd_verify(args: argparse.Namespace) -> int:
    """Run a check suite and write its report."""
    overrides: Dict[str, Any] = {
        "suite": args.suite,
        "checks": args.checks,
        "pmin": args.pmin,
        "pmax": args.pmax,
        "mod_exp": args.mod_exp,
        "jobs": args.jobs,
        "format": args.format,
        "out": args.out,
        "cache_dir": args.cache_dir,
        "use_cache": False if args.no_cache else None,
        "series_order": args.series_order,
        "identity_max_n": args.identity_max_n,
    }
    config = build_config(args.config, overrides)
    report = run_suite(config.selection, PrimeRange(config.pmin, config.pmax), config)

    if config.out:
        report.write(config.out, config.format)
    else:
        text = report.render(config.format)
        sys.stdout.write(text if text.endswith("\n") else text + "\n")

    summary = report.summary
    logger.info(" ".join(f"{status}={count}" for status, count in summary.items()))
    return EXIT_FAIL if report.has_failures else EXIT_OK


def _sequence_lines(family: str, engine: SequenceEngine, args: argparse.Namespace) -> List[List[Any]]:
    top = args.max
    if family == "eulerian":
        rows = [args.n] if args.n is not None else range(1, top + 1)
        return [engine.eulerian_row(n) for n in rows]
    if args.n is not None:
        top = args.n
    if family == "euler":
        return [[engine.euler_number(n) for n in range(top + 1)]]
    if family == "genocchi":
        return [[engine.genocchi_number(n) for n in range(1, top + 1)]]
    if family == "tangent":
        return [[engine.tangent_number(n) for n in range(1, top + 1, 2)]]
    if family == "zigzag":
        return [engine.zigzag(top)]
    if family == "bernoulli":
        return [list(engine.bernoulli_exact(top))]
    if family == "ehat":
        return [[engine.generalized_euler(n) for n in range(top + 1)]]
    raise KeyError(family)


def _reduce(value: Any, modulus: int) -> Any:
    try:
        return to_residue(value, modulus)
    except NotInvertible:
        return "-"


def cmd_seq(args: argparse.Namespace) -> int:
    """
    Print a sequence family, exact or reduced mod ``--modulus``.

    Values whose denominator is not a unit mod ``--modulus`` print as ``-``.
    """
    family = args.family or args.family_flag
    if family not in SEQ_FAMILIES:
        print(f"unknown family {family!r}; choose from {', '.join(SEQ_FAMILIES)}", file=sys.stderr)
        return EXIT_USAGE
    lines = _sequence_lines(family, SequenceEngine(), args)
    for values in lines:
        if args.modulus is not None:
            values = [_reduce(v, args.modulus) for v in values]
        print(" ".join(str(v) for v in values))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    """Compare an enumeration with the formula engine."""
    oracle, formula = oracle_pair(args.family, args.n, SequenceEngine(), args.i)
    verdict = "OK" if oracle == formula else "MISMATCH"
    if args.family in SCALAR_ORACLES:
        print(f"{oracle[0]} {formula[0]} {verdict}")
    else:
        left = " ".join(str(v) for v in oracle)
        right = " ".join(str(v) for v in formula)
        print(f"{left} | {right} {verdict}")
    return EXIT_OK if oracle == formula else EXIT_FAIL


def cmd_identities(args: argparse.Namespace) -> int:
    """Sweep every registered identity and print one status line each."""
    registry = IdentityRegistry()
    failed = False
    for identity_id in registry.ids():
        sweep = registry.sweep(identity_id, args.max_n, args.series_order)
        line = f"{identity_id} {sweep.status} ({sweep.instances} instances)"
        if sweep.first_failure is not None:
            bad = sweep.first_failure
            line += f" at {bad.params}: lhs {bad.lhs} rhs {bad.rhs}"
        print(line)
        failed = failed or sweep.status == "FAIL"
    return EXIT_FAIL if failed else EXIT_OK


def cmd_represent(args: argparse.Namespace) -> int:
    """Print ``a b`` with ``p = a^2 + 4b^2``."""
    a, b = represent_a2_plus_4b2(args.p)
    print(f"{a} {b}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congruence-lab",
        description="Verify congruences for Eulerian, Euler, Genocchi and Bernoulli numbers",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging (repeatable)")
    parser.add_argument("-q", "--quiet", action="store_true", help="Only log errors")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    verify = subparsers.add_parser("verify", help="Run congruence checks and write a report")
    verify.add_argument("--suite", nargs="+", default=None, help="Group names or check ids")
    verify.add_argument("--checks", nargs="+", default=None, help="Explicit check ids")
    verify.add_argument("--pmin", type=int, default=None, help="Smallest prime (>= 5)")
    verify.add_argument("--pmax", type=int, default=None, help="Largest prime")
    verify.add_argument("--mod-exp", choices=MOD_EXP_CHOICES, default=None, help="Exponent filter for C17/C22")
    verify.add_argument("--jobs", type=int, default=None, help="Worker processes")
    verify.add_argument("--format", choices=REPORT_FORMATS, default=None, help="Report format")
    verify.add_argument("--out", default=None, help="Write the report here instead of stdout")
    verify.add_argument("--cache-dir", default=None, help="Residue cache directory")
    verify.add_argument("--no-cache", action="store_true", help="Do not read or write the residue cache")
    verify.add_argument("--config", default=None, help="JSON config file; flags override it")
    verify.add_argument("--series-order", type=int, default=None, help="Truncation order for series identities")
    verify.add_argument("--identity-max-n", type=int, default=None, help="Extra cap on identity indices")

    seq = subparsers.add_parser(
        "seq",
        help="Print a sequence family, space-separated on one line",
        description="Print a sequence family as space-separated values on one line; "
        "eulerian prints one triangle row per line.",
    )
    seq.add_argument("family", nargs="?", default=None, help=f"One of {', '.join(SEQ_FAMILIES)}")
    seq.add_argument("--family", dest="family_flag", default=None, help="Same as the positional family")
    seq.add_argument("--max", type=int, default=12, help="Largest index")
    seq.add_argument("--n", type=int, default=None, help="Single Eulerian row, or largest index")
    seq.add_argument(
        "--modulus",
        type=int,
        default=None,
        help="Reduce values mod this number; values with a non-unit denominator print as -",
    )

    oracle = subparsers.add_parser("oracle", help="Compare an enumeration with its formula")
    oracle.add_argument("family", choices=ORACLE_FAMILIES)
    oracle.add_argument("--n", type=int, required=True, help="Size parameter")
    oracle.add_argument("--i", type=int, default=2, help="Multiplicity for the multiset family")

    identities = subparsers.add_parser("identities", help="Sweep the identity registry")
    identities.add_argument("--max-n", type=int, default=None, help="Extra cap on the main index")
    identities.add_argument("--series-order", type=int, default=DEFAULT_ORDER, help="Series truncation order")

    represent = subparsers.add_parser("represent", help="Write p = a^2 + 4b^2")
    represent.add_argument("p", type=int)

    return parser


COMMANDS = {
    "verify": cmd_verify,
    "seq": cmd_seq,
    "oracle": cmd_oracle,
    "identities": cmd_identities,
    "represent": cmd_represent,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except (CongruenceLabError, ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point: ``paramflow solve`` and ``paramflow verify``.

Exit codes: 0 success, 1 infeasible, 2 invalid input, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import logging
import sys
from contextlib import nullcontext

from . import io
from .network import InvalidNetworkError, check_network
from .residual import LEXICOGRAPHIC, RESIDUAL_RULES
from .solver import solve
from .static_flow import InfeasibleError
from .verification import verify

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3

log = logging.getLogger("paramflow")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paramflow",
        description="Parametric minimum flow over time with affine lower bounds.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute breakpoints and the minimum-flow value function")
    p.add_argument("--input", required=True, help="network JSON file")
    p.add_argument("--output", help="solution JSON file (default: stdout)")
    p.add_argument("--csv", help="write 'lambda,value' rows for plotting")
    p.add_argument("--grid", type=_positive_int, default=101, help="uniform grid points in the CSV")
    p.add_argument("--verify", action="store_true", help="check against fixed-lambda static solves")
    p.add_argument("--samples", type=_positive_int, default=3, help="random samples per interval")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", action="store_true", help="include every flow decrease")
    p.add_argument("--feasible-flow", help="JSON file with the starting flow")
    p.add_argument("--residual-rule", choices=RESIDUAL_RULES, default=LEXICOGRAPHIC)

    v = sub.add_parser("verify", help="check a solution document against static solves")
    v.add_argument("--input", required=True, help="network JSON file")
    v.add_argument("--solution", required=True, help="solution JSON file")
    v.add_argument("--samples", type=_positive_int, default=3)
    v.add_argument("--seed", type=int, default=0)
    return parser


def _open_output(path):
    return open(path, "w") if path else nullcontext(sys.stdout)


def _report_mismatches(report) -> None:
    for s in report.mismatches:
        log.error("mismatch at lambda=%s (piece %d): parametric %s, oracle %s",
                  s.lam, s.piece, s.parametric, s.oracle)


def cmd_solve(args) -> int:
    net = check_network(io.load_network(args.input))
    base = None
    if args.feasible_flow:
        base = io.flow_from_dict(io.read_json(args.feasible_flow), net)
    try:
        sol = solve(net, base_flow=base, residual_rule=args.residual_rule)
    except ValueError as exc:
        raise InvalidNetworkError(str(exc)) from None
    report = verify(sol, net, args.samples, args.seed) if args.verify else None
    with _open_output(args.output) as fh:
        io.dump_json(io.solution_to_dict(sol, trace=args.trace, report=report), fh)
    if args.csv:
        io.write_value_csv(sol, args.csv, args.grid)
    if report is not None and not report.all_match:
        _report_mismatches(report)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args) -> int:
    net = check_network(io.load_network(args.input))
    sol = io.solution_from_dict(io.read_json(args.solution), net)
    report = verify(sol, net, args.samples, args.seed)
    print(f"{len(report.samples)} samples, {len(report.mismatches)} mismatches")
    if not report.all_match:
        _report_mismatches(report)
        return EXIT_MISMATCH
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return {"solve": cmd_solve, "verify": cmd_verify}[args.command](args)
    except InvalidNetworkError as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    except InfeasibleError as exc:
        log.error("infeasible: %s", exc)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Commands: check, faithful, decompose, measures, circuit, random.  Exit
codes: 0 success, 1 invalid input, 2 numerical failure.  All reports are
JSON with 12-significant-digit numbers, printed to stdout and optionally
written to a file; identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from . import circuits, faithful, jsonio, linalg, measures, states, witness

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; route through our own codes
    def error(self, message):
        raise _UsageError(message)


def _emit(payload: dict, report_path: str | None) -> None:
    text = jsonio.dumps(payload)
    sys.stdout.write(text)
    if report_path:
        Path(report_path).write_text(text, encoding="utf-8")


def cmd_check(args) -> int:
    try:
        rho = states.load_state(args.state)
    except (ValueError, OSError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"valid density matrix, dim {rho.dim}")
    return EXIT_OK


def cmd_faithful(args) -> int:
    rho = states.load_state(args.state)
    if rho.dim < 2:
        raise ValueError("faithfulness needs dimension >= 2")
    if args.dims is not None:
        if args.mode != "full":
            raise ValueError("--mode cannot be combined with --dims")
        dim_a, dim_b = args.dims
        report = faithful.is_faithful_bipartite(rho, dim_a, dim_b, eps=args.eps)
        payload = report.to_dict()
        payload["analysis"] = "bipartite-product-signs"
    else:
        if args.mode == "reduced":
            report = faithful.screen_reduced(rho, eps=args.eps)
        elif args.mode == "phase":
            report = faithful.phase_report(rho, eps=args.eps)
        else:
            report = faithful.is_faithful(rho, eps=args.eps)
        payload = report.to_dict()
        payload["analysis"] = "single-system-signs"
    _emit(payload, args.report)
    return EXIT_OK


def cmd_decompose(args) -> int:
    psi = witness.pure_state_from_dict(jsonio.load_file(args.psi))
    cert = faithful.decompose_witness(psi)
    problems = cert.check()
    payload = cert.to_dict()
    payload["sound"] = not problems
    _emit(payload, args.report)
    if problems:
        for problem in problems:
            print(f"certificate violation: {problem}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_measures(args) -> int:
    rho = states.load_state(args.state)
    if rho.dim < 2:
        raise ValueError("measures need dimension >= 2")
    report = measures.rfcw_bound(rho)
    _emit(report.to_dict(), args.report)
    return EXIT_OK


def _parse_signs(text: str) -> tuple[int, ...]:
    mapping = {"+": 1, "-": -1}
    try:
        signs = tuple(mapping[ch] for ch in text)
    except KeyError:
        raise ValueError(f"sign string may contain only '+' and '-': {text!r}")
    if not signs:
        raise ValueError("empty sign string")
    size = len(signs)
    if size & (size - 1):
        raise ValueError(f"sign string length must be a power of two, got {size}")
    if signs[0] != 1:
        raise ValueError("the leading sign must be '+'")
    return signs


def cmd_circuit(args) -> int:
    if (args.signs is None) == (args.generator is None):
        raise ValueError("provide either a sign string or --generator")
    if args.generator is not None:
        if args.k is None:
            raise ValueError("--generator requires --k")
        gens = circuits.standard_generators(args.k)
        if args.generator not in gens:
            raise ValueError(f"unknown generator {args.generator!r} for k={args.k}")
        unitary = gens[args.generator]
    else:
        signs = _parse_signs(args.signs)
        unitary = circuits.SignDiagonalUnitary(len(signs).bit_length() - 1, signs)
    circ = circuits.synthesize(unitary)
    if args.verify:
        realized = np.diag(circuits.to_matrix(circ)).real
        if not np.array_equal(realized, np.array(unitary.signs, dtype=float)):
            raise linalg.ConvergenceError("synthesized circuit does not match its target")
    text = circuits.format_circuit(circ)
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    return EXIT_OK


def cmd_random(args) -> int:
    rank = args.rank if args.rank is not None else args.dim
    rho = states.random_density(args.dim, rank, args.seed)
    if args.out:
        states.save_state(args.out, rho)
    else:
        sys.stdout.write(jsonio.dumps(states.state_to_dict(rho)))
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="cohwit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a density-matrix JSON file")
    p.add_argument("state")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("faithful", help="decide whether a state's coherence is faithful")
    p.add_argument("state")
    p.add_argument("--mode", choices=["full", "reduced", "phase"], default="full")
    p.add_argument("--dims", nargs=2, type=int, metavar=("DA", "DB"),
                   help="treat the state as bipartite with these subsystem dimensions")
    p.add_argument("--eps", type=float, default=faithful.STRICTNESS_EPS,
                   help="strictness of the threshold comparison")
    p.add_argument("--report", help="also write the JSON report to this path")
    p.set_defaults(func=cmd_faithful)

    p = sub.add_parser("decompose", help="certificate reducing a witness to sign witnesses")
    p.add_argument("psi", help='JSON file with a "psi" amplitude list')
    p.add_argument("--report", help="also write the JSON certificate to this path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("measures", help="coherence measures and the witness lower bound")
    p.add_argument("state")
    p.add_argument("--report", help="also write the JSON report to this path")
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("circuit", help="synthesize a sign-diagonal unitary circuit")
    p.add_argument("signs", nargs="?", help="sign string such as '+-++' (leading '+')")
    p.add_argument("--generator", help="named generator such as U_11")
    p.add_argument("--k", type=int, help="qubit count for --generator")
    p.add_argument("--verify", action="store_true",
                   help="re-simulate the circuit and require an exact match")
    p.add_argument("--out", help="also write the circuit text to this path")
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("random", help="write a seeded random density matrix")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.set_defaults(func=cmd_random)

    return parser


def _reject_leading_minus_signs(argv: list[str]) -> None:
    # argparse would eat a sign string like "-+++" as an option; such a
    # string is invalid anyway (the leading sign must be '+'), so fail early
    # with the real reason
    if argv and argv[0] == "circuit":
        for token in argv[1:]:
            if token.startswith("-") and re.fullmatch(r"[+-]+", token):
                raise ValueError("the leading sign must be '+'")


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        _reject_leading_minus_signs(argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except measures.CmaxConvergenceError as exc:
        print(
            f"numerical failure: {exc} "
            f"(primal {exc.primal_trace:.12g}, dual {exc.dual_bound:.12g})",
            file=sys.stderr,
        )
        return EXIT_NUMERICAL
    except linalg.ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

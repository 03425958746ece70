"""Command-line entry point.

Exit codes: 0 = dominating path found / no violation, 1 = violation found,
2 = usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dominance, explorer
from .model import (
    DomainError,
    FlowAssignment,
    ParseError,
    edge_flows,
    format_rational,
    parse_flow,
    parse_instance,
    parse_rational,
    serialize_flow,
    serialize_instance,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

PAPER_F = (5, 4, 5, 4, 5, 4)
PAPER_F_PRIME = (4, 5, 4, 5, 4, 5)

EPILOG = """\
indexing: files use 0-based vertices and edges, edge j joining vertices j and
j+1 (mod n). Printed tables use 1-based labels: column e_j is edge j-1.
"""


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _describe_path(path) -> str:
    return f"{path.start}->{path.end} edges {list(path.edges)}"


def format_certificate(cert: explorer.ViolationCertificate) -> list[str]:
    return [f"cert {en.commodity} {en.path.start} {en.path.end} {en.edge} "
            f"{format_rational(en.f_edge)} {format_rational(en.f_prime_edge)}"
            for en in cert.entries]


def cmd_check(args, out) -> int:
    instance = parse_instance(_read(args.instance))
    f = parse_flow(_read(args.flow), instance)
    fp = parse_flow(_read(args.flow_prime), instance)
    if args.method == "constructive":
        if instance.k > 2:
            raise UsageError(
                f"constructive method needs k <= 2, instance has k = {instance.k}; for three or "
                "more commodities a dominating path can fail to exist (see paper-k3)")
        w = dominance.witness_constructive(instance, f, fp)
        print(f"witness {w.commodity} {_describe_path(w.path)}", file=out)
        return EXIT_OK
    witnesses = dominance.witnesses_bruteforce(instance, f, fp)
    if witnesses:
        for w in witnesses:
            print(f"witness {w.commodity} {_describe_path(w.path)}", file=out)
        return EXIT_OK
    cert = explorer.check_violation(instance, f, fp)
    print("violation: no dominating path", file=out)
    for line in format_certificate(cert):
        print(line, file=out)
    return EXIT_VIOLATION


def cmd_search(args, out) -> int:
    instance = parse_instance(_read(args.instance))
    if args.grid_step is not None:
        report = explorer.search_grid(instance, parse_rational(args.grid_step))
    else:
        report = explorer.search_random(instance, args.trials, args.seed,
                                        denominator=args.denominator, workers=args.workers)
    out.write(report.to_text())
    return EXIT_VIOLATION if report.violations else EXIT_OK


def paper_table() -> tuple[str, bool]:
    instance, f, fp = explorer.paper_instance_k3()
    ef, efp = edge_flows(instance, f), edge_flows(instance, fp)
    rows = [
        "\t".join(["j", *(str(j) for j in range(1, instance.n + 1))]),
        "\t".join(["f(e_j)", *map(format_rational, ef)]),
        "\t".join(["f'(e_j)", *map(format_rational, efp)]),
    ]
    forward = explorer.check_violation(instance, f, fp)
    backward = explorer.check_violation(instance, fp, f)
    ok = (ef == PAPER_F and efp == PAPER_F_PRIME
          and forward is not None and explorer.verify_certificate(instance, f, fp, forward)
          and backward is not None and explorer.verify_certificate(instance, fp, f, backward))
    lines = [serialize_instance(instance).rstrip("\n"), serialize_flow(f).rstrip("\n"),
             serialize_flow(fp).rstrip("\n"), "", *rows, ""]
    for label, cert in (("f vs f'", forward), ("f' vs f", backward)):
        lines.append(f"{label}: " + ("no dominating path" if cert else "dominating path exists"))
        if cert:
            lines += ["  " + ln for ln in format_certificate(cert)]
    lines.append("no dominating path in either direction" if ok else "MISMATCH with the published table")
    return "\n".join(lines) + "\n", ok


def cmd_paper_k3(args, out) -> int:
    text, ok = paper_table()
    out.write(text)
    return EXIT_OK if ok else EXIT_VIOLATION


def verify_one(instance, f, fp) -> str | None:
    """Failure description for one pair, or None if it passes."""
    witnesses = dominance.witnesses_bruteforce(instance, f, fp)
    if not witnesses:
        return "no dominating path exists"
    try:
        w = dominance.witness_constructive(instance, f, fp)
    except dominance.InternalError as exc:
        return f"constructive search failed: {exc}"
    if w not in witnesses:
        return f"constructive witness {w} missing from brute-force list"
    return None


def cmd_verify(args, out) -> int:
    if args.k not in (1, 2):
        raise UsageError(f"verify supports k = 1 or 2 only, got k = {args.k}; "
                         "the dominance property fails for three commodities (see paper-k3)")
    for t in range(args.trials):
        rng = explorer.trial_rng(args.seed, t)
        instance = explorer.random_instance(rng, args.k, args.max_n)
        f = explorer.sample_flow(rng, instance)
        fp = explorer.sample_flow(rng, instance)
        problem = verify_one(instance, f, fp)
        if problem is not None:
            print(f"FAIL trial {t}: {problem}", file=out)
            out.write(serialize_instance(instance))
            out.write(serialize_flow(f))
            out.write(serialize_flow(fp))
            return EXIT_VIOLATION
    print(f"ok: {args.trials} trials, k={args.k}, seed={args.seed}, max-n={args.max_n}", file=out)
    return EXIT_OK


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycleflow", description="Dominating paths for multicommodity flows on a cycle.",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="look for a dominating path of f over f'", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--instance", required=True)
    p.add_argument("--flow", required=True)
    p.add_argument("--flow-prime", required=True)
    p.add_argument("--method", choices=("brute", "constructive"), default="brute")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="search flow pairs for violations", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--instance", required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--grid-step", metavar="Q")
    mode.add_argument("--random", action="store_true")
    p.add_argument("--trials", type=_positive_int)
    p.add_argument("--seed", type=int)
    p.add_argument("--denominator", type=_positive_int, default=explorer.DEFAULT_DENOMINATOR)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("paper-k3", help="reproduce the three-commodity counterexample table",
                       epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.set_defaults(func=cmd_paper_k3)

    p = sub.add_parser("verify", help="randomized check of the k <= 2 dominance property")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-n", type=int, default=12)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "search" and args.random and (args.trials is None or args.seed is None):
        print("error: --random needs --trials and --seed", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "verify" and args.max_n < 3:
        print("error: --max-n must be at least 3", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, ParseError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

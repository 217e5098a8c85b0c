"""Command line front end: ``lgcheck <subcommand> [options]``.

Exit codes: 0 every check passed, 1 at least one check failed, 2 usage or
infrastructure error (bad arguments, unreadable generator file).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import abelmono as am
from . import sdrep as sd
from .verify import GROUPS, RunOptions, VerificationReport, run_all

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(default):
    # shared by the top level and every subcommand so flags work on either side
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=default, help="machine-readable report on stdout")
    p.add_argument("--quiet", action="store_true", default=default, help="print failures and the summary only")
    p.add_argument("--timings", action="store_true", default=default, help="include per-check elapsed ms")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lgcheck", description=__doc__.splitlines()[0], parents=[_global_flags(False)])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    flags = _global_flags(argparse.SUPPRESS)

    p = sub.add_parser("all", parents=[flags], help="run every check group")
    p.add_argument("--only", nargs="+", choices=GROUPS, metavar="GROUP", help=f"restrict to groups {GROUPS}")
    p.add_argument("--generators", metavar="FILE", help="JSON list of 4x4 matrices replacing tau_1..tau_6")
    p.add_argument("--jobs", type=int, default=1, help="worker threads (report order is unaffected)")

    p = sub.add_parser("rep", parents=[flags], help="symmetric group characters and kernel bound")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--p", type=int, default=2)

    p = sub.add_parser("form", parents=[flags], help="invariant two-forms")
    p.add_argument("--d", type=int, default=None, help="single degree instead of 2..7")

    sub.add_parser("lattice", parents=[flags], help="Neron-Severi computations and surface invariants")

    p = sub.add_parser("monodromy", parents=[flags], help="torsion orbits of the monodromy")
    p.add_argument("--mod", type=int, default=3, dest="modulus")
    p.add_argument("--generators", metavar="FILE")

    sub.add_parser("elliptic", parents=[flags], help="reduced moduli of the elliptic quotients")
    return parser


def load_generators(path: str) -> list:
    """Read a JSON list of 4x4 integer matrices (nested rows or 16 flat entries)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not data:
        raise ValueError("generator file must hold a non-empty JSON list")
    out = []
    for k, m in enumerate(data):
        if isinstance(m, list) and len(m) == 16 and all(isinstance(x, int) for x in m):
            m = [m[4 * r:4 * r + 4] for r in range(4)]
        ok = (isinstance(m, list) and len(m) == 4
              and all(isinstance(r, list) and len(r) == 4 and all(isinstance(x, int) and not isinstance(x, bool)
                                                               for x in r) for r in m))
        if not ok:
            raise ValueError(f"generator {k} is not a 4x4 integer matrix")
        out.append(tuple(tuple(r) for r in m))
    return out


def _options(args) -> RunOptions:
    cmd = args.command
    opt = RunOptions(only=[cmd] if cmd != "all" else args.only)
    if cmd == "rep":
        opt.d, opt.q, opt.p = args.d, args.q, args.p
    if cmd == "form":
        opt.form_d = args.d
    if cmd == "monodromy":
        opt.modulus = args.modulus
    if getattr(args, "generators", None):
        opt.generators = load_generators(args.generators)
    if cmd == "all":
        opt.jobs = args.jobs
    return opt


def _headline(args, opt: RunOptions) -> str | None:
    if args.command == "rep":
        bound = sd.kernel_lower_bound(opt.d, opt.q, opt.p)
        return f"kernel_lower_bound(d={opt.d}, q={opt.q}, p={opt.p}) = {bound}"
    if args.command == "monodromy":
        gens = opt.generators if opt.generators is not None else am.tau_generators(strict=False)
        size = len(am.orbit(am.TorsionVector(opt.modulus, (1, 0, 0, 0)), gens))
        return f"orbit of (1,0,0,0) mod {opt.modulus}: {size} elements"
    return None


def _print_text(report: VerificationReport, quiet: bool, timings: bool, out) -> None:
    for c in report.checks:
        if quiet and c.passed:
            continue
        line = f"[{'PASS' if c.passed else 'FAIL'}] {c.check_id}: {c.description}"
        if timings:
            line += f" ({c.elapsed_ms} ms)"
        print(line, file=out)
        if not c.passed:
            print(f"    expected: {c.expected}", file=out)
            print(f"    computed: {c.computed}", file=out)
    print(f"{report.passed} passed, {report.failed} failed", file=out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        opt = _options(args)
        if opt.modulus < 2:
            raise ValueError("--mod must be at least 2")
        headline = None if args.json else _headline(args, opt)
        report = run_all(opt)
    except (OSError, ValueError) as exc:
        print(f"lgcheck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    out = sys.stdout
    if args.json:
        json.dump(report.to_json(timings=args.timings), out, indent=2, sort_keys=False)
        out.write("\n")
    else:
        if headline:
            print(headline, file=out)
        _print_text(report, args.quiet, args.timings, out)
    return EXIT_OK if report.ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

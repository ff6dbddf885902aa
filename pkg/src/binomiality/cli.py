"""Command line entry point.

Exit status: 0 binomial (Yes), 1 not binomial (No / NotBinomialProven),
2 inconclusive, 3 usage or input errors, 4 refused by the Groebner guard.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certificates import certify_file
from .crn import load_network, steady_state_system
from .detector import NotHomogeneousError, detect_binomial_homogeneous
from .groebner import DEFAULT_GUARD, GuardExceeded, buchberger
from .heuristics import BINOMIAL, INCONCLUSIVE, NOT_BINOMIAL, RecipeOptions, run_recipe
from .parsing import ParseError, load_system
from .polynomial import ORDERS

EXIT_YES, EXIT_NO, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3, 4
VERDICT_EXIT = {BINOMIAL: EXIT_YES, "Yes": EXIT_YES, NOT_BINOMIAL: EXIT_NO, "No": EXIT_NO,
                INCONCLUSIVE: EXIT_INCONCLUSIVE}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, certificates: bool = False) -> None:
    p.add_argument("input", help="system file (.sys text or .json)")
    p.add_argument("--order", choices=ORDERS, help="monomial order (default: $BINOMIALITY_ORDER or grevlex)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    if certificates:
        p.add_argument("--emit-certificates", metavar="PATH", help="write certificates as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="binomiality", description="Binomiality checks for polynomial ideals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("detect", help="decide binomiality of homogeneous generators")
    _common(p, certificates=True)

    p = sub.add_parser("recipe", help="heuristic pipeline for arbitrary generators")
    _common(p, certificates=True)
    p.add_argument("--max-depth", type=int, default=8)
    p.add_argument("--branch", type=int, default=16)
    p.add_argument("--enable-gb-oracle", action="store_true")
    p.add_argument("--homogenize-retry", action=argparse.BooleanOptionalAction, default=True)

    p = sub.add_parser("crn", help="steady-state system of a reaction network")
    p.add_argument("input", help="network file (.crn)")
    p.add_argument("--order", choices=ORDERS)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output", metavar="PATH", help="write the system here instead of stdout")

    p = sub.add_parser("oracle-gb", help="reduced Groebner basis (small inputs only)")
    _common(p)
    p.add_argument("--i-know-this-is-slow", action="store_true", help="lift the instance size guard")

    p = sub.add_parser("certify", help="replay certificates from a JSON file")
    p.add_argument("input")
    return parser


def _emit(path, certs) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump({"certificates": [c.to_json() for c in certs]}, fh, indent=1)


def _cmd_detect(args) -> int:
    system = load_system(args.input, args.order)
    res = detect_binomial_homogeneous(system)
    _emit(args.emit_certificates, [res.certificate] if res.certificate else [])
    if args.format == "json":
        print(json.dumps(res.to_json(), indent=1))
    else:
        print(f"verdict: {res.verdict}")
        for t in res.trace:
            extra = f", absorbed {t.absorbed}" if t.absorbed else ""
            print(f"  degree {t.degree}: {t.generators} generators, rank {t.rank}{extra}")
        if res.verdict == "Yes":
            print("B = {" + ", ".join(b.to_str() for b in res.binomials) + "}")
        else:
            ring = system.ring
            row = "  ".join(f"[{ring.mono_str(m)}: {c}]" for m, c in res.witness.row)
            print(f"witness at degree {res.witness.degree}: {row}")
            print(f"witness polynomial: {res.witness.polynomial.to_str()}")
    return VERDICT_EXIT[res.verdict]


def _cmd_recipe(args) -> int:
    if args.max_depth < 1 or args.branch < 1:
        raise _UsageError("--max-depth and --branch must be at least 1")
    system = load_system(args.input, args.order)
    opts = RecipeOptions(max_depth=args.max_depth, branch=args.branch,
                         enable_gb_oracle=args.enable_gb_oracle, homogenize_retry=args.homogenize_retry)
    report = run_recipe(system, opts)
    _emit(args.emit_certificates, report.certificates)
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=1))
    else:
        print(f"verdict: {report.verdict}")
        for s in report.stages:
            print(f"  {s.stage}: {s.outcome}" + (f" ({s.detail})" if s.detail else ""))
        print("binomials:")
        for g in report.binomials:
            print(f"  {g.to_str()}")
        if report.non_binomials:
            print("non-binomials:")
            for g in report.non_binomials:
                print(f"  {g.to_str()}")
    return VERDICT_EXIT[report.verdict]


def _cmd_crn(args) -> int:
    net = load_network(args.input)
    system = steady_state_system(net, args.order)
    if args.format == "json":
        data = system.to_json()
        data["species"] = net.name_map()
        text = json.dumps(data, indent=1) + "\n"
    else:
        names = ", ".join(f"{s}={v}" for s, v in net.name_map().items())
        text = f"# species: {names}\n" + system.to_text()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_oracle(args) -> int:
    system = load_system(args.input, args.order)
    guard = None if args.i_know_this_is_slow else DEFAULT_GUARD
    gb = buchberger(system, guard=guard)
    binomial = gb.is_binomial()
    if args.format == "json":
        print(json.dumps({"order": gb.order, "binomial": binomial,
                          "basis": [g.to_str() for g in gb.elements]}, indent=1))
    else:
        print(f"reduced Groebner basis ({gb.order}):")
        for g in gb.elements:
            print(f"  {g.to_str()}")
        print(f"binomial: {'yes' if binomial else 'no'}")
    return EXIT_YES if binomial else EXIT_NO


def _cmd_certify(args) -> int:
    bad = certify_file(args.input)
    for msg in bad:
        print(msg)
    print("certificates valid" if not bad else f"{len(bad)} identities failed")
    return EXIT_YES if not bad else EXIT_NO


class _UsageError(Exception):
    pass


COMMANDS = {"detect": _cmd_detect, "recipe": _cmd_recipe, "crn": _cmd_crn,
            "oracle-gb": _cmd_oracle, "certify": _cmd_certify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"{args.input}: {exc}", file=sys.stderr)
    except NotHomogeneousError as exc:
        print(f"{args.input}: {exc}; use 'recipe' for inhomogeneous input", file=sys.stderr)
    except GuardExceeded as exc:
        print(f"refused: {exc} (pass --i-know-this-is-slow to override)", file=sys.stderr)
        return EXIT_GUARD
    except (_UsageError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: ``enumerate``, ``eval``, ``check``, ``verify`` and ``graph``.
The ground set and the number of agents are always explicit flags.  JSON
reports follow ``schema/report.schema.json``; timing is left out unless
``--timing`` is given so repeated runs are byte-identical.

Exit codes: 0 success, 1 a check or suite failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .agenda import check_AMP_P, check_AMP_S, decomposable_pafe, union_agenda_rule
from .axioms import CHECKERS, DEFAULT_SEED, checker, make_domain
from .errors import MedianSWFError
from .lattice import powerset_lattice, ra_semilattice, sum_semilattice
from .meta import SPACES
from .relations import GroundSet, enumerate_preorders, read_profile, render_preorder
from .report import FAILS, SCHEMA_VERSION, CheckReport
from .rules import parse_rule, render_bits
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

AMP_AXIOMS = ("amp_p", "amp_s")
SP_META = ("induced", "metric", "both")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors already; keep the message on stderr only
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _agents(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 3:
        raise argparse.ArgumentTypeError("at least 3 agents are required")
    return n


def _positive(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return k


def _ground(text: str) -> GroundSet:
    try:
        return GroundSet.parse(text)
    except MedianSWFError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="medianswf", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp: argparse.ArgumentParser, agents: bool = True) -> None:
        sp.add_argument("--ground", type=_ground, required=True, help="comma-separated labels, e.g. a,b,c")
        if agents:
            sp.add_argument("--agents", "-n", type=_agents, required=True, help="number of agents (>= 3)")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("enumerate", help="list every total preorder on the ground set")
    common(sp, agents=False)

    sp = sub.add_parser("eval", help="evaluate a rule on a profile file")
    common(sp)
    sp.add_argument("--rule", required=True, help="rule spec, e.g. comajority or quota:q=2")
    sp.add_argument("--profile", required=True, help="file with one preorder per line")

    sp = sub.add_parser("check", help="check one axiom for one rule")
    common(sp)
    sp.add_argument("--rule", required=True)
    axioms = sorted(CHECKERS, key=str.lower)
    sp.add_argument("--axiom", required=True, help=f"one of {', '.join(axioms + list(AMP_AXIOMS))}")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="quantify over every profile")
    mode.add_argument("--samples", type=_positive, help="quantify over K seeded random profiles")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--scheme", help="amp_s: rule spec per agenda, or 'restrict' for the ambient reading")
    sp.add_argument("--space", choices=SPACES, default="ra", help="SP: outcome space for meta-preferences")
    sp.add_argument("--meta", choices=SP_META, default="induced", help="SP: meta-preference domain")
    sp.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")

    sp = sub.add_parser("verify", help="run a bundled verification suite")
    sp.add_argument("--suite", choices=("all", *SUITES), default="all")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("graph", help="Hasse covering graph in DOT format")
    sp.add_argument("--ground", type=_ground, required=True)
    sp.add_argument("--space", choices=("ra", "sum", "powerset"), default="ra")
    return p


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _cmd_enumerate(args: argparse.Namespace) -> tuple[str, int]:
    rendered = [render_preorder(r) for r in enumerate_preorders(args.ground)]
    if args.format == "text":
        return "".join(f"{s}\n" for s in rendered), EXIT_OK
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "enumeration",
        "ground": list(args.ground.labels),
        "count": len(rendered),
        "preorders": rendered,
    }
    return _dump(out), EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> tuple[str, int]:
    rule = parse_rule(args.rule, args.ground, args.agents)
    profile = read_profile(args.profile, args.ground)
    if profile.n != args.agents:
        raise _InputError(f"profile has {profile.n} preferences but --agents is {args.agents}")
    out = render_bits(rule, rule.relation(profile))
    if args.format == "text":
        return out + "\n", EXIT_OK
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "evaluation",
        "rule": rule.name,
        "ground": list(args.ground.labels),
        "profile": profile.render(),
        "outcome": out,
    }
    return _dump(doc), EXIT_OK


def _check_report(args: argparse.Namespace) -> CheckReport:
    rule = parse_rule(args.rule, args.ground, args.agents)
    seed = DEFAULT_SEED if args.seed is None else args.seed
    if args.samples is not None:
        domain = make_domain(args.ground, args.agents, exhaustive=False, samples=args.samples, seed=seed)
    elif args.exhaustive:
        domain = make_domain(args.ground, args.agents, exhaustive=True)
    else:
        domain = make_domain(args.ground, args.agents, seed=seed)
    axiom = args.axiom.lower()
    if axiom == "amp_p":
        return check_AMP_P(decomposable_pafe(union_agenda_rule(args.ground, args.agents), rule), domain, seed=seed)
    if axiom == "amp_s":
        return check_AMP_S(rule, scheme=args.scheme, domain=domain)
    fn = checker(args.axiom)
    if fn is CHECKERS["SP"]:
        return fn(rule, domain, space=args.space, meta=args.meta)
    return fn(rule, domain)


def _render_check_text(report: CheckReport) -> str:
    scope = report.scope
    lines = [f"{report.axiom} [{report.rule}] {report.verdict} ({scope.mode}, m={scope.m}, n={scope.n}, profiles={scope.domain_size})"]
    if report.witness:
        for key, val in report.witness.items():
            lines.append(f"  {key}: {json.dumps(val)}")
    return "\n".join(lines) + "\n"


def _cmd_check(args: argparse.Namespace) -> tuple[str, int]:
    report = _check_report(args)
    code = EXIT_FAIL if report.verdict == FAILS else EXIT_OK
    if args.format == "text":
        return _render_check_text(report), code
    return _dump(report.to_dict(timing=args.timing)), code


def _cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    seed = DEFAULT_SEED if args.seed is None else args.seed
    report = run_suite(args.suite, seed)
    code = EXIT_OK if report.ok else EXIT_FAIL
    if args.format == "json":
        return _dump(report.to_dict()), code
    lines = [f"suite {report.suite} (seed {report.seed})"]
    for c in report.claims:
        lines.append(f"  {c.verdict:<22} {c.kind:<14} {c.id}")
    failed = report.failed
    lines.append(f"{len(report.claims)} claims, {len(failed)} failed" + (f": {', '.join(c.id for c in failed)}" if failed else ""))
    return "\n".join(lines) + "\n", code


def _cmd_graph(args: argparse.Namespace) -> tuple[str, int]:
    build = {"ra": ra_semilattice, "sum": sum_semilattice, "powerset": powerset_lattice}[args.space]
    return build(args.ground).to_dot(), EXIT_OK


class _InputError(MedianSWFError):
    pass


COMMANDS = {
    "enumerate": _cmd_enumerate,
    "eval": _cmd_eval,
    "check": _cmd_check,
    "verify": _cmd_verify,
    "graph": _cmd_graph,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = COMMANDS[args.command](args)
    except (MedianSWFError, ValueError, OSError) as exc:
        print(f"medianswf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

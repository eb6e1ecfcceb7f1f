"""Command-line front end.

One flat target grammar covers both concrete groups (enumerable, for the
exact subcommands) and symbolic families (for formulas, classification,
chains and bounds): `alt:7`, `sym:4`, `cyc:360`, `dih:16`, `psl2:13`,
`psl:3,5,-`, `suzuki:8`, `ree:27`, `lie:E8,7`, `sporadic:He`.

Exit codes: 0 success, 1 usage, 2 domain error (the requested object is
outside the mathematics), 3 cap or budget exhaustion (the answer exists
but was not computed under the current limits).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import chains, formulas
from .errors import CapExceeded, DomainError, GroupDepthError, IncompleteFactorization
from .families import (
    FamilyDescriptor,
    KIND_ALTERNATING,
    KIND_CYCLIC,
    KIND_DIHEDRAL,
    KIND_PSL,
    KIND_SYMMETRIC,
    alternating,
    alternating_descriptor,
    cyclic,
    cyclic_descriptor,
    dihedral,
    dihedral_descriptor,
    lie_descriptor,
    psl2,
    psl_descriptor,
    ree_descriptor,
    sporadic_descriptor,
    suzuki_descriptor,
    symmetric,
    symmetric_descriptor,
)
from .lattice import DEFAULT_MAX_GROUP_ORDER, DEFAULT_MAX_SUBGROUPS, enumerate_subgroups
from .numtheory import DEFAULT_FACTOR_BUDGET, ternary_goldbach

FORMATS = ("text", "json", "dot")


@dataclass
class CliConfig:
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER
    max_subgroups: int = DEFAULT_MAX_SUBGROUPS
    factor_budget: int = DEFAULT_FACTOR_BUDGET
    parallelism: int = 1
    output_format: str = "text"

    def __post_init__(self):
        if min(self.max_group_order, self.max_subgroups, self.factor_budget,
               self.parallelism) < 1:
            raise DomainError("limits must be positive")
        if self.output_format not in FORMATS:
            raise DomainError(f"unknown output format {self.output_format!r}")


def _env_default(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{name} must be an integer, got {raw!r}") from None


def config_from_args(args: argparse.Namespace) -> CliConfig:
    # Flags win over environment variables, which win over defaults.
    return CliConfig(
        max_group_order=args.max_order if args.max_order is not None
        else _env_default("GROUPDEPTH_MAX_ORDER", DEFAULT_MAX_GROUP_ORDER),
        max_subgroups=args.max_subgroups if args.max_subgroups is not None
        else _env_default("GROUPDEPTH_MAX_SUBGROUPS", DEFAULT_MAX_SUBGROUPS),
        factor_budget=args.factor_budget if args.factor_budget is not None
        else _env_default("GROUPDEPTH_FACTOR_BUDGET", DEFAULT_FACTOR_BUDGET),
        parallelism=args.jobs,
        output_format=args.format,
    )


# ---------------------------------------------------------------------------
# Target parsing.


class UsageFault(Exception):
    """Malformed command line; reported on stderr with exit 1."""


def parse_target(text: str) -> FamilyDescriptor:
    kind, sep, rest = text.partition(":")
    if not sep or not rest:
        raise UsageFault(f"target must look like kind:args, got {text!r}")
    try:
        if kind == "alt":
            return alternating_descriptor(int(rest))
        if kind == "sym":
            return symmetric_descriptor(int(rest))
        if kind == "cyc":
            return cyclic_descriptor(int(rest))
        if kind == "dih":
            return dihedral_descriptor(int(rest))
        if kind == "psl2":
            return psl_descriptor(2, int(rest))
        if kind == "psl":
            n, q, eps = rest.split(",")
            if eps not in ("+", "-", "+1", "-1"):
                raise UsageFault(f"epsilon must be + or -, got {eps!r}")
            return psl_descriptor(int(n), int(q), 1 if eps.startswith("+") else -1)
        if kind == "suzuki":
            return suzuki_descriptor(int(rest))
        if kind == "ree":
            return ree_descriptor(int(rest))
        if kind == "lie":
            name, q = rest.split(",")
            return lie_descriptor(name, int(q))
        if kind == "sporadic":
            return sporadic_descriptor(rest)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageFault(f"bad target {text!r}: {exc}") from None
    raise UsageFault(f"unknown target kind {kind!r}")


_CONCRETE = {
    KIND_ALTERNATING: lambda d, cap: alternating(d.n, max_order=cap),
    KIND_SYMMETRIC: lambda d, cap: symmetric(d.n, max_order=cap),
    KIND_CYCLIC: lambda d, cap: cyclic(d.n, max_order=cap),
    KIND_DIHEDRAL: lambda d, cap: dihedral(d.n, max_order=cap),
}


def concrete_group(d: FamilyDescriptor, config: CliConfig):
    d = formulas.canonical_descriptor(d)
    builder = _CONCRETE.get(d.kind)
    if builder is not None:
        return builder(d, config.max_group_order)
    if d.kind == KIND_PSL and d.n == 2 and d.epsilon == 1:
        return psl2(d.q, max_order=config.max_group_order)
    raise DomainError(f"no concrete realization for {d.describe()}")


# ---------------------------------------------------------------------------
# Output plumbing.


def _emit(config: CliConfig, lines: list[str], payload: dict) -> None:
    if config.output_format == "json":
        print(json.dumps({"schema": 1, **payload}, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _depth_phrase(target: str, res) -> str:
    if res.is_exact:
        return f"lambda({target}) = {res.value}  [{res.method}: {res.rule}]"
    if res.is_interval:
        lo, hi = res.value
        return f"lambda({target}) in [{lo}, {hi}]  [{res.method}: {res.rule}]"
    return f"lambda({target}) unknown  [{res.rule}]"


# ---------------------------------------------------------------------------
# Subcommand handlers. Each returns an exit code.


def _cmd_depth(args, config: CliConfig) -> int:
    target = parse_target(args.target)
    if args.mode == "formula":
        res = formulas.depth_formula(target)
        _emit(config, [_depth_phrase(args.target, res)],
              {"target": target.to_dict(), "depth": res.to_dict()})
        return 0
    lat = enumerate_subgroups(
        concrete_group(target, config),
        max_group_order=config.max_group_order,
        max_subgroups=config.max_subgroups,
    )
    short = [lat.nodes[i].order for i in lat.depth_witness().nodes]
    long_ = [lat.nodes[i].order for i in lat.length_witness().nodes]
    _emit(config, [
        f"{args.target}: order {lat.group.order}, {lat.node_count} subgroups",
        f"lambda = {lat.depth()}  l = {lat.length()}  "
        f"cd = {lat.chain_difference()}  cr = {_frac(lat.chain_ratio())}",
        "shortest: " + " > ".join(str(o) for o in short),
        "longest:  " + " > ".join(str(o) for o in long_),
    ], {
        "target": target.to_dict(),
        "order": lat.group.order,
        "subgroups": lat.node_count,
        "depth": lat.depth(),
        "length": lat.length(),
        "chain_difference": lat.chain_difference(),
        "chain_ratio": _frac(lat.chain_ratio()),
        "shortest_chain_orders": short,
        "longest_chain_orders": long_,
    })
    return 0


def _cmd_classify(args, config: CliConfig) -> int:
    target = parse_target(args.target)
    verdict = formulas.is_depth3(target)
    _emit(config, [f"depth3({args.target}) = {'yes' if verdict else 'no'}"],
          {"target": target.to_dict(), "depth3": verdict})
    return 0


def _cmd_lattice(args, config: CliConfig) -> int:
    target = parse_target(args.target)
    lat = enumerate_subgroups(
        concrete_group(target, config),
        max_group_order=config.max_group_order,
        max_subgroups=config.max_subgroups,
    )
    if config.output_format == "dot":
        print(lat.to_dot())
        return 0
    if args.dump:
        print(json.dumps(lat.to_dict(include_nodes=True), indent=2))
        return 0
    lengths = lat.all_maximal_chain_lengths()
    _emit(config, [
        f"{args.target}: order {lat.group.order}, {lat.node_count} subgroups",
        f"lambda = {lat.depth()}  l = {lat.length()}  "
        f"cd = {lat.chain_difference()}  cr = {_frac(lat.chain_ratio())}",
        "maximal chain lengths: " + ", ".join(
            f"{n} (x{c})" for n, c in sorted(lengths.items())),
    ], lat.to_dict(include_nodes=False))
    return 0


def _cmd_chain(args, config: CliConfig) -> int:
    builder = {"an": chains.an_chain, "ap1": chains.ap1_chain, "l2p": chains.l2p_chain}
    chain = builder[args.family](args.value)
    _emit(config, [chain.render()], {"chain": chain.to_dict()})
    return 0


def _cmd_goldbach(args, config: CliConfig) -> int:
    t = ternary_goldbach(args.m)
    _emit(config, [f"{args.m} = {t.p1} + {t.p2} + {t.p3}"],
          {"m": args.m, "primes": [t.p1, t.p2, t.p3]})
    return 0


def _cmd_search(args, config: CliConfig) -> int:
    w = chains.thm16_witness(args.n, limit=args.limit)
    _emit(config, [
        f"p = {w.prime}",
        _depth_phrase(f"psl2:{w.prime}", w.depth),
        f"Omega(p-1) = {w.omega_p_minus_1}, so some unrefinable chain is longer than "
        f"{w.omega_p_minus_1} >= {args.n}",
    ], {"witness": w.to_dict()})
    return 0


def _cmd_bounds(args, config: CliConfig) -> int:
    target = parse_target(args.target)
    if args.which == "thm14":
        rep = formulas.lie_depth_bound(target)
        lines = [f"lambda({args.target}) <= {rep.bound_value}  [{rep.applicable_case}]"]
        if rep.smooth_bound is not None:
            lines.append(f"smooth envelope: {rep.smooth_bound:.4f}")
        _emit(config, lines, {"target": target.to_dict(), "bound": rep.to_dict()})
        return 0
    from .families import order_of

    order = order_of(target)
    if not order.complete:
        raise IncompleteFactorization(order.cofactor())
    length_cap = order.omega()
    bound = formulas.depth_bound_from_length(length_cap)
    _emit(config, [
        f"l({args.target}) <= Omega(order) = {length_cap}",
        f"lambda({args.target}) <= {round(bound, 4)}",
    ], {
        "target": target.to_dict(),
        "length_cap": length_cap,
        "depth_bound": round(bound, 4),
    })
    return 0


def _cmd_witness(args, config: CliConfig) -> int:
    w = chains.prop18_witness(args.i, budget=config.factor_budget)
    cmp_word = "exceeds" if w.exceeds else "DOES NOT exceed"
    _emit(config, [
        f"i = {w.i}: field size 3^{w.field_exponent}",
        _depth_phrase(f"psl2:3^{w.field_exponent}", w.depth),
        f"l <= Omega(order) = {w.length_cap}",
        f"depth {w.depth.value} {cmp_word} log3(length) + 1 = {w.log_threshold:.4f}",
    ], {"witness": w.to_dict()})
    return 0 if w.exceeds else 2


def _cmd_table(args, config: CliConfig) -> int:
    table = formulas.sporadic_depth_table()
    width = max(len(k) for k in table)
    _emit(config, [f"{name:<{width}}  {depth}" for name, depth in table.items()],
          {"depths": dict(table)})
    return 0


def _cmd_repro(args, config: CliConfig) -> int:
    from .acceptance import run_all

    results = run_all(config)
    for r in results:
        print(r.line())
    failed = [r.ident for r in results if not r.passed]
    if failed:
        print(f"FAILED: {', '.join(failed)}", file=sys.stderr)
        return 2
    return 0


def _cmd_report(args, config: CliConfig) -> int:
    from .report import write_report

    files = write_report(args.out, config)
    _emit(config, [f"wrote {p}" for p in files],
          {"files": [str(p) for p in files]})
    return 0


# ---------------------------------------------------------------------------
# Parser assembly.


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> _Parser:
    parser = _Parser(prog="groupdepth", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--format", choices=FORMATS, default="text")
    parser.add_argument("--max-order", type=int, default=None,
                        help="largest group order the enumerator will accept")
    parser.add_argument("--max-subgroups", type=int, default=None,
                        help="largest subgroup count before giving up")
    parser.add_argument("--factor-budget", type=int, default=None,
                        help="Pollard rho step budget for factorizations")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker count for the reproduction suite")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("depth", help="depth of one group, exact or by formula")
    p.add_argument("mode", choices=("exact", "formula"))
    p.add_argument("target")
    p.set_defaults(handler=_cmd_depth)

    p = sub.add_parser("classify", help="membership in the depth-three classification")
    p.add_argument("what", choices=("depth3",))
    p.add_argument("target")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("lattice", help="enumerate the full subgroup lattice")
    p.add_argument("target")
    p.add_argument("--dump", action="store_true",
                   help="write the lattice document as JSON")
    p.set_defaults(handler=_cmd_lattice)

    p = sub.add_parser("chain", help="constructive unrefinable chains")
    p.add_argument("family", choices=("an", "ap1", "l2p"))
    p.add_argument("value", type=int)
    p.set_defaults(handler=_cmd_chain)

    p = sub.add_parser("goldbach", help="write an odd number as a sum of three primes")
    p.add_argument("m", type=int)
    p.set_defaults(handler=_cmd_goldbach)

    p = sub.add_parser("search", help="searches over the prime families")
    p.add_argument("what", choices=("depth3-long",))
    p.add_argument("n", type=int)
    p.add_argument("--limit", type=int, default=10_000_000)
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("bounds", help="depth bounds for Lie-type families")
    p.add_argument("which", choices=("thm14", "thm38"))
    p.add_argument("target")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("witness", help="depth versus length witnesses")
    p.add_argument("what", choices=("prop18",))
    p.add_argument("i", type=int)
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("table", help="stored depth tables")
    p.add_argument("which", choices=("sporadic",))
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("repro", help="run the acceptance suite")
    p.add_argument("scope", choices=("all",))
    p.set_defaults(handler=_cmd_repro)

    p = sub.add_parser("report", help="corpus table and figures")
    p.add_argument("--out", default="groupdepth-report")
    p.set_defaults(handler=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code or 0
    try:
        config = config_from_args(args)
        return args.handler(config=config, args=args)
    except UsageFault as exc:
        print(f"groupdepth: error: {exc}", file=sys.stderr)
        return 1
    except (CapExceeded, IncompleteFactorization) as exc:
        print(f"groupdepth: limit: {exc}", file=sys.stderr)
        return 3
    except (DomainError, GroupDepthError) as exc:
        print(f"groupdepth: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

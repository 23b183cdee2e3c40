"""Command-line interface.

Exit codes: 0 when everything checked is verified, 1 when a refutation is
found, 2 on an operational error (unknown group, unreadable file, ...).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections import Counter

from . import __version__
from .catalog import CatalogEntry, builtin_catalog, resolve_group
from .errors import OrderBijError
from .groups import ELEMENT_CAP, distinguished_subgroups, normal_subgroups, structural_predicates
from .io import ReportStore, load_catalog_file

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


def _globals() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    g.add_argument("--catalog", default=s, metavar="FILE", help="JSON catalog of extra or replacement groups")
    g.add_argument("--report", default=s, metavar="PATH", help="append JSONL verification reports here")
    g.add_argument("--jobs", type=int, default=s, metavar="N", help="worker processes for sweep")
    g.add_argument("--seed", type=int, default=s, help="shuffle ties among equal-order elements")
    g.add_argument("--cap", type=int, default=s, metavar="ELEMENTS", help=f"element cap (default {ELEMENT_CAP})")
    g.add_argument("--json", action="store_true", default=s, help="machine-readable output")
    g.add_argument("--wall-clock", action="store_true", default=s,
                   help="record real timestamps and runtimes in reports (not reproducible)")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _globals()
    p = argparse.ArgumentParser(prog="orderbij", parents=[common],
                                description="Order-divisibility bijections from finite groups to cyclic groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def cmd(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, description=help_)

    cmd("verify-bijection", "find f: G -> C_|G| with o(x) | o(f(x))").add_argument("group")
    cmd("verify-min", "check every coset of every normal subgroup").add_argument("group")
    cmd("classify", "membership in Bij, Min, AM and semisimplicity").add_argument("group")
    ps = cmd("psi", "elementary symmetric (or power-sum) aggregates of order weights")
    ps.add_argument("group")
    ps.add_argument("--weight", default="identity", help="identity, reciprocal or a CSV table order,num,den")
    ps.add_argument("--monotonicity", default="none", choices=["increasing", "decreasing", "none"],
                    help="declared monotonicity of a CSV weight table")
    ps.add_argument("--k", type=int, default=1, help="compute k = 1..K")
    ps.add_argument("--power", action="store_true", help="print power sums instead")
    nc = cmd("newton-check", "compare power sums with the Newton determinant")
    nc.add_argument("group")
    nc.add_argument("--k", type=int, default=6)
    sw = cmd("sweep", "batch verification over the catalog")
    sw.add_argument("--max-order", type=int, required=True)
    sw.add_argument("--property", default="bij", help="comma-separated list of bij,min,am,psi,newton,dis,topology")
    ch = cmd("chain", "build a chain of d-subgroups")
    ch.add_argument("group")
    ch.add_argument("--bases", default=None, help="comma-separated bases (default: |G|)")
    cmd("topology", "the topology induced through a matcher bijection").add_argument("group")
    cmd("show", "structural summary of a group").add_argument("group")
    return p


class Context:
    def __init__(self, args):
        self.cap = getattr(args, "cap", ELEMENT_CAP)
        self.seed = getattr(args, "seed", None)
        self.jobs = getattr(args, "jobs", 1)
        self.json = getattr(args, "json", False)
        self.wall_clock = getattr(args, "wall_clock", False)
        path = getattr(args, "report", None)
        self.store = ReportStore(path) if path else None
        cat = getattr(args, "catalog", None)
        self.catalog_entries: list[CatalogEntry] | None = load_catalog_file(cat) if cat else None
        self.catalog = {e.name: e for e in self.catalog_entries} if self.catalog_entries else None

    def group(self, name: str):
        return resolve_group(name, cap=self.cap, catalog=self.catalog)

    def record(self, G, prop: str):
        from .lab import run_property

        rep = run_property(G, prop, seed=self.seed, wall_clock=self.wall_clock)
        if self.store:
            self.store.append([rep])
        return rep


def _out(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, indent=2))


def _verify_bijection(ctx: Context, args) -> int:
    from .lab import check_bij

    G = ctx.group(args.group)
    f = check_bij(G, seed=ctx.seed)
    if ctx.store:
        ctx.record(G, "bij")
    if ctx.json:
        _out({"group": G.name, "order": G.order, "ok": f.ok, **f.as_dict()})
        return EXIT_OK if f.ok else EXIT_REFUTED
    if not f.ok:
        print(f"{G.name}: no bijection onto C{G.order}")
        print(f"  orders {list(f.blocking_orders)} demand {f.demand} but only {f.supply} elements qualify")
        return EXIT_REFUTED
    from .lab import _label

    print(f"{G.name} -> C{G.order}: bijection found")
    for a, b in f.pairs:
        print(f"  {_label(G, a)} (order {G.orders[a]}) -> {b} (order {G.order // math.gcd(G.order, b)})")
    return EXIT_OK


def _verify_min(ctx: Context, args) -> int:
    from .lab import check_min

    G = ctx.group(args.group)
    r = check_min(G)
    if ctx.store:
        ctx.record(G, "min")
    if ctx.json:
        _out({"group": G.name, "order": G.order, "ok": r.ok, **r.summary(), "counterexample": r.counterexample})
    else:
        s = r.summary()
        print(f"{G.name}: {'in' if r.ok else 'NOT in'} Min")
        print(f"  {s['normal_subgroups']} normal subgroups, {s['triples']} coset matchings succeeded "
              f"({s['distinct_matchings']} distinct order profiles)")
        if r.counterexample:
            cx = r.counterexample
            print(f"  counterexample: |N| = {cx['normal_order']}, y = {cx['representative']}, u = {cx['u']}, "
                  f"violation {cx['violation']['blocking_orders']}")
        if s["weak_reading_differs"]:
            print("  note: the existential reading (some u per coset) would accept this group")
    return EXIT_OK if r.ok else EXIT_REFUTED


def _classify(ctx: Context, args) -> int:
    from .lab import classify

    G = ctx.group(args.group)
    c = classify(G, seed=ctx.seed)
    data = c.as_dict(G)
    refuted = not c.in_bij or (any(c.in_am.values()) and not c.in_min)
    if ctx.json:
        _out(data)
    else:
        print(f"{G.name} (order {G.order})")
        print(f"  Bij: {c.in_bij}")
        print(f"  Min: {c.in_min}")
        for reading, w in data["in_am"].items():
            extra = f"  y = {w['y']} (order {w['y_order']}), |N| = {w['normal_order']}, {w['case']}" if w else ""
            print(f"  AM ({reading}): {w is not None}{extra}")
        print(f"  semisimple: {c.is_semisimple}")
    return EXIT_REFUTED if refuted else EXIT_OK


def _weight(args):
    from .symmetric import WeightFunction

    if args.weight == "identity":
        return WeightFunction.identity()
    if args.weight == "reciprocal":
        return WeightFunction.reciprocal()
    return WeightFunction.from_csv(args.weight, args.monotonicity)


def _psi(ctx: Context, args) -> int:
    from .symmetric import fraction_str, psi_elementary, psi_power

    G = ctx.group(args.group)
    f = _weight(args)
    values = (psi_power if args.power else psi_elementary)(G, f, args.k)
    if ctx.json:
        _out({"group": G.name, "weight": f.name, "kind": "power" if args.power else "elementary",
              "values": [fraction_str(v) for v in values]})
    else:
        for v in values:
            print(fraction_str(v))
    return EXIT_OK


def _newton(ctx: Context, args) -> int:
    from .symmetric import WeightFunction, fraction_str, newton_determinant_check

    G = ctx.group(args.group)
    res = newton_determinant_check(G, WeightFunction.identity(), args.k)
    if ctx.store:
        ctx.record(G, "newton")
    if ctx.json:
        _out([{"k": r.k, "power_sum": fraction_str(r.power_sum), "determinant": fraction_str(r.determinant),
               "ok": r.ok} for r in res])
    else:
        for r in res:
            print(f"k={r.k}  p_k={fraction_str(r.power_sum)}  det={fraction_str(r.determinant)}  "
                  f"{'ok' if r.ok else 'MISMATCH'}")
    return EXIT_OK if all(r.ok for r in res) else EXIT_REFUTED


def _sweep(ctx: Context, args) -> int:
    from .lab import PROPERTIES, batch_verify

    props = [p.strip() for p in args.property.split(",") if p.strip()]
    if props == ["all"]:
        props = list(PROPERTIES)
    unknown = [p for p in props if p not in PROPERTIES]
    if unknown:
        raise OrderBijError(f"unknown property {', '.join(unknown)}; choose from {', '.join(PROPERTIES)}")
    entries = ctx.catalog_entries if ctx.catalog_entries is not None else builtin_catalog()
    entries = [e for e in entries if e.order is None or e.order <= args.max_order]
    summary = batch_verify(entries, props, store=ctx.store, jobs=ctx.jobs, cap=ctx.cap, seed=ctx.seed,
                           wall_clock=ctx.wall_clock)
    if ctx.json:
        _out({"verified": summary.verified, "refuted": summary.refuted, "skipped": summary.skipped,
              "refutations": [json.loads(r.to_json()) for r in summary.reports if r.outcome == "refuted"]})
    else:
        for r in summary.reports:
            if r.outcome != "verified":
                print(f"{r.outcome}: {r.group} {r.property} {json.dumps(r.witness)[:200]}")
        print(f"{len(entries)} groups, {len(props)} properties: {summary.verified} verified, "
              f"{summary.refuted} refuted, {summary.skipped} skipped-cap")
        print(f"wall time {summary.wall_time:.2f} s", file=sys.stderr)
    return EXIT_REFUTED if summary.refuted else EXIT_OK


def _chain(ctx: Context, args) -> int:
    from .solutions import build_chain, verify_chain

    G = ctx.group(args.group)
    bases = [int(b) for b in args.bases.split(",")] if args.bases else [G.order]
    chain = build_chain(G, bases)
    problems = verify_chain(G, chain)
    from .lab import _label

    if ctx.json:
        _out({"group": G.name, "bases": bases, "method": chain.method,
              "chain": {str(d): sorted(chain[d]) for d in chain.divisor_set.closure}, "problems": problems})
    else:
        print(f"{G.name}: chain for bases {bases} ({chain.method})")
        for d in chain.divisor_set.closure:
            print(f"  A({d}) = {{{', '.join(_label(G, x) for x in sorted(chain[d]))}}}")
        for p in problems:
            print(f"  problem: {p}")
    return EXIT_REFUTED if problems else EXIT_OK


def _topology(ctx: Context, args) -> int:
    from .lab import _label, check_bij
    from .topology import cyclic_base, homeomorphism_check, induce_topology, integer_projection_continuity, separation_report

    G = ctx.group(args.group)
    f = check_bij(G, seed=ctx.seed)
    if not f.ok:
        print(f"{G.name}: no divisibility bijection, no induced topology")
        return EXIT_REFUTED
    T = induce_topology(f, name=f"tau_c({G.name})")
    sep = separation_report(T)
    homeo = homeomorphism_check(f, T, cyclic_base(G.order))
    proj = integer_projection_continuity(G.order, f)
    axioms = T.axiom_failures() if T.materialized else []
    if ctx.store:
        ctx.record(G, "topology")
    base = [sorted(T.members(b)) for b in T.base]
    if ctx.json:
        _out({"group": G.name, "base": base,
              "opens": [sorted(o) for o in T.open_sets()] if T.materialized else None,
              "axiom_failures": axioms, "separation": sep.as_dict(), "homeomorphism": homeo,
              "projection": proj.as_dict()})
    else:
        print(f"{T.name}: {len(T.base)} base sets", end="")
        print(f", {len(T.opens)} open sets" if T.materialized else " (open family not materialized)")
        for b, pre in zip(base, proj.preimages):
            print(f"  {{{', '.join(_label(G, x) for x in b)}}}  <- {pre['preimage']}")
        print(f"  topology axioms: {'ok' if not axioms else axioms}")
        print(f"  hausdorff: {sep.hausdorff}  regular: {sep.regular}  homeomorphic to tau(C{G.order}): {homeo}")
        print(f"  integer projection continuous: {proj.certified}")
    ok = not axioms and homeo and proj.certified
    return EXIT_OK if ok else EXIT_REFUTED


def _show(ctx: Context, args) -> int:
    G = ctx.group(args.group)
    preds = structural_predicates(G)
    dist = distinguished_subgroups(G)
    normals = normal_subgroups(G)
    info = {
        "group": G.name,
        "order": G.order,
        "exponent": G.exponent,
        "source": G.source,
        "order_counts": {str(k): v for k, v in sorted(Counter(G.orders).items())},
        "normal_subgroup_orders": [N.order for N in normals],
        "center": dist.center.order,
        "fitting": dist.fitting.order,
        "socle": dist.socle.order,
        "abelian": preds.is_abelian,
        "solvable": preds.is_solvable,
        "semisimple": preds.is_semisimple,
        "simple": preds.is_simple,
    }
    if ctx.json:
        _out(info)
    else:
        for k, v in info.items():
            print(f"{k}: {v}")
    return EXIT_OK


COMMANDS = {
    "verify-bijection": _verify_bijection,
    "verify-min": _verify_min,
    "classify": _classify,
    "psi": _psi,
    "newton-check": _newton,
    "sweep": _sweep,
    "chain": _chain,
    "topology": _topology,
    "show": _show,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        ctx = Context(args)
        return COMMANDS[args.command](ctx, args)
    except OrderBijError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

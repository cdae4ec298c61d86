"""Command-line interface: ``rccg {info,mas,rc,classify,construct,export,suite}``.

Exit status: 0 success, 1 falsification or mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .classifier import classify_rc, cross_check
from .commuting import (
    commuting_graph,
    isolated_involutions,
    mas_by_centralizer_oracle,
    maximal_abelian_subgroups,
)
from .constructions import (
    THEOREM_TAGS,
    color_nontrivial_center,
    color_pstar,
    color_trivial_center_small_t,
    color_trivial_center_t,
    color_tuple_two,
)
from .errors import ConstructionPreconditionError, Falsification, RccgError
from .families import DEFAULT_SUITE, parse_group_spec, parse_range
from .graphs import export_dot, export_json
from .groups import center, involutions, is_abelian
from .rainbow import SearchConfig, rc_exact

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("rccg")


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print(text)


def _config(args) -> SearchConfig:
    return SearchConfig.from_env(
        max_search_edges=args.max_search_edges, max_nodes=args.max_nodes, threads=args.threads
    )


def _fmt(names) -> str:
    return "{" + ", ".join(names) + "}"


# ---------------------------------------------------------------- commands


def cmd_info(args) -> int:
    g = parse_group_spec(args.spec)
    cat = maximal_abelian_subgroups(g)
    z = center(g)
    payload = {
        "group": g.label,
        "order": g.order,
        "abelian": is_abelian(g),
        "center": z.names,
        "involutions": involutions(g).names,
        "isolated_involutions": isolated_involutions(g).names,
        "mas_count": cat.m,
        "mas_sizes": [len(s) for s in cat.subgroups],
        "mas": [s.names for s in cat.subgroups],
        "order2_count": cat.order2_count,
    }
    lines = [
        f"group        {g.label} (order {g.order}{', abelian' if payload['abelian'] else ''})",
        f"center       {_fmt(z.names)}  |Z| = {len(z)}",
        f"involutions  {_fmt(payload['involutions'])}",
        f"isolated     {_fmt(payload['isolated_involutions'])}",
        f"MAS          {cat.m} subgroups, order2_count = {cat.order2_count}",
    ]
    lines += [f"  [{i}] size {len(s):>3}  {s}" for i, s in enumerate(cat.subgroups)]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_mas(args) -> int:
    g = parse_group_spec(args.spec)
    cat = maximal_abelian_subgroups(g)
    doc = cat.to_dict()
    lines = [f"{g.label}: {cat.m} maximal abelian subgroups, order2_count = {cat.order2_count}"]
    lines += [f"  [{i}] {s}" for i, s in enumerate(cat.subgroups)]
    lines.append("pairwise intersections:")
    lines += [f"  {d['i']} & {d['j']} = {_fmt(d['intersection'])}" for d in doc["intersections"]]
    if args.output:
        Path(args.output).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_rc(args) -> int:
    g = parse_group_spec(args.spec)
    cfg = _config(args)
    mode = args.mode
    if mode == "both":
        try:
            rep = cross_check(g, cfg)
        except Falsification as exc:
            _emit(args, {"status": "MISMATCH", "detail": str(exc)}, f"MISMATCH {exc}")
            return EXIT_FALSIFIED
        text = f"{g.label}: classifier {rep.classifier}; solver {rep.solver}; {rep.status.upper()}"
        _emit(args, rep.to_dict(), text)
        return EXIT_OK
    if mode == "classify":
        verdict = classify_rc(g)
    else:
        verdict = rc_exact(commuting_graph(g), cfg)
    _emit(args, {"group": g.label, "mode": mode, **verdict.to_dict()}, f"{g.label}: {verdict}")
    return EXIT_OK


def cmd_classify(args) -> int:
    args.mode = "classify"
    return cmd_rc(args)


def _construct(g, choice: str):
    tag = {v: k for k, v in THEOREM_TAGS.items()}.get(choice, choice)
    if tag == "nontrivial-center":
        return color_nontrivial_center(g)
    if tag == "hub-parity":
        return color_trivial_center_small_t(g)
    if tag == "center-tuples":
        return color_tuple_two(g)
    if tag == "pendant-colors":
        return color_trivial_center_t(g)
    if tag == "pstar":
        cat = maximal_abelian_subgroups(g)
        best = None
        for h, cols in cat.common_intersections.items():
            if len(h) < 2:
                continue
            for col in cols:
                if best is None or len(col) > len(best[1]):
                    best = (h, col)
        if best is None:
            z = center(g)
            return color_pstar(g, z, cat.subgroups)
        return color_pstar(g, *best)
    if tag == "classify":
        return classify_rc(g)
    raise RccgError(f"unknown construction {choice!r}")


def cmd_construct(args) -> int:
    g = parse_group_spec(args.spec)
    rep = _construct(g, args.theorem)
    doc = rep.to_dict()
    if args.output:
        Path(args.output).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    text = (
        f"{g.label}: {rep.theorem} coloring of {rep.graph} with {rep.k} colors, "
        f"verified={rep.verified}\nnotes: {json.dumps(rep.ordering_notes)}"
    )
    _emit(args, doc, text)
    return EXIT_OK


def cmd_export(args) -> int:
    g = parse_group_spec(args.spec)
    graph = commuting_graph(g)
    coloring = None
    src = args.coloring
    if src and src != "none":
        if src.startswith("theorem:"):
            rep = _construct(g, src.split(":", 1)[1])
            graph, coloring = rep.graph, rep.coloring
        elif src in ("classify", "witness"):
            verdict = classify_rc(g) if src == "classify" else rc_exact(graph, _config(args))
            if verdict.witness is None:
                raise RccgError(f"no witness coloring available: {verdict}")
            coloring = verdict.witness
        else:
            raise RccgError(f"unknown coloring source {src!r}; use theorem:TAG, classify, witness or none")
    text = export_dot(graph, coloring, name=g.label) if args.format == "dot" else export_json(graph, coloring)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


CONSTRUCTIONS = (
    color_nontrivial_center,
    color_trivial_center_small_t,
    color_tuple_two,
    color_trivial_center_t,
)


def suite_group(spec: str, cfg: SearchConfig) -> list[dict]:
    """Run every check on one group; one row per check."""
    g = parse_group_spec(spec)
    rows = []

    def row(check, status, detail=""):
        rows.append({"group": spec, "label": g.label, "order": g.order, "check": check,
                     "status": status, "detail": detail})

    cat = maximal_abelian_subgroups(g)
    oracle = mas_by_centralizer_oracle(g)
    bad = cat.violations()
    if not cat.same_as(oracle):
        bad.append("clique and centralizer enumerations differ")
    if cat.order2_count != len(isolated_involutions(g)):
        bad.append("order2_count differs from isolated involution count")
    row("catalog", "FAIL" if bad else "PASS", "; ".join(bad) or f"m={cat.m} t={cat.order2_count}")
    if g.order < 2:
        return rows
    for fn in CONSTRUCTIONS:
        try:
            rep = fn(g) if fn is color_nontrivial_center else fn(g, cat)
        except ConstructionPreconditionError:
            continue
        except Falsification as exc:
            row(f"construct:{fn.__name__}", "FAIL", str(exc))
            continue
        row(f"construct:{rep.theorem}", "PASS", f"{rep.k} colors")
    for h, cols in cat.common_intersections.items():
        if len(h) < 2:
            continue
        for col in cols:
            try:
                rep = color_pstar(g, h, col)
                row("construct:pstar", "PASS", f"|H|={len(h)} |T|={len(col)} {rep.k} colors")
            except Falsification as exc:
                row("construct:pstar", "FAIL", str(exc))
    try:
        rep = cross_check(g, cfg)
        v = rep.classifier
        branch = v.notes.get("branch", "")
        status = "PASS" if branch != "f" else "PASS-BOUNDS"
        row("classify", status, f"branch {branch}: {v}; solver {rep.solver}; {rep.status}")
    except Falsification as exc:
        row("classify", "FAIL", str(exc))
    return rows


def cmd_suite(args) -> int:
    specs = []
    for item in args.groups or DEFAULT_SUITE:
        specs.extend(parse_range(item))
    cfg = _config(args)
    rows = []
    t0 = time.perf_counter()
    for spec in specs:
        try:
            rows.extend(suite_group(spec, cfg))
        except RccgError as exc:
            rows.append({"group": spec, "label": "", "order": 0, "check": "build", "status": "FAIL",
                         "detail": str(exc)})
    failed = [r for r in rows if r["status"] == "FAIL"]
    summary = {"groups": len(specs), "checks": len(rows), "failures": len(failed),
               "seconds": round(time.perf_counter() - t0, 3), "rows": rows}
    if args.json:
        print(json.dumps(summary, indent=1, sort_keys=True))
    else:
        print("group\torder\tcheck\tstatus\tdetail")
        for r in rows:
            print(f"{r['group']}\t{r['order']}\t{r['check']}\t{r['status']}\t{r['detail']}")
        print(f"# {len(specs)} groups, {len(rows)} checks, {len(failed)} failures")
    return EXIT_FALSIFIED if failed else EXIT_OK


# ---------------------------------------------------------------- parser


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-search-edges", type=int, default=None,
                   help="edge cap for the exact search (env RCCG_MAX_SEARCH_EDGES, default 20)")
    p.add_argument("--max-nodes", type=int, default=None,
                   help="backtracking node budget (env RCCG_MAX_NODES, default 10^7)")
    p.add_argument("--threads", type=int, default=None, help="worker processes for the exact search")
    p.add_argument("--seed", type=int, default=None, help="reserved; nothing is randomized")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rccg", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def group_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("spec", help="family spec (e.g. dihedral:5, product:dihedral:3:cyclic:2) or Cayley JSON path")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    group_cmd("info", cmd_info, "order, center, involutions and maximal abelian subgroups")
    p = group_cmd("mas", cmd_mas, "maximal abelian subgroup catalog with intersections")
    p.add_argument("-o", "--output", help="also write the catalog JSON here")
    p = group_cmd("rc", cmd_rc, "rainbow connection number of the commuting graph")
    p.add_argument("--mode", choices=("classify", "exact", "both"), default="classify")
    _add_search_flags(p)
    p = group_cmd("classify", cmd_classify, "shorthand for rc --mode classify")
    _add_search_flags(p)
    p = group_cmd("construct", cmd_construct, "emit a verified explicit coloring")
    p.add_argument("--theorem", required=True,
                   choices=sorted(THEOREM_TAGS.values()) + sorted(THEOREM_TAGS))
    p.add_argument("-o", "--output", help="write the coloring report JSON here")

    p = sub.add_parser("export", help="write CG as DOT or JSON, optionally colored")
    p.add_argument("spec")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--coloring", default="none", help="theorem:TAG | classify | witness | none")
    p.add_argument("-o", "--output")
    _add_search_flags(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("suite", help="batch certification over built-in families")
    p.add_argument("groups", nargs="*", help="specs or ranges such as dihedral:3-12 (default: standard suite)")
    p.add_argument("--json", action="store_true")
    _add_search_flags(p)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    seed = getattr(args, "seed", None)
    if seed is not None and seed < 0:
        parser.error("--seed must be non-negative")
    try:
        return args.func(args)
    except Falsification as exc:
        print(f"falsification: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (RccgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point.

Exit codes: 0 success, 1 an identity or comparison failed, 2 usage or
operational error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import asymptotics, registry
from .catalog import CATALOG, named_series
from .errors import GraphSeriesError
from .graphs import BUILTINS, evaluate, load_graph
from .jets import JetPresentation, compare_with_graph_series, hilbert_series
from .series import Series

JOBS_ENV = "GRAPHSERIES_MAX_JOBS"


class UsageError(Exception):
    pass


def rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cap_jobs(requested: int) -> int:
    limit = os.environ.get(JOBS_ENV)
    jobs = max(1, requested)
    if limit:
        try:
            jobs = min(jobs, max(1, int(limit)))
        except ValueError:
            raise UsageError(f"{JOBS_ENV} must be an integer, got {limit!r}") from None
    return jobs


def series_payload(s: Series) -> dict:
    return {
        "order": None if s.order is None else rat(s.order),
        "terms": [[rat(e), rat(c)] for e, c in s.terms()],
    }


def emit(args, payload: dict, table_lines: list) -> None:
    if args.format == "structured":
        print(json.dumps(payload, indent=2))
    else:
        for line in table_lines:
            print(line)


def series_table(s: Series) -> list:
    lines = [f"{'exponent':>10}  coefficient"]
    lines += [f"{rat(e):>10}  {rat(c)}" for e, c in s.terms()]
    if s.order is not None:
        lines.append(f"exact through q^{rat(s.order)}")
    return lines


# ---------------------------------------------------------------------------
# commands


def cmd_expand(args) -> int:
    if bool(args.series) == bool(args.graph):
        raise UsageError("expand needs exactly one of --series NAME or --graph REF")
    s = named_series(args.series, args.order) if args.series else evaluate(load_graph(args.graph), args.order)
    label = args.series or args.graph
    emit(args, {"series": label, **series_payload(s)}, [f"# {label}"] + series_table(s))
    return 0


def cmd_graph_series(args) -> int:
    spec = load_graph(args.graph)
    s = evaluate(spec, args.order, method=args.method, jobs=cap_jobs(args.jobs))
    emit(
        args,
        {"graph": args.graph, "method": args.method, **series_payload(s)},
        [f"# {args.graph} ({args.method})", repr(s)] + series_table(s),
    )
    return 0


def _parse_order(text: str):
    if text == "default":
        return None
    try:
        n = int(text)
    except ValueError:
        raise UsageError(f"--order must be an integer or 'default', got {text!r}") from None
    if n < 0:
        raise UsageError("--order must be nonnegative")
    return n


def cmd_verify(args) -> int:
    order = _parse_order(args.order)
    if args.identity == "all":
        tags = args.tags.split(",") if args.tags else None
        ids = [r["id"] for r in registry.list_identities(tags)]
    else:
        if args.identity not in registry.REGISTRY:
            raise UsageError(f"unknown identity {args.identity!r}; see `list identities`")
        ids = [args.identity]
    jobs = cap_jobs(args.jobs)
    if jobs > 1 and len(ids) > 1 and order is None:
        reports = registry.verify_all(tags=args.tags.split(",") if args.tags else None, timing=args.timing, jobs=jobs)
        reports = [r for r in reports if r.id in set(ids)]
    else:
        reports = [registry.verify(i, order, timing=args.timing) for i in ids]
    records = [r.as_dict() for r in reports]
    failed = [r for r in reports if not r.ok]
    summary = {
        "total": len(reports),
        "pass": sum(r.status == "pass" for r in reports),
        "resolved_variant": sum(r.status == "resolved-variant" for r in reports),
        "fail": len(failed),
    }
    payload = {"summary": summary, "reports": records}
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    lines = [f"{'id':<16} {'order':>5}  {'status':<17} detail"]
    for r in reports:
        if r.status == "resolved-variant":
            detail = f"selected {r.variant!r}"
            warn = "; ".join(f"{x['variant']!r} fails at q^{x['exponent']} ({x['lhs']} vs {x['rhs']})" for x in r.rejected)
            if warn:
                detail += f"; rejected {warn}"
        elif r.status == "fail":
            detail = json.dumps(r.mismatch)
        else:
            detail = r.anchor
        if r.wall_time is not None:
            detail += f" [{r.wall_time:.2f}s]"
        lines.append(f"{r.id:<16} {r.order:>5}  {r.status:<17} {detail}")
    lines.append(
        f"{summary['total']} identities: {summary['pass']} pass, "
        f"{summary['resolved_variant']} resolved by variant, {summary['fail']} fail"
    )
    emit(args, payload, lines)
    if any(r.status == "resolved-variant" for r in reports) and args.format == "table":
        print("warning: some identities hold only for one of their recorded variants", file=sys.stderr)
    return 1 if failed else 0


def _parse_relations(text: str) -> tuple:
    rels = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            i, j = (int(x) for x in part.split("-"))
        except ValueError:
            raise UsageError(f"relation {part!r} should look like 1-2") from None
        rels.append((i, j))
    return tuple(rels)


def cmd_jets(args) -> int:
    if bool(args.graph) == (args.relations is not None):
        raise UsageError("jets needs exactly one of --graph REF or --relations LIST (with --ell)")
    spec = None
    if args.graph:
        spec = load_graph(args.graph)
        pres = JetPresentation.from_graph(spec.graph, args.max_degree)
    else:
        if args.ell is None:
            raise UsageError("--relations needs --ell")
        pres = JetPresentation(args.ell, _parse_relations(args.relations), args.max_degree)
    if args.compare:
        if spec is None:
            raise UsageError("--compare needs --graph")
        res = compare_with_graph_series(pres, spec, mode=args.mode, seed=args.seed)
        lines = [f"{'degree':>6} {'jets':>10} {'graph':>10}"]
        lines += [f"{d:>6} {a:>10} {rat(b):>10}" for d, (a, b) in enumerate(zip(res.jet_dims, res.graph_coeffs))]
        lines.append(f"certification: {res.certification}")
        lines.append("match" if res.matches else f"mismatch at degree {res.mismatch_degree}")
        emit(args, res.as_dict(), lines)
        return 0 if res.matches else 1
    table = hilbert_series(pres, mode=args.mode, seed=args.seed, jobs=cap_jobs(args.jobs))
    lines = [f"{'degree':>6} {'dim':>10}"] + [f"{d:>6} {v:>10}" for d, v in enumerate(table.dims)]
    lines.append(f"certification: {table.certification}")
    emit(args, table.as_dict(), lines)
    return 0


def _parse_grid(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--t must be a comma separated list of numbers, got {text!r}") from None


def cmd_asym(args) -> int:
    cases = list(asymptotics.CASES) if args.case == "all" else [args.case]
    for c in cases:
        if c not in asymptotics.CASES:
            raise UsageError(f"unknown case {c!r}; known: {', '.join(asymptotics.CASES)}")
    grid = _parse_grid(args.t)
    results = []
    lines = []
    ok = True
    for c in cases:
        v = asymptotics.check_case(c, grid)
        rec = v.as_dict()
        rec["claim"] = asymptotics.CASES[c].description
        if args.fit:
            rec["fit"] = asymptotics.fit_conjecture(c, grid)
        results.append(rec)
        ok = ok and v.verdict == "pass"
        lines.append(f"# {c}: {rec['claim']}")
        lines.append(f"{'t':>22} {'value':>22} {'residual':>22} {'ratio':>22}")
        ratios = [""] + rec["ratios"]
        for t, val, r, x in zip(rec["t"], rec["values"], rec["residuals"], ratios):
            lines.append(f"{t:>22} {val:>22} {r:>22} {x:>22}")
        if args.fit:
            lines.append("fit: " + ", ".join(f"{k}={v}" for k, v in rec["fit"].items()))
        lines.append(f"verdict: {v.verdict}")
    emit(args, {"cases": results}, lines)
    return 0 if ok else 1


def cmd_list(args) -> int:
    if args.what == "identities":
        items = registry.list_identities(args.tags.split(",") if args.tags else None)
        lines = [f"{r['id']:<16} {','.join(r['tags']):<24} {r['anchor']}" for r in items]
        emit(args, {"identities": items}, lines)
    elif args.what == "graphs":
        emit(args, {"graphs": list(BUILTINS)}, list(BUILTINS))
    else:
        items = [{"name": e.name, "anchor": e.anchor, "description": e.description} for e in CATALOG.values()]
        emit(args, {"series": items}, [f"{e['name']:<10} {e['description']}" for e in items])
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "structured"), default="table")
    common.add_argument("--jobs", type=int, default=1, help=f"worker processes (capped by ${JOBS_ENV})")

    p = argparse.ArgumentParser(prog="graphseries", description="Graph series and q-series identity checks.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[common], help="expand a catalog series or a graph series")
    e.add_argument("--series")
    e.add_argument("--graph")
    e.add_argument("--order", type=int, required=True)
    e.set_defaults(func=cmd_expand)

    g = sub.add_parser("graph-series", parents=[common], help="evaluate a graph series")
    g.add_argument("--graph", required=True, help="builtin:NAME or a JSON file")
    g.add_argument("--order", type=int, required=True)
    g.add_argument("--method", choices=("auto", "enumerate", "tree-dp"), default="auto")
    g.set_defaults(func=cmd_graph_series)

    v = sub.add_parser("verify", parents=[common], help="verify registered identities")
    v.add_argument("--identity", required=True, help="identity id or 'all'")
    v.add_argument("--order", default="default")
    v.add_argument("--tags", help="comma separated tag filter for --identity all")
    v.add_argument("--report", help="write the structured report to this path")
    v.add_argument("--timing", action="store_true", help="include wall times (makes output nondeterministic)")
    v.set_defaults(func=cmd_verify)

    j = sub.add_parser("jets", parents=[common], help="graded dimensions of the arc algebra")
    j.add_argument("--graph")
    j.add_argument("--relations", help="e.g. 1-2,2-3 (use 1-1 for x1^2)")
    j.add_argument("--ell", type=int)
    j.add_argument("--max-degree", type=int, default=10)
    j.add_argument("--mode", choices=("single-prime", "dual-prime", "exact"), default="dual-prime")
    j.add_argument("--seed", type=int, default=0)
    j.add_argument("--compare", action="store_true")
    j.set_defaults(func=cmd_jets)

    a = sub.add_parser("asym", parents=[common], help="t -> 0 behaviour of path graph series")
    a.add_argument("--case", required=True, help="A2..A8 or 'all'")
    a.add_argument("--t", default=",".join(str(x) for x in asymptotics.DEFAULT_GRID))
    a.add_argument("--fit", action="store_true", help="print fitted constants for the conjectured shape")
    a.set_defaults(func=cmd_asym)

    ls = sub.add_parser("list", parents=[common], help="list identities, graphs or series")
    ls.add_argument("what", choices=("identities", "graphs", "series"))
    ls.add_argument("--tags")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except GraphSeriesError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

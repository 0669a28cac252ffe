"""Command-line entry point: ``groupdist <command> ...``.

Every command prints a JSON report (``sieve`` prints a text summary
unless ``--json`` is given). Exit codes: 0 success, 1 other errors,
2 parse errors, 3 failed preconditions, 4 exhausted budget.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import constructions as cons
from .catalog import MAX_ORDER, by_name, catalog, catalog_table, identify
from .errors import BudgetExceeded, GroupDistError, NotAGroup, ParseError, PreconditionFailed
from .groups import cyclic, verify_group
from .io import DistCache, MuCache, Report, read_table, serialize_table
from .metrics import profile

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3, 4


def resolve_group(arg: str):
    """A catalog name (``C4xC2``), ``n:i`` (1-based index) or a cayley-v1 file."""
    p = Path(arg)
    if p.exists():
        return read_table(p)
    if ":" in arg:
        n, i = arg.split(":", 1)
        return catalog_table(int(n), int(i))
    try:
        return by_name(arg)
    except KeyError:
        raise ParseError(f"unknown group or file: {arg}") from None


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _emit(report: Report):
    print(report.dumps())


def _provenance(args, **extra):
    out = {"cache": not getattr(args, "no_cache", False)}
    if getattr(args, "budget", None) is not None:
        out["budget"] = args.budget
    out.update(extra)
    return out


# -- commands --------------------------------------------------------------------------


def cmd_catalog(args):
    orders = [args.n] if args.n else range(1, MAX_ORDER + 1)
    if args.index is not None:
        t = catalog_table(args.n, args.index)
        sys.stdout.write(serialize_table(t, [f"{args.n}:{args.index} {t.name}"]))
        return EXIT_OK
    res = {str(n): [name for name, _ in catalog(n)] for n in orders}
    _emit(Report("catalog", {"n": args.n}, res, True, _provenance(args)))
    return EXIT_OK


def cmd_verify(args):
    t = read_table(args.file, allow_invalid=True)
    bad = verify_group(t)
    res = {"n": t.n, "isGroup": not bad,
           "violations": [{"kind": v.kind, "witness": [int(x) for x in v.witness]} for v in bad]}
    if not bad:
        res["class"] = identify(t)[1] if t.n <= MAX_ORDER else None
    _emit(Report("verify", {"file": str(args.file)}, res, True, _provenance(args)))
    return EXIT_OK if not bad else EXIT_ERROR


def cmd_dist(args):
    a, b = resolve_group(args.a), resolve_group(args.b)
    prof = profile(a, b)
    _emit(Report("dist", {"a": args.a, "b": args.b}, prof.to_json(), True, _provenance(args)))
    return EXIT_OK


def _search_cfg(args):
    from .search import SearchConfig

    return SearchConfig(initial_upper_bound=args.upper_bound, aut_depth=args.aut_depth,
                        parallel=args.parallel, budget=args.budget, workers=args.workers)


def cmd_classdist(args):
    from .search import class_distance

    a, b = resolve_group(args.a), resolve_group(args.b)
    res = class_distance(a, b, _search_cfg(args))
    if args.strict and not res.proven:
        raise BudgetExceeded(res.distance, res.witness)
    out = res.to_json()
    out["lowerBound"] = res.lower_bound
    _emit(Report("classdist", {"a": args.a, "b": args.b}, out, res.proven, _provenance(args)))
    return EXIT_OK


def cmd_table(args):
    from .search import neighbor_matrix

    cache = None if args.no_cache else DistCache()
    nm = neighbor_matrix(args.n, _search_cfg(args), cache)
    proven = all(all(r) for r in nm.proven)
    if args.strict and not proven:
        raise BudgetExceeded()
    _emit(Report("table", {"n": args.n}, nm.to_json(), proven, _provenance(args)))
    return EXIT_OK


def _quad(q):
    return [q.n, q.h, q.k, q.m]


def cmd_sieve(args):
    from . import sieve

    run = sieve.run_sieve()
    counts = run.counts
    if args.stage and args.stage not in counts:
        raise ParseError(f"unknown stage {args.stage}; choose from {', '.join(counts)}")
    labels = [args.stage] if args.stage else list(counts)
    if not args.json:
        for st in run.stages:
            print(f"{st.label:9s} {st.count}")
        if args.stage:
            print(f"survivors after {args.stage}:")
            print("  " + " ".join(str(q) for q in run.survivors(args.stage)))
        if args.stage in (None, "PIPELINE"):
            for b in run.pipeline:
                print(f"  {b.line()}  [{b.eliminatedBy}]")
        return EXIT_OK
    res = {"counts": counts,
           "survivors": {lab: [_quad(q) for q in run.survivors(lab)] for lab in labels},
           "pipeline": [b.to_json() for b in run.pipeline]}
    _emit(Report("sieve", {"stage": args.stage}, res, True, _provenance(args)))
    return EXIT_OK


def cmd_mu(args):
    from .rainbow import mu

    cache = None if args.no_cache else MuCache()
    val = mu(args.ell, args.v, cache=cache, recompute=args.recompute)
    _emit(Report("mu", {"ell": args.ell, "v": args.v}, {"mu": val}, True, _provenance(args)))
    return EXIT_OK


def cmd_special(args):
    from . import special

    if args.kind == "m2":
        res = special.m2_min_distance(args.n).to_json()
        inputs = {"kind": "m2", "n": args.n}
    else:
        if args.d is None:
            raise ParseError("special cyclic needs n and d")
        res = special.cyclic_row_search(cyclic(args.n), args.d).to_json()
        inputs = {"kind": "cyclic", "n": args.n, "d": args.d}
    _emit(Report("special", inputs, res, True, _provenance(args)))
    return EXIT_OK


def _construct_results(args):
    kind = args.kind
    if kind in ("cyclic", "dihedral"):
        g = resolve_group(args.group)
        if args.normal is None:
            inp = next((i for i in cons.quarter_inputs(g) if i[0] == kind), None)
            if inp is None:
                raise PreconditionFailed("inputs", f"no valid {kind} construction data for {args.group}")
            return [cons.run_quarter(g, inp)]
        if kind == "cyclic":
            return [cons.cyclic_construction(g, _ints(args.normal), args.h, args.m, args.alpha)]
        return [cons.dihedral_construction(g, _ints(args.normal), args.h, args.m, args.beta, args.gamma)]
    if kind == "c1":
        return [cons.construction1(resolve_group(args.group))]
    if kind == "c2":
        return [cons.construction2(args.a, args.b)]
    if kind == "c3":
        return cons.construction3()
    # extend
    if args.files:
        left, right = (read_table(f) for f in args.files)
        base = 0
    else:
        r = cons.construction2(args.a, args.b)
        left, right, base = r.left, r.right, r.actualDistance
    k = resolve_group(args.by)
    a, b = cons.pair_extension((left, right), k)
    claimed = (base or cons.dist(left, right)) * k.n * k.n
    return [cons._result(a, b, claimed, f"extend x {k.name}")]


def cmd_construct(args):
    results = _construct_results(args)
    out = []
    for i, r in enumerate(results):
        d = r.to_json()
        d["leftTable"] = serialize_table(r.left)
        d["rightTable"] = serialize_table(r.right)
        if args.out:
            outdir = Path(args.out)
            outdir.mkdir(parents=True, exist_ok=True)
            (outdir / f"{args.kind}_{i}_left.txt").write_text(d["leftTable"])
            (outdir / f"{args.kind}_{i}_right.txt").write_text(d["rightTable"])
        out.append(d)
    inputs = {k: v for k, v in vars(args).items() if k not in ("func",) and not callable(v)}
    _emit(Report("construct", inputs, out, all(r.ok for r in results), _provenance(args)))
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="groupdist", description="Distances between finite group tables")
    p.add_argument("--no-cache", action="store_true", help="ignore and do not update result caches")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalog", help="list groups of small order or print one table")
    s.add_argument("n", type=int, nargs="?")
    s.add_argument("--index", type=int, help="1-based catalog index; prints the table")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("verify", help="check the group axioms for a table file")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("dist", help="distance profile of two tables on the same set")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_dist)

    def search_flags(sp):
        sp.add_argument("--budget", type=int, help="node cap; the result may then be unproven")
        sp.add_argument("--parallel", action="store_true")
        sp.add_argument("--workers", type=int)
        sp.add_argument("--aut-depth", type=int, default=3, help="depth up to which symmetry pruning runs")
        sp.add_argument("--upper-bound", type=int, help="only look for distances at most this value")
        sp.add_argument("--strict", action="store_true", help="exit 4 unless the result is proven")

    s = sub.add_parser("classdist", help="distance between two isomorphism classes")
    s.add_argument("a")
    s.add_argument("b")
    search_flags(s)
    s.set_defaults(func=cmd_classdist)

    s = sub.add_parser("table", help="class distances among all groups of order n")
    s.add_argument("n", type=int)
    search_flags(s)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("sieve", help="quadruple elimination for 23 <= n <= 50")
    s.add_argument("--stage", help="report survivors after this stage")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sieve)

    s = sub.add_parser("mu", help="rainbow matching threshold mu_l(v)")
    s.add_argument("ell", type=int)
    s.add_argument("v", type=int)
    s.add_argument("--recompute", action="store_true")
    s.set_defaults(func=cmd_mu)

    s = sub.add_parser("special", help="two-cell search (m2 n) or cyclic row search (cyclic n d)")
    s.add_argument("kind", choices=["m2", "cyclic"])
    s.add_argument("n", type=int)
    s.add_argument("d", type=int, nargs="?")
    s.set_defaults(func=cmd_special)

    s = sub.add_parser("construct", help="build a pair of groups at a known distance")
    s.add_argument("kind", choices=["cyclic", "dihedral", "c1", "c2", "c3", "extend"])
    s.add_argument("group", nargs="?", help="base group for cyclic, dihedral and c1")
    s.add_argument("--normal", help="comma-separated normal subgroup")
    s.add_argument("--h", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--alpha", type=int)
    s.add_argument("--beta", type=int)
    s.add_argument("--gamma", type=int)
    s.add_argument("--a", type=int, default=3)
    s.add_argument("--b", type=int, default=2)
    s.add_argument("--files", nargs=2, help="pair of table files to extend")
    s.add_argument("--by", default="C2", help="direct factor for extend")
    s.add_argument("--out", help="directory for the two tables")
    s.set_defaults(func=cmd_construct)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, NotAGroup) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionFailed as e:
        print(f"error: precondition {e.clause}: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except GroupDistError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

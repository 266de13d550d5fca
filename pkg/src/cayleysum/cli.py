"""Command-line entry point.

Every subcommand maps onto one library call and emits rows of named
columns.  Rows go to standard output as an aligned table, or to ``--out``
as CSV or JSON (chosen by extension).  Each row carries the group, the
seed and the package version.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence

from . import __version__
from . import cayley, census, checks, freiman, groups, sumset
from .errors import CayleySumError, InvalidInput, TooLarge
from .sumset import PointSet

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_TOO_LARGE = 0, 1, 2, 3

log = logging.getLogger("cayleysum")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# argument helpers


def _group(args) -> groups.GroupSpec:
    if not args.group:
        raise UsageError("--group is required")
    return groups.parse_group(args.group)


def _optional_group(args) -> Optional[groups.GroupSpec]:
    return groups.parse_group(args.group) if args.group else None


def parse_points(text: str, g: Optional[groups.GroupSpec]) -> PointSet:
    """``"0,1,3"`` for integers or cyclic groups; ``"0,1;1,0"`` for coordinate tuples."""
    text = text.strip()
    if ";" in text or (g is not None and g.rank > 1):
        parts = [p for p in text.replace(" ", "").split(";") if p]
        elements = [tuple(int(c) for c in p.strip("()").split(",")) for p in parts]
    else:
        elements = [int(p) for p in text.replace(" ", ",").split(",") if p]
    if g is None:
        return sumset.integer_set(elements)
    return sumset.point_set(g, elements)


def parse_vectors(text: str) -> list[tuple[int, ...]]:
    return [tuple(int(c) for c in p.split(",")) for p in text.replace(" ", "").split(";") if p]


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return str(x[0]) if len(x) == 1 else "(" + ",".join(map(str, x)) + ")"
    return str(x)


def _fmt_set(xs) -> str:
    return "{" + ", ".join(_fmt(x) for x in xs) + "}"


# ---------------------------------------------------------------------------
# handlers: each returns (rows, exit_code)


def cmd_group_info(args):
    g = _group(args)
    pp = groups.pair_partition(g)
    row = dict(factors=str(g), pretty=g.pretty(), order=g.order, exponent=g.exponent, omega=g.omega,
               rank=g.rank, coins=pp.coin_count, involutions=len(pp.involutions))
    try:
        row["subgroups"] = groups.subgroup_count(g)
    except TooLarge:
        row["subgroups"] = None
    return [row], EXIT_OK


def cmd_sumset(args):
    g = _optional_group(args)
    a = parse_points(args.set, g)
    op = args.op
    if op == "hat":
        s = sumset.hat_plus(a)
        return [dict(op=op, set=str(a), result=str(s), size=len(s))], EXIT_OK
    if op == "diff":
        s = sumset.diff_set(a)
        return [dict(op=op, set=str(a), result=str(s), size=len(s))], EXIT_OK
    if op == "iter":
        s = sumset.iterated_sumset(a, args.l)
        bound = sumset.plunnecke_bound(len(a), sumset.small_doubling(a), args.l)
        return [dict(op=op, set=str(a), l=args.l, result=str(s), size=len(s), plunnecke_bound=bound)], EXIT_OK
    if op == "span":
        x = sumset.spanning_subset(a)
        k2 = sumset.small_doubling(a)
        return [dict(op=op, set=str(a), subset=str(x), size=len(x), k2=k2,
                     bound=sumset.spanning_bound(len(a), k2), same_span=sumset.same_span(x, a))], EXIT_OK
    w = sumset.minimal_cover_set(a, args.mode)
    return [dict(op=op, mode=w.mode, set=str(a), a_star=_fmt(w.a_star), A0=str(w.A0), s1=w.s1, s2=w.s2,
                 verified=w.verify(a))], EXIT_OK


def _ring(args):
    if args.ring is None:
        return None
    return "Q" if args.ring.upper() == "Q" else int(args.ring)


def cmd_freiman(args):
    op = args.op
    g = _optional_group(args)
    if op == "gf":
        r = parse_vectors(args.vectors)
        r0 = freiman.small_generating_subset(r, args.modulus)
        k = len(r[0]) if r else 0
        same = freiman.span_mod(r0, args.modulus, k) == freiman.span_mod(r, args.modulus, k)
        return [dict(op=op, modulus=args.modulus, R=_fmt_set(r), R0=_fmt_set(r0), size=len(r0),
                     bound=groups.omega(args.modulus) * k, same_span=same)], EXIT_OK
    if op == "classes":
        gg = _group(args)
        sets = [PointSet(gg, c) for c in combinations(gg.elements, args.k)]
        cls = freiman.classify_iso_classes(sets, args.s)
        rows = [dict(op=op, k=args.k, s=args.s, cls=i, size=len(c), representative=str(c[0]), bound=cls.bound)
                for i, c in enumerate(cls.classes)]
        return rows, EXIT_OK
    a = parse_points(args.set, g)
    if op == "relations":
        rel = freiman.relation_vectors(a, args.s)
        return [dict(op=op, set=str(a), s=args.s, vector=str(v)) for v in rel], EXIT_OK
    if op == "ambient":
        m = freiman.universal_ambient(a, args.s, _ring(args))
        return [dict(op=op, set=str(a), s=args.s, ring=m.ring, module=str(m.module), rank=m.rank,
                     point=_fmt(x), image=str(e)) for x, e in zip(a.elements, m.images)], EXIT_OK
    if op == "rank":
        m = freiman.universal_ambient(a, args.s, _ring(args))
        return [dict(op=op, set=str(a), s=args.s, ring=m.ring, module=str(m.module),
                     freiman_rank=m.rank - 1)], EXIT_OK
    if op == "homs":
        target = groups.parse_group(args.target) if args.target else _group(args)
        e = freiman.enumerate_hom2(a, target, budget=args.budget)
        closed = freiman.hom_count_closed_form(a, target)
        return [dict(op=op, set=str(a), target=str(target), enumerated=e.count, closed_form=closed)], (
            EXIT_OK if e.count == closed else EXIT_VERIFY)
    if op == "iso":
        b = parse_points(args.other, g)
        res = freiman.are_freiman_isomorphic(a, b, args.s)
        wit = _fmt_set(f"{_fmt(x)}->{_fmt(y)}" for x, y in res.witness.items()) if res.witness else ""
        return [dict(op=op, set=str(a), other=str(b), s=args.s, isomorphic=res.isomorphic, witness=wit)], EXIT_OK
    # descent: reduce an integer set modulo --modulus
    xp, f = freiman.modular_image(a, args.modulus)
    res = freiman.descent_check(a, xp, f)
    return [dict(op=op, set=str(a), modulus=args.modulus, image=str(xp), sum_ok=res.sum_ok,
                 diff_ok=res.diff_ok)], EXIT_OK if res else EXIT_VERIFY


def cmd_census(args):
    g = _group(args)
    k1s = [args.k1] if args.k1 else range(1, g.order + 1)
    rows = []
    for k1 in k1s:
        recs = census.census_smallsum(g, k1, stratify=args.stratify, budget=args.budget, workers=args.threads)
        rows.extend(census.census_rows(g, k1, recs, c=args.c))
    return rows, EXIT_OK


def cmd_bound(args):
    op = args.op
    if op == "gbound":
        p = census.BoundParams(args.n, args.k1, args.k2, c=args.c)
        b = census.bound_gbound(p)
        return [dict(op=op, n=p.n, omega=p.omega, k1=p.k1, k2=p.k2, c=p.c, log_value=b.log_value,
                     value=b.value, branch1=b.branch1, branch2=b.branch2)], EXIT_OK
    if op == "nfc":
        p = census.BoundParams(max(args.n, 1), args.k1, max(args.k2, 1), s1=args.s1, s2=args.s2)
        return [dict(op=op, k1=p.k1, s1=p.s1, s2=p.s2, gF=args.gf, value=census.bound_nfc(p, args.gf))], EXIT_OK
    if op == "extra":
        return [dict(op=op, l=args.l, t=args.t, value=census.bound_extra(args.l, args.t))], EXIT_OK
    return [dict(op=op, k1=args.k1, k2=args.k2, n=args.n, c=args.c,
                 value=census.g_exponent(args.k1, args.k2, args.n, args.c))], EXIT_OK


def _connection(args, g) -> cayley.ConnectionSet:
    if args.conn == "paley":
        if g.rank != 1:
            raise InvalidInput("Paley connection sets live on cyclic groups")
        return cayley.paley_connection_set(g.order)
    if args.conn == "random":
        return cayley.random_connection_set(g, args.seed, 0)
    return cayley.make_connection_set(g, parse_points(args.conn, g).elements)


def cmd_clique(args):
    g = _group(args)
    op = args.op
    if op == "exact":
        b = _connection(args, g)
        graph = cayley.CayleyGraph(g, b)
        return [dict(op=op, connection=str(b), degree=len(b), clique_number=cayley.clique_number(graph),
                     independence_number=cayley.independence_number(graph))], EXIT_OK
    if op == "mc":
        pairs = cayley.sample_clique_pairs(g, args.trials, args.seed, workers=args.threads)
        hist: dict[int, list[int]] = {}
        for cl, ind in pairs:
            hist.setdefault(cl, [0, 0])[0] += 1
            hist.setdefault(ind, [0, 0])[1] += 1
        return [dict(op=op, trials=args.trials, value=v, count_clique=c[0], count_complement=c[1])
                for v, c in sorted(hist.items())], EXIT_OK
    k1s = [args.k1] if args.k1 else [2, 3, 4, 5]
    rows = []
    if op == "tail-exact":
        for k1 in k1s:
            rows.append(cayley.exact_clique_tail(g, k1, timed=args.timing).record())
    else:
        samples = [cl for cl, _ in cayley.sample_clique_pairs(g, args.trials, args.seed, workers=args.threads)]
        for k1 in k1s:
            rows.append(cayley.mc_clique_tail(g, k1, args.trials, args.seed, timed=args.timing,
                                              samples=samples).record())
    return rows, EXIT_OK


def _verify_rows(results: list[checks.CheckResult], verbose: bool):
    rows = []
    for res in results:
        subject = res.rows if verbose else res.failures
        for r in subject:
            rows.append(dict(suite=res.name, **r))
        rows.append(dict(suite=res.name, summary=res.summary(), ok=res.passed))
    return rows, EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_verify(args):
    op = args.op
    trials = args.trials or 500
    if op == "relc":
        g = _group(args)
        lhs = cayley.exact_clique_tail(g, args.k1 or 2).probability
        rhs = census.union_bound_exact(g, args.k1 or 2)
        ok = rhs.dominates(lhs)
        row = dict(k1=args.k1 or 2, lhs=str(lhs), lhs_float=float(lhs), rhs=float(rhs), ok=ok)
        return [row], EXIT_OK if ok else EXIT_VERIFY
    if op == "extension":
        res = [checks.check_extension(trials, args.seed)]
    elif op == "mrp":
        sample = checks.hom_sample(trials, args.seed)
        res = [checks.check_ars(sample=sample), checks.check_mrp(sample=sample)]
    elif op == "bgen":
        res = [checks.check_bgen(trials, args.seed)]
    elif op == "gf":
        res = [checks.check_gf(args.modulus, args.k, seed=args.seed)]
    elif op == "lbch":
        res = [checks.check_lbch()]
    else:
        res = checks.run_all(args.seed, args.trials)
    return _verify_rows(res, args.verbose)


def cmd_witness(args):
    g = _group(args)
    w = cayley.witness_search(g, args.threshold, args.trials or 1000, args.seed)
    if w is None:
        return [dict(threshold=args.threshold, found=False, trial=None, connection=None, clique=None,
                     independence=None)], EXIT_OK
    return [dict(threshold=args.threshold, found=True, trial=w.trial, connection=str(w.connection),
                 clique=w.clique, independence=w.independence)], EXIT_OK


def cmd_paley(args):
    qs = [args.q] if args.q else [q for q in range(5, args.max_q + 1) if q % 4 == 1 and cayley._is_prime(q)]
    return [dict(q=q, clique_number=cayley.paley_clique_number(q)) for q in qs], EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--group", help="invariant factors or cyclic factors, e.g. 4,2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int)
    p.add_argument("--c", type=float, default=1.0, help="absolute constant in the small-sumset bound")
    p.add_argument("--out", help="write rows to a .csv or .json file")
    p.add_argument("--threads", type=int, default=1, help="worker processes; results do not depend on it")
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-identical output)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="cayleysum", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func: Callable, ops: Sequence[str] | None = None, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        if ops:
            p.add_argument("op", choices=ops)
        p.set_defaults(func=func)
        return p

    add("group", cmd_group_info, ["info"])

    p = add("sumset", cmd_sumset, ["hat", "diff", "iter", "span", "cover"])
    p.add_argument("--set", required=True)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--mode", choices=["sum", "diff"], default="sum")

    p = add("freiman", cmd_freiman, ["relations", "ambient", "rank", "homs", "iso", "classes", "gf", "descent"])
    p.add_argument("--set")
    p.add_argument("--other")
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--ring", help="Q or a modulus m")
    p.add_argument("--target")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--vectors")
    p.add_argument("--modulus", type=int)

    p = add("census", cmd_census, ["run"])
    p.add_argument("--k1", type=int)
    p.add_argument("--stratify", action="store_true")

    p = add("bound", cmd_bound, ["gbound", "nfc", "extra", "gexp"])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k1", type=int, default=2)
    p.add_argument("--k2", type=int, default=1)
    p.add_argument("--s1", type=int, default=1)
    p.add_argument("--s2", type=int, default=1)
    p.add_argument("--gf", type=int, default=1)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--t", type=int, default=0)

    p = add("clique", cmd_clique, ["exact", "mc", "tail-exact", "tail-mc"])
    p.add_argument("--conn", default="random", help="paley, random, or a symmetric set")
    p.add_argument("--k1", type=int)

    p = add("verify", cmd_verify, ["relc", "extension", "mrp", "bgen", "gf", "lbch", "all"])
    p.add_argument("--k1", type=int)
    p.add_argument("--modulus", type=int, default=4)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--verbose", action="store_true", help="emit every instance, not only failures")

    p = add("witness", cmd_witness, ["search"])
    p.add_argument("--threshold", type=int, required=True)

    p = add("paley", cmd_paley)
    p.add_argument("--q", type=int)
    p.add_argument("--max-q", type=int, default=101)
    return parser


def _check_ops(args) -> None:
    needs_set = {"relations", "ambient", "rank", "homs", "iso", "descent"}
    if args.command == "freiman":
        if args.op in needs_set and not args.set:
            raise UsageError(f"freiman {args.op} needs --set")
        if args.op == "iso" and not args.other:
            raise UsageError("freiman iso needs --other")
        if args.op in ("gf", "descent") and not args.modulus:
            raise UsageError(f"freiman {args.op} needs --modulus")
        if args.op == "gf" and not args.vectors:
            raise UsageError("freiman gf needs --vectors")
    if args.command in ("clique",) and args.op in ("mc", "tail-mc") and not args.trials:
        raise UsageError(f"clique {args.op} needs --trials")
    if args.threads < 1 or args.budget < 1:
        raise UsageError("--threads and --budget must be positive")


# ---------------------------------------------------------------------------
# output


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        return str(v)
    return str(v)


def _stamp(rows: list[dict], args) -> list[dict]:
    """Group first, then the subcommand columns, then seed and version."""
    out = []
    for r in rows:
        stamped = {"group": r.pop("group", args.group or "")}
        stamped.update(r)
        stamped.setdefault("seed", args.seed)
        stamped["version"] = __version__
        out.append(stamped)
    return out


def _table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _csv(rows: list[dict]) -> str:
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(r.get(k)) for k in cols})
    return buf.getvalue()


def _json_default(v):
    if isinstance(v, Fraction):
        return str(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2, default=_json_default) + "\n"


def emit(rows: list[dict], out: Optional[str], stream=None) -> None:
    stream = stream or sys.stdout
    if not out:
        stream.write(_table(rows))
        return
    if out.endswith(".csv"):
        text = _csv(rows)
    elif out.endswith(".json"):
        text = _json(rows)
    else:
        raise UsageError(f"cannot infer output format from {out!r}; use .csv or .json")
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_ops(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    t0 = time.perf_counter()
    try:
        rows, code = args.func(args)
        emit(_stamp(rows, args), args.out)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except TooLarge as e:
        print(f"too large: {e}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (CayleySumError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    log.debug("%s finished in %.1f ms", args.command, (time.perf_counter() - t0) * 1e3)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

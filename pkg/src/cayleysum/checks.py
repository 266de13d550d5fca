"""Verification suites: each draws or enumerates instances and checks one identity.

Every suite returns a :class:`CheckResult` whose rows record the instance
and the compared values, so a failing row can be replayed directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Optional

from .cayley import exact_clique_tail, trial_rng
from .census import a_of_h, union_bound_exact
from .errors import TooLarge
from .freiman import (
    are_freiman_isomorphic,
    classify_iso_classes,
    dependence_bound,
    difference_rank,
    enumerate_hom2,
    g_of_ring,
    hom_count_closed_form,
    image_orders,
    is_freiman_iso,
    small_generating_subset,
    span_mod,
    universal_ambient,
)
from .groups import GroupSpec, abelian_groups_of_order, omega, subgroup_count
from .sumset import PointSet, same_span, small_doubling, spanning_bound, spanning_subset


@dataclass
class CheckResult:
    name: str
    rows: list[dict] = field(default_factory=list)

    @property
    def failures(self) -> list[dict]:
        return [r for r in self.rows if not r["ok"]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        bad = len(self.failures)
        return f"{self.name}: {len(self.rows) - bad}/{len(self.rows)} ok"


def groups_up_to(max_order: int, min_order: int = 1) -> list[GroupSpec]:
    return [g for n in range(min_order, max_order + 1) for g in abelian_groups_of_order(n)]


def random_subset(g: GroupSpec, k: int, rng) -> PointSet:
    idx = rng.choice(g.order, size=k, replace=False)
    return PointSet(g, tuple(g.element(int(i)) for i in idx))


def _fmt_set(a: PointSet) -> str:
    return str(a)


# ---------------------------------------------------------------------------


def check_relc(groups: Iterable[GroupSpec], k1s: Iterable[int]) -> CheckResult:
    """Exact clique tail never exceeds the union-bound sum over difference sets."""
    res = CheckResult("relc")
    k1s = list(k1s)
    for g in groups:
        for k1 in k1s:
            lhs = exact_clique_tail(g, k1).probability
            rhs = union_bound_exact(g, k1)
            res.rows.append(
                dict(group=str(g), k1=k1, lhs=str(lhs), lhs_float=float(lhs), rhs=float(rhs), ok=rhs.dominates(lhs))
            )
    return res


def hom_sample(trials: int, seed: int, max_order: int = 36, k_max: int = 5, budget: int = 10**6):
    """``trials`` random ``(A, G)`` with ``|G| <= max_order`` inside the enumeration budget.

    Draws that violate the budget precondition are redrawn; the draw index
    is kept so every instance can be regenerated.
    """
    groups = groups_up_to(max_order, 2)
    out = []
    draw = 0
    while len(out) < trials:
        rng = trial_rng(seed, draw)
        g = groups[int(rng.integers(len(groups)))]
        k = int(rng.integers(1, min(k_max, g.order) + 1))
        a = random_subset(g, k, rng)
        draw += 1
        try:
            count = enumerate_hom2(a, g, budget=budget).count
        except TooLarge:
            continue
        out.append((draw - 1, g, a, count))
    return out


def check_extension(trials: int = 500, seed: int = 0, sample=None) -> CheckResult:
    """Enumerated Freiman 2-homomorphisms match the closed-form hom count."""
    res = CheckResult("extension")
    for draw, g, a, count in sample or hom_sample(trials, seed):
        expected = hom_count_closed_form(a, g)
        res.rows.append(dict(group=str(g), draw=draw, set=_fmt_set(a), enumerated=count, closed_form=expected,
                             ok=count == expected))
    return res


def check_ars(trials: int = 500, seed: int = 0, sample=None) -> CheckResult:
    """The universal ambient images are 2-isomorphic (and 3-isomorphic for small sets) to ``A``."""
    res = CheckResult("ars")
    for draw, g, a, _ in sample or hom_sample(trials, seed):
        ok2 = is_freiman_iso(universal_ambient(a, 2).as_map(), 2)
        ok3 = is_freiman_iso(universal_ambient(a, 3).as_map(), 3) if len(a) <= 7 else None
        res.rows.append(dict(group=str(g), draw=draw, set=_fmt_set(a), iso2=ok2, iso3=ok3, ok=ok2 and ok3 is not False))
    return res


def check_mrp(trials: int = 500, seed: int = 0, sample=None) -> CheckResult:
    """Over ``Z/m`` every basis image has order ``m`` and ``H_A`` has rank one less."""
    res = CheckResult("mrp")
    for draw, g, a, _ in sample or hom_sample(trials, seed):
        model = universal_ambient(a, 2)
        orders = image_orders(model)
        exp_ok = all(o == model.modulus for o in orders)
        hr = difference_rank(model)
        res.rows.append(dict(group=str(g), draw=draw, set=_fmt_set(a), modulus=model.modulus, rank=model.rank,
                             diff_rank=hr, exponent_ok=exp_ok, ok=exp_ok and hr == model.rank - 1))
    return res


def check_bgen(trials: int = 500, seed: int = 0, max_order: int = 64, k_min: int = 2, k_max: int = 12) -> CheckResult:
    """The greedy spanning subset spans ``<B>`` and obeys the size bound."""
    res = CheckResult("bgen")
    groups = [g for g in groups_up_to(max_order, 2) if g.order >= k_min]
    for t in range(trials):
        rng = trial_rng(seed, t)
        g = groups[int(rng.integers(len(groups)))]
        k1 = int(rng.integers(k_min, min(k_max, g.order) + 1))
        b = random_subset(g, k1, rng)
        x = spanning_subset(b)
        k2 = small_doubling(b)
        bound = spanning_bound(k1, k2)
        spans = same_span(x, b)
        res.rows.append(dict(group=str(g), trial=t, k1=k1, k2=k2, size=len(x), bound=bound, spans=spans,
                             ok=spans and len(x) <= bound))
    return res


def gf_subsets(m: int, k: int, exhaustive_limit: int = 16, max_size: int = 2, random_trials: int = 2000,
               seed: int = 0):
    """Nonempty ``R`` inside ``(Z/m)^k``.

    Every subset when ``m^k <= exhaustive_limit``; otherwise every subset of
    size at most ``max_size`` plus seeded random subsets of larger sizes.
    """
    space = list(product(range(m), repeat=k))
    if len(space) <= exhaustive_limit:
        for r in range(1, len(space) + 1):
            yield from combinations(space, r)
        return
    for r in range(1, max_size + 1):
        yield from combinations(space, r)
    for t in range(random_trials):
        rng = trial_rng(seed, t)
        size = int(rng.integers(max_size + 1, len(space) + 1))
        idx = sorted(int(i) for i in rng.choice(len(space), size=size, replace=False))
        yield tuple(space[i] for i in idx)


def check_gf(m: int, k: int, **kw) -> CheckResult:
    """The extracted subset spans the same subgroup and has at most ``omega(m) k`` elements."""
    res = CheckResult(f"gf[m={m},k={k}]")
    bound = omega(m) * k
    bad = 0
    total = 0
    worst = 0
    for r in gf_subsets(m, k, **kw):
        r0 = small_generating_subset(r, m)
        ok = len(r0) <= bound and set(r0) <= set(r) and span_mod(r0, m, k) == span_mod(r, m, k)
        total += 1
        worst = max(worst, len(r0))
        if not ok:
            bad += 1
            res.rows.append(dict(m=m, k=k, R=str(r), R0=str(r0), bound=bound, ok=False))
    res.rows.append(dict(m=m, k=k, R=f"{total} sets", R0=f"max size {worst}", bound=bound, ok=bad == 0))
    return res


def check_dependence(max_order: int = 9, ks: Iterable[int] = (2, 3), s: int = 2) -> CheckResult:
    """Iso-class counts of ``k``-subsets stay below ``k^(2 s g k)`` and match pairwise search."""
    res = CheckResult("dependence")
    for g in groups_up_to(max_order, 2):
        for k in ks:
            if k > g.order:
                continue
            sets = [PointSet(g, c) for c in combinations(g.elements, k)]
            cls = classify_iso_classes(sets, s)
            bound = dependence_bound(k, s, g_of_ring(g.exponent))
            reps = [c[0] for c in cls.classes]
            consistent = all(are_freiman_isomorphic(c[0], x, s).isomorphic for c in cls.classes for x in c[1:])
            distinct = not any(are_freiman_isomorphic(p, q, s).isomorphic for p, q in combinations(reps, 2))
            res.rows.append(dict(group=str(g), k=k, classes=cls.count, bound=bound,
                                 ok=cls.count <= bound and consistent and distinct))
    return res


def check_lbch(max_order: int = 12) -> CheckResult:
    """Both readings of ``a(H)`` are at least half the number of subgroups."""
    res = CheckResult("lbch")
    for h in groups_up_to(max_order):
        a = a_of_h(h)
        half = subgroup_count(h) / 2
        res.rows.append(dict(group=str(h), a_as_written=a.as_written, a_equality=a.equality_stratified,
                             half_subgroups=half,
                             ok=a.as_written >= half - 1e-9 and a.equality_stratified >= half - 1e-9))
    return res


def run_all(seed: int = 0, trials: Optional[int] = None) -> list[CheckResult]:
    t = trials or 100
    sample = hom_sample(t, seed)
    return [
        check_relc(groups_up_to(12, 2), (2, 3, 4, 5)),
        check_extension(sample=sample),
        check_ars(sample=sample),
        check_mrp(sample=sample),
        check_bgen(t, seed),
        check_gf(4, 1),
        check_gf(6, 1),
        check_gf(12, 1),
        check_gf(4, 2),
        check_lbch(),
    ]


__all__ = [
    "CheckResult",
    "check_ars",
    "check_bgen",
    "check_dependence",
    "check_extension",
    "check_gf",
    "check_lbch",
    "check_mrp",
    "check_relc",
    "groups_up_to",
    "hom_sample",
    "run_all",
]

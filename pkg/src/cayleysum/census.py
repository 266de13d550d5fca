"""Exhaustive small-sumset censuses and the bound formulas they are compared with.

Subsets are enumerated depth-first as combinations of element indices.
The restricted sumset and the difference set of the current prefix are
carried along as integer bitmasks, so adding a point costs one table row.
All logarithms are natural.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InvalidInput, TooLarge
from .groups import GroupSpec, omega
from .sumset import PointSet, cover_ratio, minimal_cover_set

log = logging.getLogger(__name__)

CENSUS_BUDGET = 10**7
AH_CAP = 12

CSV_FIELDS = ("group", "k1", "k2", "s1", "s2", "count_sum", "count_diff", "bound_branch2", "ratio_branch1")


@dataclass
class CensusRecord:
    """Counts of ``k1``-subsets with ``|A +^ A| <= k2`` and ``|A - A| = k2``."""

    k1: int
    k2: int
    count_sum: int
    count_diff: int
    strata_sum: Optional[dict[tuple[int, int], int]] = None
    strata_diff: Optional[dict[tuple[int, int], int]] = None


@dataclass
class _Tally:
    hat: list[int]
    diff: list[int]
    strata_sum: dict[int, dict[tuple[int, int], int]] = field(default_factory=dict)
    strata_diff: dict[int, dict[tuple[int, int], int]] = field(default_factory=dict)
    cover_ratios: list[float] = field(default_factory=list)

    def merge(self, other: "_Tally") -> None:
        for i, c in enumerate(other.hat):
            self.hat[i] += c
        for i, c in enumerate(other.diff):
            self.diff[i] += c
        for mine, theirs in ((self.strata_sum, other.strata_sum), (self.strata_diff, other.strata_diff)):
            for card, strata in theirs.items():
                dst = mine.setdefault(card, {})
                for key, c in strata.items():
                    dst[key] = dst.get(key, 0) + c
        self.cover_ratios.extend(other.cover_ratios)


def _tables(g: GroupSpec):
    n = g.order
    add = g.add_table
    neg = g.neg_table
    add_bits = [[1 << add[i][j] for j in range(n)] for i in range(n)]
    sub_bits = [[1 << add[i][neg[j]] for j in range(n)] for i in range(n)]
    return add_bits, sub_bits


def _walk(g: GroupSpec, k1: int, first: Optional[int], stratify: bool) -> _Tally:
    """Tally every ``k1``-subset (those starting at ``first`` if given)."""
    n = g.order
    add_bits, sub_bits = _tables(g)
    tally = _Tally([0] * (n + 1), [0] * (n + 1))
    chosen: list[int] = []

    def leaf(hat: int, diff: int) -> None:
        hc = hat.bit_count()
        dc = diff.bit_count()
        tally.hat[hc] += 1
        tally.diff[dc] += 1
        if stratify and k1 >= 2:
            a = PointSet(g, tuple(g.element(i) for i in chosen))
            ws = minimal_cover_set(a, "sum")
            wd = minimal_cover_set(a, "diff")
            s = tally.strata_sum.setdefault(hc, {})
            s[(ws.s1, ws.s2)] = s.get((ws.s1, ws.s2), 0) + 1
            d = tally.strata_diff.setdefault(dc, {})
            d[(wd.s1, wd.s2)] = d.get((wd.s1, wd.s2), 0) + 1
            if hc:
                tally.cover_ratios.append(cover_ratio(ws.s1, k1, hc))

    def rec(start: int, hat: int, diff: int) -> None:
        depth = len(chosen)
        if depth == k1:
            leaf(hat, diff)
            return
        for x in range(start, n - (k1 - depth) + 1):
            arow = add_bits[x]
            srow = sub_bits[x]
            h, d = hat, diff | srow[x]
            for y in chosen:
                h |= arow[y]
                d |= srow[y] | sub_bits[y][x]
            chosen.append(x)
            rec(x + 1, h, d)
            chosen.pop()
            if first is not None and depth == 0:
                break

    if k1 == 0:
        leaf(0, 0)
    elif first is None:
        rec(0, 0, 0)
    else:
        rec(first, 0, 0)
    return tally


def _walk_task(args) -> _Tally:
    factors, k1, first, stratify = args
    return _walk(GroupSpec(factors), k1, first, stratify)


def _tally(g: GroupSpec, k1: int, stratify: bool, workers: int) -> _Tally:
    n = g.order
    if workers <= 1 or k1 == 0 or n < 2:
        return _walk(g, k1, None, stratify)
    jobs = [(g.factors, k1, x, stratify) for x in range(n - k1 + 1)]
    total = _Tally([0] * (n + 1), [0] * (n + 1))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_walk_task, jobs):
            total.merge(part)
    return total


def census_smallsum(
    g: GroupSpec, k1: int, stratify: bool = False, budget: int = CENSUS_BUDGET, workers: int = 1
) -> list[CensusRecord]:
    """Exact ``|S(k1,k2,G)|`` and ``|S^-(k1,k2,G)|`` for ``k2 = 1..n``.

    ``count_sum`` uses the cumulative definition ``|A +^ A| <= k2``;
    ``count_diff`` counts ``|A - A| = k2`` exactly.  With ``stratify`` each
    set is also placed in its ``(s1, s2)`` stratum by an exact cover search
    (sum mode for ``count_sum``, diff mode for ``count_diff``).
    """
    if k1 < 1:
        raise InvalidInput(f"k1 must be positive, got {k1}")
    n = g.order
    if k1 > n:
        return []
    total = math.comb(n, k1)
    if total > budget:
        raise TooLarge(f"C({n},{k1}) = {total} subsets exceed the budget {budget}")
    t = _tally(g, k1, stratify, workers)
    if t.cover_ratios:
        log.info(
            "cover ratio s1/(k1*k2*ln k1)^(1/3) for G=%s, k1=%d: max %.4f over %d sets",
            g, k1, max(t.cover_ratios), len(t.cover_ratios),
        )
    records = []
    running = t.hat[0]
    cum_strata: dict[tuple[int, int], int] = {}
    for k2 in range(1, n + 1):
        running += t.hat[k2]
        rec = CensusRecord(k1, k2, running, t.diff[k2])
        if stratify and k1 >= 2:
            for card in (0, k2) if k2 == 1 else (k2,):
                for key, c in t.strata_sum.get(card, {}).items():
                    cum_strata[key] = cum_strata.get(key, 0) + c
            rec.strata_sum = dict(sorted(cum_strata.items()))
            rec.strata_diff = dict(sorted(t.strata_diff.get(k2, {}).items()))
        records.append(rec)
    return records


# ---------------------------------------------------------------------------
# bound evaluators


@dataclass(frozen=True)
class BoundParams:
    n: int
    k1: int
    k2: int
    s1: int = 1
    s2: int = 1
    c: float = 1.0
    omega: Optional[int] = None

    def __post_init__(self):
        if self.n < 1 or self.k1 < 1 or self.k2 < 1 or self.s1 < 1 or self.s2 < 1:
            raise InvalidInput("bound parameters must be at least 1")
        if self.c <= 0:
            raise InvalidInput("c must be positive")
        if self.omega is None:
            object.__setattr__(self, "omega", omega(self.n))


def log_binomial(n: int, k: int) -> float:
    """``ln C(n, k)`` from the exact binomial; ``-inf`` when it vanishes."""
    b = math.comb(n, k) if 0 <= k <= n else 0
    return math.log(b) if b else -math.inf


@dataclass(frozen=True)
class GBound:
    """Both branches of the small-sumset bound, in natural-log space."""

    log_prefix: float
    log_branch1: float
    log_branch2: float

    @property
    def log_value(self) -> float:
        return self.log_prefix + min(self.log_branch1, self.log_branch2)

    @property
    def log_with_branch1(self) -> float:
        return self.log_prefix + self.log_branch1

    @property
    def log_with_branch2(self) -> float:
        return self.log_prefix + self.log_branch2

    @property
    def value(self) -> float:
        return _exp(self.log_value)

    @property
    def branch1(self) -> float:
        return _exp(self.log_with_branch1)

    @property
    def branch2(self) -> float:
        return _exp(self.log_with_branch2)


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def bound_gbound(p: BoundParams) -> GBound:
    """``n^(4 k2 ln k1 / k1) * min(branch1, k1^(4 omega k1))``.

    ``branch1 = k1^(c omega (k1 k2)^(1/3) ln k1) * C(k2, k1-1) * (k1^3 + 1)``.
    """
    k1, k2 = p.k1, p.k2
    if k1 < 2:
        raise InvalidInput("the small-sumset bound needs k1 >= 2")
    lk = math.log(k1)
    prefix = 4 * k2 * lk / k1 * math.log(p.n)
    b1 = p.c * p.omega * (k1 * k2) ** (1 / 3) * lk * lk + log_binomial(k2, k1 - 1) + math.log(k1**3 + 1)
    b2 = 4 * p.omega * k1 * lk
    return GBound(prefix, b1, b2)


def bound_nfc(p: BoundParams, g_f: int) -> int:
    """``s1^(12 g s1) * C(s2, k1-1) * (k1^3 + 1)``; zero when ``s2 < k1-1``."""
    if g_f < 1:
        raise InvalidInput("g(F) must be positive")
    return p.s1 ** (12 * g_f * p.s1) * math.comb(p.s2, p.k1 - 1) * (p.k1**3 + 1)


def bound_extra(l: int, t: int) -> int:
    """``(l^3 + 1)^(t^4)``."""
    if l < 1 or t < 0:
        raise InvalidInput("need l >= 1 and t >= 0")
    return (l**3 + 1) ** (t**4)


def g_exponent(k1p: int, k2p: int, n: int, c: float = 1.0) -> float:
    """Per-``k2'`` exponent in the refined union bound (base-2 multiplier of ``k2'``)."""
    if k1p < 2 or k2p < k1p - 1:
        raise InvalidInput("need k1' >= 2 and k2' >= k1' - 1")
    lk = math.log(k1p)
    w = omega(n)
    return (
        -c * w * (k1p * lk) ** (1 / 3) * lk / k2p ** (2 / 3)
        - log_binomial(k2p, k1p - 1) / k2p
        - 4 * lk * math.log(n) / k1p
        + 0.5
        - 1 / (2 * k2p)
    )


# ---------------------------------------------------------------------------
# union bound


@dataclass(frozen=True)
class SurdSum:
    """``P + Q * sqrt(2)`` with rational ``P, Q >= 0``."""

    p: Fraction
    q: Fraction

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(2)

    def dominates(self, x: Fraction) -> bool:
        """Exact test of ``x <= P + Q sqrt(2)``."""
        r = Fraction(x) - self.p
        return r <= 0 or r * r <= 2 * self.q * self.q


def union_bound_exact(g: GroupSpec, k1: int, budget: int = CENSUS_BUDGET) -> SurdSum:
    """``sum_{k2} |S^-(k1,k2,G)| / 2^((k2-1)/2)`` as an exact surd."""
    p = Fraction(0)
    q = Fraction(0)
    for rec in census_smallsum(g, k1, budget=budget):
        if rec.k2 < k1 or not rec.count_diff:
            continue
        e = rec.k2 - 1
        if e % 2 == 0:
            p += Fraction(rec.count_diff, 2 ** (e // 2))
        else:
            # 2^(-e/2) = sqrt(2) / 2^((e+1)/2)
            q += Fraction(rec.count_diff, 2 ** ((e + 1) // 2))
    return SurdSum(p, q)


def union_bound_rhs(g: GroupSpec, k1: int, budget: int = CENSUS_BUDGET) -> float:
    return float(union_bound_exact(g, k1, budget))


# ---------------------------------------------------------------------------
# a(H)


@dataclass(frozen=True)
class AOfH:
    as_written: float
    equality_stratified: float


def a_of_h(h: GroupSpec, cap: int = AH_CAP) -> AOfH:
    """Both readings of ``a(H)``.

    As written: ``sum_{k1,k2 <= n} |S(k1,k2,H)| / 2^k2`` with the cumulative
    ``S``.  Equality-stratified: ``sum_A 2^-|A +^ A|`` over nonempty ``A``.
    """
    n = h.order
    if n > cap:
        raise TooLarge(f"|H| = {n} exceeds the a(H) cap {cap}")
    written = Fraction(0)
    exact = Fraction(0)
    for k1 in range(1, n + 1):
        t = _walk(h, k1, None, False)
        for card, c in enumerate(t.hat):
            if c:
                exact += Fraction(c, 2**card)
        running = t.hat[0]
        for k2 in range(1, n + 1):
            running += t.hat[k2]
            written += Fraction(running, 2**k2)
    return AOfH(float(written), float(exact))


def census_rows(g: GroupSpec, k1: int, records: list[CensusRecord], c: float = 1.0) -> list[dict]:
    """Flatten census records to the fixed CSV schema."""
    rows = []
    n = g.order
    for rec in records:
        bb2 = rb1 = None
        if k1 >= 2:
            gb = bound_gbound(BoundParams(n, k1, rec.k2, c=c))
            bb2 = gb.branch2
            b1 = gb.branch1
            rb1 = rec.count_sum / b1 if b1 else math.inf
        rows.append(
            dict(group=str(g), k1=k1, k2=rec.k2, s1="", s2="", count_sum=rec.count_sum,
                 count_diff=rec.count_diff, bound_branch2=bb2, ratio_branch1=rb1)
        )
        if rec.strata_sum is not None:
            keys = sorted(set(rec.strata_sum) | set(rec.strata_diff or {}))
            for s1, s2 in keys:
                rows.append(
                    dict(group=str(g), k1=k1, k2=rec.k2, s1=s1, s2=s2,
                         count_sum=rec.strata_sum.get((s1, s2), 0),
                         count_diff=(rec.strata_diff or {}).get((s1, s2), 0),
                         bound_branch2=bb2, ratio_branch1=None)
                )
    return rows

"""Point sets and their sumsets.

A :class:`PointSet` lives in an *ambient*: a finite :class:`GroupSpec`, the
integer lattice ``Z^r`` (``r = 1`` uses plain ints), or a presented module.
All three expose the same small arithmetic surface (``add``, ``sub``,
``neg``, ``scale``, ``zero``, ``normalize``, ``sort_key``), which is all the
code below relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Union

from .errors import InvalidInput, TooLarge, TooSmall
from .groups import GroupSpec, generated_subgroup_mask
from .zmodule import PresentedModule, elementary_divisors

COVER_CAP = 14


@dataclass(frozen=True)
class IntegerLattice:
    """``Z^rank`` as an ambient for integer point sets (the rational mode)."""

    rank: int = 1

    @property
    def zero(self):
        return 0 if self.rank == 1 else (0,) * self.rank

    def normalize(self, x):
        if self.rank == 1:
            if isinstance(x, (tuple, list)):
                (x,) = x
            return int(x)
        x = tuple(int(v) for v in x)
        if len(x) != self.rank:
            raise InvalidInput(f"{x} is not a point of Z^{self.rank}")
        return x

    def add(self, a, b):
        if self.rank == 1:
            return a + b
        return tuple(u + v for u, v in zip(a, b))

    def sub(self, a, b):
        if self.rank == 1:
            return a - b
        return tuple(u - v for u, v in zip(a, b))

    def neg(self, a):
        if self.rank == 1:
            return -a
        return tuple(-u for u in a)

    def scale(self, c: int, a):
        if self.rank == 1:
            return c * a
        return tuple(c * u for u in a)

    def coords(self, a) -> tuple[int, ...]:
        return (a,) if self.rank == 1 else tuple(a)

    def sort_key(self, a):
        return a

    def __str__(self) -> str:
        return "Z" if self.rank == 1 else f"Z^{self.rank}"


INTEGERS = IntegerLattice(1)

Ambient = Union[GroupSpec, IntegerLattice, PresentedModule]


@dataclass(frozen=True)
class PointSet:
    """A finite subset of an ambient, sorted in canonical order."""

    ambient: Any
    elements: tuple = field(default=())

    def __post_init__(self):
        amb = self.ambient
        normed = {amb.normalize(x) for x in self.elements}
        object.__setattr__(self, "elements", tuple(sorted(normed, key=amb.sort_key)))

    @property
    def k1(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return self.ambient.normalize(x) in set(self.elements)

    def with_elements(self, elements: Iterable) -> "PointSet":
        return PointSet(self.ambient, tuple(elements))

    def translate(self, t) -> "PointSet":
        amb = self.ambient
        return self.with_elements(amb.add(a, t) for a in self.elements)

    def dilate(self, u: int) -> "PointSet":
        amb = self.ambient
        return self.with_elements(amb.scale(u, a) for a in self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(_fmt(x) for x in self.elements) + "}"


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(map(str, x)) + ")" if len(x) != 1 else str(x[0])
    return str(x)


def point_set(ambient, elements: Iterable) -> PointSet:
    """Build a point set, accepting bare ints for cyclic groups."""
    if isinstance(ambient, GroupSpec) and ambient.rank == 1:
        elements = [(x,) if isinstance(x, int) else x for x in elements]
    return PointSet(ambient, tuple(elements))


def integer_set(values: Iterable[int]) -> PointSet:
    return PointSet(INTEGERS, tuple(values))


# ---------------------------------------------------------------------------
# sumsets


def hat_plus(a: PointSet) -> PointSet:
    """Restricted sumset: sums of two distinct elements."""
    amb = a.ambient
    els = a.elements
    return a.with_elements(amb.add(x, y) for x, y in combinations(els, 2))


def diff_set(a: PointSet) -> PointSet:
    amb = a.ambient
    els = a.elements
    return a.with_elements(amb.sub(x, y) for x in els for y in els)


def sumset(a: PointSet, b: PointSet) -> PointSet:
    amb = a.ambient
    return a.with_elements(amb.add(x, y) for x in a.elements for y in b.elements)


def iterated_sumset(a: PointSet, l: int) -> PointSet:
    """``lA``: all sums of ``l`` elements of ``A``, repetition allowed."""
    if l < 1:
        raise InvalidInput(f"l must be positive, got {l}")
    amb = a.ambient
    current = set(a.elements)
    for _ in range(l - 1):
        current = {amb.add(s, x) for s in current for x in a.elements}
    return a.with_elements(current)


def small_doubling(a: PointSet) -> int:
    """``k2 = min(card(A +^ A), card(A - A))``."""
    return min(len(hat_plus(a)), len(diff_set(a)))


# ---------------------------------------------------------------------------
# spans


def _integer_coords(a: PointSet) -> list[list[int]]:
    amb = a.ambient
    if isinstance(amb, IntegerLattice):
        return [list(amb.coords(x)) for x in a.elements]
    return [list(x) for x in a.elements]


def span_key(a: PointSet):
    """A value that is equal for two subsets of one ambient iff their spans agree.

    Finite groups: the bitmask of the generated subgroup.  Integer lattices
    (rational mode): the rational span, compared through the reduced row
    echelon form.
    """
    amb = a.ambient
    if isinstance(amb, GroupSpec):
        return generated_subgroup_mask(amb, a.elements)
    if isinstance(amb, PresentedModule) and amb.is_finite:
        return frozenset(_finite_span(amb, a.elements))
    return _rational_rref(_integer_coords(a))


def _finite_span(h: PresentedModule, gens) -> set:
    seen = {h.zero}
    frontier = [h.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = h.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _rational_rref(rows: list[list[int]]) -> tuple:
    from fractions import Fraction

    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    piv_row = 0
    for c in range(ncols):
        p = next((i for i in range(piv_row, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[piv_row], m[p] = m[p], m[piv_row]
        pv = m[piv_row][c]
        m[piv_row] = [x / pv for x in m[piv_row]]
        for i in range(len(m)):
            if i != piv_row and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[piv_row])]
        piv_row += 1
    return tuple(tuple(r) for r in m[:piv_row])


def same_span(x: PointSet, b: PointSet) -> bool:
    return span_key(x) == span_key(b)


def rational_rank(a: PointSet) -> int:
    rows = _integer_coords(a)
    if not rows:
        return 0
    return sum(1 for d in elementary_divisors(rows) if d)


# ---------------------------------------------------------------------------
# greedy spanning subset


def spanning_level(k1: int) -> int:
    """``l = max(1, floor(ln k1))``."""
    return max(1, int(math.floor(math.log(k1))))


def spanning_bound(k1: int, k2: int) -> float:
    """``4 k2 ln(k1) / k1``."""
    return 4 * k2 * math.log(k1) / k1


def spanning_subset(b: PointSet) -> PointSet:
    """Maximal ``X`` inside ``B`` whose increasing ``l``-fold sums are distinct.

    Elements are scanned in canonical order and kept greedily.  Every
    discarded element then lies in ``hX - (h-1)X``, so ``<X> = <B>``.
    """
    k1 = len(b)
    if k1 < 2:
        raise TooSmall(f"spanning_subset needs at least 2 elements, got {k1}")
    l = spanning_level(k1)
    amb = b.ambient
    kept: list = []
    l_sums: set = set()
    for x in b.elements:
        if len(kept) + 1 < l:
            kept.append(x)
            continue
        new = []
        for rest in combinations(kept, l - 1):
            s = x
            for y in rest:
                s = amb.add(s, y)
            new.append(s)
        if len(set(new)) == len(new) and l_sums.isdisjoint(new):
            kept.append(x)
            l_sums.update(new)
    return b.with_elements(kept)


def plunnecke_bound(k1: int, k2: int, l: int) -> float:
    """``((k2 + k1) / k1)^l * k1``."""
    return ((k2 + k1) / k1) ** l * k1


# ---------------------------------------------------------------------------
# minimal cover sets


@dataclass(frozen=True)
class CoverWitness:
    """``A0`` of least size (then least ``s2``) covering a translate of ``A``.

    sum mode:  ``a* + (A \\ {a*})`` lies in ``A0 +^ A0`` and ``s2 = card(A0 +^ A0)``.
    diff mode: ``a* - A`` lies in ``A0 - A0`` and ``s2 = card(A0 - A0)``.
    """

    mode: str
    a_star: Any
    A0: PointSet
    s1: int
    s2: int

    def verify(self, a: PointSet) -> bool:
        amb = a.ambient
        if self.mode == "sum":
            target = {amb.add(self.a_star, x) for x in a.elements if x != self.a_star}
            return target <= set(hat_plus(self.A0).elements)
        target = {amb.sub(self.a_star, x) for x in a.elements}
        return target <= set(diff_set(self.A0).elements)


def minimal_cover_set(a: PointSet, mode: str = "sum", cap: int = COVER_CAP) -> CoverWitness:
    """Exhaustive search for the cover witness ``(a*, A0)`` of ``A``.

    Subsets are tried by increasing size; at the first size with a witness
    the one with the smallest ``s2`` wins, ties broken lexicographically on
    the sorted ``A0`` and then on ``a*``.
    """
    if mode not in ("sum", "diff"):
        raise InvalidInput(f"mode must be 'sum' or 'diff', got {mode!r}")
    k1 = len(a)
    if k1 < 2:
        raise TooSmall(f"minimal_cover_set needs at least 2 elements, got {k1}")
    if k1 > cap:
        raise TooLarge(f"cover search over 2^{k1} subsets exceeds cap 2^{cap}")
    amb = a.ambient
    els = a.elements
    # bit-encode every value that can appear as a pairwise sum or difference
    if mode == "sum":
        values = {amb.add(x, y) for x, y in combinations(els, 2)}
    else:
        values = {amb.sub(x, y) for x in els for y in els}
    bit = {v: 1 << i for i, v in enumerate(sorted(values, key=amb.sort_key))}
    if mode == "sum":
        pair = [[bit[amb.add(x, y)] if i != j else 0 for j, y in enumerate(els)] for i, x in enumerate(els)]
        targets = []
        for i in range(k1):
            m = 0
            for j in range(k1):
                if j != i:
                    m |= pair[i][j]
            targets.append(m)
    else:
        pair = [[bit[amb.sub(x, y)] for y in els] for x in els]
        targets = []
        for i in range(k1):
            m = 0
            for j in range(k1):
                m |= pair[i][j]
            targets.append(m)

    for s1 in range(1, k1 + 1):
        best = None
        for idx in combinations(range(k1), s1):
            m = 0
            if mode == "sum":
                for u, v in combinations(idx, 2):
                    m |= pair[u][v]
            else:
                for u in idx:
                    row = pair[u]
                    for v in idx:
                        m |= row[v]
            star = next((i for i in range(k1) if targets[i] & ~m == 0), None)
            if star is None:
                continue
            s2 = m.bit_count()
            if best is None or s2 < best[0]:
                best = (s2, idx, star)
        if best is not None:
            s2, idx, star = best
            return CoverWitness(mode, els[star], a.with_elements(els[i] for i in idx), s1, s2)
    raise AssertionError("A itself is always a cover")  # pragma: no cover


def cover_ratio(s1: int, k1: int, k2: int) -> float:
    """``s1 / (k1 k2 ln k1)^(1/3)``; reported, never thresholded."""
    denom = (k1 * k2 * math.log(k1)) ** (1 / 3) if k1 > 1 else 0.0
    return s1 / denom if denom else math.inf

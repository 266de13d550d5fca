"""Freiman homomorphisms, relation lattices and the universal ambient module.

An ``s``-relation of ``A = {a_1, ..., a_k}`` is an integer vector
``v = e_{i_1} + ... + e_{i_s} - e_{j_1} - ... - e_{j_s}`` with
``sum v_i a_i = 0``.  Relations are enumerated from multisets of size ``s``
grouped by their sum, so the cost is governed by ``C(k+s-1, s)``.

Two ordered sets are Freiman ``s``-isomorphic exactly when their relation
sets coincide, which is what every check below reduces to.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from typing import Any, Optional, Sequence, Union

from .errors import InvalidInput, PreconditionViolation, TooLarge
from .groups import GroupSpec, factorize, omega
from .sumset import INTEGERS, IntegerLattice, PointSet, diff_set, hat_plus
from .zmodule import (
    PresentedModule,
    complement_generators,
    element_order,
    elementary_divisors,
    module_rank,
    quotient_presentation,
    submodule,
    submodule_rank,
)

MULTISET_CAP = 500
HOM_BUDGET = 10**6
ISO_CAP = 8

Ring = Union[int, str, None]


def multiset_count(k: int, s: int) -> int:
    return math.comb(k + s - 1, s)


def _check_cap(k: int, s: int, cap: int) -> None:
    if s < 1:
        raise InvalidInput(f"s must be positive, got {s}")
    m = multiset_count(k, s)
    if m > cap:
        raise TooLarge(f"{m} multisets of size {s} from {k} points exceed the cap {cap}")


def _sum_classes(elements: Sequence, ambient, s: int) -> dict[Any, list[tuple[int, ...]]]:
    """Multisets of size ``s`` (as count vectors) grouped by their sum."""
    k = len(elements)
    classes: dict[Any, list[tuple[int, ...]]] = defaultdict(list)
    for combo in combinations_with_replacement(range(k), s):
        total = ambient.zero
        counts = [0] * k
        for i in combo:
            total = ambient.add(total, elements[i])
            counts[i] += 1
        classes[total].append(tuple(counts))
    return classes


def _relations_of(elements: Sequence, ambient, s: int) -> frozenset[tuple[int, ...]]:
    out = set()
    for group in _sum_classes(elements, ambient, s).values():
        for i, u in enumerate(group):
            for w in group[i + 1 :]:
                v = tuple(a - b for a, b in zip(u, w))
                out.add(v)
                out.add(tuple(-x for x in v))
    return frozenset(out)


def _multiset_partition(elements: Sequence, ambient, s: int) -> frozenset[frozenset[tuple[int, ...]]]:
    return frozenset(frozenset(g) for g in _sum_classes(elements, ambient, s).values())


@dataclass(frozen=True)
class RelationSet:
    s: int
    k1: int
    vectors: frozenset[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(sorted(self.vectors))

    def matrix(self) -> list[list[int]]:
        return [list(v) for v in sorted(self.vectors)]


def relation_vectors(a: PointSet, s: int, cap: int = MULTISET_CAP) -> RelationSet:
    """All nonzero ``s``-relations satisfied by ``A``, closed under negation."""
    _check_cap(len(a), s, cap)
    return RelationSet(s, len(a), _relations_of(a.elements, a.ambient, s))


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class FreimanMap:
    """A map from the points of ``domain`` (in their canonical order) into ``target``."""

    domain: PointSet
    target: Any
    images: tuple

    def __post_init__(self):
        if len(self.images) != len(self.domain):
            raise InvalidInput("map must assign exactly one image per domain point")
        object.__setattr__(self, "images", tuple(self.target.normalize(x) for x in self.images))

    @classmethod
    def from_dict(cls, domain: PointSet, target, mapping: dict) -> "FreimanMap":
        amb = domain.ambient
        norm = {amb.normalize(k): v for k, v in mapping.items()}
        return cls(domain, target, tuple(norm[x] for x in domain.elements))

    def __call__(self, x):
        return self.images[self.domain.elements.index(self.domain.ambient.normalize(x))]

    def image(self) -> PointSet:
        return PointSet(self.target, self.images)

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)


def is_freiman_hom(f: FreimanMap, s: int) -> bool:
    """Every ``s``-term relation in the domain holds for the images."""
    if s < 1:
        raise InvalidInput(f"s must be positive, got {s}")
    dom = f.domain
    amb, tgt = dom.ambient, f.target
    seen: dict = {}
    k = len(dom)
    for combo in combinations_with_replacement(range(k), s):
        ds = amb.zero
        ts = tgt.zero
        for i in combo:
            ds = amb.add(ds, dom.elements[i])
            ts = tgt.add(ts, f.images[i])
        prev = seen.setdefault(ds, ts)
        if prev != ts:
            return False
    return True


def is_freiman_iso(f: FreimanMap, s: int) -> bool:
    """Bijective onto its image with an ``s``-homomorphic inverse."""
    if not f.is_injective:
        return False
    dom = f.domain
    return _multiset_partition(dom.elements, dom.ambient, s) == _multiset_partition(
        f.images, f.target, s
    )


# ---------------------------------------------------------------------------
# universal ambient


def _resolve_ring(a: PointSet, ring: Ring) -> Optional[int]:
    """Modulus for the ring, or ``None`` for the rationals."""
    amb = a.ambient
    if ring in ("Q", "q", "rational"):
        if isinstance(amb, GroupSpec):
            raise InvalidInput("a subset of a finite group has no rational ambient; use Z/m")
        return None
    if ring is None:
        if isinstance(amb, GroupSpec):
            return amb.exponent
        if isinstance(amb, PresentedModule) and amb.is_finite:
            return amb.exponent
        return None
    m = int(ring)
    if isinstance(amb, IntegerLattice):
        raise InvalidInput("integer point sets use the rational ring")
    exp = amb.exponent
    if m % exp:
        raise InvalidInput(f"Z/{m} does not act on a group of exponent {exp}")
    return m


@dataclass(frozen=True)
class AmbientModel:
    """``A`` realized as ``A_{r,s}``: the images of the basis in ``F^k / <R_s(A)>``."""

    source: PointSet
    s: int
    modulus: Optional[int]
    relations: RelationSet
    module: PresentedModule

    @property
    def images(self) -> tuple[tuple[int, ...], ...]:
        return self.module.basis_images

    @property
    def ring(self) -> str:
        return "Q" if self.modulus is None else f"Z/{self.modulus}"

    def image_set(self) -> PointSet:
        return PointSet(self.module, self.images)

    def as_map(self) -> FreimanMap:
        """The isomorphism ``a_i -> e_i bar``."""
        return FreimanMap(self.source, self.module, self.images)

    @property
    def rank(self) -> int:
        return module_rank(self.module)


def universal_ambient(a: PointSet, s: int = 2, ring: Ring = None, cap: int = MULTISET_CAP) -> AmbientModel:
    """Quotient of ``F^k`` by the ``s``-relations of ``A``.

    ``ring`` is ``"Q"`` or a modulus ``m`` (default: the exponent of a
    finite ambient, the rationals for integer sets).  The result is checked
    to carry the same relations as ``A``.
    """
    m = _resolve_ring(a, ring)
    rel = relation_vectors(a, s, cap=cap)
    module = quotient_presentation(len(a), rel.matrix(), m)
    model = AmbientModel(a, s, m, rel, module)
    if _relations_of(model.images, module, s) != rel.vectors:
        raise AssertionError("universal ambient does not reproduce the relations of A")
    return model


def freiman_rank(a: PointSet, s: int = 2, ring: Ring = None, cap: int = MULTISET_CAP) -> int:
    """``r(<A_{r,s}>) - 1``."""
    return universal_ambient(a, s, ring, cap=cap).rank - 1


def g_of_ring(modulus: Optional[int]) -> int:
    """1 for the rationals (and prime fields), ``omega(m)`` for ``Z/m``."""
    if modulus is None:
        return 1
    return max(1, omega(modulus))


# ---------------------------------------------------------------------------
# Hom_2 enumeration


@dataclass
class HomEnumeration:
    count: int
    maps: Optional[list[tuple]] = None


def _group_index_tables(g: GroupSpec, max_coeff: int):
    n = g.order
    table = g.add_table
    neg = g.neg_table
    mult = {}
    for c in range(-max_coeff, max_coeff + 1):
        row = []
        for x in range(n):
            row.append(g.index(g.scale(c, g.element(x))))
        mult[c] = row
    return table, neg, mult


def _point_order(k: int, vectors: list[tuple[int, ...]]) -> list[int]:
    """Greedy order that closes as many relations as early as possible."""
    supports = [frozenset(i for i, x in enumerate(v) if x) for v in vectors]
    touching = [sum(1 for s in supports if i in s) for i in range(k)]
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < k:
        best = None
        for p in range(k):
            if p in placed:
                continue
            closed = sum(1 for s in supports if p in s and s <= placed | {p})
            key = (-closed, -touching[p], p)
            if best is None or key < best:
                best = key
        order.append(best[2])
        placed.add(best[2])
    return order


def _lattice_signature(rows: list[tuple[int, ...]], k: int) -> tuple[int, int]:
    d = [x for x in elementary_divisors([list(r) for r in rows], k) if x] if rows else []
    return len(d), math.prod(d)


def _generating_relations(vectors: list[tuple[int, ...]], k: int) -> list[tuple[int, ...]]:
    """A subset of ``vectors`` generating the same lattice, earliest-closing first."""
    def last(v):
        return max(i for i, x in enumerate(v) if x)

    kept: list[tuple[int, ...]] = []
    sig = (0, 1)
    for v in sorted(vectors, key=lambda v: (last(v), v)):
        new = _lattice_signature(kept + [v], k)
        if new != sig:
            kept.append(v)
            sig = new
    return kept


def enumerate_hom2(
    a: PointSet, g: GroupSpec, budget: int = HOM_BUDGET, collect: bool = False, s: int = 2
) -> HomEnumeration:
    """Count Freiman ``s``-homomorphisms ``A -> G`` (``s = 2`` by default).

    A map kills every relation iff it kills a generating set of the relation
    lattice, so only such a subset is checked.  Points are visited in an
    order that closes relations early; a closed relation pins the image of
    its last point to the solutions of one linear equation in ``G``.
    Points in no relation contribute a factor ``|G|`` each.
    """
    k = len(a)
    rel = relation_vectors(a, s)
    rank = module_rank(quotient_presentation(k, rel.matrix(), _resolve_ring(a, None)))
    if g.order ** max(rank, 0) > budget:
        raise TooLarge(f"|G|^rank = {g.order}^{rank} exceeds the budget {budget}")
    n = g.order
    half = sorted(v for v in rel.vectors if v < tuple(-x for x in v))
    order = _point_order(k, half)
    permuted = [tuple(v[p] for p in order) for v in half]
    gens = _generating_relations(permuted, k)
    used = set()
    for v in gens:
        used.update(i for i, x in enumerate(v) if x)
    depth = max(used) + 1 if used else 0
    free = k - depth
    if collect:
        depth, free = k, 0

    table, neg, mult = _group_index_tables(g, s)
    zero = g.index(g.zero)
    solve: dict[int, dict[int, list[int]]] = {}
    for c, row in mult.items():
        sol: dict[int, list[int]] = {}
        for x, y in enumerate(row):
            sol.setdefault(y, []).append(x)
        solve[c] = sol
    by_last: list[list[tuple[int, ...]]] = [[] for _ in range(k)]
    for v in gens:
        by_last[max(i for i, x in enumerate(v) if x)].append(v)

    count = 0
    maps: Optional[list[tuple]] = [] if collect else None
    chosen = [0] * k
    everything = list(range(n))

    def partial(v, i: int) -> int:
        acc = zero
        for j in range(i):
            c = v[j]
            if c:
                acc = table[acc][mult[c][chosen[j]]]
        return acc

    def rec(i: int) -> None:
        nonlocal count
        if i == depth:
            count += 1
            if maps is not None:
                images = [None] * k
                for pos, p in enumerate(order):
                    images[p] = g.element(chosen[pos])
                maps.append(tuple(images))
            return
        checks = by_last[i]
        if not checks:
            candidates = everything
        else:
            first = checks[0]
            candidates = solve[first[i]].get(neg[partial(first, i)], [])
            rest = checks[1:]
            if rest:
                targets = [(v[i], neg[partial(v, i)]) for v in rest]
                candidates = [x for x in candidates if all(mult[c][x] == t for c, t in targets)]
        for x in candidates:
            chosen[i] = x
            rec(i + 1)

    rec(0)
    return HomEnumeration(count * n**free, sorted(maps) if maps is not None else None)


def hom_count_closed_form(a: PointSet, g: GroupSpec, s: int = 2) -> int:
    """``|Hom(<A_{r,s}>, G)|`` as a product of gcds."""
    from .zmodule import hom_count

    return hom_count(universal_ambient(a, s).module, g)


# ---------------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.isomorphic


def are_freiman_isomorphic(a: PointSet, b: PointSet, s: int = 2, cap: int = ISO_CAP) -> IsoResult:
    """Search for a bijection ``A -> B`` that matches the ``s``-relations exactly.

    Backtracking over bijections; a partial assignment is abandoned as soon
    as a relation of ``A`` supported on assigned points fails to map to a
    relation of ``B``.
    """
    k = len(a)
    if k != len(b):
        return IsoResult(False)
    if k > cap:
        raise TooLarge(f"bijection search on {k} points exceeds cap {cap}")
    ra = relation_vectors(a, s).vectors
    rb = relation_vectors(b, s).vectors
    if len(ra) != len(rb):
        return IsoResult(False)
    by_last: list[list[tuple[int, ...]]] = [[] for _ in range(k)]
    for v in ra:
        support = [i for i, x in enumerate(v) if x]
        by_last[max(support)].append(v)
    sigma = [-1] * k
    used = [False] * k

    def ok(i: int) -> bool:
        for v in by_last[i]:
            w = [0] * k
            for j, c in enumerate(v):
                if c:
                    w[sigma[j]] = c
            if tuple(w) not in rb:
                return False
        return True

    def rec(i: int) -> bool:
        if i == k:
            return True
        for j in range(k):
            if used[j]:
                continue
            sigma[i] = j
            used[j] = True
            if ok(i) and rec(i + 1):
                return True
            used[j] = False
        sigma[i] = -1
        return False

    if rec(0):
        return IsoResult(True, {a.elements[i]: b.elements[sigma[i]] for i in range(k)})
    return IsoResult(False)


def canonical_key(a: PointSet, s: int = 2, cap: int = ISO_CAP) -> tuple:
    """Invariant of the ``s``-isomorphism class.

    The Smith invariants of the relation lattice, then the lexicographically
    least sorted relation set over all relabelings of the points.
    """
    k = len(a)
    if k > cap:
        raise TooLarge(f"permutation search on {k} points exceeds cap {cap}")
    rel = relation_vectors(a, s)
    vecs = sorted(rel.vectors)
    snf = tuple(elementary_divisors(rel.matrix(), k)) if vecs else ()
    best = None
    for perm in permutations(range(k)):
        cand = tuple(sorted(tuple(v[perm[j]] for j in range(k)) for v in vecs))
        if best is None or cand < best:
            best = cand
    return (k, snf, best)


@dataclass
class Classification:
    classes: list[list[PointSet]]
    keys: list[tuple]
    bound: int

    @property
    def count(self) -> int:
        return len(self.classes)


def dependence_bound(k: int, s: int, g: int) -> int:
    """``k^(2 s g k)``: classes of ``k``-sets up to ``s``-isomorphism."""
    return k ** (2 * s * g * k)


def classify_iso_classes(sets: Sequence[PointSet], s: int = 2, modulus: Ring = None) -> Classification:
    """Partition ``sets`` into Freiman ``s``-isomorphism classes."""
    buckets: dict[tuple, list[PointSet]] = {}
    ks = set()
    mods = set()
    for a in sets:
        ks.add(len(a))
        if isinstance(a.ambient, GroupSpec):
            mods.add(a.ambient.exponent)
        buckets.setdefault(canonical_key(a, s), []).append(a)
    keys = sorted(buckets)
    if modulus in ("Q", "q"):
        g = 1
    elif modulus is not None:
        g = g_of_ring(int(modulus))
    else:
        g = max((g_of_ring(m) for m in mods), default=1)
    k = max(ks, default=0)
    return Classification([buckets[key] for key in keys], keys, dependence_bound(k, s, g) if k else 1)


# ---------------------------------------------------------------------------
# small generating subsets over Z/m


def _gcd_list(xs, m: int) -> int:
    g = m
    for x in xs:
        g = math.gcd(g, x)
    return g


def _first_coordinate_generators(values: Sequence[int], m: int) -> list[int]:
    """Indices ``r_p`` (one per prime ``p`` dividing the subgroup order)."""
    step = _gcd_list(values, m)  # <values> = step * Z/m, of order m/step
    d = m // step
    chosen: list[int] = []
    for p in sorted(factorize(d)):
        for idx, x in enumerate(values):
            if x % m and (x % m // step) % p:
                if idx not in chosen:
                    chosen.append(idx)
                break
    return chosen


def _solve_combination(values: Sequence[int], target: int, m: int) -> list[int]:
    """Integers ``c`` with ``sum c_i values_i = target (mod m)``."""
    coeffs = [0] * len(values)
    g = m
    # express gcd(m, values...) as a combination, one value at a time
    acc_coeffs: list[int] = []
    acc_g = m
    for x in values:
        g2, u, v = _ext_gcd(acc_g, x)
        acc_coeffs = [c * u for c in acc_coeffs] + [v]
        acc_g = g2
    g = acc_g
    if target % g:
        raise AssertionError("target not in the generated subgroup")
    q = target // g
    for i, c in enumerate(acc_coeffs):
        coeffs[i] = c * q % m
    return coeffs


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def small_generating_subset(r: Sequence[Sequence[int]], m: int) -> list[tuple[int, ...]]:
    """Subset ``R0`` of ``R`` inside ``(Z/m)^k`` with ``<R0> = <R>``.

    Coordinate by coordinate: pick generators of the projection of ``<R>``
    onto the first coordinate (one per prime), subtract their combinations
    to clear that coordinate from every vector, then recurse.  The result
    has at most ``omega(m) * k`` elements.
    """
    vecs = [tuple(x % m for x in v) for v in r]
    if not vecs:
        return []
    chosen = _small_gen_indices(vecs, m, list(range(len(vecs))))
    out = []
    for i in sorted(set(chosen)):
        if vecs[i] not in out:
            out.append(vecs[i])
    return out


def _small_gen_indices(vecs: list[tuple[int, ...]], m: int, ids: list[int]) -> list[int]:
    if not vecs or not vecs[0]:
        return []
    firsts = [v[0] for v in vecs]
    head = _first_coordinate_generators(firsts, m)
    head_vals = [firsts[i] for i in head]
    residual = []
    for v in vecs:
        if head:
            coeffs = _solve_combination(head_vals, v[0], m)
            w = list(v)
            for c, hi in zip(coeffs, head):
                hv = vecs[hi]
                for t in range(len(w)):
                    w[t] = (w[t] - c * hv[t]) % m
        else:
            w = list(v)
        assert w[0] == 0
        residual.append(tuple(w[1:]))
    tail = _small_gen_indices(residual, m, ids)
    return [ids[i] for i in head] + [ids[i] for i in tail]


def span_mod(vectors: Sequence[Sequence[int]], m: int, k: int) -> frozenset[tuple[int, ...]]:
    """Subgroup of ``(Z/m)^k`` generated by ``vectors`` (closure)."""
    zero = (0,) * k
    gens = [tuple(x % m for x in v) for v in vectors]
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % m for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


# ---------------------------------------------------------------------------
# structural checks on the ambient model


def difference_module(model: AmbientModel) -> PresentedModule:
    """``H_A = <e_2 - e_1, ..., e_k - e_1>`` inside ``<A_{r,s}>``."""
    h = model.module
    e = model.images
    return submodule(h, [h.sub(x, e[0]) for x in e[1:]])


def difference_rank(model: AmbientModel) -> int:
    h = model.module
    e = model.images
    return submodule_rank(h, [h.sub(x, e[0]) for x in e[1:]])


def image_orders(model: AmbientModel) -> list[Optional[int]]:
    return [element_order(model.module, x) for x in model.images]


def generating_set_with_first(model: AmbientModel) -> list[tuple[int, ...]]:
    """A generating set of ``<A_{r,s}>`` of minimum size that contains ``e_1``."""
    h = model.module
    x = model.images[0]
    return [x] + complement_generators(h, x)


def generates(h: PresentedModule, gens: Sequence[Sequence[int]]) -> bool:
    """Whether ``gens`` span the whole of a finite module ``h``."""
    sub = submodule(h, gens)
    if h.is_finite:
        return sub.order == h.order
    raise InvalidInput("generation test is implemented for finite modules only")


def translate_rank(x: PointSet) -> int:
    """Rank of ``<X - x_1>`` inside a finite group ambient."""
    amb = x.ambient
    if isinstance(amb, GroupSpec):
        h = PresentedModule(0, amb.factors)
    elif isinstance(amb, PresentedModule):
        h = amb
    else:
        first = x.elements[0]
        rows = [list(amb.coords(amb.sub(y, first))) for y in x.elements[1:]]
        return sum(1 for d in elementary_divisors(rows, amb.rank) if d) if rows else 0
    first = x.elements[0]
    return submodule_rank(h, [amb.sub(y, first) for y in x.elements[1:]])


# ---------------------------------------------------------------------------
# descent


@dataclass(frozen=True)
class DescentResult:
    sum_ok: bool
    diff_ok: bool

    def __bool__(self) -> bool:
        return self.sum_ok and self.diff_ok


def _induced(x: PointSet, f: FreimanMap, op: str, target_set: PointSet) -> Optional[FreimanMap]:
    amb, tgt = x.ambient, f.target
    pairs = {}
    els = x.elements
    for i, u in enumerate(els):
        for j, w in enumerate(els):
            if op == "sum" and i >= j:
                continue
            key = amb.add(u, w) if op == "sum" else amb.sub(u, w)
            val = tgt.add(f.images[i], f.images[j]) if op == "sum" else tgt.sub(f.images[i], f.images[j])
            if pairs.setdefault(key, val) != val:
                return None
    dom = PointSet(amb, tuple(pairs))
    fm = FreimanMap(dom, tgt, tuple(pairs[k] for k in dom.elements))
    if set(fm.images) != set(target_set.elements):
        return None
    return fm


def descent_check(x: PointSet, x2: PointSet, f: FreimanMap) -> DescentResult:
    """Given a 6-isomorphism ``X -> X'``, test the induced 3-isomorphisms.

    ``x + y -> f(x) + f(y)`` on ``X +^ X`` and ``x - y -> f(x) - f(y)`` on
    ``X - X`` must both be well defined and 3-isomorphisms onto
    ``X' +^ X'`` and ``X' - X'``.
    """
    if f.domain != x or set(f.images) != set(x2.elements) or not is_freiman_iso(f, 6):
        raise PreconditionViolation("f is not a Freiman 6-isomorphism from X onto X'")
    s_map = _induced(x, f, "sum", hat_plus(x2))
    d_map = _induced(x, f, "diff", diff_set(x2))
    return DescentResult(
        s_map is not None and is_freiman_iso(s_map, 3),
        d_map is not None and is_freiman_iso(d_map, 3),
    )


def modular_image(x: PointSet, modulus: int) -> tuple[PointSet, FreimanMap]:
    """Reduce an integer set mod ``modulus`` as a map into ``Z/modulus``."""
    from .groups import cyclic

    if not isinstance(x.ambient, IntegerLattice) or x.ambient.rank != 1:
        raise InvalidInput("modular_image expects a set of integers")
    g = cyclic(modulus)
    images = tuple((v % modulus,) for v in x.elements)
    return PointSet(g, images), FreimanMap(x, g, images)


def as_group(h: PresentedModule) -> GroupSpec:
    if not h.is_finite:
        raise InvalidInput("module is infinite")
    return GroupSpec(h.torsion_factors)


__all__ = [
    "AmbientModel",
    "AnalogousReport",
    "analogous_check",
    "Classification",
    "DescentResult",
    "FreimanMap",
    "HomEnumeration",
    "INTEGERS",
    "IsoResult",
    "RelationSet",
    "are_freiman_isomorphic",
    "as_group",
    "canonical_key",
    "classify_iso_classes",
    "dependence_bound",
    "descent_check",
    "difference_module",
    "difference_rank",
    "enumerate_hom2",
    "freiman_rank",
    "g_of_ring",
    "generates",
    "generating_set_with_first",
    "hom_count_closed_form",
    "image_orders",
    "is_freiman_hom",
    "is_freiman_iso",
    "modular_image",
    "relation_vectors",
    "small_generating_subset",
    "span_mod",
    "translate_rank",
    "universal_ambient",
]


@dataclass(frozen=True)
class AnalogousReport:
    freiman_rank: int
    translate_generated_rank: int
    images: int
    max_image_rank: int

    def __bool__(self) -> bool:
        return self.translate_generated_rank == self.freiman_rank and self.max_image_rank <= self.freiman_rank


def analogous_check(a: PointSet, s: int = 2, budget: int = HOM_BUDGET) -> AnalogousReport:
    """Rank of ``A`` against the ranks of its ``s``-isomorphic copies in the same group.

    The translate ``{0, e_2 - e_1, ...}`` of the ambient image must generate
    a module of rank ``r_s(A)``, and every ``s``-isomorphic copy ``B`` of
    ``A`` inside the ambient group of ``A`` must satisfy
    ``rank <B - b_1> <= r_s(A)``.
    """
    g = a.ambient
    if not isinstance(g, GroupSpec):
        raise InvalidInput("analogous_check enumerates images inside a finite group")
    model = universal_ambient(a, s)
    r = model.rank - 1
    hr = difference_rank(model)
    maps = enumerate_hom2(a, g, budget=budget, collect=True, s=s).maps or []
    partition = _multiset_partition(a.elements, g, s)
    worst = 0
    count = 0
    for images in maps:
        if len(set(images)) != len(images):
            continue
        if _multiset_partition(images, g, s) != partition:
            continue
        count += 1
        first = images[0]
        rank = submodule_rank(PresentedModule(0, g.factors), [g.sub(y, first) for y in images[1:]])
        worst = max(worst, rank)
    return AnalogousReport(r, hr, count, worst)

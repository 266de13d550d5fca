"""Finite abelian groups as invariant-factor chains.

Elements are tuples of residues, one per invariant factor.  Each element
also has a mixed-radix index in ``[0, n)`` (first coordinate most
significant), so sorting tuples and sorting indices agree.  Dense subsets
are stored as integer bitmasks over these indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, NamedTuple, Sequence

from .errors import GroupMismatch, InvalidFactor, InvalidInput, TooLarge

Element = tuple[int, ...]

SUBGROUP_CAP = 64


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise InvalidInput(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def omega(n: int) -> int:
    """Number of distinct prime divisors of ``n``."""
    if n < 1:
        raise InvalidInput(f"omega undefined for {n}")
    return len(factorize(n))


def _invariant_factors(cyclic: Sequence[int]) -> tuple[int, ...]:
    # split into prime powers, then recombine the largest powers of each prime
    powers: dict[int, list[int]] = {}
    for c in cyclic:
        for p, e in factorize(c).items():
            powers.setdefault(p, []).append(p**e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    chain = [1] * length
    for p, vals in powers.items():
        vals.sort(reverse=True)
        for i, q in enumerate(vals):
            chain[length - 1 - i] *= q
    return tuple(chain)


@dataclass(frozen=True)
class GroupSpec:
    """``Z/d_1 x ... x Z/d_r`` with ``d_1 | ... | d_r`` and every ``d_i >= 2``."""

    factors: tuple[int, ...]

    def __post_init__(self):
        for d in self.factors:
            if d < 2:
                raise InvalidFactor(f"invariant factor {d} < 2; use make_group to normalize")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise InvalidFactor(f"{self.factors} is not a divisibility chain")

    # -- invariants ------------------------------------------------------------

    @property
    def order(self) -> int:
        return prod(self.factors)

    n = order

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @property
    def omega(self) -> int:
        return omega(self.order)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return ",".join(map(str, self.factors)) if self.factors else "1"

    def pretty(self) -> str:
        return " x ".join(f"Z/{d}" for d in self.factors) if self.factors else "0"

    # -- elements --------------------------------------------------------------

    @property
    def zero(self) -> Element:
        return (0,) * len(self.factors)

    def normalize(self, g: Iterable[int]) -> Element:
        g = tuple(g)
        if len(g) != len(self.factors):
            raise GroupMismatch(f"element {g} has {len(g)} coordinates, group {self} has {len(self.factors)}")
        return tuple(x % d for x, d in zip(g, self.factors))

    def add(self, g: Element, h: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(g, h, self.factors))

    def sub(self, g: Element, h: Element) -> Element:
        return tuple((a - b) % d for a, b, d in zip(g, h, self.factors))

    def neg(self, g: Element) -> Element:
        return tuple(-a % d for a, d in zip(g, self.factors))

    def scale(self, c: int, g: Element) -> Element:
        return tuple(c * a % d for a, d in zip(g, self.factors))

    def order_of(self, g: Element) -> int:
        return lcm(1, *(d // gcd(d, a) for a, d in zip(g, self.factors)))

    def sort_key(self, g: Element) -> Element:
        return g

    def index(self, g: Element) -> int:
        i = 0
        for a, d in zip(g, self.factors):
            i = i * d + a
        return i

    def element(self, i: int) -> Element:
        out = []
        for d in reversed(self.factors):
            i, a = divmod(i, d)
            out.append(a)
        return tuple(reversed(out))

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple(product(*(range(d) for d in self.factors)))

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        """``add_table[i][j]`` is the index of ``element(i) + element(j)``."""
        els = self.elements
        return tuple(tuple(self.index(self.add(g, h)) for h in els) for g in els)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.index(self.neg(g)) for g in self.elements)

    def sub_index(self, i: int, j: int) -> int:
        return self.add_table[i][self.neg_table[j]]

    def mask(self, elements: Iterable[Element]) -> int:
        m = 0
        for g in elements:
            m |= 1 << self.index(g)
        return m

    def from_mask(self, mask: int) -> list[Element]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.element(i))
            mask >>= 1
            i += 1
        return out


def make_group(cyclic_factors: Iterable[int]) -> GroupSpec:
    """Normalize a direct product of cyclic groups to its invariant factors."""
    cyclic = list(cyclic_factors)
    for c in cyclic:
        if not isinstance(c, int) or c <= 0:
            raise InvalidFactor(f"cyclic factor must be a positive integer, got {c!r}")
    return GroupSpec(_invariant_factors(cyclic))


def parse_group(spec: str) -> GroupSpec:
    """Parse ``"4,2"`` (meaning Z/4 x Z/2) into a normalized group."""
    parts = [p.strip() for p in spec.replace("x", ",").split(",")]
    if not any(parts):
        raise InvalidFactor(f"empty group spec {spec!r}")
    if not all(parts):
        raise InvalidFactor(f"unparseable group spec {spec!r}")
    try:
        factors = [int(p) for p in parts]
    except ValueError:
        raise InvalidFactor(f"unparseable group spec {spec!r}") from None
    return make_group(factors)


def cyclic(n: int) -> GroupSpec:
    return make_group([n])


class ElementOps(NamedTuple):
    sum: Element
    negation: Element
    order: int


def element_ops(group: GroupSpec, g: Element, h: Element) -> ElementOps:
    """Sum ``g + h``, negation of ``g`` and the order of ``g``."""
    g = group.normalize(g)
    h = group.normalize(h)
    return ElementOps(group.add(g, h), group.neg(g), group.order_of(g))


def _partitions(k: int, largest: int | None = None):
    if largest is None:
        largest = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def abelian_groups_of_order(n: int) -> list[GroupSpec]:
    """Every isomorphism type of abelian group of order ``n``."""
    fac = sorted(factorize(n).items())
    choices = [[tuple(p**e for e in part) for part in _partitions(a)] for p, a in fac]
    groups = set()
    for combo in product(*choices):
        groups.add(make_group([q for part in combo for q in part]))
    return sorted(groups, key=lambda g: (len(g.factors), g.factors))


# ---------------------------------------------------------------------------
# the (g, -g) pairing


@dataclass(frozen=True)
class PairPartition:
    """``G \\ {0}`` split into pairs ``{g, -g}`` and involutions ``g = -g``."""

    pairs: tuple[tuple[Element, Element], ...]
    involutions: tuple[Element, ...]

    @property
    def coin_count(self) -> int:
        return len(self.pairs) + len(self.involutions)

    def coins(self) -> tuple[tuple[Element, ...], ...]:
        """Each independent coin as the tuple of elements it switches."""
        return tuple(self.pairs) + tuple((g,) for g in self.involutions)


def pair_partition(group: GroupSpec) -> PairPartition:
    pairs = []
    involutions = []
    zero = group.zero
    for g in group.elements:
        if g == zero:
            continue
        ng = group.neg(g)
        if ng == g:
            involutions.append(g)
        elif g < ng:
            pairs.append((g, ng))
    return PairPartition(tuple(pairs), tuple(involutions))


# ---------------------------------------------------------------------------
# subgroups


def generated_subgroup_mask(group: GroupSpec, gens: Iterable[Element]) -> int:
    """Bitmask of the subgroup generated by ``gens`` (breadth-first closure)."""
    table = group.add_table
    start = group.index(group.zero)
    seen = 1 << start
    frontier = deque([start])
    gidx = sorted({group.index(group.normalize(g)) for g in gens})
    while frontier:
        x = frontier.popleft()
        row = table[x]
        for g in gidx:
            y = row[g]
            if not seen >> y & 1:
                seen |= 1 << y
                frontier.append(y)
    return seen


def _mask_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def enumerate_subgroups(group: GroupSpec, cap: int = SUBGROUP_CAP) -> list[frozenset[Element]]:
    """All subgroups, each exactly once, as element sets.

    Starts from the cyclic subgroups and closes under joins with cyclic
    subgroups until nothing new appears; every subgroup of a finite abelian
    group is a join of cyclic ones.
    """
    n = group.order
    if n > cap:
        raise TooLarge(f"|G| = {n} exceeds the subgroup enumeration cap {cap}")
    table = group.add_table
    cyclics = sorted({generated_subgroup_mask(group, [g]) for g in group.elements})
    seen = set(cyclics)
    queue = deque(cyclics)
    while queue:
        h = queue.popleft()
        h_idx = _mask_indices(h)
        for c in cyclics:
            if c & h == c:
                continue
            joined = 0
            for ci in _mask_indices(c):
                row = table[ci]
                for hi in h_idx:
                    joined |= 1 << row[hi]
            if joined not in seen:
                seen.add(joined)
                queue.append(joined)
    masks = sorted(seen, key=lambda m: (m.bit_count(), _mask_indices(m)))
    return [frozenset(group.from_mask(m)) for m in masks]


def subgroup_count(group: GroupSpec, cap: int = SUBGROUP_CAP) -> int:
    return len(enumerate_subgroups(group, cap=cap))

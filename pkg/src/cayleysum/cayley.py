"""Cayley graphs on finite abelian groups and the random connection-set model.

Vertices are group elements by mixed-radix index and neighbourhoods are
integer bitsets.  Since a Cayley graph is vertex-transitive, its clique
number is one more than the clique number of the subgraph induced on the
connection set itself (the neighbourhood of 0).
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Union

import numpy as np

from .errors import ContainsIdentity, InvalidInput, NotSymmetric, TooLarge
from .groups import GroupSpec, cyclic, factorize, pair_partition

CLIQUE_CAP = 4096
COIN_CAP = 20
Z95 = 1.959963984540054


@dataclass(frozen=True)
class ConnectionSet:
    """Symmetric subset of ``G \\ {0}`` stored as an index bitmask."""

    group: GroupSpec
    mask: int

    def __post_init__(self):
        g = self.group
        if self.mask >> g.index(g.zero) & 1:
            raise ContainsIdentity("connection set contains the identity")
        neg = g.neg_table
        for i in _bits(self.mask):
            if not self.mask >> neg[i] & 1:
                raise NotSymmetric(f"{g.element(i)} is in B but its negative is not")

    @property
    def members(self) -> list[tuple[int, ...]]:
        return self.group.from_mask(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x) -> bool:
        return bool(self.mask >> self.group.index(self.group.normalize(x)) & 1)

    def complement(self) -> "ConnectionSet":
        g = self.group
        full = (1 << g.order) - 1
        return ConnectionSet(g, full & ~self.mask & ~(1 << g.index(g.zero)))

    def __str__(self) -> str:
        return "{" + ", ".join(_fmt(x) for x in self.members) + "}"


def _fmt(x: tuple[int, ...]) -> str:
    return str(x[0]) if len(x) == 1 else "(" + ",".join(map(str, x)) + ")"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def make_connection_set(g: GroupSpec, members: Iterable) -> ConnectionSet:
    mask = 0
    for x in members:
        if isinstance(x, int):
            x = (x,)
        mask |= 1 << g.index(g.normalize(x))
    return ConnectionSet(g, mask)


def connection_complement(b: ConnectionSet) -> ConnectionSet:
    return b.complement()


@dataclass(frozen=True)
class CayleyGraph:
    group: GroupSpec
    connection: ConnectionSet

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def neighbors(self) -> tuple[int, ...]:
        return _neighbor_masks(self.group, self.connection.mask)

    def degree(self, v: int) -> int:
        return self.neighbors[v].bit_count()

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.neighbors[u] >> v & 1)

    def complement(self) -> "CayleyGraph":
        return CayleyGraph(self.group, self.connection.complement())


def _neighbor_masks(g: GroupSpec, bmask: int) -> tuple[int, ...]:
    table = g.add_table
    members = list(_bits(bmask))
    out = []
    for i in range(g.order):
        row = table[i]
        m = 0
        for b in members:
            m |= 1 << row[b]
        out.append(m)
    return tuple(out)


def cayley_graph(g: GroupSpec, members: Iterable) -> CayleyGraph:
    return CayleyGraph(g, make_connection_set(g, members))


# ---------------------------------------------------------------------------
# maximum clique


def max_clique(adj: list[int] | tuple[int, ...], candidates: Optional[int] = None) -> list[int]:
    """A maximum clique of the graph given by neighbour bitsets.

    Branch and bound: candidates are greedily coloured and a branch is cut
    as soon as the colour count cannot beat the incumbent.
    """
    if candidates is None:
        candidates = (1 << len(adj)) - 1
    best: list[int] = []
    current: list[int] = []

    def colour_order(p: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        colours: list[int] = []
        colour = 0
        uncoloured = p
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v] & ~low
                uncoloured &= ~low
                order.append(v)
                colours.append(colour)
        return order, colours

    def expand(p: int) -> None:
        nonlocal best
        order, colours = colour_order(p)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + colours[idx] <= len(best):
                return
            v = order[idx]
            current.append(v)
            np_ = p & adj[v]
            if np_:
                expand(np_)
            elif len(current) > len(best):
                best = current.copy()
            current.pop()
            p &= ~(1 << v)

    if candidates:
        expand(candidates)
    return sorted(best)


def clique_number(graph: CayleyGraph, cap: int = CLIQUE_CAP) -> int:
    """Exact clique number; 1 when the connection set is empty."""
    return _clique_number(graph.group, graph.connection.mask, cap)


def _clique_number(g: GroupSpec, bmask: int, cap: int = CLIQUE_CAP) -> int:
    if g.order > cap:
        raise TooLarge(f"{g.order} vertices exceed the clique cap {cap}")
    if not bmask:
        return 1
    adj = _neighbor_masks(g, bmask)
    return 1 + len(max_clique(adj, bmask))


def maximum_clique(graph: CayleyGraph, cap: int = CLIQUE_CAP) -> list[tuple[int, ...]]:
    """A maximum clique containing 0, as group elements."""
    g = graph.group
    if g.order > cap:
        raise TooLarge(f"{g.order} vertices exceed the clique cap {cap}")
    bmask = graph.connection.mask
    inner = max_clique(graph.neighbors, bmask) if bmask else []
    return [g.zero] + [g.element(i) for i in inner]


def independence_number(graph: CayleyGraph, cap: int = CLIQUE_CAP) -> int:
    """Independent sets of ``G_B`` are cliques of ``G_{B^c}``."""
    return clique_number(graph.complement(), cap)


# ---------------------------------------------------------------------------
# Paley graphs


def _is_prime(q: int) -> bool:
    return q >= 2 and factorize(q) == {q: 1}


def paley_connection_set(q: int) -> ConnectionSet:
    """Nonzero squares of ``Z/q`` for a prime ``q = 1 (mod 4)``."""
    if not _is_prime(q) or q % 4 != 1:
        raise InvalidInput(f"Paley graphs on Z/q need a prime q = 1 mod 4, got {q}")
    g = cyclic(q)
    return make_connection_set(g, sorted({x * x % q for x in range(1, q)}))


def paley_clique_number(q: int) -> int:
    """Clique number of the Paley graph on ``Z/q``.

    The maps ``x -> a x + b`` with ``a`` a square act transitively on edges,
    so every edge lies in a maximum clique; fix the edge ``{0, 1}`` and
    search the common neighbourhood.
    """
    b = paley_connection_set(q)
    g = b.group
    adj = _neighbor_masks(g, b.mask)
    common = adj[0] & adj[1]
    return 2 + len(max_clique(adj, common))


# ---------------------------------------------------------------------------
# random model


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial, reproducible from ``(seed, trial)``."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))


@lru_cache(maxsize=64)
def _coin_masks(g: GroupSpec) -> tuple[int, ...]:
    return tuple(g.mask(coin) for coin in pair_partition(g).coins())


def coin_count(g: GroupSpec) -> int:
    return len(_coin_masks(g))


def _mask_from_coins(coins: tuple[int, ...], bits: int) -> int:
    m = 0
    for i, c in enumerate(coins):
        if bits >> i & 1:
            m |= c
    return m


def random_connection_set(g: GroupSpec, seed: int, trial_index: int) -> ConnectionSet:
    """Each pair ``{x, -x}`` and each involution kept with probability 1/2."""
    coins = _coin_masks(g)
    flips = trial_rng(seed, trial_index).integers(0, 2, size=len(coins))
    m = 0
    for c, f in zip(coins, flips):
        if f:
            m |= c
    return ConnectionSet(g, m)


def all_connection_sets(g: GroupSpec, cap: int = COIN_CAP) -> Iterator[ConnectionSet]:
    coins = _coin_masks(g)
    if len(coins) > cap:
        raise TooLarge(f"2^{len(coins)} connection sets exceed the cap 2^{cap}")
    for bits in range(1 << len(coins)):
        yield ConnectionSet(g, _mask_from_coins(coins, bits))


@lru_cache(maxsize=64)
def _clique_distribution(g: GroupSpec, cap: int) -> tuple[tuple[int, int], ...]:
    coins = _coin_masks(g)
    if len(coins) > cap:
        raise TooLarge(f"2^{len(coins)} connection sets exceed the cap 2^{cap}")
    hist: dict[int, int] = {}
    for bits in range(1 << len(coins)):
        cl = _clique_number(g, _mask_from_coins(coins, bits))
        hist[cl] = hist.get(cl, 0) + 1
    return tuple(sorted(hist.items()))


def clique_distribution(g: GroupSpec, cap: int = COIN_CAP) -> dict[int, int]:
    """Number of connection sets with each clique number."""
    return dict(_clique_distribution(g, cap))


@dataclass(frozen=True)
class TailEstimate:
    group: GroupSpec
    k1: int
    probability: Union[Fraction, float]
    mode: str
    trials: Optional[int] = None
    seed: Optional[int] = None
    halfwidth: Optional[float] = None
    elapsed_ms: Optional[float] = None

    def record(self) -> dict:
        return dict(
            group=str(self.group), k1=self.k1, mode=self.mode, probability=float(self.probability),
            halfwidth=self.halfwidth, trials=self.trials, seed=self.seed, elapsed_ms=self.elapsed_ms,
        )


def exact_clique_tail(g: GroupSpec, k1: int, cap: int = COIN_CAP, timed: bool = False) -> TailEstimate:
    """``P(cl(B) >= k1)`` as a dyadic rational, by enumerating every ``B``."""
    if k1 < 1:
        raise InvalidInput(f"k1 must be positive, got {k1}")
    t0 = time.perf_counter()
    hist = _clique_distribution(g, cap)
    hits = sum(c for cl, c in hist if cl >= k1)
    p = Fraction(hits, 1 << coin_count(g))
    ms = (time.perf_counter() - t0) * 1e3 if timed else None
    return TailEstimate(g, k1, p, "exact", elapsed_ms=ms)


def _sample_cliques(args) -> list[tuple[int, int]]:
    factors, seed, start, stop = args
    g = GroupSpec(factors)
    full = (1 << g.order) - 1 & ~(1 << g.index(g.zero))
    out = []
    for t in range(start, stop):
        b = random_connection_set(g, seed, t).mask
        out.append((_clique_number(g, b), _clique_number(g, full & ~b)))
    return out


def sample_clique_pairs(g: GroupSpec, trials: int, seed: int, workers: int = 1) -> list[tuple[int, int]]:
    """``(cl(B), cl(B^c))`` for trials ``0..trials-1``, in trial order."""
    if trials < 1:
        raise InvalidInput("trials must be at least 1")
    if workers <= 1:
        return _sample_cliques((g.factors, seed, 0, trials))
    step = math.ceil(trials / workers)
    jobs = [(g.factors, seed, s, min(s + step, trials)) for s in range(0, trials, step)]
    out: list[tuple[int, int]] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sample_cliques, jobs):
            out.extend(part)
    return out


def sample_clique_numbers(g: GroupSpec, trials: int, seed: int) -> list[int]:
    if trials < 1:
        raise InvalidInput("trials must be at least 1")
    return [_clique_number(g, random_connection_set(g, seed, t).mask) for t in range(trials)]


def mc_clique_tail(
    g: GroupSpec, k1: int, trials: int, seed: int, timed: bool = False, samples: Optional[list[int]] = None
) -> TailEstimate:
    """Monte-Carlo ``P(cl(B) >= k1)`` with a 95% normal-approximation half-width."""
    if k1 < 1:
        raise InvalidInput(f"k1 must be positive, got {k1}")
    t0 = time.perf_counter()
    if samples is None:
        samples = sample_clique_numbers(g, trials, seed)
    hits = sum(1 for cl in samples if cl >= k1)
    p = hits / trials
    hw = Z95 * math.sqrt(p * (1 - p) / trials)
    ms = (time.perf_counter() - t0) * 1e3 if timed else None
    return TailEstimate(g, k1, p, "monte_carlo", trials, seed, hw, ms)


@dataclass(frozen=True)
class Witness:
    connection: ConnectionSet
    clique: int
    independence: int
    trial: int
    seed: int


def witness_search(g: GroupSpec, threshold: int, budget: int, seed: int) -> Optional[Witness]:
    """First sampled ``B`` with both ``cl(B)`` and ``cl(B^c)`` at most ``threshold``."""
    for t in range(budget):
        b = random_connection_set(g, seed, t)
        cl = _clique_number(g, b.mask)
        if cl > threshold:
            continue
        ind = _clique_number(g, b.complement().mask)
        if ind <= threshold:
            return Witness(b, cl, ind, t, seed)
    return None


def ramsey_minimum(g: GroupSpec, cap: int = COIN_CAP) -> tuple[int, ConnectionSet]:
    """Smallest ``max(cl(B), cl(B^c))`` over all connection sets, with a minimizer."""
    best: Optional[tuple[int, ConnectionSet]] = None
    for b in all_connection_sets(g, cap):
        v = max(_clique_number(g, b.mask), _clique_number(g, b.complement().mask))
        if best is None or v < best[0]:
            best = (v, b)
    assert best is not None
    return best

"""Brute-force reference implementations.

Nothing here imports the package's algorithms; groups are plain lists of
moduli and elements plain tuples, so agreement with the package is
evidence rather than tautology.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement, product
from math import gcd


def elements(factors):
    return list(product(*(range(d) for d in factors)))


def add(factors, x, y):
    return tuple((a + b) % d for a, b, d in zip(x, y, factors))


def sub(factors, x, y):
    return tuple((a - b) % d for a, b, d in zip(x, y, factors))


def closure(factors, gens):
    """Subgroup generated by ``gens`` (repeated addition until stable)."""
    zero = tuple(0 for _ in factors)
    seen = {zero}
    changed = True
    while changed:
        changed = False
        for x in list(seen):
            for g in gens:
                y = add(factors, x, g)
                if y not in seen:
                    seen.add(y)
                    changed = True
    return frozenset(seen)


def all_subgroups(factors):
    """Every subset closed under addition and containing 0 (tiny groups only)."""
    els = elements(factors)
    found = set()
    for r in range(0, len(els) + 1):
        for gens in combinations(els, r):
            found.add(closure(factors, gens))
        if r >= 3:
            break
    return found


def hat_plus(factors, a):
    return {add(factors, x, y) for x, y in combinations(a, 2)}


def diff_set(factors, a):
    return {sub(factors, x, y) for x in a for y in a}


def relation_vectors_brute(values, s, reduce):
    """Every ``v`` with entries summing to 0, positive part of size s and ``sum v_i a_i = 0``.

    ``reduce`` maps an integer-combination result to its canonical value
    (e.g. ``lambda t: t % m``); ``values`` are integers.
    """
    k = len(values)
    out = set()
    for pos in combinations_with_replacement(range(k), s):
        for neg in combinations_with_replacement(range(k), s):
            v = [0] * k
            for i in pos:
                v[i] += 1
            for j in neg:
                v[j] -= 1
            if any(v) and reduce(sum(c * x for c, x in zip(v, values))) == reduce(0):
                out.add(tuple(v))
    return out


def freiman_hom_count_brute(a, factors, s=2, domain=None):
    """Maps ``A -> G`` (cyclic-coordinate tuples) preserving every s-relation.

    ``domain`` lists the moduli of A's ambient group (defaults to ``factors``).
    """
    domain = factors if domain is None else domain
    els = elements(factors)
    k = len(a)
    combos = list(combinations_with_replacement(range(k), s))
    count = 0
    for images in product(els, repeat=k):
        seen = {}
        ok = True
        for c in combos:
            ds = tuple(sum(a[i][t] for i in c) % domain[t] for t in range(len(domain)))
            ts = tuple(sum(images[i][t] for i in c) % factors[t] for t in range(len(factors)))
            if seen.setdefault(ds, ts) != ts:
                ok = False
                break
        if ok:
            count += 1
    return count


def max_clique_brute(n, adjacent):
    """Largest vertex subset that is pairwise adjacent, via a 2^n table."""
    nbr = [sum(1 << j for j in range(n) if j != i and adjacent(i, j)) for i in range(n)]
    is_clique = bytearray(1 << n)
    is_clique[0] = 1
    best = 0
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        if is_clique[rest] and nbr[low] & rest == rest:
            is_clique[mask] = 1
            best = max(best, bin(mask).count("1"))
    return best


def determinantal_divisors(m):
    """gcd of all i x i minors, for i = 1..min(rows, cols)."""
    rows, cols = len(m), len(m[0]) if m else 0

    def det(sub):
        if len(sub) == 1:
            return sub[0][0]
        return sum((-1) ** j * sub[0][j] * det([r[:j] + r[j + 1 :] for r in sub[1:]]) for j in range(len(sub)))

    out = []
    for i in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), i):
            for cs in combinations(range(cols), i):
                g = gcd(g, det([[m[r][c] for c in cs] for r in rs]))
        out.append(g)
    return out


def quotient_order_brute(k, relations, m):
    """``|(Z/m)^k / <relations>|`` by orbit counting."""
    space = elements([m] * k)
    sub_grp = closure([m] * k, [tuple(x % m for x in r) for r in relations])
    return len(space) // len(sub_grp)


def quotient_rank_brute(k, relations, m):
    """Minimum generator count of ``(Z/m)^k / <relations>`` as max_p dim over F_p of H/pH."""
    primes = [p for p in range(2, m + 1) if m % p == 0 and all(p % q for q in range(2, p))]
    best = 0
    for p in primes:
        rows = [[x % p for x in r] for r in relations]
        best = max(best, k - _rank_mod_p(rows, p) if rows else k)
    return best


def _rank_mod_p(rows, p):
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank

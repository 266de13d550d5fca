"""Exact integer linear algebra: Smith normal form and module presentations.

Matrices are plain ``list[list[int]]`` in row-major order; Python integers
are arbitrary precision, so no entry ever overflows.

A finitely generated module is held in diagonalized form
``Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_r`` with ``d_1 | d_2 | ... | d_r``
and every ``d_i >= 2``.  Elements are coordinate tuples: torsion
coordinates first (reduced into ``[0, d_i)``), then free coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import NamedTuple, Optional, Sequence

from .errors import InfiniteHomSet, InvalidGenerator, InvalidModulus

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum(row[t] * b[t][j] for t in range(inner)) for j in range(cols)]
        for row in a
    ]


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class SmithForm(NamedTuple):
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix


class _Reducer:
    """In-place Smith reduction of a matrix, optionally tracking transforms.

    Row operations are mirrored on ``U`` (so that ``U @ M`` stays equal to
    the working matrix up to the column transform), column operations on
    ``V`` and, inverted, on ``Vinv``.
    """

    def __init__(self, m: IntMatrix, ncols: int, track_u: bool, track_v: bool, track_vinv: bool):
        self.a = [list(row) for row in m]
        self.rows = len(self.a)
        self.cols = ncols
        self.U = identity(self.rows) if track_u else None
        self.V = identity(ncols) if track_v else None
        self.Vinv = identity(ncols) if track_vinv else None

    # -- elementary operations -------------------------------------------------

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        if self.U is not None:
            self.U[i], self.U[j] = self.U[j], self.U[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        if self.V is not None:
            for row in self.V:
                row[i], row[j] = row[j], row[i]
        if self.Vinv is not None:
            self.Vinv[i], self.Vinv[j] = self.Vinv[j], self.Vinv[i]

    def add_row(self, dst: int, src: int, q: int) -> None:
        """row[dst] += q * row[src]"""
        rd, rs = self.a[dst], self.a[src]
        for j in range(self.cols):
            if rs[j]:
                rd[j] += q * rs[j]
        if self.U is not None:
            ud, us = self.U[dst], self.U[src]
            for j in range(self.rows):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(self, dst: int, src: int, q: int) -> None:
        """col[dst] += q * col[src]"""
        for row in self.a:
            if row[src]:
                row[dst] += q * row[src]
        if self.V is not None:
            for row in self.V:
                if row[src]:
                    row[dst] += q * row[src]
        if self.Vinv is not None:
            vs, vd = self.Vinv[src], self.Vinv[dst]
            for j in range(self.cols):
                if vd[j]:
                    vs[j] -= q * vd[j]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        if self.U is not None:
            self.U[i] = [-x for x in self.U[i]]

    # -- reduction ------------------------------------------------------------

    def _smallest(self, t: int) -> Optional[tuple[int, int]]:
        best = None
        best_abs = 0
        for i in range(t, self.rows):
            row = self.a[i]
            for j in range(t, self.cols):
                v = row[j]
                if v and (best is None or abs(v) < best_abs):
                    best, best_abs = (i, j), abs(v)
                    if best_abs == 1:
                        return best
        return best

    def _smallest_in_cross(self, t: int) -> tuple[int, int]:
        best = (t, t)
        best_abs = abs(self.a[t][t])
        for i in range(t + 1, self.rows):
            v = self.a[i][t]
            if v and abs(v) < best_abs:
                best, best_abs = (i, t), abs(v)
        for j in range(t + 1, self.cols):
            v = self.a[t][j]
            if v and abs(v) < best_abs:
                best, best_abs = (t, j), abs(v)
        return best

    def run(self) -> list[int]:
        a = self.a
        t = 0
        limit = min(self.rows, self.cols)
        while t < limit:
            pos = self._smallest(t)
            if pos is None:
                break
            self.swap_rows(t, pos[0])
            self.swap_cols(t, pos[1])
            while True:
                clean = True
                p = a[t][t]
                for i in range(t + 1, self.rows):
                    if a[i][t]:
                        self.add_row(i, t, -(a[i][t] // p))
                        if a[i][t]:
                            clean = False
                for j in range(t + 1, self.cols):
                    if a[t][j]:
                        self.add_col(j, t, -(a[t][j] // p))
                        if a[t][j]:
                            clean = False
                if not clean:
                    i, j = self._smallest_in_cross(t)
                    self.swap_rows(t, i)
                    self.swap_cols(t, j)
                    continue
                bad = self._nondivisible_row(t)
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if a[t][t] < 0:
                self.negate_row(t)
            t += 1
        return [a[i][i] for i in range(limit)]

    def _nondivisible_row(self, t: int) -> Optional[int]:
        p = self.a[t][t]
        for i in range(t + 1, self.rows):
            row = self.a[i]
            for j in range(t + 1, self.cols):
                if row[j] % p:
                    return i
        return None


def smith_normal_form(m: IntMatrix, ncols: Optional[int] = None) -> SmithForm:
    """Return ``(D, U, V)`` with ``D = U @ m @ V``.

    ``D`` is diagonal with nonnegative entries forming a divisibility chain
    (zeros last); ``U`` and ``V`` are unimodular.  The pivot is always the
    nonzero entry of smallest absolute value, ties going to the first one in
    row-major order, so the transforms are reproducible.

    ``ncols`` is only needed for matrices with no rows.
    """
    if ncols is None:
        ncols = len(m[0]) if m else 0
    red = _Reducer(m, ncols, track_u=True, track_v=True, track_vinv=False)
    red.run()
    return SmithForm(red.a, red.U, red.V)


def elementary_divisors(m: IntMatrix, ncols: Optional[int] = None) -> list[int]:
    """Diagonal of the Smith form, without computing transforms."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    red = _Reducer(m, ncols, track_u=False, track_v=False, track_vinv=False)
    return red.run()


# ---------------------------------------------------------------------------
# presented modules


@dataclass(frozen=True)
class PresentedModule:
    """``Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_r`` with generator images.

    ``basis_images[i]`` is the coordinate vector of the image of the i-th
    generator of the free module that was quotiented.
    """

    free_rank: int
    torsion_factors: tuple[int, ...]
    basis_images: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        for d in self.torsion_factors:
            if d < 2:
                raise ValueError(f"torsion factor {d} < 2")
        for a, b in zip(self.torsion_factors, self.torsion_factors[1:]):
            if b % a:
                raise ValueError(f"torsion factors {self.torsion_factors} not a divisibility chain")

    @property
    def ngens(self) -> int:
        return len(self.torsion_factors) + self.free_rank

    def rank(self) -> int:
        return self.free_rank + len(self.torsion_factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        """Cardinality, or ``None`` when infinite."""
        return prod(self.torsion_factors) if self.is_finite else None

    @property
    def exponent(self) -> Optional[int]:
        if not self.is_finite:
            return None
        return self.torsion_factors[-1] if self.torsion_factors else 1

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ngens:
            raise InvalidGenerator(f"vector of length {len(v)} in module with {self.ngens} coordinates")
        r = len(self.torsion_factors)
        return tuple(x % d for x, d in zip(v, self.torsion_factors)) + tuple(v[r:])

    def add(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(u, v)])

    def scale(self, c: int, v: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([c * a for a in v])

    def sub(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([a - b for a, b in zip(u, v)])

    def neg(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([-a for a in v])

    normalize = reduce

    def sort_key(self, v):
        return v

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion_factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


def _presentation(k: int, relations: Sequence[Sequence[int]]) -> tuple[list[int], IntMatrix]:
    rows = [list(r) for r in relations]
    red = _Reducer(rows, k, track_u=False, track_v=True, track_vinv=False)
    diag = red.run()
    diag = diag + [0] * (k - len(diag))
    return diag, red.V


def quotient_presentation(
    k: int, relations: Sequence[Sequence[int]] = (), modulus: Optional[int] = None
) -> PresentedModule:
    """Present ``F^k / <relations>`` in diagonal form.

    With ``modulus`` the ring is ``Z/modulus`` (the rows ``modulus * e_i``
    are appended); without it the ring is the rationals and only the free
    part survives.
    """
    relations = [list(r) for r in relations]
    for r in relations:
        if len(r) != k:
            raise InvalidGenerator(f"relation {r} does not have {k} columns")
    if modulus is not None:
        if modulus < 1:
            raise InvalidModulus(f"modulus must be positive, got {modulus}")
        relations = [[x % modulus for x in r] for r in relations]
        relations += [[modulus * int(i == j) for j in range(k)] for i in range(k)]
    diag, V = _presentation(k, relations)
    return _module_from_diagonal(diag, V, keep_torsion=modulus is not None)


def _module_from_diagonal(diag: list[int], V: IntMatrix, keep_torsion: bool) -> PresentedModule:
    k = len(diag)
    tors_idx = [j for j in range(k) if diag[j] >= 2] if keep_torsion else []
    free_idx = [j for j in range(k) if diag[j] == 0]
    images = []
    for i in range(k):
        row = V[i]
        images.append(
            tuple(row[j] % diag[j] for j in tors_idx) + tuple(row[j] for j in free_idx)
        )
    return PresentedModule(
        free_rank=len(free_idx),
        torsion_factors=tuple(diag[j] for j in tors_idx),
        basis_images=tuple(images),
    )


def presentation_over_z(k: int, relations: Sequence[Sequence[int]]) -> PresentedModule:
    """``Z^k / <relations>`` keeping both torsion and free parts."""
    relations = [list(r) for r in relations]
    diag, V = _presentation(k, relations)
    return _module_from_diagonal(diag, V, keep_torsion=True)


def module_rank(h: PresentedModule) -> int:
    """Minimum number of generators."""
    return h.free_rank + sum(1 for d in h.torsion_factors if d > 1)


def _check_vectors(h: PresentedModule, gens: Sequence[Sequence[int]]) -> list[list[int]]:
    out = []
    for g in gens:
        if len(g) != h.ngens:
            raise InvalidGenerator(
                f"generator {tuple(g)} has length {len(g)}, module has {h.ngens} coordinates"
            )
        out.append(list(g))
    return out


def submodule(h: PresentedModule, generators: Sequence[Sequence[int]]) -> PresentedModule:
    """Abstract presentation of the submodule of ``h`` spanned by ``generators``.

    The relation module among the generators is the left kernel of the
    lifted system ``[generators; torsion relations]``; its first ``t``
    coordinates present the submodule as a quotient of ``Z^t``.
    """
    gens = _check_vectors(h, generators)
    t = len(gens)
    if t == 0:
        return PresentedModule(0, ())
    if h.ngens == 0:
        return PresentedModule(0, ())
    lifted = gens + [[d * int(i == j) for j in range(h.ngens)] for i, d in enumerate(h.torsion_factors)]
    red = _Reducer(lifted, h.ngens, track_u=True, track_v=False, track_vinv=False)
    diag = red.run()
    nonzero = sum(1 for d in diag if d)
    kernel = [row[:t] for row in red.U[nonzero:]]
    return presentation_over_z(t, kernel)


def submodule_rank(h: PresentedModule, generators: Sequence[Sequence[int]]) -> int:
    return module_rank(submodule(h, generators))


def element_order(h: PresentedModule, v: Sequence[int]) -> Optional[int]:
    """Additive order of ``v``; ``None`` for elements of infinite order."""
    v = h.reduce(v)
    r = len(h.torsion_factors)
    if any(v[r:]):
        return None
    return lcm(1, *(d // gcd(d, x) for d, x in zip(h.torsion_factors, v)))


def hom_count(h: PresentedModule, g_factors) -> int:
    """``|Hom(h, G)| = prod_{i,j} gcd(d_i, e_j)`` for finite ``h``.

    ``g_factors`` is either a group with a ``factors`` attribute or a
    sequence of cyclic orders.
    """
    if h.free_rank:
        raise InfiniteHomSet("module has a free part; Hom into a finite group is not counted here")
    es = getattr(g_factors, "factors", g_factors)
    total = 1
    for d in h.torsion_factors:
        for e in es:
            total *= gcd(d, e)
    return total


def complement_generators(h: PresentedModule, x: Sequence[int]) -> list[tuple[int, ...]]:
    """Lifts to ``h`` of a minimal generating set of ``h / <x>``.

    Together with ``x`` they generate ``h``.
    """
    x = list(h.reduce(x))
    n = h.ngens
    rel = [[d * int(i == j) for j in range(n)] for i, d in enumerate(h.torsion_factors)] + [x]
    red = _Reducer(rel, n, track_u=False, track_v=False, track_vinv=True)
    diag = red.run()
    diag = diag + [0] * (n - len(diag))
    return [h.reduce(red.Vinv[j]) for j in range(n) if diag[j] != 1]

from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleysum.errors import InfiniteHomSet, InvalidGenerator, InvalidModulus
from cayleysum.zmodule import (
    PresentedModule,
    complement_generators,
    determinant,
    element_order,
    elementary_divisors,
    hom_count,
    matmul,
    module_rank,
    presentation_over_z,
    quotient_presentation,
    smith_normal_form,
    submodule,
    submodule_rank,
)

from oracles import closure, determinantal_divisors, quotient_order_brute, quotient_rank_brute

small_ints = st.integers(-6, 6)


def matrices(max_rows=3, max_cols=3):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=1, max_size=max_rows)
    )


def is_diagonal_chain(d):
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    off = all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    nonneg = all(x >= 0 for x in diag)
    chain = all(b % a == 0 if a else b == 0 for a, b in zip(diag, diag[1:]))
    return off and nonneg and chain


class TestSmithForm:
    def test_identity(self):
        d, u, v = smith_normal_form([[1, 0], [0, 1]])
        assert d == [[1, 0], [0, 1]]

    def test_diag_2_3(self):
        d, u, v = smith_normal_form([[2, 0], [0, 3]])
        assert d == [[1, 0], [0, 6]]
        assert matmul(matmul(u, [[2, 0], [0, 3]]), v) == d

    def test_zero_matrix(self):
        d, u, v = smith_normal_form([[0, 0], [0, 0]])
        assert d == [[0, 0], [0, 0]]
        assert u == [[1, 0], [0, 1]] and v == [[1, 0], [0, 1]]

    @settings(max_examples=150, deadline=None)
    @given(matrices())
    def test_factorization_and_unimodularity(self, m):
        d, u, v = smith_normal_form(m)
        assert matmul(matmul(u, m), v) == d
        assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
        assert is_diagonal_chain(d)

    @settings(max_examples=100, deadline=None)
    @given(matrices())
    def test_divisors_match_minors(self, m):
        # d_1 ... d_i equals the gcd of the i x i minors
        divs = elementary_divisors(m)
        minors = determinantal_divisors(m)
        for i, g in enumerate(minors):
            assert prod(divs[: i + 1]) == g


class TestQuotient:
    def test_free_mod_5(self):
        h = quotient_presentation(2, [], 5)
        assert h.torsion_factors == (5, 5) and module_rank(h) == 2

    def test_relation_mod_5(self):
        h = quotient_presentation(3, [[1, -2, 1]], 5)
        assert h.torsion_factors == (5, 5) and module_rank(h) == 2

    def test_relation_rational(self):
        h = quotient_presentation(3, [[1, -2, 1]])
        assert h.free_rank == 2 and h.torsion_factors == ()

    def test_bad_modulus(self):
        with pytest.raises(InvalidModulus):
            quotient_presentation(2, [], 0)

    def test_column_mismatch(self):
        with pytest.raises(InvalidGenerator):
            quotient_presentation(2, [[1, 2, 3]], 5)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 3), st.sampled_from([2, 3, 4, 6, 8, 9, 12]), st.data())
    def test_order_and_rank_against_brute_force(self, k, m, data):
        rels = data.draw(st.lists(st.lists(st.integers(-5, 5), min_size=k, max_size=k), max_size=3))
        if m**k > 800:
            return
        h = quotient_presentation(k, rels, m)
        assert h.order == quotient_order_brute(k, rels, m)
        assert module_rank(h) == quotient_rank_brute(k, rels, m)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 3), st.sampled_from([2, 3, 4, 6]), st.data())
    def test_basis_images_satisfy_relations(self, k, m, data):
        rels = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=k, max_size=k), max_size=3))
        h = quotient_presentation(k, rels, m)
        for r in rels:
            acc = h.zero
            for c, e in zip(r, h.basis_images):
                acc = h.add(acc, h.scale(c, e))
            assert acc == h.zero
        # the images generate the whole module
        assert submodule(h, list(h.basis_images)).order == h.order


class TestRanks:
    def test_examples(self):
        assert module_rank(PresentedModule(0, (2, 4))) == 2
        assert module_rank(PresentedModule(0, (6,))) == 1
        assert module_rank(PresentedModule(0, ())) == 0

    def test_submodule_rank(self):
        h = PresentedModule(0, (2, 4))
        assert submodule_rank(h, [(1, 0)]) == 1
        assert submodule_rank(h, [(1, 0), (0, 1)]) == 2
        assert submodule_rank(h, [(0, 2)]) == 1
        assert submodule_rank(h, []) == 0

    def test_submodule_matches_closure(self):
        h = PresentedModule(0, (2, 6))
        for gens in ([(1, 3)], [(0, 2), (1, 0)], [(1, 1), (0, 3)], [(0, 0)]):
            assert submodule(h, gens).order == len(closure((2, 6), gens))

    def test_submodule_of_free(self):
        h = PresentedModule(2, ())
        s = submodule(h, [(2, 0), (0, 3)])
        assert s.free_rank == 2

    def test_element_order(self):
        h = PresentedModule(1, (4,))
        assert element_order(h, (2, 0)) == 2
        assert element_order(h, (0, 1)) is None

    def test_over_z_keeps_torsion(self):
        h = presentation_over_z(2, [[2, 0]])
        assert h.torsion_factors == (2,) and h.free_rank == 1


class TestHomCount:
    def test_z4_to_z2_z4(self):
        assert hom_count(PresentedModule(0, (4,)), (2, 4)) == 8

    def test_trivial(self):
        assert hom_count(PresentedModule(0, ()), (5,)) == 1

    def test_coprime(self):
        assert hom_count(PresentedModule(0, (3,)), (4,)) == 1

    def test_free_part_rejected(self):
        with pytest.raises(InfiniteHomSet):
            hom_count(PresentedModule(1, ()), (2,))

    @pytest.mark.parametrize("d,e", [((2,), (2,)), ((2, 2), (4,)), ((6,), (2, 6)), ((4,), (2, 2))])
    def test_against_homomorphism_enumeration(self, d, e):
        # a hom from a product of cyclic groups is a choice of image with d_i * x = 0 per generator
        from oracles import elements

        count = 1
        for di in d:
            count *= sum(1 for x in elements(e) if all(di * c % ej == 0 for c, ej in zip(x, e)))
        assert hom_count(PresentedModule(0, d), e) == count


def test_complement_generators_generate():
    h = PresentedModule(0, (2, 4, 12))
    for x in [(1, 0, 0), (0, 1, 3), (1, 2, 6), (0, 0, 0)]:
        gens = [h.reduce(x)] + complement_generators(h, x)
        assert submodule(h, gens).order == h.order


def test_complement_of_element_of_maximal_order_is_minimal():
    h = PresentedModule(0, (2, 4, 12))
    for x in [(0, 0, 1), (1, 1, 1), (0, 3, 5)]:
        gens = [x] + complement_generators(h, x)
        assert len(gens) == module_rank(h)
        assert submodule(h, gens).order == h.order

import math
from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cayleysum.census import (
    BoundParams,
    a_of_h,
    bound_extra,
    bound_gbound,
    bound_nfc,
    census_rows,
    census_smallsum,
    g_exponent,
    union_bound_exact,
    union_bound_rhs,
    CSV_FIELDS,
)
from cayleysum.errors import InvalidInput, TooLarge
from cayleysum.freiman import classify_iso_classes, g_of_ring
from cayleysum.groups import abelian_groups_of_order, cyclic, make_group, subgroup_count
from cayleysum.sumset import PointSet, minimal_cover_set

import oracles

SMALL = [g for n in range(1, 11) for g in abelian_groups_of_order(n)]


def brute_census(g, k1):
    f = list(g.factors)
    hat, diff = Counter(), Counter()
    for a in combinations(oracles.elements(f), k1):
        hat[len(oracles.hat_plus(f, a))] += 1
        diff[len(oracles.diff_set(f, a))] += 1
    return hat, diff


class TestCensus:
    def test_z4_pairs(self):
        recs = {r.k2: r for r in census_smallsum(cyclic(4), 2)}
        assert recs[2].count_diff == 2 and recs[3].count_diff == 4
        assert recs[1].count_sum == 6

    def test_singletons(self):
        g = make_group([2, 3])
        assert all(r.count_sum == 6 for r in census_smallsum(g, 1))

    def test_k1_too_big(self):
        assert census_smallsum(cyclic(3), 4) == []
        assert union_bound_rhs(cyclic(3), 4) == 0

    def test_budget(self):
        with pytest.raises(TooLarge):
            census_smallsum(cyclic(40), 8)
        with pytest.raises(InvalidInput):
            census_smallsum(cyclic(4), 0)

    @pytest.mark.parametrize("g", SMALL, ids=str)
    def test_against_brute_force(self, g):
        for k1 in range(1, min(g.order, 5) + 1):
            hat, diff = brute_census(g, k1)
            recs = census_smallsum(g, k1)
            for r in recs:
                assert r.count_sum == sum(c for card, c in hat.items() if card <= r.k2)
                assert r.count_diff == diff[r.k2]
            assert sum(r.count_diff for r in recs) == math.comb(g.order, k1)
            assert recs[-1].count_sum == math.comb(g.order, k1)
            assert all(x.count_sum <= y.count_sum for x, y in zip(recs, recs[1:]))

    def test_workers_do_not_change_counts(self):
        g = make_group([2, 6])
        assert census_smallsum(g, 4, stratify=True, workers=2) == census_smallsum(g, 4, stratify=True)

    @pytest.mark.parametrize("g,k1", [(cyclic(7), 3), (make_group([2, 4]), 3), (cyclic(9), 4)], ids=str)
    def test_strata(self, g, k1):
        recs = census_smallsum(g, k1, stratify=True)
        by_diff = Counter()
        by_sum = Counter()
        for c in combinations(g.elements, k1):
            a = PointSet(g, c)
            w = minimal_cover_set(a, "diff")
            by_diff[len(oracles.diff_set(list(g.factors), c)), w.s1, w.s2] += 1
            w = minimal_cover_set(a, "sum")
            by_sum[len(oracles.hat_plus(list(g.factors), c)), w.s1, w.s2] += 1
        for r in recs:
            assert sum(r.strata_sum.values()) == r.count_sum
            assert sum(r.strata_diff.values()) == r.count_diff
            for (s1, s2), cnt in r.strata_diff.items():
                assert cnt == by_diff[r.k2, s1, s2]
            for (s1, s2), cnt in r.strata_sum.items():
                assert cnt == sum(v for (card, a1, a2), v in by_sum.items() if card <= r.k2 and (a1, a2) == (s1, s2))

    def test_rows_schema(self):
        g = cyclic(5)
        rows = census_rows(g, 2, census_smallsum(g, 2, stratify=True))
        assert all(tuple(r) == CSV_FIELDS for r in rows)
        assert any(r["s1"] != "" for r in rows)


class TestUnionBound:
    def test_z4(self):
        u = union_bound_exact(cyclic(4), 2)
        assert u.p == 2 and u.q == 1
        assert union_bound_rhs(cyclic(4), 2) == pytest.approx(2 + math.sqrt(2))

    def test_dominates_is_exact(self):
        u = union_bound_exact(cyclic(4), 2)
        assert u.dominates(Fraction(3414, 1000)) and not u.dominates(Fraction(3415, 1000))

    @pytest.mark.parametrize("g", SMALL, ids=str)
    def test_matches_float_sum(self, g):
        for k1 in range(2, min(g.order, 4) + 1):
            _, diff = brute_census(g, k1)
            expected = sum(c / 2 ** ((k2 - 1) / 2) for k2, c in diff.items() if k2 >= k1)
            assert union_bound_rhs(g, k1) == pytest.approx(expected, rel=1e-12)


class TestBounds:
    def test_gbound_example(self):
        gb = bound_gbound(BoundParams(16, 4, 6, c=1.0))
        prefix = 16 ** (4 * 6 * math.log(4) / 4)
        b1 = 4 ** (1 * (4 * 6) ** (1 / 3) * math.log(4)) * 20 * 65
        b2 = 4 ** 16
        assert gb.value == pytest.approx(prefix * min(b1, b2), rel=1e-9)
        assert gb.branch1 == pytest.approx(prefix * b1, rel=1e-9)
        assert gb.branch2 == pytest.approx(prefix * b2, rel=1e-9)

    def test_gbound_trivial_group(self):
        gb = bound_gbound(BoundParams(1, 3, 4))
        assert gb.branch2 == 1.0

    def test_gbound_needs_two(self):
        with pytest.raises(InvalidInput):
            bound_gbound(BoundParams(8, 1, 1))

    @given(st.integers(1, 200), st.integers(2, 30), st.integers(1, 60), st.floats(0.1, 5))
    def test_gbound_monotone_in_k2(self, n, k1, k2, c):
        lo = bound_gbound(BoundParams(n, k1, k2, c=c)).log_value
        hi = bound_gbound(BoundParams(n, k1, k2 + 1, c=c)).log_value
        assert hi >= lo - 1e-9

    def test_nfc(self):
        assert bound_nfc(BoundParams(4, 2, 1, s1=1, s2=1), 1) == 9
        assert bound_nfc(BoundParams(4, 3, 1, s1=2, s2=2), 1) == 2**24 * 28
        assert bound_nfc(BoundParams(4, 4, 1, s1=1, s2=2), 1) == 0

    @pytest.mark.parametrize("g", [cyclic(5), cyclic(6), make_group([2, 2]), cyclic(8)], ids=str)
    def test_nfc_dominates_class_counts(self, g):
        gf = g_of_ring(g.exponent)
        for k1 in (2, 3):
            strata = {}
            for c in combinations(g.elements, k1):
                a = PointSet(g, c)
                w = minimal_cover_set(a, "sum")
                strata.setdefault((w.s1, w.s2), []).append(a)
            for (s1, s2), sets in strata.items():
                count = classify_iso_classes(sets).count
                assert count <= bound_nfc(BoundParams(g.order, k1, 1, s1=s1, s2=max(s2, 1)), gf) or s2 < k1 - 1

    def test_extra(self):
        assert bound_extra(5, 0) == 1
        assert bound_extra(1, 1) == 2
        assert bound_extra(2, 2) == 9**16

    def test_g_exponent(self):
        k1, k2, n = 8, 800, 64
        lk = math.log(k1)
        expected = (
            -(k1 * lk) ** (1 / 3) * lk / k2 ** (2 / 3)
            - math.log(math.comb(k2, k1 - 1)) / k2
            - 4 * lk * math.log(n) / k1
            + 0.5
            - 1 / (2 * k2)
        )
        assert g_exponent(k1, k2, n, 1.0) == pytest.approx(expected, rel=1e-12)
        trivial = 0.5 - math.log(math.comb(10**4, 4)) / 10**4 - 1 / (2 * 10**4)
        assert g_exponent(5, 10**4, 1, 1e-300) == pytest.approx(trivial, rel=1e-9)

    @given(st.integers(2, 20), st.integers(0, 100), st.integers(1, 500), st.floats(0.01, 5), st.floats(0.01, 5))
    def test_g_exponent_nonincreasing_in_c(self, k1, extra, n, c1, c2):
        k2 = k1 - 1 + extra
        lo, hi = sorted((c1, c2))
        assert g_exponent(k1, k2, n, hi) <= g_exponent(k1, k2, n, lo) + 1e-12

    def test_g_exponent_needs_shape(self):
        with pytest.raises(InvalidInput):
            g_exponent(5, 3, 10)


class TestAOfH:
    def test_z2(self):
        a = a_of_h(cyclic(2))
        assert a.as_written == pytest.approx(2.25, abs=1e-12)
        # singletons contribute 2^0 each, the pair 2^-1
        assert a.equality_stratified == pytest.approx(2.5, abs=1e-12)

    def test_trivial(self):
        a = a_of_h(make_group([]))
        assert a.as_written == pytest.approx(0.5) and a.equality_stratified == pytest.approx(1.0)

    def test_cap(self):
        with pytest.raises(TooLarge):
            a_of_h(cyclic(13))

    @pytest.mark.parametrize("g", [g for n in range(1, 9) for g in abelian_groups_of_order(n)], ids=str)
    def test_against_brute_force(self, g):
        f = list(g.factors)
        els = oracles.elements(f)
        written = exact = Fraction(0)
        for k1 in range(1, len(els) + 1):
            for a in combinations(els, k1):
                card = len(oracles.hat_plus(f, a))
                exact += Fraction(1, 2**card)
                written += sum(Fraction(1, 2**k2) for k2 in range(max(card, 1), len(els) + 1))
        res = a_of_h(g)
        assert res.as_written == pytest.approx(float(written), abs=1e-12)
        assert res.equality_stratified == pytest.approx(float(exact), abs=1e-12)
        assert min(res.as_written, res.equality_stratified) >= subgroup_count(g) / 2

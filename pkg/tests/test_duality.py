"""Multiset category: products, morphisms, free duals, hom-count duality."""

import itertools
import math
import random

import pytest

from dplogic import (
    CapExceeded, MCMorphism, MultisetObj, coproduct, enumerate_homomorphisms,
    enumerate_morphisms, free_cardinality, free_coefficient, free_dual,
    height, kx3_identity_check, mc_inverse, morphism_count, power, product,
    surjection_count, top_lift, tr,
)
from dplogic.duality import (
    EMPTY, FREE_ONE_DUAL, TERMINAL, free_dual_closed_form,
    free_dual_recurrence, monotone_surjections, morphism_to_json,
    multiset_from_json, multiset_from_text, multiset_to_json,
)


def ms(*lengths):
    return MultisetObj.from_lengths(lengths)


def test_canonical_form():
    assert ms(1, 3, 2, 1).chains == ((1, 2), (2, 1), (3, 1))
    assert ms(1, 3, 2, 1) == MultisetObj.from_counts({3: 1, 1: 2, 2: 1})
    assert MultisetObj.from_counts({2: 0, 1: 1}) == ms(1)
    with pytest.raises(ValueError):
        MultisetObj(((0, 1),))
    with pytest.raises(ValueError):
        MultisetObj(((2, -1),))


def test_multiset_str_forms():
    assert str(EMPTY) == "{}"
    assert str(ms(1, 3, 2, 1)) == "{1,1,2,3}"
    assert str(MultisetObj.from_counts({1: 40, 2: 5})) == "{1:40,2:5}"


def test_coproduct():
    assert coproduct(ms(1, 3), ms(2, 3)) == ms(1, 2, 3, 3)
    assert coproduct(ms(2, 4), EMPTY) == ms(2, 4)
    assert coproduct(EMPTY, EMPTY) == EMPTY


def test_top_lift():
    assert top_lift(ms(1, 2)) == ms(2, 3)
    assert top_lift(EMPTY) == EMPTY
    assert top_lift(ms(3, 3)) == ms(4, 4)


def test_product_base_cases():
    assert product(ms(1), ms(5)) == ms(5)
    assert product(ms(5), ms(1)) == ms(5)
    assert product(ms(2), ms(4)) == ms(4)
    assert product(ms(2), ms(2)) == ms(2)
    assert product(ms(1), ms(1)) == ms(1)
    assert product(ms(3), EMPTY) == EMPTY


def test_product_recursion():
    assert product(ms(3), ms(3)) == ms(3, 4, 4)
    # unfold {3}x{4} by hand: ({3}x{3} + {2}x{3} + {2}x{4}) lifted
    lifted = top_lift(coproduct(coproduct(ms(3, 4, 4), ms(3)), ms(4)))
    assert product(ms(3), ms(4)) == lifted


def test_product_distributes_and_commutes():
    objs = [EMPTY, ms(1), ms(2), ms(3), ms(1, 2), ms(2, 2), ms(3, 4), ms(2, 3, 3)]
    for c in objs:
        for d in objs:
            assert product(c, d) == product(d, c)
            for e in objs:
                assert (product(c, coproduct(d, e))
                        == coproduct(product(c, d), product(c, e)))


def test_product_is_associative():
    objs = [ms(1), ms(2), ms(3), ms(1, 2), ms(2, 3)]
    for c in objs:
        for d in objs:
            for e in objs:
                assert (product(product(c, d), e)
                        == product(c, product(d, e)))


def test_power():
    assert power(ms(1, 3, 2, 1), 1) == ms(1, 1, 2, 3)
    assert power(ms(3, 3), 0) == TERMINAL
    assert power(EMPTY, 0) == TERMINAL
    assert power(ms(1, 3, 2, 1), 2) == MultisetObj.from_counts(
        {1: 4, 2: 5, 3: 7, 4: 2})
    with pytest.raises(ValueError):
        power(ms(2), -1)


def test_power_cap():
    with pytest.raises(CapExceeded):
        power(ms(3, 3, 3), 40, cap=10**4)


def test_mc_inverse():
    boolean = mc_inverse(ms(1))
    assert [f.size for f in boolean.factors] == [2]
    assert [f.size for f in mc_inverse(ms(3)).factors] == [4]
    free1 = mc_inverse(ms(1, 3, 2, 1))
    assert [f.size for f in free1.factors] == [2, 2, 3, 4]
    assert free1.size == 48
    with pytest.raises(ValueError):
        mc_inverse(EMPTY)


def test_mc_inverse_turns_coproducts_into_products():
    for c in [ms(1), ms(2, 3), ms(1, 1, 4)]:
        for d in [ms(2), ms(3, 3)]:
            both = mc_inverse(coproduct(c, d))
            assert sorted(f.size for f in both.factors) == sorted(
                [f.size for f in mc_inverse(c).factors]
                + [f.size for f in mc_inverse(d).factors])


def test_tr_drops_each_maximum():
    assert tr(ms(1)) == [(1, 0)]
    assert tr(ms(3)) == [(1, 2)]
    assert sorted(tr(ms(1, 3, 2, 1))) == [(1, 0), (1, 0), (1, 1), (1, 2)]


def test_height():
    assert height(ms(1, 3, 2, 1)) == 3
    assert height(ms(1)) == 1
    with pytest.raises(ValueError):
        height(EMPTY)
    rng = random.Random(7)
    for _ in range(40):
        c = ms(*[rng.randrange(1, 7) for _ in range(rng.randrange(1, 4))])
        d = ms(*[rng.randrange(1, 7) for _ in range(rng.randrange(1, 4))])
        assert height(coproduct(c, d)) == max(height(c), height(d))


def test_surjection_counts():
    assert surjection_count(2, 2) == 1
    assert surjection_count(2, 1) == 1
    assert surjection_count(3, 2) == 1
    assert surjection_count(4, 3) == 2
    assert surjection_count(1, 2) == 0
    assert surjection_count(5, 3) == 3
    for a in range(1, 8):
        for b in range(1, 8):
            maps = monotone_surjections(a, b)
            assert len(maps) == surjection_count(a, b)
            for m in maps:
                assert len(m) == a
                assert sorted(set(m)) == list(range(b))
                assert all(x <= y for x, y in zip(m, m[1:]))
                if b > 1:
                    assert m.count(b - 1) == 1 and m[-1] == b - 1


def test_morphism_validation():
    c, d = ms(3), ms(2)
    MCMorphism(c, d, ((0, (0, 0, 1)),))
    with pytest.raises(ValueError):
        MCMorphism(c, d, ((0, (0, 1, 1)),))  # top fiber too big
    with pytest.raises(ValueError):
        MCMorphism(c, d, ((0, (0, 0, 0)),))  # not surjective
    with pytest.raises(ValueError):
        MCMorphism(c, d, ((0, (1, 0, 1)),))  # not monotone
    with pytest.raises(ValueError):
        MCMorphism(c, d, ((1, (0, 0, 1)),))  # no such target instance
    with pytest.raises(ValueError):
        MCMorphism(c, d, ())  # missing component


def test_enumerate_morphisms_examples():
    assert len(enumerate_morphisms(ms(2), ms(2))) == 1
    assert len(enumerate_morphisms(ms(2), ms(1))) == 1
    assert len(enumerate_morphisms(ms(3), ms(2))) == 1
    assert len(enumerate_morphisms(ms(2), ms(3))) == 0
    assert enumerate_morphisms(EMPTY, ms(2)) != []  # the empty family
    assert len(enumerate_morphisms(ms(2), EMPTY)) == 0


def test_enumerate_morphisms_cap():
    with pytest.raises(CapExceeded):
        enumerate_morphisms(ms(*[1] * 9), ms(1))
    with pytest.raises(CapExceeded):
        enumerate_morphisms(ms(9), ms(9))


def test_morphism_count_closed_form_matches_enumeration():
    objs = [EMPTY, ms(1), ms(2), ms(3), ms(1, 1), ms(1, 2), ms(2, 2),
            ms(2, 3), ms(3, 3), ms(1, 2, 3), ms(4)]
    for c in objs:
        for d in objs:
            assert morphism_count(c, d) == len(enumerate_morphisms(c, d))


def test_terminal_object():
    for c in [ms(1), ms(2), ms(3, 3), ms(1, 2, 4)]:
        assert morphism_count(c, TERMINAL) == 1
        assert product(c, TERMINAL) == c


def test_hom_counts_into_products_multiply():
    objs = [ms(1), ms(2), ms(3), ms(1, 1), ms(2, 3), ms(3, 3)]
    for x in objs:
        for a in objs:
            for b in objs:
                assert (morphism_count(x, product(a, b))
                        == morphism_count(x, a) * morphism_count(x, b))


def test_duality_hom_counts_match_algebra_homomorphisms():
    objs = [ms(l) for l in (1, 2, 3)]
    objs += [ms(a, b) for a in (1, 2, 3) for b in (a, 3) if a <= b]
    for c in objs:
        for d in objs:
            dual_count = morphism_count(c, d)
            algebraic = enumerate_homomorphisms(mc_inverse(d), mc_inverse(c))
            assert dual_count == len(algebraic)


def test_free_dual_small_values():
    assert free_dual(0) == TERMINAL
    assert free_dual(1) == ms(1, 1, 2, 3)
    assert FREE_ONE_DUAL == ms(1, 1, 2, 3)


def test_free_coefficient_closed_form():
    assert [free_coefficient(1, h) for h in (1, 2, 3)] == [2, 1, 1]
    assert free_coefficient(2, 4) == 5**2 - 2 * 4**2 + 3**2 == 2
    assert [free_coefficient(2, h) for h in (1, 2, 3, 4)] == [4, 5, 7, 2]
    for k in range(7):
        assert free_coefficient(k, k + 3) == 0
        assert free_coefficient(k, 1) == 2**k
        assert free_coefficient(k, 2) == 3**k - 2**k
    with pytest.raises(ValueError):
        free_coefficient(-1, 1)
    with pytest.raises(ValueError):
        free_coefficient(2, 0)


def test_free_coefficient_recurrence():
    for k in range(7):
        a = {h: free_coefficient(k, h) for h in range(1, k + 4)}
        b = {h: free_coefficient(k + 1, h) for h in range(1, k + 5)}
        assert b[1] == 2 * a[1]
        assert b[2] == a[1] + 3 * a[2]
        assert b[3] == a[1] + a[2] + 4 * a.get(3, 0)
        for h in range(4, k + 5):
            assert b[h] == (h - 2) * a.get(h - 1, 0) + (h + 1) * a.get(h, 0)


def test_free_routes_agree():
    for k in range(7):
        by_power = free_dual(k)
        assert by_power == free_dual_closed_form(k)
        assert by_power == free_dual_recurrence(k)


def test_free_cardinality():
    assert free_cardinality(0) == 2
    assert free_cardinality(1) == 48
    assert free_cardinality(2) == 2**4 * 3**5 * 4**7 * 5**2 == 1592524800
    for k in range(7):
        value = 1
        for l, m in free_dual(k).chains:
            value *= (l + 1) ** m
        assert free_cardinality(k) == value
    # stays exact well past the range where the duals get large
    assert free_cardinality(8) % 10 in (0, 2, 4, 6, 8)
    with pytest.raises(ValueError):
        free_cardinality(-1)
    with pytest.raises(CapExceeded):
        free_cardinality(13)


def test_kx3_identity():
    assert kx3_identity_check(2)
    assert kx3_identity_check(3)
    assert product(ms(3), ms(3)) == MultisetObj.from_counts({4: 2, 3: 1})
    assert product(ms(10), ms(3)) == MultisetObj.from_counts({11: 9, 10: 8})
    for k in range(2, 21):
        assert kx3_identity_check(k)
    with pytest.raises(ValueError):
        kx3_identity_check(1)
    with pytest.raises(ValueError):
        kx3_identity_check(21)


def test_multiset_json_roundtrip():
    for c in [EMPTY, ms(1), ms(1, 3, 2, 1), MultisetObj.from_counts({2: 9})]:
        data = multiset_to_json(c)
        assert multiset_from_json(data) == c
    assert multiset_to_json(ms(1, 3, 2, 1)) == {
        "chains": [{"len": 1, "mult": 2}, {"len": 2, "mult": 1},
                   {"len": 3, "mult": 1}]}


def test_multiset_text_forms():
    assert multiset_from_text("{1,3,2,1}") == ms(1, 3, 2, 1)
    assert multiset_from_text("{1:4, 2:5}") == MultisetObj.from_counts(
        {1: 4, 2: 5})
    assert multiset_from_text("{}") == EMPTY
    assert multiset_from_text(" { 3 } ") == ms(3)
    with pytest.raises(ValueError):
        multiset_from_text("{a}")


def test_morphism_json():
    f = enumerate_morphisms(ms(3), ms(2))[0]
    assert morphism_to_json(f) == {"components": [{"target": 0,
                                                   "map": [0, 0, 1]}]}


def test_height_behaviour_under_morphisms():
    """Component maps are surjections, so they never map onto a longer
    chain; when every target instance is hit, the whole object's height
    cannot grow either."""
    objs = [ms(1), ms(2), ms(3), ms(1, 1), ms(2, 3), ms(3, 3), ms(1, 3)]
    for c in objs:
        for d in objs:
            for f in enumerate_morphisms(c, d):
                src, tgt = c.lengths(), d.lengths()
                for i, (j, _) in enumerate(f.components):
                    assert tgt[j] <= src[i]
                if {j for j, _ in f.components} == set(range(len(tgt))):
                    assert height(d) <= height(c)


def test_morphisms_can_reach_taller_unhit_targets():
    # a target instance nothing maps onto may well be taller than the
    # source, so height comparison needs the covering hypothesis above
    fs = enumerate_morphisms(ms(1), ms(1, 5))
    assert len(fs) == 1
    assert height(ms(1, 5)) > height(ms(1))

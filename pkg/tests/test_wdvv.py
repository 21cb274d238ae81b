import random
from fractions import Fraction

import pytest

from qcsolve import wdvv
from qcsolve.polys import NVar, QuadPoly
from qcsolve.presets import get_preset

S, T = 1, 2  # sigma and tau on P^2


def test_gamma_coefficient(p2):
    # no tau entry, so no shift: N(2;5) is admissible and carries 2^3
    assert wdvv.gamma_coefficient(p2, S, S, S, (2,), (5,)) == (8, NVar((2,), (5,)))
    assert wdvv.gamma_coefficient(p2, S, S, S, (2,), (8,)) is None
    assert wdvv.gamma_coefficient(p2, 0, S, T, (2,), (3,)) is None
    assert wdvv.gamma_coefficient(p2, T, T, S, (3,), (6,)) == (3, NVar((3,), (8,)))


def test_gamma_is_symmetric(toric):
    rng = random.Random(3)
    for _ in range(40):
        idx = [rng.randrange(1, 6) for _ in range(3)]
        beta = (rng.randrange(0, 3), rng.randrange(1, 3))
        d = tuple(rng.randrange(0, 3) for _ in range(3))
        ref = wdvv.gamma_coefficient(toric, *idx, beta, d)
        for perm in ([idx[1], idx[0], idx[2]], [idx[2], idx[1], idx[0]]):
            assert wdvv.gamma_coefficient(toric, *perm, beta, d) == ref


def test_linear_contribution(p2):
    for beta in (2, 3, 4):
        lin = wdvv.linear_contribution(p2, S, S, T, T, (beta,), (3 * beta - 4,))
        assert lin.linear == {NVar((beta,), (3 * beta - 1,)): 1}
    assert wdvv.linear_contribution(p2, 0, S, T, T, (2,), (3,)).is_zero()
    assert wdvv.build_relation(p2, S, T, S, T, (2,), (3,)).is_zero()


def test_quadratic_contribution(p2):
    n1, n2 = NVar((1,), (2,)), NVar((2,), (5,))
    q = wdvv.quadratic_contribution(p2, S, S, T, T, (2,), (2,))
    assert q.quadratic == {(n1, n1): 1}
    q = wdvv.quadratic_contribution(p2, S, S, T, T, (3,), (5,))
    assert q.quadratic == {(n1, n2): 12}
    assert wdvv.quadratic_contribution(p2, S, S, T, T, (1,), (0,)).is_zero()


def test_relation_is_kontsevich_recursion(p2):
    rel = wdvv.build_relation(p2, S, S, T, T, (3,), (5,))
    table = {NVar((1,), (2,)): 1, NVar((2,), (5,)): 1, NVar((3,), (8,)): 12}
    assert rel.evaluate(table) == 0
    assert rel.linear == {NVar((3,), (8,)): 1}


def test_multilinear_entries(p2):
    rel = wdvv.build_relation(p2, {1: 2}, S, T, T, (2,), (2,))
    assert rel == wdvv.build_relation(p2, S, S, T, T, (2,), (2,)).scaled(2)
    assert wdvv.build_relation(p2, 0, S, T, T, (2,), (2,)).is_zero()


def test_relation_support(toric):
    for beta in toric.classes(3):
        for rid, poly in wdvv.enumerate_relations(toric, beta):
            for v in poly.linear:
                assert v.beta == beta
                shift = [x - y for x, y in zip(v.d, rid.d)]
                assert min(shift) >= 0 and sum(shift) <= 3
            for v, w in poly.quadratic:
                assert tuple(x + y for x, y in zip(v.beta, w.beta)) == beta
                assert toric.cone.contains(v.beta) and toric.cone.contains(w.beta)


def test_enumeration_p2(p2):
    rels = wdvv.enumerate_relations(p2, (2,))
    assert len(rels) == 1
    rid, poly = rels[0]
    assert rid.indices == (1, 1, 2, 2)


def test_enumeration_is_deterministic(toric):
    one = wdvv.enumerate_relations(toric, (1, 1))
    two = wdvv.enumerate_relations(toric, (1, 1))
    assert [r for r, _ in one] == [r for r, _ in two]
    assert all(p == q for (_, p), (_, q) in zip(one, two))
    for rid, poly in one:
        assert poly.leading_coefficient() > 0


def test_excluded_degrees_build_zero(toric):
    alg = toric.algebra
    rng = random.Random(5)
    for _ in range(60):
        t = tuple(rng.randrange(1, 6) for _ in range(4))
        beta = (rng.randrange(0, 3), rng.randrange(1, 3))
        allowed = set(toric.relation_degrees(beta, [alg.codims[x] for x in t]))
        d = tuple(rng.randrange(0, 4) for _ in range(3))
        if d not in allowed:
            assert wdvv.build_relation(toric, *t, beta, d).is_zero()


def test_symmetry_group():
    assert len(wdvv.SYMMETRIES) == 8
    orbit = wdvv.orbit((1, 2, 3, 4))
    assert len(orbit) == 8
    assert wdvv.canonical((2, 1, 4, 3)) == ((1, 2, 3, 4), 1)
    assert wdvv.canonical((3, 2, 1, 4)) == ((1, 2, 3, 4), -1)


def test_symmetries_act_on_relations(toric):
    beta = (1, 1)
    t = (1, 2, 4, 3)
    codims = [toric.algebra.codims[x] for x in t]
    for d in toric.relation_degrees(beta, codims):
        base = wdvv.build_relation(toric, *t, beta, d)
        for perm, sign in wdvv.SYMMETRIES.items():
            image = tuple(t[p] for p in perm)
            assert wdvv.build_relation(toric, *image, beta, d) == base.scaled(sign)


@pytest.mark.parametrize("r,expected", [(2, (0, 0)), (3, (1, 1)), (4, (6, 6)), (5, (21, 20))])
def test_counts(r, expected):
    assert wdvv.count_formulas(r) == expected
    assert wdvv.brute_count(r) == expected


def test_count_r6_and_guard():
    assert wdvv.count_formulas(6)[0] == 55
    assert wdvv.brute_count(6) == wdvv.count_formulas(6)
    with pytest.raises(wdvv.RangeExceeded):
        wdvv.brute_count(11)


def test_two_of_three_examples(p2, g24, toric):
    alg = g24.algebra
    h, c, h2, h3 = (alg.index(x) for x in ("h", "c", "h2", "h3"))
    assert wdvv.check_two_out_of_three(p2, S, S, T, T, (2,), (2,))
    for d in g24.relation_degrees((2,), [1, 2, 2, 3]):
        assert wdvv.check_two_out_of_three(g24, h, c, h2, h3, (2,), d)
    for d in toric.relation_degrees((1, 1), [1, 1, 2, 2]):
        assert wdvv.check_two_out_of_three(toric, 1, 2, 3, 4, (1, 1), d)


def test_three_symbols(p2, g25):
    for beta in (2, 3, 4):
        for d in range(1, 3 * beta):
            assert wdvv.check_three_symbols(p2, S, S, S, S, T, (beta,), (d,))
    slot = g25.tau_slot[3]
    for d in g25.relation_degrees((1,), [5, 2, 1, 4]):
        if d[slot] >= 1:
            assert wdvv.check_three_symbols(g25, 8, 3, 1, 7, 3, (1,), d)
    with pytest.raises(wdvv.PreconditionViolated):
        wdvv.three_symbols_combination(p2, S, S, S, S, T, (2,), (0,))
    with pytest.raises(wdvv.PreconditionViolated):
        wdvv.three_symbols_combination(p2, S, S, S, T, S, (2,), (1,))


def test_m_diagonal(g24, toric):
    alg = g24.algebra
    h, c, h2, h3 = (alg.index(x) for x in ("h", "c", "h2", "h3"))
    for d in g24.relation_degrees((2,), [1, 2, 2, 3, 2]):
        assert wdvv.check_m_diagonal(g24, h, c, h2, h3, h2, (2,), d)
        assert wdvv.check_m_diagonal(g24, h, c, h, c, h2, (2,), d)
    for d in toric.relation_degrees((1, 1), [1, 1, 2, 2, 1]):
        assert wdvv.check_m_diagonal(toric, 1, 2, 4, 3, 1, (1, 1), d)


def test_five_symbols_linear_part_vanishes(g24, p2):
    alg = g24.algebra
    idx = [alg.index(x) for x in ("h", "c", "h2", "h", "h")]
    seen = 0
    for beta in (1, 2, 3):
        for d in g24.relation_degrees((beta,), [alg.codims[x] for x in idx]):
            poly = wdvv.five_symbols_combination(g24, *idx, (beta,), d)
            assert not poly.linear
            seen += not poly.is_zero()
    assert seen > 0
    # on P^2 the combination vanishes outright; the identity slot collapses too
    assert wdvv.five_symbols_combination(p2, S, S, T, T, T, (2,), (2,)).is_zero()
    assert not wdvv.five_symbols_combination(p2, S, S, T, T, 0, (2,), (2,)).linear


def test_seed_relations_toric(toric):
    assert len(wdvv.seed_relations(toric, 6, include_zero=True)) == 21
    assert len(wdvv.seed_relations(toric, 6)) == 20

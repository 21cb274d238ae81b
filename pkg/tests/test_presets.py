from fractions import Fraction
from math import comb

import pytest

from qcsolve.algebra import is_generated_by_divisors, validate_algebra
from qcsolve.linalg import dot
from qcsolve.presets import (PRESETS, BadParams, UnknownPreset, g24_degenerate_seed,
                             g25_linear_condition, get_preset, kontsevich_oracle)


@pytest.mark.parametrize("name", PRESETS)
def test_preset_invariants(name):
    p = get_preset(name, {"h4": 1, "c2": 1} if name == "Sym2P2" else None)
    assert validate_algebra(p.algebra).ok
    minus_k = [-k for k in p.canonical]
    assert all(dot(v, minus_k) > 0 for v in p.cone.generators)


def test_p2_shape():
    p = get_preset("P2")
    assert p.algebra.labels == ("one", "h", "h2")
    assert p.algebra.integral[2] == 1 and p.canonical == (-3,)
    assert p.cone.rays == ((1,),)


def test_toric_shape():
    alg = get_preset("toric-ex2").algebra
    assert alg.size == 6
    assert alg.product(1, 1) == {alg.index("D1D2"): 2}
    assert alg.integral[alg.index("D1D2D2")] == 1


def test_params():
    assert get_preset("Pn", {"n": 4, "b": 2}).canonical == (-2,)
    with pytest.raises(BadParams):
        get_preset("Pn", {"n": 3, "b": 5})
    with pytest.raises(BadParams):
        get_preset("Sym2P2")
    with pytest.raises(UnknownPreset):
        get_preset("P7")
    assert get_preset("Sym2P2", {"h4": 1, "c2": 3}).canonical == (-3,)


def test_generation_flags():
    assert not is_generated_by_divisors(get_preset("G24").algebra)
    assert is_generated_by_divisors(get_preset("toric-ex2").algebra)
    assert is_generated_by_divisors(get_preset("Pn", {"n": 3}).algebra)


def test_oracle_values_and_recursion():
    N = kontsevich_oracle(6)
    assert N[:5] == [1, 1, 12, 620, 87304]
    # self-check against the recursion written in the symmetric form
    for d in range(2, 7):
        tot = Fraction(0)
        for a in range(1, d):
            b = d - a
            tot += N[a - 1] * N[b - 1] * (a * a * b * b * comb(3 * d - 4, 3 * a - 2)
                                          - a ** 3 * b * comb(3 * d - 4, 3 * a - 1))
        assert tot == N[d - 1]


def test_g25_condition(g25):
    cond = g25_linear_condition()
    assert len(cond.linear) == 3
    assert sorted(cond.linear.values()) == [-15, -6, 11]
    wts = (1, 1, 2, 2, 3, 3, 4, 5)
    for v in cond.linear:
        assert sum(a * b for a, b in zip(v.d, wts)) == 8
        assert g25.is_admissible(v.beta, v.d)


@pytest.mark.parametrize("conv", ["c", "h2"])
def test_degenerate_seed(g24, conv):
    t = g24_degenerate_seed(conv, g24)
    nonzero = [v for v, x in t.values.items() if x]
    assert len(nonzero) == 1
    (v,) = nonzero
    assert sum(v.d) == 5 and v.d[g24.tau_slot[g24.algebra.index(conv)]] == 5
    assert {w.d for w in t.values} == set(g24.admissible_list((1,)))
    with pytest.raises(BadParams):
        g24_degenerate_seed("h3")

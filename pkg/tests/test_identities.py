import random

import pytest

from qcsolve.identities import SUITES, run_all, run_suite
from qcsolve.presets import get_preset


@pytest.mark.parametrize("name", ["P2", "toric-ex2", "G24", "P1xP1"])
def test_suites_pass(name):
    results = run_all(get_preset(name), 30, seed=1, bound=3)
    assert [r.name for r in results] == list(SUITES)
    for r in results:
        assert r.ok, r.failures


def test_suite_is_reproducible():
    p = get_preset("toric-ex2")
    a = run_suite(p, "two-of-three", 20, random.Random(4), 3)
    b = run_suite(p, "two-of-three", 20, random.Random(4), 3)
    assert (a.passed, a.nontrivial) == (b.passed, b.nontrivial)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite(get_preset("P2"), "nope", 1, random.Random(0), 2)

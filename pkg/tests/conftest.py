from fractions import Fraction

import pytest

from qcsolve.degrees import seed_variables
from qcsolve.presets import g24_degenerate_seed, get_preset
from qcsolve.solver import SolutionTable, reconstruct

# A point on the toric seed variety: the three displayed seed equations hold,
# every other seed variable is zero.
TORIC_POINT = {
    ((1, 0), (0, 0, 1)): 1,
    ((1, 0), (2, 0, 0)): 1,
    ((0, 1), (0, 1, 0)): 1,
    ((0, 2), (0, 2, 0)): -1,
    ((1, 1), (0, 1, 1)): -1,
}


def toric_seeds(problem, point=TORIC_POINT):
    vals = {(b, d): 0 for b, d in seed_variables(problem.algebra, problem.cone,
                                                  problem.canonical, 4, None)}
    vals.update(point)
    return SolutionTable.from_values(vals, problem.name)


def g24_pins(problem, top, convention="c"):
    slot = problem.tau_slot[problem.algebra.index(convention)]
    pins = {}
    for b in range(2, top + 1):
        d = [0] * problem.s
        d[slot] = 4 * b + 1
        pins[((b,), tuple(d))] = 0
    return pins


@pytest.fixture(scope="session")
def p2():
    return get_preset("P2")


@pytest.fixture(scope="session")
def toric():
    return get_preset("toric-ex2")


@pytest.fixture(scope="session")
def g24():
    return get_preset("G24")


@pytest.fixture(scope="session")
def g25():
    return get_preset("G25")


@pytest.fixture(scope="session")
def p2_table(p2):
    return reconstruct(p2, SolutionTable.from_values({((1,), (2,)): 1}), 6).table


@pytest.fixture(scope="session")
def toric_table(toric):
    res = reconstruct(toric, toric_seeds(toric), 5)
    assert not res.halted
    return res.table


@pytest.fixture(scope="session")
def g24_table(g24):
    res = reconstruct(g24, g24_degenerate_seed("c", g24), 3, policy="pins",
                      pins=g24_pins(g24, 3))
    assert not res.halted
    return res.table

"""Example algebras with their cones and canonical classes.

Each preset is a ready :class:`~qcsolve.problem.Problem`.  The top class is
normalized to integral 1 unless noted:

* ``P2``, ``Pn``: truncated polynomial rings, integral of h^n is 1.
* ``toric-ex2``: Q[D1, D2]/(D1^2 - 2 D1 D2, D2^3).  The cone <v1, v2, v3> is
  unimodular and D3 = D2 in the Picard group, so D1 D2^2 = D1 D2 D3 is a
  point.
* ``G24``: Schubert calculus in the 2x2 box with c = s2 - s11, so
  h c = 0, c^2 = h^4 = 2 s22 and the integrals of h^4 and c^2 are both 2.
* ``Sym2P2``: the G24 ring with both top integrals as parameters and K = -3h.
* ``G25``: the multiplication table of the basis t0..t9, with t9 the point.
* ``P1xP1``: Q[a, b]/(a^2, b^2), an extra surface example.
"""

from fractions import Fraction
from math import comb

from qcsolve.algebra import GradedAlgebra
from qcsolve.degrees import ConeSpec
from qcsolve.polys import NVar, QuadPoly
from qcsolve.problem import Problem


class UnknownPreset(KeyError):
    pass


class BadParams(ValueError):
    pass


def _projective(n, b):
    labels = ["one", "h"] + [f"h{k}" for k in range(2, n + 1)]
    basis = [(lab, k) for k, lab in enumerate(labels)]
    products = {}
    for a in range(1, n + 1):
        for c in range(a, n + 1):
            if a + c <= n:
                products[(labels[a], labels[c])] = {labels[a + c]: 1}
    alg = GradedAlgebra.from_tables(f"P{n}", n, basis, products, {labels[n]: 1})
    doc = f"projective {n}-space, K = -{b}h"
    return Problem(alg, ConeSpec(rays=[(1,)]), canonical=(-b,), doc=doc)


def _toric():
    basis = [("one", 0), ("D1", 1), ("D2", 1), ("D1D2", 2), ("D2D2", 2), ("D1D2D2", 3)]
    products = {
        ("D1", "D1"): {"D1D2": 2},
        ("D1", "D2"): {"D1D2": 1},
        ("D2", "D2"): {"D2D2": 1},
        ("D1", "D1D2"): {"D1D2D2": 2},
        ("D1", "D2D2"): {"D1D2D2": 1},
        ("D2", "D1D2"): {"D1D2D2": 1},
        ("D2", "D2D2"): {},
    }
    alg = GradedAlgebra.from_tables("toric_ex2", 3, basis, products, {"D1D2D2": 1})
    return Problem(alg, ConeSpec(rays=[(1, 0), (0, 1)]), canonical=(-2, -1),
                   doc="toric threefold, -K = 2 D1 + D2")


def _g24_ring(name, top_h, top_c, kappa):
    top_h, top_c = Fraction(top_h), Fraction(top_c)
    if top_h == 0 or top_c == 0:
        raise BadParams("top integrals must be nonzero")
    basis = [("one", 0), ("h", 1), ("c", 2), ("h2", 2), ("h3", 3), ("h4", 4)]
    products = {
        ("h", "h"): {"h2": 1},
        ("h", "c"): {},
        ("h", "h2"): {"h3": 1},
        ("h", "h3"): {"h4": 1},
        ("c", "c"): {"h4": top_c / top_h},
        ("c", "h2"): {},
        ("h2", "h2"): {"h4": 1},
    }
    alg = GradedAlgebra.from_tables(name, 4, basis, products, {"h4": top_h})
    return Problem(alg, ConeSpec(rays=[(1,)]), canonical=(-kappa,),
                   doc=f"h c = 0, int h^4 = {top_h}, int c^2 = {top_c}, K = -{kappa}h")


G25_TABLE = {
    (1, 1): {2: 1}, (1, 2): {4: 1}, (1, 3): {5: 1}, (1, 4): {6: 1},
    (1, 5): {7: Fraction(1, 3)}, (1, 6): {8: 5}, (1, 7): {}, (1, 8): {9: 1},
    (2, 2): {6: 1}, (2, 3): {7: Fraction(1, 3)}, (2, 4): {8: 5}, (2, 5): {},
    (2, 6): {9: 5}, (2, 7): {}, (2, 8): {},
    (3, 3): {6: 1, 7: Fraction(-11, 3)}, (3, 4): {}, (3, 5): {8: 5},
    (3, 6): {}, (3, 7): {9: 15}, (3, 8): {},
    (4, 4): {9: 5}, (4, 5): {}, (4, 6): {}, (4, 7): {}, (4, 8): {},
    (5, 5): {9: 5}, (5, 6): {}, (5, 7): {}, (5, 8): {},
    (6, 6): {}, (6, 7): {}, (6, 8): {}, (7, 7): {}, (7, 8): {}, (8, 8): {},
}
G25_CODIMS = (0, 1, 2, 2, 3, 3, 4, 4, 5, 6)


def _g25():
    basis = [(f"t{i}", c) for i, c in enumerate(G25_CODIMS)]
    products = {}
    for (a, b), vec in G25_TABLE.items():
        if G25_CODIMS[a] + G25_CODIMS[b] <= 6:
            products[(f"t{a}", f"t{b}")] = {f"t{q}": v for q, v in vec.items()}
    alg = GradedAlgebra.from_tables("G25", 6, basis, products, {"t9": 1})
    return Problem(alg, ConeSpec(rays=[(1,)]), canonical=(-5,),
                   doc="Grassmannian G(2,5), t9 the point class, K = -5 t1")


def _p1xp1():
    basis = [("one", 0), ("a", 1), ("b", 1), ("ab", 2)]
    products = {("a", "a"): {}, ("a", "b"): {"ab": 1}, ("b", "b"): {}}
    alg = GradedAlgebra.from_tables("P1xP1", 2, basis, products, {"ab": 1})
    return Problem(alg, ConeSpec(rays=[(1, 0), (0, 1)]), canonical=(-2, -2),
                   doc="quadric surface, -K = 2a + 2b")


def _int_param(params, key, default):
    try:
        return int(params.get(key, default))
    except (TypeError, ValueError):
        raise BadParams(f"{key} must be an integer") from None


def get_preset(name, params=None):
    params = dict(params or {})
    if name == "P2":
        return _projective(2, 3)
    if name == "Pn":
        n = _int_param(params, "n", 2)
        b = _int_param(params, "b", n + 1)
        if n < 2:
            raise BadParams("Pn needs n >= 2")
        if not 1 <= b <= n + 1:
            raise BadParams("Pn needs 1 <= b <= n + 1")
        return _projective(n, b)
    if name == "toric-ex2":
        return _toric()
    if name == "G24":
        return _g24_ring("G24", 2, 2, 4)
    if name == "Sym2P2":
        if "h4" not in params or "c2" not in params:
            raise BadParams("Sym2P2 needs h4=<int h^4> and c2=<int c^2>")
        try:
            top_h, top_c = Fraction(params["h4"]), Fraction(params["c2"])
        except (TypeError, ValueError):
            raise BadParams("h4 and c2 must be rationals") from None
        return _g24_ring("Sym2P2", top_h, top_c, 3)
    if name == "G25":
        return _g25()
    if name == "P1xP1":
        return _p1xp1()
    raise UnknownPreset(name)


PRESETS = ("P2", "Pn", "toric-ex2", "G24", "Sym2P2", "G25", "P1xP1")


def kontsevich_oracle(beta_max):
    """Plane rational curve counts N_1..N_beta_max by the classical recursion."""
    N = [None, 1]
    for d in range(2, beta_max + 1):
        tot = 0
        for a in range(1, d):
            b = d - a
            tot += N[a] * N[b] * (a * a * b * b * comb(3 * d - 4, 3 * a - 2)
                                  - a ** 3 * b * comb(3 * d - 4, 3 * a - 1))
        N.append(tot)
    return [Fraction(x) for x in N[1:beta_max + 1]]


# slots in the canonical order (t2, t3, t4, t5, t6, t7, t8, t9)
def _g25_var(**counts):
    slot = {f"t{i}": i - 2 for i in range(2, 10)}
    d = [0] * 8
    for lab, x in counts.items():
        d[slot[lab]] = x
    return NVar((1,), tuple(d))


def g25_linear_condition():
    """11 N(1; t7 t9) - 6 N(1; t6 t9) - 15 N(1; t8^2)."""
    return QuadPoly(linear={
        _g25_var(t7=1, t9=1): 11,
        _g25_var(t6=1, t9=1): -6,
        _g25_var(t8=2): -15,
    })


def g24_degenerate_seed(convention="c", problem=None):
    """beta = 1 table: five insertions of one codim-2 class -> 1, all else 0."""
    from qcsolve.solver import SolutionTable

    problem = problem or get_preset("G24")
    alg = problem.algebra
    if convention not in ("c", "h2"):
        raise BadParams("convention must be 'c' or 'h2'")
    slot = problem.tau_slot[alg.index(convention)]
    values = {}
    for d in problem.admissible_list((1,)):
        hot = d[slot] == 5 and sum(d) == 5
        values[((1,), d)] = 1 if hot else 0
    return SolutionTable.from_values(values, alg.name)

"""Curve classes, the effective cone, and the dimension filter on unknowns.

A curve class is an integer tuple ``beta`` over the dual basis of the
divisor classes, so the pairing of ``beta`` with the i-th divisor is just
``beta[i]``.  A degree ``d`` counts insertions of the classes of codim >= 2,
in basis order.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import floor

from qcsolve import linalg


class UnboundedCone(ValueError):
    """The ordering functional is not strictly positive on the cone."""


class ConeError(ValueError):
    pass


class MissingBound(ValueError):
    """No canonical class and no explicit |d| bound to cut enumeration off."""


@dataclass(frozen=True)
class ConeSpec:
    """Strongly convex cone in V-form (rays) or H-form (inequalities).

    ``omega`` orders curve classes; when omitted it defaults to the sum of
    the dual basis (V-form) or of the inequality normals (H-form).
    """

    rays: tuple = None
    inequalities: tuple = None
    omega: tuple = None

    def __post_init__(self):
        if (self.rays is None) == (self.inequalities is None):
            raise ConeError("give exactly one of rays or inequalities")
        for name in ("rays", "inequalities"):
            vecs = getattr(self, name)
            if vecs is not None:
                object.__setattr__(self, name, tuple(tuple(int(x) for x in v) for v in vecs))
        if self.omega is not None:
            object.__setattr__(self, "omega", tuple(Fraction(x) for x in self.omega))

        if self.rays is not None:
            if self.omega is not None:
                for v in self.rays:
                    if linalg.dot(v, self.omega) <= 0:
                        raise UnboundedCone(f"omega is not positive on ray {v}")
            r = len(self.rays[0]) if self.rays else 0
            if len(self.rays) != r or linalg.rank(self.rays) != r:
                raise ConeError("V-form cones must be simplicial and full-dimensional; "
                                "supply inequalities instead")
            inv = linalg.inverse(self.rays)
            # column l of inv pairs to delta_{kl} with ray k
            dual = [[inv[i][l] for i in range(r)] for l in range(r)]
            ineqs = tuple(linalg.primitive(u) for u in dual)
            extremal = tuple(linalg.primitive(v) for v in self.rays)
            default_omega = [sum(col) for col in zip(*dual)]
        else:
            ineqs = self.inequalities
            r = len(ineqs[0])
            if linalg.rank(ineqs) != r:
                raise ConeError("cone contains a line (inequalities have rank < r)")
            extremal = _extreme_rays(ineqs, r)
            default_omega = [sum(col) for col in zip(*ineqs)]
        object.__setattr__(self, "_ineqs", ineqs)
        object.__setattr__(self, "_extremal", extremal)
        if self.omega is None:
            object.__setattr__(self, "omega", tuple(Fraction(x) for x in linalg.primitive(default_omega)))
        if len(self.omega) != r:
            raise ConeError(f"omega has length {len(self.omega)}, expected {r}")
        for v in extremal:
            if linalg.dot(v, self.omega) <= 0:
                raise UnboundedCone(f"omega is not positive on generator {v}")

    @property
    def rank(self):
        return len(self._ineqs[0])

    @property
    def inequality_normals(self):
        return self._ineqs

    @property
    def generators(self):
        return self._extremal

    def contains(self, beta):
        return all(linalg.dot(u, beta) >= 0 for u in self._ineqs)

    def value(self, beta):
        return linalg.dot(beta, self.omega)


def _extreme_rays(ineqs, r):
    rays = set()
    for sub in combinations(ineqs, r - 1):
        if r > 1 and linalg.rank(sub) != r - 1:
            continue
        ker = linalg.nullspace(list(sub), r)
        if len(ker) != 1:
            continue
        for sign in (1, -1):
            v = [sign * x for x in ker[0]]
            if all(linalg.dot(u, v) >= 0 for u in ineqs):
                rays.add(linalg.primitive(v))
    return tuple(sorted(rays))


def curve_classes_up_to(cone, bound):
    """All nonzero lattice points of the cone with <beta, omega> <= bound."""
    bound = Fraction(bound)
    r = cone.rank
    if bound <= 0 or not cone.generators:
        return []
    lo, hi = [0] * r, [0] * r
    for v in cone.generators:
        reach = bound / cone.value(v)
        for i, x in enumerate(v):
            if x > 0:
                hi[i] += floor(x * reach)
            elif x < 0:
                lo[i] -= floor(-x * reach)
    out = []
    for beta in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if any(beta) and cone.contains(beta) and cone.value(beta) <= bound:
            out.append(beta)
    out.sort(key=lambda b: (cone.value(b), b))
    return out


def pairing_with_divisor(beta, x):
    return linalg.dot(beta, x)


def weights(alg):
    """Codim minus one for each higher basis class."""
    return tuple(alg.codims[t] - 1 for t in alg.tau)


def compositions(weights, target):
    """All d >= 0 with sum d_j * weights_j == target, lexicographically descending."""
    out = []
    if target < 0:
        return out
    s = len(weights)

    def rec(j, left, acc):
        if j == s - 1:
            if left % weights[j] == 0:
                out.append(tuple(acc + [left // weights[j]]))
            return
        for x in range(left // weights[j], -1, -1):
            rec(j + 1, left - x * weights[j], acc + [x])

    if s == 0:
        return [()] if target == 0 else []
    rec(0, target, [])
    return out


def bounded_vectors(s, dbound):
    """All d >= 0 of length s with |d| <= dbound, by |d| then lex descending."""
    out = []
    for total in range(dbound + 1):
        out.extend(compositions((1,) * s, total))
    return out


def _integer_target(value):
    value = Fraction(value)
    return int(value) if value.denominator == 1 else None


def admissible_degrees(alg, beta, K=None, dbound=None):
    if K is None:
        if dbound is None:
            raise MissingBound("no canonical class and no |d| bound configured")
        return bounded_vectors(alg.s, dbound)
    target = _integer_target(pairing_with_divisor(beta, [-k for k in K]) + alg.n - 3)
    if target is None:
        return []
    return compositions(weights(alg), target)


def relation_degrees(alg, beta, codims, K=None, dbound=None):
    if K is None:
        if dbound is None:
            raise MissingBound("no canonical class and no |d| bound configured")
        return bounded_vectors(alg.s, dbound)
    target = _integer_target(pairing_with_divisor(beta, [-k for k in K]) - (sum(codims) - alg.n))
    if target is None:
        return []
    return compositions(weights(alg), target)


def seed_bound(alg, cone, K):
    """Smallest omega-bound past which no class carries a |d| <= 2 unknown.

    Requires -K strictly positive on the cone generators; returns None
    otherwise (the seed set is then infinite).
    """
    minus_k = [-Fraction(k) for k in K]
    ratios = []
    for v in cone.generators:
        p = linalg.dot(v, minus_k)
        if p <= 0:
            return None
        ratios.append(p / cone.value(v))
    # seeds need <beta,-K> + n - 3 <= 2 (n - 1)
    cap = (alg.n + 1) / min(ratios)
    found = [b for b in curve_classes_up_to(cone, cap)
             if any(sum(d) <= 2 for d in admissible_degrees(alg, b, K))]
    return max((cone.value(b) for b in found), default=Fraction(0))


def seed_variables(alg, cone, K=None, bound=None, dbound=None):
    """Admissible (beta, d) with |d| <= 2, ordered by omega then beta then d."""
    if bound is None:
        if K is None:
            raise MissingBound("seed enumeration without K needs an omega bound")
        bound = seed_bound(alg, cone, K)
        if bound is None:
            raise MissingBound("-K is not positive on the cone; give an omega bound")
    out = []
    for beta in curve_classes_up_to(cone, bound):
        for d in sorted(admissible_degrees(alg, beta, K, dbound)):
            if sum(d) <= 2:
                out.append((beta, d))
    return out

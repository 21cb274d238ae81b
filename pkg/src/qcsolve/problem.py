"""The data fixing one system of associativity relations.

A :class:`Problem` bundles an algebra with its effective cone and either a
canonical class (dimension filter) or an explicit |d| bound.  Admissible
degree sets and curve-class splittings are cached here because every
relation builder hits them many times.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from qcsolve import degrees
from qcsolve.algebra import validate_algebra


class InvalidAlgebra(ValueError):
    def __init__(self, report):
        super().__init__("; ".join(report.lines()))
        self.report = report


@dataclass(eq=False)
class Problem:
    algebra: object
    cone: object
    canonical: tuple = None
    dbound: int = None
    doc: str = ""
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.validate:
            report = validate_algebra(self.algebra)
            if not report.ok:
                raise InvalidAlgebra(report)
        if self.canonical is not None:
            self.canonical = tuple(Fraction(k) for k in self.canonical)
            if len(self.canonical) != self.algebra.r:
                raise ValueError("canonical class has the wrong length")
        elif self.dbound is None:
            raise degrees.MissingBound("need a canonical class or a |d| bound")
        if self.cone.rank != self.algebra.r:
            raise ValueError("cone rank differs from rank of A^1")
        alg = self.algebra
        self.pairing = alg.pairing
        self.s = alg.s
        self.r = alg.r
        self.tau_slot = {t: j for j, t in enumerate(alg.tau)}
        self.weights = degrees.weights(alg)
        # Identity entries never contribute (no y_1 dependence in Gamma).
        self.ginv = [(e, f, v) for e, f, v in self.pairing.inverse_entries()
                     if e != 0 and f != 0]
        self._admissible = {}
        self._splits = {}
        self._shifted = {}
        self.cache = {}
        self._shift_cache = {}
        self._target = {}

    # -- dimension filter --------------------------------------------------

    @property
    def name(self):
        return self.algebra.name

    def admissible_list(self, beta):
        beta = tuple(beta)
        got = self._admissible.get(beta)
        if got is None:
            lst = degrees.admissible_degrees(self.algebra, beta, self.canonical, self.dbound)
            got = (sorted(lst), frozenset(lst))
            self._admissible[beta] = got
        return got[0]

    def admissible_set(self, beta):
        if beta not in self._admissible:
            self.admissible_list(beta)
        return self._admissible[beta][1]

    def is_admissible(self, beta, d):
        return d in self.admissible_set(beta)

    def target_weight(self, beta):
        """Weighted degree every admissible d at beta has, or None without K."""
        got = self._target.get(beta, False)
        if got is False:
            got = None
            if self.canonical is not None:
                w = sum(-k * b for k, b in zip(self.canonical, beta)) + self.algebra.n - 3
                # non-integral targets admit nothing; -1 matches no group
                got = int(w) if w.denominator == 1 else -1
            self._target[beta] = got
        return got

    def relation_degrees(self, beta, codims):
        return degrees.relation_degrees(self.algebra, beta, codims, self.canonical, self.dbound)

    def shift(self, idxs):
        """Insertion vector from the higher classes among ``idxs``."""
        got = self._shift_cache.get(idxs)
        if got is None:
            got = self._shift_cache[idxs] = self._shift(idxs)
        return got

    def _shift(self, idxs):
        out = [0] * self.s
        for x in idxs:
            j = self.tau_slot.get(x)
            if j is not None:
                out[j] += 1
        return tuple(out)

    def sigma_factor(self, idxs, beta):
        """Product of beta's pairings with the divisor classes among ``idxs``."""
        f = 1
        for x in idxs:
            if 1 <= x <= self.r:
                f *= beta[x - 1]
        return f

    def shifted_variables(self, beta, s):
        """[(delta, d)] over admissible d at beta with d >= s, delta = d - s."""
        key = (beta, s)
        got = self._shifted.get(key)
        if got is None:
            got = []
            for d in self.admissible_list(beta):
                delta = tuple(a - b for a, b in zip(d, s))
                if min(delta, default=0) >= 0:
                    got.append((delta, d))
            self._shifted[key] = got
        return got

    # -- curve classes -----------------------------------------------------

    def value(self, beta):
        return self.cone.value(beta)

    def classes(self, bound):
        return degrees.curve_classes_up_to(self.cone, bound)

    def splits(self, beta):
        """Ordered pairs (b1, b2) of cone classes with b1 + b2 = beta."""
        beta = tuple(beta)
        got = self._splits.get(beta)
        if got is None:
            got = []
            top = self.value(beta)
            for b1 in self.classes(top):
                if self.value(b1) >= top:
                    break
                b2 = tuple(x - y for x, y in zip(beta, b1))
                if any(b2) and self.cone.contains(b2):
                    got.append((b1, b2))
            self._splits[beta] = got
        return got

    def sort_key(self, var):
        return (self.value(var[0]), var[0], var[1])


@lru_cache(maxsize=None)
def binomial_weight(d, delta):
    """prod_m C(d_m, delta_m): coefficient from multiplying y^delta/delta! series."""
    out = 1
    for n, k in zip(d, delta):
        out *= comb(n, k)
    return out

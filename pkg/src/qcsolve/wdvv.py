"""Associativity relations as exact quadratic polynomials.

The potential is never expanded as a series.  Everything is phrased as the
coefficient of exp(beta . y_sigma) y_tau^d / d! in products of third
partial derivatives of the quantum correction Gamma, where

    [Gamma_abc](beta; d) = (prod of beta_x over divisor entries) * N(beta; d + shifts)

and the shifts add one insertion for each entry of codim >= 2.  Entries of
the relations may be basis indices or sparse algebra elements
``{index: coefficient}``; everything is extended multilinearly.

The relation <ijkl>(beta; d) is stored as

    linear contribution - quadratic contribution

with the linear part  G_ij(kl) + G_(ij)kl - G_jk(il) - G_(jk)il  and the
quadratic part  sum g^ef G_jke G_fil - sum g^ef G_ije G_fkl.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm

from qcsolve.polys import NVar, QuadPoly
from qcsolve.problem import binomial_weight


class PreconditionViolated(ValueError):
    pass


class LinearPartNonzero(AssertionError):
    pass


class NonIntegral(ArithmeticError):
    pass


class RangeExceeded(ValueError):
    pass


# -- algebra elements as sparse dicts ----------------------------------------


def element(x):
    if isinstance(x, dict):
        return {k: Fraction(v) for k, v in x.items() if v != 0}
    if isinstance(x, int):
        return {x: Fraction(1)}
    return {i: Fraction(v) for i, v in enumerate(x) if v != 0}


def _mul(alg, x, y):
    out = {}
    for a, xa in x.items():
        for b, yb in y.items():
            for q, t in alg.product(a, b).items():
                out[q] = out.get(q, 0) + xa * yb * t
    return {q: v for q, v in out.items() if v != 0}


def _form(x, y, z):
    """Multilinear expansion of Gamma_{xyz} into sorted basis triples."""
    out = {}
    for (a, ca), (b, cb), (c, cc) in product(x.items(), y.items(), z.items()):
        if a == 0 or b == 0 or c == 0:
            continue
        key = tuple(sorted((a, b, c)))
        out[key] = out.get(key, 0) + ca * cb * cc
    return {k: v for k, v in out.items() if v != 0}


# -- coefficient extraction ----------------------------------------------------


def gamma_coefficient(problem, a, b, c, beta, d):
    """(factor, NVar) for [Gamma_abc](beta; d), or None when it vanishes."""
    if 0 in (a, b, c):
        return None
    beta, d = tuple(beta), tuple(d)
    factor = problem.sigma_factor((a, b, c), beta)
    if factor == 0:
        return None
    target = tuple(x + y for x, y in zip(d, problem.shift((a, b, c))))
    if not problem.is_admissible(beta, target):
        return None
    return Fraction(factor), NVar(beta, target)


def _linear_terms(problem, form, beta, d, coef, poly):
    for triple, c in form.items():
        got = gamma_coefficient(problem, *triple, beta, d)
        if got is not None:
            poly.add_linear(got[1], coef * c * got[0])


def _add_pairing(problem, pairs, left, right, coef, entries=None):
    """Accumulate coef * sum_ef g^ef left(e) (x) right(f) into ``pairs``.

    ``entries`` defaults to the inverse pairing without identity rows, which
    is enough whenever e and f sit directly inside a Gamma.
    """
    for e, f, g in problem.ginv if entries is None else entries:
        lf = left(e)
        if not lf:
            continue
        rf = right(f)
        for x, cx in lf.items():
            for y, cy in rf.items():
                # both orderings of a split give the same total, so fold them
                key = (x, y) if x <= y else (y, x)
                pairs[key] = pairs.get(key, 0) + coef * g * cx * cy


def _convolve(problem, pairs, beta, d, poly):
    """Coefficient at (beta; d) of sum c * Gamma_x * Gamma_y over ``pairs``."""
    beta, d = tuple(beta), tuple(d)
    splits = problem.splits(beta)
    if not splits or not pairs:
        return
    # integer accumulation over a common denominator
    den = lcm(*(c.denominator for c in pairs.values()))
    wts = problem.weights
    box = _sub_vectors(d, wts)
    by_shift = {}
    acc = {}
    for (x, y), c in pairs.items():
        sx, sy = problem.shift(x), problem.shift(y)
        lists = by_shift.get((sx, sy))
        if lists is None:
            lists = by_shift[(sx, sy)] = {}
        c = c * den if type(c) is int else int(c * den)
        wx = sum(a * b for a, b in zip(sx, wts))
        for b1, b2 in splits:
            f = problem.sigma_factor(x, b1) * problem.sigma_factor(y, b2)
            if f == 0:
                continue
            target = problem.target_weight(b1)
            group = None if target is None else target - wx
            shifted = lists.get(group)
            if shifted is None:
                src = box.get(group, ()) if group is not None else \
                    [t for grp in box.values() for t in grp]
                shifted = lists[group] = [
                    (tuple([p + q for p, q in zip(delta, sx)]),
                     tuple([p + q for p, q in zip(rest, sy)]), w)
                    for delta, rest, w in src]
            if not shifted:
                continue
            cf = c * f
            adm1, adm2 = problem.admissible_set(b1), problem.admissible_set(b2)
            for d1, d2, w in shifted:
                if d1 not in adm1 or d2 not in adm2:
                    continue
                v1, v2 = NVar(b1, d1), NVar(b2, d2)
                key = (v1, v2) if v1 <= v2 else (v2, v1)
                acc[key] = acc.get(key, 0) + cf * w
    for (v1, v2), c in acc.items():
        if c:
            poly.add_quadratic(v1, v2, Fraction(c, den))


@lru_cache(maxsize=None)
def _sub_vectors(d, wts):
    """{weight: [(delta, d - delta, binomial weight)]} over 0 <= delta <= d."""
    out = {}
    for delta in product(*(range(x + 1) for x in d)):
        rest = tuple(x - y for x, y in zip(d, delta))
        key = sum(a * b for a, b in zip(delta, wts))
        out.setdefault(key, []).append((delta, rest, binomial_weight(d, delta)))
    return out


def _integral(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _entries(problem, i, j, k, l):
    return [element(x) for x in (i, j, k, l)]


def _linear(problem, i, j, k, l, beta, d, poly, coef=1):
    alg = problem.algebra
    _linear_terms(problem, _form(i, j, _mul(alg, k, l)), beta, d, coef, poly)
    _linear_terms(problem, _form(_mul(alg, i, j), k, l), beta, d, coef, poly)
    _linear_terms(problem, _form(j, k, _mul(alg, i, l)), beta, d, -coef, poly)
    _linear_terms(problem, _form(_mul(alg, j, k), i, l), beta, d, -coef, poly)


def _quadratic_pairs(problem, i, j, k, l, pairs, coef=1):
    """Pairs for  sum G_jke g G_fil - sum G_ije g G_fkl."""
    _add_pairing(problem, pairs, lambda e: _form(j, k, {e: 1}), lambda f: _form({f: 1}, i, l), coef)
    _add_pairing(problem, pairs, lambda e: _form(i, j, {e: 1}), lambda f: _form({f: 1}, k, l), -coef)


def linear_contribution(problem, i, j, k, l, beta, d):
    poly = QuadPoly()
    _linear(problem, *_entries(problem, i, j, k, l), beta, d, poly)
    return poly


def quadratic_contribution(problem, i, j, k, l, beta, d):
    pairs = {}
    _quadratic_pairs(problem, *_entries(problem, i, j, k, l), pairs)
    poly = QuadPoly()
    _convolve(problem, pairs, beta, d, poly)
    return poly


def build_relation(problem, xi, pi, rho, sigma, beta, d):
    """<xi pi rho sigma>(beta; d) as linear minus quadratic contribution."""
    key = (xi, pi, rho, sigma)
    if all(isinstance(x, int) for x in key):
        forms, pairs = _expansion(problem, key)
    else:
        forms, pairs = _expand(problem, _entries(problem, *key))
    poly = QuadPoly()
    for coef, form in forms:
        _linear_terms(problem, form, beta, d, coef, poly)
    _convolve(problem, pairs, beta, d, poly)
    return poly


def _expand(problem, entries):
    i, j, k, l = entries
    alg = problem.algebra
    forms = [
        (1, _form(i, j, _mul(alg, k, l))),
        (1, _form(_mul(alg, i, j), k, l)),
        (-1, _form(j, k, _mul(alg, i, l))),
        (-1, _form(_mul(alg, j, k), i, l)),
    ]
    pairs = {}
    _quadratic_pairs(problem, i, j, k, l, pairs, -1)
    forms = [(c, {t: _integral(v) for t, v in form.items()}) for c, form in forms]
    return forms, {k: _integral(v) for k, v in pairs.items() if v != 0}


def _expansion(problem, t):
    cache = problem.cache.setdefault("expansion", {})
    got = cache.get(t)
    if got is None:
        got = cache[t] = _expand(problem, _entries(problem, *t))
    return got


# -- symmetry and enumeration ----------------------------------------------------

# (positions, sign): (i,j,k,l) -> (j,i,l,k) keeps the relation, swapping a
# diagonal pair (i<->k or j<->l) flips its sign.
_GENERATORS = (((1, 0, 3, 2), 1), ((2, 1, 0, 3), -1), ((0, 3, 2, 1), -1))


def _symmetry_group():
    group = {(0, 1, 2, 3): 1}
    frontier = list(group)
    while frontier:
        p = frontier.pop()
        for q, sq in _GENERATORS:
            comp = tuple(p[x] for x in q)
            if comp not in group:
                group[comp] = group[p] * sq
                frontier.append(comp)
    return group


SYMMETRIES = _symmetry_group()


def orbit(t):
    """{tuple: sign} with Rel(image) = sign * Rel(t)."""
    out = {}
    for p, sign in SYMMETRIES.items():
        out.setdefault(tuple(t[x] for x in p), sign)
    return out


def canonical(t):
    """(representative, sign) with Rel(t) = sign * Rel(representative)."""
    orb = orbit(t)
    rep = min(orb)
    return rep, orb[rep]


def is_trivial(t):
    i, j, k, l = t
    return 0 in t or k == i or l == j


def relation_representatives(size):
    """One basis 4-tuple per orbit of nontrivial relations, sorted."""
    reps = set()
    for t in product(range(1, size), repeat=4):
        if not is_trivial(t):
            reps.add(canonical(t)[0])
    return sorted(reps)


@dataclass(frozen=True, order=True)
class RelationId:
    indices: tuple
    beta: tuple
    d: tuple
    sign: int = 1

    def label(self, alg):
        ent = " ".join(alg.labels[x] for x in self.indices)
        b = ",".join(map(str, self.beta))
        d = ",".join(map(str, self.d))
        s = "-" if self.sign < 0 else ""
        return f"{s}<{ent}>({b};{d})"


def relation(problem, t, beta, d):
    """Basis relation with the dimension filter applied."""
    return build_relation(problem, *t, beta, d)


def enumerate_relations(problem, beta, degree=None, reps=None, include_zero=False):
    """Canonical relations at ``beta``, ordered by (d, indices).

    Each polynomial is sign-normalized so its leading coefficient is
    positive; ``RelationId.sign`` records the factor applied to the
    representative's own relation.  Relations that pass the dimension
    filter but build to zero are dropped unless ``include_zero``.
    """
    beta = tuple(beta)
    alg = problem.algebra
    if reps is None:
        reps = relation_representatives(alg.size)
    out = []
    for t in reps:
        codims = [alg.codims[x] for x in t]
        for d in problem.relation_degrees(beta, codims):
            if degree is not None and tuple(degree) != d:
                continue
            poly = relation(problem, t, beta, d)
            if poly.is_zero() and not include_zero:
                continue
            sign, poly = poly.normalized()
            out.append((RelationId(t, beta, d, sign), poly))
    out.sort(key=lambda item: (item[0].d, item[0].indices))
    return out


def seed_representatives(alg):
    """Orbit representatives of <A, A^1, A, A^1> (nontrivial)."""
    reps = set()
    for t in product(range(1, alg.size), alg.sigma, range(1, alg.size), alg.sigma):
        if not is_trivial(t):
            reps.add(canonical(t)[0])
    return sorted(reps)


def seed_relations(problem, bound, include_zero=False):
    """<A, A^1, A, A^1>(beta; 0) over classes up to ``bound``."""
    zero = (0,) * problem.s
    reps = seed_representatives(problem.algebra)
    out = []
    for beta in problem.classes(bound):
        out.extend(enumerate_relations(problem, beta, zero, reps, include_zero))
    return out


# -- counting -----------------------------------------------------------------


def count_formulas(r):
    a = r**4 - 6 * r**3 + 15 * r**2 - 18 * r + 8
    b = r**4 - 4 * r**3 + 5 * r**2 - 2 * r
    if a % 8 or b % 12:
        raise NonIntegral(f"count formulas are not integral at r={r}")
    return a // 8, b // 12


def brute_count(r):
    """Orbit count over an r-element basis with the identity among it.

    Tuples containing the identity or with k == i or l == j are trivial.
    For the second count the three orbits of a four-distinct-symbol cyclic
    triple (ijkl, jkil, kijl) are counted as two.
    """
    if r > 10:
        raise RangeExceeded("brute_count is limited to r <= 10")
    reps = relation_representatives(r)
    seen = set()
    two_of_three = 0
    for t in reps:
        if t in seen:
            continue
        if len(set(t)) < 4:
            seen.add(t)
            two_of_three += 1
            continue
        i, j, k, l = t
        triple = {canonical(c)[0] for c in ((i, j, k, l), (j, k, i, l), (k, i, j, l))}
        seen |= triple
        two_of_three += len(triple) - 1
    return len(reps), two_of_three


# -- interdependency identities --------------------------------------------------


def check_two_out_of_three(problem, i, j, k, l, beta, d):
    tot = build_relation(problem, i, j, k, l, beta, d)
    tot.iadd(build_relation(problem, j, k, i, l, beta, d))
    tot.iadd(build_relation(problem, k, i, j, l, beta, d))
    return tot.is_zero()


def _symbol_weight(problem, x, beta):
    if x == 0:
        return 0
    if x <= problem.r:
        return beta[x - 1]
    return 1


def _unit_shift(problem, x):
    return problem.shift((x,))


def three_symbols_combination(problem, i, j, k, l, m, beta, d):
    alg = problem.algebra
    if alg.codims[m] < 2:
        raise PreconditionViolated(f"{alg.labels[m]} has codim < 2")
    slot = problem.tau_slot[m]
    d = tuple(d)
    if d[slot] < 1:
        raise PreconditionViolated(f"d has no insertion of {alg.labels[m]}")
    beta = tuple(beta)
    em = _unit_shift(problem, m)

    def moved(x):
        ex = _unit_shift(problem, x)
        return tuple(a + b - c for a, b, c in zip(d, ex, em))

    tot = build_relation(problem, i, j, k, l, beta, d)
    tot.iadd(build_relation(problem, i, l, k, m, beta, moved(j)), _symbol_weight(problem, j, beta))
    tot.iadd(build_relation(problem, i, m, k, j, beta, moved(l)), _symbol_weight(problem, l, beta))
    return tot


def check_three_symbols(problem, i, j, k, l, m, beta, d):
    return three_symbols_combination(problem, i, j, k, l, m, beta, d).is_zero()


def m_diagonal_sides(problem, i, j, k, l, m, beta, d):
    alg = problem.algebra
    i, j, k, l, m = (element(x) for x in (i, j, k, l, m))
    sides = []
    for (a, b), (c, e_) in (((i, j), (k, l)), ((k, l), (i, j))):
        pairs = {}
        _add_pairing(problem, pairs,
                     lambda e, a=a, b=b: _form(a, b, _mul(alg, m, {e: 1})),
                     lambda f, c=c, e_=e_: _form({f: 1}, c, e_), 1,
                     problem.pairing.inverse_entries())
        poly = QuadPoly()
        _convolve(problem, pairs, beta, d, poly)
        sides.append(poly)
    return sides


def check_m_diagonal(problem, i, j, k, l, m, beta, d):
    left, right = m_diagonal_sides(problem, i, j, k, l, m, beta, d)
    return left == right


def five_symbols_combination(problem, i, j, k, l, m, beta, d, check=True):
    """<(mi)jkl> - <m(ij)kl> + <mi(jk)l> - <mij(kl)> + <(lm)ijk>; linear part must vanish."""
    alg = problem.algebra
    i, j, k, l, m = (element(x) for x in (i, j, k, l, m))
    terms = (
        (1, (_mul(alg, m, i), j, k, l)),
        (-1, (m, _mul(alg, i, j), k, l)),
        (1, (m, i, _mul(alg, j, k), l)),
        (-1, (m, i, j, _mul(alg, k, l))),
        (1, (_mul(alg, l, m), i, j, k)),
    )
    tot = QuadPoly()
    for sign, entries in terms:
        tot.iadd(build_relation(problem, *entries, beta, d), sign)
    if check and tot.linear:
        raise LinearPartNonzero(f"linear part {tot.linear_part()} does not vanish")
    return tot

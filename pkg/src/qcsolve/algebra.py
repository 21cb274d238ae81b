"""Positively graded Gorenstein Q-algebras given by explicit tables.

A :class:`GradedAlgebra` is a basis of homogeneous elements with
codimensions, structure constants for every unordered pair, and the
integral on each basis element.  Index 0 is always the identity; the
divisor classes follow, then the higher classes in nondecreasing codim.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement, product

from qcsolve import linalg


class SingularPairing(ValueError):
    pass


class AlgebraError(ValueError):
    """Structurally malformed algebra input (bad labels or codims)."""


def _clean(vec):
    return {k: Fraction(v) for k, v in vec.items() if v != 0}


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    name: str
    n: int
    labels: tuple
    codims: tuple
    # (a, b) with a <= b  ->  {basis index: coefficient}
    products: dict
    integral: tuple

    def _key(self):
        prods = {k: v for k, v in self.products.items() if v}
        return (self.name, self.n, self.labels, self.codims, prods, self.integral)

    def __eq__(self, other):
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash((self.name, self.labels, self.codims, self.integral))

    @classmethod
    def from_tables(cls, name, n, basis, products, integrals):
        """Build from label-keyed tables.

        ``basis`` is a list of (label, codim); ``products`` maps label pairs
        to {label: coefficient}; products with the identity are implicit and
        missing pairs are zero.  ``integrals`` maps labels to rationals.
        """
        labels = tuple(lab for lab, _ in basis)
        codims = tuple(int(c) for _, c in basis)
        if len(set(labels)) != len(labels):
            raise AlgebraError("basis labels are not unique")
        if any(c < 0 or c > n for c in codims):
            raise AlgebraError(f"codims must lie in 0..{n}")
        index = {lab: i for i, lab in enumerate(labels)}

        def idx(lab):
            try:
                return index[lab]
            except KeyError:
                raise AlgebraError(f"unknown basis label {lab!r}") from None

        table = {}
        for (a, b), vec in products.items():
            i, j = sorted((idx(a), idx(b)))
            table[(i, j)] = _clean({idx(k): v for k, v in vec.items()})
        if codims and codims[0] == 0:
            for j in range(len(labels)):
                table.setdefault((0, j), {j: Fraction(1)})
        integral = [Fraction(0)] * len(labels)
        for lab, v in integrals.items():
            integral[idx(lab)] = Fraction(v)
        return cls(name, int(n), labels, codims, table, tuple(integral))

    # -- basic shape -------------------------------------------------------

    @property
    def size(self):
        return len(self.labels)

    @cached_property
    def r(self):
        return sum(1 for c in self.codims if c == 1)

    @cached_property
    def s(self):
        return sum(1 for c in self.codims if c >= 2)

    @property
    def sigma(self):
        """Basis indices of the divisor classes."""
        return range(1, 1 + self.r)

    @property
    def tau(self):
        """Basis indices of the classes of codim >= 2."""
        return range(1 + self.r, self.size)

    def index(self, label):
        return self.labels.index(label)

    def product(self, a, b):
        """Structure constants of T_a * T_b as a sparse dict."""
        if a > b:
            a, b = b, a
        return self.products.get((a, b), {})

    def unit(self, i):
        return [Fraction(int(j == i)) for j in range(self.size)]

    # -- pairing -----------------------------------------------------------

    @cached_property
    def pairing(self):
        return inverse_pairing(self)


@dataclass(frozen=True)
class PairingData:
    g: list
    g_inv: list
    triple: dict = field(repr=False)

    def inverse_entries(self):
        """Nonzero (e, f, g^ef), row-major."""
        return [(e, f, v) for e, row in enumerate(self.g_inv)
                for f, v in enumerate(row) if v != 0]


@dataclass
class Violation:
    code: str
    message: str
    witness: tuple = ()


@dataclass
class ValidationReport:
    violations: list

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def lines(self):
        if self.ok:
            return ["ok"]
        return [f"{v.code}: {v.message}" for v in self.violations]


def multiply(alg, x, y):
    out = [Fraction(0)] * alg.size
    for a, xa in enumerate(x):
        if xa == 0:
            continue
        for b, yb in enumerate(y):
            if yb == 0:
                continue
            for q, t in alg.product(a, b).items():
                out[q] += xa * yb * t
    return out


def integral(alg, x):
    return sum((Fraction(v) * w for v, w in zip(x, alg.integral)), Fraction(0))


def _basis_integral(alg, vec):
    return sum((v * alg.integral[q] for q, v in vec.items()), Fraction(0))


def triple_integral(alg, a, b, c):
    tot = Fraction(0)
    for q, t in alg.product(a, b).items():
        tot += t * _basis_integral(alg, alg.product(q, c))
    return tot


def inverse_pairing(alg):
    size = alg.size
    g = [[_basis_integral(alg, alg.product(i, j)) for j in range(size)]
         for i in range(size)]
    try:
        g_inv = linalg.inverse(g)
    except ZeroDivisionError:
        raise SingularPairing(f"pairing of {alg.name} is degenerate") from None
    triple = {}
    for a, b, c in combinations_with_replacement(range(size), 3):
        if alg.codims[a] + alg.codims[b] + alg.codims[c] != alg.n:
            continue
        v = triple_integral(alg, a, b, c)
        if v:
            triple[(a, b, c)] = v
    return PairingData(g, g_inv, triple)


def validate_algebra(alg):
    """Check the standing hypotheses; failures are collected, never raised."""
    bad = []
    codims, size, n = alg.codims, alg.size, alg.n
    if n < 2:
        bad.append(Violation("dimension", f"top degree {n} < 2"))
    if not codims or codims[0] != 0 or codims.count(0) != 1:
        bad.append(Violation("identity", "need exactly one codim-0 element, listed first"))
        return ValidationReport(bad)
    if list(codims) != sorted(codims):
        bad.append(Violation("order", "basis codims must be nondecreasing"))
    if alg.r < 1:
        bad.append(Violation("divisors", "A^1 is zero"))
    if max(codims) != n:
        bad.append(Violation("socle", f"no basis element in codim {n}"))

    for j in range(size):
        if alg.product(0, j) != {j: 1}:
            bad.append(Violation("identity", f"1*{alg.labels[j]} != {alg.labels[j]}", (0, j)))

    for (a, b), vec in alg.products.items():
        for q in vec:
            if codims[q] != codims[a] + codims[b]:
                bad.append(Violation(
                    "grading",
                    f"{alg.labels[a]}*{alg.labels[b]} has a term {alg.labels[q]} "
                    f"outside codim {codims[a] + codims[b]}", (a, b, q)))

    for a, b, c in product(range(1, size), repeat=3):
        if codims[a] + codims[b] + codims[c] > n or not a <= c:
            continue
        left = multiply(alg, multiply(alg, alg.unit(a), alg.unit(b)), alg.unit(c))
        right = multiply(alg, alg.unit(a), multiply(alg, alg.unit(b), alg.unit(c)))
        if left != right:
            bad.append(Violation(
                "associativity",
                f"({alg.labels[a]}*{alg.labels[b]})*{alg.labels[c]} != "
                f"{alg.labels[a]}*({alg.labels[b]}*{alg.labels[c]})", (a, b, c)))

    top = [i for i in range(size) if codims[i] == n]
    if len(top) != 1:
        bad.append(Violation("socle", f"codim-{n} piece has rank {len(top)}, expected 1"))
    elif alg.integral[top[0]] == 0:
        bad.append(Violation("integral", "integral vanishes on the top class", (top[0],)))
    for i in range(size):
        if codims[i] != n and alg.integral[i] != 0:
            bad.append(Violation("integral", f"integral of {alg.labels[i]} is nonzero below codim {n}", (i,)))

    try:
        inverse_pairing(alg)
    except SingularPairing:
        bad.append(Violation("pairing", "pairing matrix is singular"))
    return ValidationReport(bad)


def is_generated_by_divisors(alg):
    """True iff products of divisor classes span every graded piece."""
    span = [alg.unit(i) for i in alg.sigma]
    for k in range(2, alg.n + 1):
        piece = [i for i in range(alg.size) if alg.codims[i] == k]
        new = [multiply(alg, v, alg.unit(i)) for v in span for i in alg.sigma]
        rows = [[v[i] for i in piece] for v in new]
        if linalg.rank(rows) != len(piece):
            return False
        span = new
    return True

"""Sparse polynomials of degree <= 2 in the unknowns N(beta; d)."""

from fractions import Fraction
from typing import NamedTuple


class NVar(NamedTuple):
    """The unknown N(beta; d).  Tuple order is the canonical key."""

    beta: tuple
    d: tuple

    def __str__(self):
        b = ",".join(map(str, self.beta))
        d = ",".join(map(str, self.d))
        return f"N({b};{d})"


def _pair(v, w):
    return (v, w) if v <= w else (w, v)


def _fmt_coef(c, first):
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    body = "" if mag == 1 else f"{mag}*"
    return sign, body


class QuadPoly:
    """linear: {NVar: q};  quadratic: {(NVar, NVar) sorted: q}.  No zeros stored."""

    __slots__ = ("linear", "quadratic")

    def __init__(self, linear=None, quadratic=None):
        self.linear = {}
        self.quadratic = {}
        for v, c in (linear or {}).items():
            self.add_linear(v, c)
        for (v, w), c in (quadratic or {}).items():
            self.add_quadratic(v, w, c)

    def add_linear(self, v, c):
        if c == 0:
            return
        x = self.linear.get(v, 0) + c
        if x == 0:
            del self.linear[v]
        else:
            self.linear[v] = Fraction(x)

    def add_quadratic(self, v, w, c):
        if c == 0:
            return
        key = _pair(v, w)
        x = self.quadratic.get(key, 0) + c
        if x == 0:
            del self.quadratic[key]
        else:
            self.quadratic[key] = Fraction(x)

    def iadd(self, other, coef=1):
        if coef == 0:
            return self
        for v, c in other.linear.items():
            self.add_linear(v, coef * c)
        for (v, w), c in other.quadratic.items():
            self.add_quadratic(v, w, coef * c)
        return self

    def __add__(self, other):
        return self.copy().iadd(other)

    def __sub__(self, other):
        return self.copy().iadd(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, c):
        out = QuadPoly()
        if c != 0:
            out.linear = {v: x * c for v, x in self.linear.items()}
            out.quadratic = {k: x * c for k, x in self.quadratic.items()}
        return out

    def copy(self):
        out = QuadPoly()
        out.linear = dict(self.linear)
        out.quadratic = dict(self.quadratic)
        return out

    def linear_part(self):
        return QuadPoly(linear=self.linear)

    def quadratic_part(self):
        out = QuadPoly()
        out.quadratic = dict(self.quadratic)
        return out

    def is_zero(self):
        return not self.linear and not self.quadratic

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, QuadPoly):
            return NotImplemented
        return self.linear == other.linear and self.quadratic == other.quadratic

    def __hash__(self):
        return hash((frozenset(self.linear.items()), frozenset(self.quadratic.items())))

    def variables(self):
        out = set(self.linear)
        for v, w in self.quadratic:
            out.add(v)
            out.add(w)
        return out

    def leading_coefficient(self):
        """First linear coefficient in variable order, else first quadratic one."""
        if self.linear:
            return self.linear[min(self.linear)]
        if self.quadratic:
            return self.quadratic[min(self.quadratic)]
        return Fraction(0)

    def normalized(self):
        """Return (sign, poly) with the leading coefficient positive."""
        sign = -1 if self.leading_coefficient() < 0 else 1
        return sign, (self if sign == 1 else self.scaled(-1))

    def evaluate(self, values, default=None):
        """Exact value; ``values`` maps NVar -> rational.

        Missing variables read as ``default``; with no default a KeyError
        naming the variable is raised.
        """
        def get(v):
            if v in values:
                return values[v]
            if default is None:
                raise KeyError(v)
            return default

        tot = Fraction(0)
        for v, c in self.linear.items():
            x = get(v)
            if x:
                tot += c * x
        for (v, w), c in self.quadratic.items():
            x, y = get(v), get(w)
            if x and y:
                tot += c * x * y
        return tot

    def terms(self):
        lin = sorted(self.linear.items())
        quad = sorted(self.quadratic.items())
        return lin, quad

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        lin, quad = self.terms()
        for v, c in lin:
            sign, body = _fmt_coef(c, not parts)
            parts.append(f"{sign}{body}{v}")
        for (v, w), c in quad:
            sign, body = _fmt_coef(c, not parts)
            mono = f"{v}^2" if v == w else f"{v}*{w}"
            parts.append(f"{sign}{body}{mono}")
        return " ".join(parts)

    def __repr__(self):
        return f"QuadPoly({self})"

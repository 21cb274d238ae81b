"""Line-oriented definition files for algebras, cones and canonical classes.

    algebra P2 dimension 2
    basis one:0 h:1 h2:2
    product h * h = h2
    integral h2 = 1
    cone ray (1)
    canonical (-3)

``#`` starts a comment that runs to the end of the line.  Products with the
identity are implicit; a product of two other classes may be omitted only
when their codims add up to more than the dimension.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from qcsolve.algebra import AlgebraError, GradedAlgebra
from qcsolve.degrees import ConeSpec
from qcsolve.problem import Problem

KEYWORDS = frozenset({"algebra", "dimension", "basis", "product", "integral",
                      "cone", "ray", "ineq", "canonical"})
ITEM_START = ("basis", "product", "integral", "cone", "canonical")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<int>[0-9]+) | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[:*=+\-/(),])
""", re.VERBOSE)


class ParseError(ValueError):
    def __init__(self, line, col, expected, found):
        self.line, self.col = line, col
        self.expected = tuple(sorted(expected))
        self.found = found
        super().__init__(f"line {line}, column {col}: expected "
                         f"{' or '.join(self.expected)}, found {found}")


class DefinitionError(ValueError):
    """Well-formed file whose content cannot describe an algebra."""


@dataclass
class Definition:
    name: str
    dimension: int
    basis: list = field(default_factory=list)        # [(label, codim)]
    products: dict = field(default_factory=dict)     # (a, b) -> {label: Fraction}
    integrals: dict = field(default_factory=dict)    # label -> Fraction
    rays: list = field(default_factory=list)
    inequalities: list = field(default_factory=list)
    canonical: tuple = None


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int

    def show(self):
        return "end of file" if self.kind == "eof" else repr(self.text)


def _lex(text):
    out = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(line, pos - start + 1, {"token"}, repr(text[pos]))
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            word = m.group()
            if kind == "ident" and word in KEYWORDS:
                kind = "kw"
            out.append(_Tok(kind, word, line, pos - start + 1))
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - start + 1))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, expected, tok=None):
        tok = tok or self.tok
        raise ParseError(tok.line, tok.col, expected, tok.show())

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def take(self, kind, text=None, name=None):
        if not self.at(kind, text):
            self.fail({name or (repr(text) if text else kind.upper())})
        t = self.tok
        self.i += 1
        return t

    def ident(self):
        if self.at("kw"):
            self.fail({"IDENT (not a keyword)"})
        return self.take("ident", name="IDENT")

    def integer(self, signed=False):
        neg = False
        if signed and self.at("punct", "-"):
            self.i += 1
            neg = True
        n = int(self.take("int", name="INT").text)
        return -n if neg else n

    def rational(self):
        neg = False
        if self.at("punct", "-"):
            self.i += 1
            neg = True
        num = int(self.take("int", name="INT").text)
        den = 1
        if self.at("punct", "/"):
            self.i += 1
            tok = self.tok
            den = int(self.take("int", name="INT").text)
            if den == 0:
                self.fail({"nonzero denominator"}, tok)
        q = Fraction(num, den)
        return -q if neg else q

    def vector(self):
        self.take("punct", "(")
        out = [self.integer(signed=True)]
        while self.at("punct", ","):
            self.i += 1
            out.append(self.integer(signed=True))
        self.take("punct", ")")
        return tuple(out)

    def label(self, known):
        tok = self.tok
        name = self.ident().text
        if name not in known:
            raise ParseError(tok.line, tok.col, {"declared basis label"}, f"unknown label {name!r}")
        return name

    def term(self, known, sign):
        coef = Fraction(1)
        if self.at("int") or self.at("punct", "-"):
            coef = self.rational()
        return self.label(known), sign * coef

    def lincomb(self, known):
        if self.at("int", "0") and self.toks[self.i + 1].kind != "ident":
            self.i += 1
            return {}
        out = {}
        terms = [self.term(known, 1)]
        while self.at("punct", "+") or self.at("punct", "-"):
            sign = 1 if self.take("punct").text == "+" else -1
            terms.append(self.term(known, sign))
        for lab, c in terms:
            out[lab] = out.get(lab, 0) + c
        return {k: v for k, v in out.items() if v != 0}

    def parse(self):
        self.take("kw", "algebra")
        name = self.ident().text
        self.take("kw", "dimension")
        defn = Definition(name, self.integer())
        known = {}
        while not self.at("eof"):
            if not self.at("kw") or self.tok.text not in ITEM_START:
                self.fail({repr(k) for k in ITEM_START} | {"end of file"})
            kw = self.take("kw").text
            if kw == "basis":
                while True:
                    tok = self.tok
                    lab = self.ident().text
                    if lab in known:
                        raise ParseError(tok.line, tok.col, {"new label"}, f"duplicate label {lab!r}")
                    self.take("punct", ":")
                    known[lab] = self.integer()
                    defn.basis.append((lab, known[lab]))
                    if not self.at("ident"):
                        break
            elif kw == "product":
                tok = self.tok
                a = self.label(known)
                self.take("punct", "*")
                b = self.label(known)
                if (a, b) in defn.products or (b, a) in defn.products:
                    raise ParseError(tok.line, tok.col, {"new product"}, f"duplicate product {a} * {b}")
                self.take("punct", "=")
                defn.products[(a, b)] = self.lincomb(known)
            elif kw == "integral":
                tok = self.tok
                lab = self.label(known)
                if lab in defn.integrals:
                    raise ParseError(tok.line, tok.col, {"new integral"}, f"duplicate integral {lab!r}")
                self.take("punct", "=")
                defn.integrals[lab] = self.rational()
            elif kw == "cone":
                if self.at("kw", "ray"):
                    self.i += 1
                    defn.rays.append(self.vector())
                elif self.at("kw", "ineq"):
                    self.i += 1
                    defn.inequalities.append(self.vector())
                else:
                    self.fail({"'ray'", "'ineq'"})
            else:
                tok = self.tok
                if defn.canonical is not None:
                    raise ParseError(tok.line, tok.col, {"single canonical"}, "second canonical class")
                defn.canonical = self.vector()
        return defn


def parse_definition(text):
    return _Parser(text).parse()


def _rat(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _lincomb(vec):
    if not vec:
        return "0"
    out = []
    for k, (lab, c) in enumerate(vec.items()):
        c = Fraction(c)
        if k == 0:
            out.append(lab if c == 1 else f"{_rat(c)} {lab}")
        else:
            mag = abs(c)
            body = lab if mag == 1 else f"{_rat(mag)} {lab}"
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def _vec(v):
    return "(" + ", ".join(str(int(x)) for x in v) + ")"


def format_definition(defn):
    lines = [f"algebra {defn.name} dimension {defn.dimension}"]
    if defn.basis:
        lines.append("basis " + " ".join(f"{lab}:{c}" for lab, c in defn.basis))
    for (a, b), vec in defn.products.items():
        lines.append(f"product {a} * {b} = {_lincomb(vec)}")
    for lab, v in defn.integrals.items():
        lines.append(f"integral {lab} = {_rat(v)}")
    for v in defn.rays:
        lines.append(f"cone ray {_vec(v)}")
    for v in defn.inequalities:
        lines.append(f"cone ineq {_vec(v)}")
    if defn.canonical is not None:
        lines.append(f"canonical {_vec(defn.canonical)}")
    return "\n".join(lines) + "\n"


def check_products(defn):
    """Every product of two non-identity classes with codim sum <= n must be listed."""
    codim = dict(defn.basis)
    listed = {frozenset(p) if p[0] != p[1] else frozenset((p[0],)) for p in defn.products}
    labels = [lab for lab, c in defn.basis if c > 0]
    missing = []
    for x, a in enumerate(labels):
        for b in labels[x:]:
            key = frozenset((a, b))
            if codim[a] + codim[b] <= defn.dimension and key not in listed:
                missing.append(f"{a} * {b}")
    return missing


def build_algebra(defn):
    """Definition -> GradedAlgebra without checking the axioms."""
    missing = check_products(defn)
    if missing:
        raise DefinitionError("unlisted products: " + ", ".join(missing))
    try:
        return GradedAlgebra.from_tables(defn.name, defn.dimension, defn.basis,
                                         defn.products, defn.integrals)
    except (AlgebraError, ValueError, ZeroDivisionError) as exc:
        raise DefinitionError(str(exc)) from None


def build_problem(defn, dbound=None, validate=True):
    """Definition -> Problem; raises DefinitionError or InvalidAlgebra."""
    alg = build_algebra(defn)
    if bool(defn.rays) == bool(defn.inequalities):
        raise DefinitionError("give cone rays or cone inequalities (not both)")
    try:
        cone = ConeSpec(rays=defn.rays) if defn.rays else ConeSpec(inequalities=defn.inequalities)
    except (AlgebraError, ValueError, ZeroDivisionError) as exc:
        raise DefinitionError(str(exc)) from None
    return Problem(alg, cone, canonical=defn.canonical,
                   dbound=dbound if defn.canonical is None else None,
                   validate=validate)


def definition_from_problem(problem):
    alg = problem.algebra
    labels = alg.labels
    defn = Definition(alg.name, alg.n, list(zip(labels, alg.codims)))
    for i in range(1, alg.size):
        for j in range(i, alg.size):
            if alg.codims[i] + alg.codims[j] <= alg.n:
                vec = alg.product(i, j)
                defn.products[(labels[i], labels[j])] = {
                    labels[q]: Fraction(v) for q, v in sorted(vec.items()) if v != 0}
    for i, v in enumerate(alg.integral):
        if v != 0:
            defn.integrals[labels[i]] = Fraction(v)
    cone = problem.cone
    if cone.rays is not None:
        defn.rays = [tuple(v) for v in cone.rays]
    else:
        defn.inequalities = [tuple(v) for v in cone.inequalities]
    if problem.canonical is not None:
        defn.canonical = tuple(int(k) for k in problem.canonical)
    return defn

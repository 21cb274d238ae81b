"""Random well-formed definition files with noisy formatting."""

import random
import string
from fractions import Fraction

from qcsolve.dsl import KEYWORDS


def _ident(rng, taken):
    while True:
        first = rng.choice(string.ascii_letters + "_")
        rest = "".join(rng.choice(string.ascii_letters + string.digits + "_")
                       for _ in range(rng.randrange(0, 5)))
        name = first + rest
        if name not in KEYWORDS and name not in taken:
            taken.add(name)
            return name


def _rat(rng):
    q = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return q if q else Fraction(1)


def _fmt_rat(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _lincomb(rng, labels):
    if not labels or rng.random() < 0.2:
        return "0"
    picks = rng.sample(labels, rng.randint(1, min(3, len(labels))))
    out = []
    for k, lab in enumerate(picks):
        c = _rat(rng)
        if k and rng.random() < 0.7:
            sign = "+" if c > 0 else "-"
            body = lab if abs(c) == 1 and rng.random() < 0.5 else f"{_fmt_rat(abs(c))} {lab}"
            out.append(f"{sign} {body}")
        else:
            joiner = "" if not k else "+ "
            out.append(f"{joiner}{_fmt_rat(c)} {lab}")
    return " ".join(out)


def _vec(rng, r):
    return "(" + ", ".join(str(rng.randint(-5, 5)) for _ in range(r)) + ")"


def random_definition(rng):
    """Text of a syntactically valid file (content need not be a valid algebra)."""
    taken = set()
    n = rng.randint(2, 5)
    basis = [(_ident(rng, taken), 0)]
    for _ in range(rng.randint(1, 6)):
        basis.append((_ident(rng, taken), rng.randint(1, n)))
    codim = dict(basis)
    labels = [lab for lab, _ in basis[1:]]
    lines = [f"algebra {_ident(rng, taken)} dimension {n}"]
    if rng.random() < 0.5:
        lines.append("# " + "".join(rng.choice(string.printable[:-6]) for _ in range(12)))
    lines.append("basis " + " ".join(f"{lab}:{c}" for lab, c in basis))
    for i, a in enumerate(labels):
        for b in labels[i:]:
            if codim[a] + codim[b] <= n or rng.random() < 0.2:
                pair = (a, b) if rng.random() < 0.5 else (b, a)
                target = [x for x in labels if codim[x] == codim[a] + codim[b]]
                lines.append(f"product {pair[0]} * {pair[1]} = {_lincomb(rng, target)}")
    for lab in rng.sample(labels, rng.randint(0, len(labels))):
        lines.append(f"integral {lab} = {_fmt_rat(_rat(rng))}")
    r = sum(1 for c in codim.values() if c == 1) or 1
    kind = rng.choice(["ray", "ineq"])
    for _ in range(rng.randint(1, 3)):
        lines.append(f"cone {kind} {_vec(rng, r)}")
    if rng.random() < 0.7:
        lines.append(f"canonical {_vec(rng, r)}")
    rng.shuffle(lines[2:])
    noisy = []
    for line in lines:
        line = line.replace(" ", " " * rng.randint(1, 3)) if rng.random() < 0.3 else line
        if rng.random() < 0.2:
            line += "   # trailing"
        noisy.append(line)
        if rng.random() < 0.1:
            noisy.append("")
    return "\n".join(noisy) + ("\n" if rng.random() < 0.8 else "")

"""Sparse exact linear systems with row provenance.

Rows are ``{column: Fraction}`` with a right-hand side and a tag naming
the relation (or pin) they came from.  Elimination is incremental
Gauss-Jordan over ``Fraction``; every reduced row remembers which input
rows it is a combination of, so an inconsistency can be traced back to
the relations that cause it.
"""

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class LinearSystem:
    columns: list
    rows: list = field(default_factory=list)  # (coeffs, rhs, tag)

    def add_row(self, coeffs, rhs, tag):
        coeffs = {c: Fraction(v) for c, v in coeffs.items() if v != 0}
        self.rows.append((coeffs, Fraction(rhs), tag))

    def __len__(self):
        return len(self.rows)


@dataclass
class SolveReport:
    beta: tuple = None
    n_relations: int = 0
    n_unknowns: int = 0
    rank: int = 0
    status: str = "unique"  # unique | underdetermined | inconsistent
    free: list = field(default_factory=list)
    witness: list = field(default_factory=list)
    residual: Fraction = None
    values: dict = field(default_factory=dict)
    note: str = ""

    @property
    def ok(self):
        return self.status == "unique"


class _Eliminator:
    def __init__(self, order):
        self.order = order
        self.pivots = {}  # col -> (coeffs, rhs, combo)
        self.conflict = None

    def reduce(self, coeffs, rhs, combo):
        coeffs, combo = dict(coeffs), dict(combo)
        for col in [c for c in coeffs if c in self.pivots]:
            f = coeffs.get(col)
            if not f:
                continue
            pc, pr, pk = self.pivots[col]
            for c, v in pc.items():
                x = coeffs.get(c, 0) - f * v
                if x:
                    coeffs[c] = x
                else:
                    coeffs.pop(c, None)
            rhs -= f * pr
            for t, v in pk.items():
                x = combo.get(t, 0) - f * v
                if x:
                    combo[t] = x
                else:
                    combo.pop(t, None)
        return coeffs, rhs, combo

    def add(self, coeffs, rhs, tag):
        coeffs, rhs, combo = self.reduce(coeffs, rhs, {tag: Fraction(1)})
        if not coeffs:
            if rhs != 0 and self.conflict is None:
                self.conflict = (combo, rhs)
            return
        col = min(coeffs, key=self.order)
        inv = 1 / coeffs[col]
        coeffs = {c: v * inv for c, v in coeffs.items()}
        rhs *= inv
        combo = {t: v * inv for t, v in combo.items()}
        for pcol, (pc, pr, pk) in list(self.pivots.items()):
            f = pc.get(col)
            if not f:
                continue
            nc = dict(pc)
            for c, v in coeffs.items():
                x = nc.get(c, 0) - f * v
                if x:
                    nc[c] = x
                else:
                    nc.pop(c, None)
            nk = dict(pk)
            for t, v in combo.items():
                x = nk.get(t, 0) - f * v
                if x:
                    nk[t] = x
                else:
                    nk.pop(t, None)
            self.pivots[pcol] = (nc, pr - f * rhs, nk)
        self.pivots[col] = (coeffs, rhs, combo)


def _eliminate(system, rows):
    pos = {c: i for i, c in enumerate(system.columns)}
    elim = _Eliminator(lambda c: pos.get(c, len(pos)))
    for coeffs, rhs, tag in rows:
        elim.add(coeffs, rhs, tag)
    return elim


def _minimal_core(system, tags):
    """Greedy shrink of an inconsistent subset of tagged rows."""
    by_tag = {}
    for row in system.rows:
        by_tag.setdefault(row[2], []).append(row)
    core = list(tags)
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1:]
        rows = [row for t in trial for row in by_tag[t]]
        if trial and _eliminate(system, rows).conflict is not None:
            core = trial
        else:
            i += 1
    rows = [row for t in core for row in by_tag[t]]
    return core, _eliminate(system, rows).conflict[1]


def solve_system(system, beta=None, zero_frees=False):
    """Eliminate; report unique / underdetermined / inconsistent.

    ``values`` holds every unknown whose value is forced.  With
    ``zero_frees`` the free unknowns are set to 0 and all pivots resolved.
    """
    elim = _eliminate(system, system.rows)
    report = SolveReport(beta=beta, n_relations=len(system.rows),
                         n_unknowns=len(system.columns), rank=len(elim.pivots))
    if elim.conflict is not None:
        combo, _ = elim.conflict
        tags = sorted((t for t in combo), key=str)
        report.status = "inconsistent"
        report.witness, report.residual = _minimal_core(system, tags)
        return report
    free = [c for c in system.columns if c not in elim.pivots]
    report.free = free
    free_set = set(free)
    for col, (coeffs, rhs, _) in elim.pivots.items():
        others = [c for c in coeffs if c != col]
        if not others or zero_frees:
            report.values[col] = rhs
        elif not any(c in free_set for c in others):
            report.values[col] = rhs
    if zero_frees:
        for c in free:
            report.values[c] = Fraction(0)
    report.status = "underdetermined" if free else "unique"
    return report


def row_space_contains(system, coeffs):
    """True iff the linear form ``coeffs`` lies in the span of the system's rows."""
    elim = _eliminate(system, system.rows)
    rest, _, _ = elim.reduce({c: Fraction(v) for c, v in coeffs.items() if v}, Fraction(0), {})
    return not rest


def rank(system):
    return len(_eliminate(system, system.rows).pivots)

"""Reconstruction: solve for N(beta; .) one curve class at a time.

For a fixed class beta every quadratic term splits beta into two strictly
smaller classes, so once the table holds all smaller classes the relations
at beta are linear in the unknowns N(beta; .).  Each stage assembles that
linear system, solves it exactly and records a :class:`SolveReport`.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from qcsolve import wdvv
from qcsolve.linsys import LinearSystem, solve_system
from qcsolve.polys import NVar

log = logging.getLogger(__name__)

POLICIES = ("strict", "pins", "zero")


class MissingLowerValue(LookupError):
    def __init__(self, var):
        super().__init__(f"table has no value for {var}")
        self.var = var


@dataclass
class SolutionTable:
    values: dict = field(default_factory=dict)
    pins: set = field(default_factory=set)
    free: list = field(default_factory=list)
    status: str = "partial"
    algebra: str = ""

    @classmethod
    def from_values(cls, values, algebra="", pinned=True):
        vals = {NVar(tuple(b), tuple(d)): Fraction(v) for (b, d), v in values.items()}
        return cls(vals, set(vals) if pinned else set(), algebra=algebra)

    def copy(self):
        return SolutionTable(dict(self.values), set(self.pins), list(self.free),
                             self.status, self.algebra)

    def get(self, beta, d):
        return self.values.get(NVar(tuple(beta), tuple(d)))

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, SolutionTable):
            return NotImplemented
        return (self.values == other.values and self.pins == other.pins
                and sorted(self.free) == sorted(other.free))


@dataclass(frozen=True, order=True)
class PinTag:
    var: NVar

    def label(self, alg=None):
        return f"pin {self.var}"


def assemble_system(problem, beta, table, pins=None, relations=None):
    """Rows: linear part over N(beta; .) = -(quadratic part on the table)."""
    beta = tuple(beta)
    unknowns = [NVar(beta, d) for d in problem.admissible_list(beta)]
    system = LinearSystem(unknowns)
    if relations is None:
        relations = wdvv.enumerate_relations(problem, beta)
    for rid, poly in relations:
        try:
            q = poly.quadratic_part().evaluate(table.values)
        except KeyError as exc:
            raise MissingLowerValue(exc.args[0]) from None
        system.add_row(poly.linear, -q, rid)
    fixed = {v: table.values[v] for v in unknowns if v in table.values}
    for v, val in (pins or {}).items():
        if v.beta == beta:
            fixed.setdefault(v, Fraction(val))
    for v in unknowns:
        if v in fixed:
            system.add_row({v: 1}, fixed[v], PinTag(v))
    return system


@dataclass
class ReconstructResult:
    table: SolutionTable
    reports: list
    seed_violations: list
    halted: bool = False

    @property
    def last(self):
        return self.reports[-1] if self.reports else None


def check_seed_relations(problem, table, bound):
    """Evaluate <A, A^1, A, A^1>(beta; 0) wherever the table covers every term."""
    bad = []
    for rid, poly in wdvv.seed_relations(problem, bound):
        try:
            val = poly.evaluate(table.values)
        except KeyError:
            continue
        if val != 0:
            bad.append((rid, val))
    return bad


def reconstruct(problem, seeds, bound, policy="strict", pins=None):
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}")
    table = seeds.copy()
    table.pins |= set(seeds.values)
    table.algebra = problem.name
    user_pins = {NVar(tuple(v[0]), tuple(v[1])): Fraction(x) for v, x in (pins or {}).items()}
    if policy != "pins":
        user_pins = {}
    violations = check_seed_relations(problem, table, bound)
    for rid, val in violations:
        log.warning("seed relation %s fails with residual %s", rid.label(problem.algebra), val)
    reports = []
    halted = False
    for beta in problem.classes(bound):
        system = assemble_system(problem, beta, table, user_pins)
        rep = solve_system(system, beta, zero_frees=(policy == "zero"))
        reports.append(rep)
        log.info("beta=%s: %d relations, %d unknowns, rank %d, %s", beta,
                 rep.n_relations, rep.n_unknowns, rep.rank, rep.status)
        if rep.status == "inconsistent":
            halted = True
            break
        for v, val in rep.values.items():
            table.values[v] = val
        table.pins |= {v for v in user_pins if v.beta == beta}
        if rep.status == "underdetermined":
            if policy == "zero":
                table.free.extend(rep.free)
            else:
                table.free.extend(rep.free)
                halted = True
                break
    if halted:
        table.status = reports[-1].status
    else:
        table.status = "complete" if all(r.status == "unique" for r in reports) else "zero-frees"
    return ReconstructResult(table, reports, violations, halted)


@dataclass
class VerifyResult:
    ok: bool
    relation: object = None
    residual: Fraction = None
    missing: NVar = None

    def describe(self, alg):
        if self.ok:
            return "OK"
        r = self.relation
        head = f"FAIL beta={r.beta} d={r.d} relation {r.label(alg)}"
        if self.missing is not None:
            return f"{head} missing value {self.missing}"
        return f"{head} residual {self.residual}"


def verify_table(problem, table, bound, zero_default=False, strict_below=False):
    """First failing relation over classes with <beta, omega> <= bound.

    With ``strict_below`` only classes strictly below ``bound`` are checked.
    """
    bound = Fraction(bound)
    default = Fraction(0) if zero_default else None
    for beta in problem.classes(bound):
        if strict_below and problem.value(beta) >= bound:
            break
        for rid, poly in wdvv.enumerate_relations(problem, beta):
            try:
                val = poly.evaluate(table.values, default)
            except KeyError as exc:
                return VerifyResult(False, rid, missing=exc.args[0])
            if val != 0:
                return VerifyResult(False, rid, val)
    return VerifyResult(True)


def rescale_table(table, lambdas):
    lambdas = [Fraction(x) for x in lambdas]
    if any(x <= 0 for x in lambdas):
        raise ValueError("rescaling factors must be positive")
    out = table.copy()
    out.values = {}
    for v, val in table.values.items():
        f = Fraction(1)
        for lam, b in zip(lambdas, v.beta):
            f *= lam ** b
        out.values[v] = f * val
    return out


def map_table(table, var_map):
    """Push a table through a bijection on variables."""
    out = table.copy()
    out.values = {var_map(v): val for v, val in table.values.items()}
    out.pins = {var_map(v) for v in table.pins}
    out.free = [var_map(v) for v in table.free]
    return out


_verified = {}


def fsr_residual(problem, table, i, j, k, l, m, beta, d):
    """Value of the five-symbol combination at (beta; d) on the table.

    Every relation strictly below beta is checked first; the result is
    then zero by the five symbols relation.
    """
    beta = tuple(beta)
    top = problem.value(beta)
    key = (id(problem), top, hash(frozenset(table.values.items())))
    if key not in _verified:
        res = verify_table(problem, table, top, strict_below=True)
        if not res.ok:
            raise wdvv.PreconditionViolated(
                f"lower relation fails: {res.describe(problem.algebra)}")
        _verified[key] = True
    poly = wdvv.five_symbols_combination(problem, i, j, k, l, m, beta, d)
    try:
        return poly.evaluate(table.values)
    except KeyError as exc:
        raise MissingLowerValue(exc.args[0]) from None

"""Randomized checks of the structural identities among relations.

Each suite draws (indices, beta, d) instances with a seeded RNG so a run
is reproducible.  Degrees are drawn from the dimensionally admissible set
for the instance, so no sample is vacuous by degree alone.
"""

import random
from dataclasses import dataclass, field

from qcsolve import wdvv

SUITES = ("two-of-three", "three-symbols", "m-diagonal", "fsr-linear")


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    nontrivial: int = 0
    failures: list = field(default_factory=list)

    @property
    def total(self):
        return self.passed + self.failed

    @property
    def ok(self):
        return self.failed == 0 and self.passed > 0

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        return (f"{status} {self.name}: {self.passed}/{self.total} exact "
                f"({self.nontrivial} with nonzero terms)")


def _draw(problem, rng, betas, arity, attempts=200, want=None, graded=None):
    """Random (indices, beta, d) with an admissible d; None if nothing found.

    ``graded`` is how many leading indices fix the degree (default: all).
    """
    alg = problem.algebra
    size = len(alg.labels)
    for _ in range(attempts):
        idx = tuple(rng.randrange(1, size) for _ in range(arity))
        beta = rng.choice(betas)
        degs = problem.relation_degrees(beta, [alg.codims[x] for x in idx[:graded]])
        if want is not None:
            degs = [d for d in degs if want(idx, d)]
        if degs:
            return idx, beta, rng.choice(degs)
    return None


def run_suite(problem, name, samples, rng, bound):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    betas = problem.classes(bound)
    res = SuiteResult(name)
    if not betas:
        return res
    tau_slot = problem.tau_slot

    def has_m(idx, d):
        m = idx[4]
        return m in tau_slot and d[tau_slot[m]] >= 1

    for _ in range(samples):
        if name == "two-of-three":
            got = _draw(problem, rng, betas, 4)
        elif name == "three-symbols":
            if not tau_slot:
                break
            got = _draw(problem, rng, betas, 5, want=has_m, graded=4)
        else:
            got = _draw(problem, rng, betas, 5)
        if got is None:
            break
        idx, beta, d = got
        if name == "two-of-three":
            ok = wdvv.check_two_out_of_three(problem, *idx, beta, d)
            busy = not wdvv.build_relation(problem, *idx, beta, d).is_zero()
        elif name == "three-symbols":
            comb = wdvv.three_symbols_combination(problem, *idx, beta, d)
            ok = comb.is_zero()
            busy = not wdvv.build_relation(problem, *idx[:4], beta, d).is_zero()
        elif name == "m-diagonal":
            left, right = wdvv.m_diagonal_sides(problem, *idx, beta, d)
            ok = left == right
            busy = not left.is_zero()
        else:
            poly = wdvv.five_symbols_combination(problem, *idx, beta, d, check=False)
            ok = not poly.linear
            busy = not poly.is_zero()
        if ok:
            res.passed += 1
        else:
            res.failed += 1
            res.failures.append((idx, beta, d))
        res.nontrivial += bool(busy)
    return res


def run_all(problem, samples, seed=0, bound=3):
    rng = random.Random(seed)
    return [run_suite(problem, name, samples, rng, bound) for name in SUITES]

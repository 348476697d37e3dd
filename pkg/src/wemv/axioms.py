"""The ten defining axioms and the validator.

Each axiom is split into sub-laws written once against a tiny operation
interface, so the same lambda runs on numpy grids (finite algebras) and on
single elements (symbolic algebras).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_BOUND, DEFAULT_SAMPLES, Algebra, FiniteAlgebra
from .errors import InputError
from .parallel import chunked_map

AXIOM_IDS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x")


@dataclass(frozen=True)
class Law:
    axiom: str
    text: str
    variables: str
    fn: object


def _laws():
    L = []

    def add(axiom, text, variables, fn):
        L.append(Law(axiom, text, variables, fn))

    add("i", "x \\/ y = y \\/ x", "xy", lambda A, x, y, z, w=None: A.eq(A.join(x, y), A.join(y, x)))
    add("i", "x /\\ y = y /\\ x", "xy", lambda A, x, y, z, w=None: A.eq(A.meet(x, y), A.meet(y, x)))
    add("i", "(x \\/ y) \\/ z = x \\/ (y \\/ z)", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.join(A.join(x, y), z), A.join(x, A.join(y, z))))
    add("i", "(x /\\ y) /\\ z = x /\\ (y /\\ z)", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.meet(A.meet(x, y), z), A.meet(x, A.meet(y, z))))
    add("i", "x \\/ (x /\\ y) = x", "xy", lambda A, x, y, z, w=None: A.eq(A.join(x, A.meet(x, y)), x))
    add("i", "x /\\ (x \\/ y) = x", "xy", lambda A, x, y, z, w=None: A.eq(A.meet(x, A.join(x, y)), x))
    add("i", "x /\\ (y \\/ z) = (x /\\ y) \\/ (x /\\ z)", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.meet(x, A.join(y, z)), A.join(A.meet(x, y), A.meet(x, z))))
    add("i", "0 /\\ x = 0", "x", lambda A, x, y, z, w=None: A.eq(A.meet(A.zero(x), x), A.zero(x)))
    add("ii", "x (+) y = y (+) x", "xy", lambda A, x, y, z, w=None: A.eq(A.oplus(x, y), A.oplus(y, x)))
    add("ii", "(x (+) y) (+) z = x (+) (y (+) z)", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.oplus(A.oplus(x, y), z), A.oplus(x, A.oplus(y, z))))
    add("ii", "x (+) 0 = x", "x", lambda A, x, y, z, w=None: A.eq(A.oplus(x, A.zero(x)), x))
    add("iii", "(x (+) y) (-) x <= y", "xy", lambda A, x, y, z, w=None: A.leq(A.ominus(A.oplus(x, y), x), y))
    add("iv", "x (+) (y (-) x) = x \\/ y", "xy",
        lambda A, x, y, z, w=None: A.eq(A.oplus(x, A.ominus(y, x)), A.join(x, y)))
    add("v", "x (-) (x /\\ y) = x (-) y", "xy",
        lambda A, x, y, z, w=None: A.eq(A.ominus(x, A.meet(x, y)), A.ominus(x, y)))
    add("vi", "z (-) (z (-) x) = x /\\ z", "xz",
        lambda A, x, y, z, w=None: A.eq(A.ominus(z, A.ominus(z, x)), A.meet(x, z)))
    add("vii", "z (-) (x \\/ y) = (z (-) x) /\\ (z (-) y)", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.ominus(z, A.join(x, y)), A.meet(A.ominus(z, x), A.ominus(z, y))))
    add("viii", "(x /\\ y) (-) z = (x (-) z) /\\ (y (-) z)", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.ominus(A.meet(x, y), z), A.meet(A.ominus(x, z), A.ominus(y, z))))
    add("ix", "x (-) (y (+) z) = (x (-) y) (-) z", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.ominus(x, A.oplus(y, z)), A.ominus(A.ominus(x, y), z)))
    add("x", "x (+) (y \\/ z) = (x (+) y) \\/ (x (+) z)", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.oplus(x, A.join(y, z)), A.join(A.oplus(x, y), A.oplus(x, z))))
    return L


LAWS = _laws()


class ScalarOps:
    """Adapter evaluating laws on single elements of any algebra."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self.join, self.meet = alg.join, alg.meet
        self.oplus, self.ominus = alg.oplus, alg.ominus
        self.leq = alg.leq

    def zero(self, _x):
        return self.alg.bottom

    @staticmethod
    def eq(a, b):
        return a == b

    @staticmethod
    def implies(p, q):
        return (not p) or q

    @staticmethod
    def both(p, q):
        return p and q


class TableOps:
    """Adapter evaluating laws on broadcast index grids of a finite algebra."""

    def __init__(self, alg: FiniteAlgebra):
        self.J, self.M, self.P, self.O = alg.J, alg.M, alg.P, alg.O

    def join(self, x, y):
        return self.J[x, y]

    def meet(self, x, y):
        return self.M[x, y]

    def oplus(self, x, y):
        return self.P[x, y]

    def ominus(self, x, y):
        return self.O[x, y]

    def leq(self, x, y):
        return self.M[x, y] == x

    @staticmethod
    def zero(x):
        return np.zeros_like(x)

    @staticmethod
    def eq(a, b):
        return a == b

    @staticmethod
    def implies(p, q):
        return ~p | q

    @staticmethod
    def both(p, q):
        return p & q


@dataclass
class Violation:
    axiom: str
    law: str
    witness: dict
    count: int = 1

    def to_dict(self):
        return {"axiom": self.axiom, "law": self.law, "witness": self.witness, "count": self.count}


@dataclass
class LawReport:
    """Outcome of running a list of laws; shared by the axiom and property suites."""

    name: str
    strategy: str
    checked: int
    ids: tuple
    violations: list = field(default_factory=list)
    seed: int | None = None
    bound: int | None = None

    @property
    def passed(self):
        return not self.violations

    def __bool__(self):
        return self.passed

    def failed_ids(self):
        return sorted({v.axiom for v in self.violations}, key=self.ids.index)

    def to_dict(self):
        bad = set(self.failed_ids())
        out = {
            "algebra": self.name,
            "passed": self.passed,
            "strategy": self.strategy,
            "checked": self.checked,
            "results": {i: ("fail" if i in bad else "pass") for i in self.ids},
            "violations": [v.to_dict() for v in self.violations],
        }
        if self.strategy == "sampled":
            out["seed"] = self.seed
            out["bound"] = self.bound
        return out


ValidationReport = LawReport


VARS = "xyzw"


def _arity(laws):
    return 4 if any("w" in law.variables for law in laws) else 3


def _grid(n, arity):
    ar = np.arange(n)
    return [ar.reshape([n if i == k else 1 for i in range(arity)]) for k in range(arity)]


def _finite_scan(alg, laws):
    """Exhaustive scan; witness = least (x, y, z[, w]) in lexicographic order."""
    n = alg.size
    arity = _arity(laws)
    A = TableOps(alg)
    grid = _grid(n, arity)
    shape = (n,) * arity
    found = []
    for law in laws:
        ok = np.broadcast_to(law.fn(A, *grid), shape)
        bad = np.argwhere(~ok)
        if len(bad):
            found.append((law, tuple(int(v) for v in bad[0]), len(bad)))
    return found, n ** arity


def _sample_scan_chunk(args):
    alg, law_source, indices, triples = args
    laws = _resolve(law_source, indices)
    A = ScalarOps(alg)
    hits = {}
    for pos, tup in triples:
        for k, law in enumerate(laws):
            if not law.fn(A, *tup):
                if k in hits:
                    hits[k][1] += 1
                else:
                    hits[k] = [pos, 1]
    return hits


def _resolve(law_source, indices):
    if law_source == "axioms":
        pool = LAWS
    else:
        from .properties import PROPERTY_LAWS
        pool = PROPERTY_LAWS
    return [pool[i] for i in indices]


def run_laws(alg, law_source, indices, samples, seed, bound, workers, name):
    """Run the selected laws; exhaustive for finite algebras, sampled otherwise."""
    laws = _resolve(law_source, indices)
    ids = tuple(dict.fromkeys(law.axiom for law in laws))
    if isinstance(alg, FiniteAlgebra):
        found, checked = _finite_scan(alg, laws)
        viol = [Violation(law.axiom, law.text, _witness(alg, law, w), c) for law, w, c in found]
        return LawReport(name, "exhaustive", checked, ids, viol)
    if samples <= 0:
        raise InputError("samples must be positive")
    triples = alg.sample_tuples(_arity(laws), samples, random.Random(seed), bound)
    numbered = list(enumerate(triples))
    merged = {}
    for hits in chunked_map(_sample_scan_chunk,
                            lambda chunk: (alg, law_source, indices, chunk),
                            numbered, workers):
        for k, (pos, count) in hits.items():
            if k in merged:
                merged[k] = [min(merged[k][0], pos), merged[k][1] + count]
            else:
                merged[k] = [pos, count]
    viol = []
    for k in sorted(merged):
        pos, count = merged[k]
        law = laws[k]
        viol.append(Violation(law.axiom, law.text, _witness(alg, law, triples[pos]), count))
    return LawReport(name, "sampled", len(triples), ids, viol, seed=seed, bound=bound)


def _witness(alg, law, triple):
    return {v: alg.render(triple[VARS.index(v)]) for v in law.variables}


def _first_per_axiom(report):
    seen = {}
    for v in report.violations:
        seen.setdefault(v.axiom, v)
    report.violations = list(seen.values())
    return report


def validate(alg: Algebra, samples=DEFAULT_SAMPLES, seed=0, bound=DEFAULT_BOUND, workers=1):
    """Check the ten axioms; returns a report listing each violated axiom with a witness.

    Finite algebras are checked on every triple, symbolic ones on ``samples``
    seeded triples drawn with coordinates bounded by ``bound``.
    """
    report = run_laws(alg, "axioms", range(len(LAWS)), samples, seed, bound, workers,
                      alg.describe())
    report.ids = AXIOM_IDS
    report = _first_per_axiom(report)
    alg._validation = report
    return report


def check_mv_axioms(elements, oplus, neg, zero, one):
    """Exhaustive MV-algebra axiom check; returns (ok, witness-or-None).

    Axioms used: (M; oplus, 0) commutative monoid, x'' = x, x (+) 0' = 0',
    and (x' (+) y)' (+) y = (y' (+) x)' (+) x.
    """
    elems = list(elements)
    if neg(neg(zero)) != zero or neg(zero) != one:
        return False, ("0' = 1", zero)
    for x in elems:
        if oplus(x, zero) != x:
            return False, ("x (+) 0 = x", x)
        if neg(neg(x)) != x:
            return False, ("x'' = x", x)
        if oplus(x, one) != one:
            return False, ("x (+) 1 = 1", x)
        for y in elems:
            if oplus(x, y) != oplus(y, x):
                return False, ("x (+) y = y (+) x", (x, y))
            if oplus(neg(oplus(neg(x), y)), y) != oplus(neg(oplus(neg(y), x)), x):
                return False, ("(x' (+) y)' (+) y = (y' (+) x)' (+) x", (x, y))
            for z in elems:
                if oplus(oplus(x, y), z) != oplus(x, oplus(y, z)):
                    return False, ("(x (+) y) (+) z = x (+) (y (+) z)", (x, y, z))
    return True, None

"""Derived operations and basic structural queries."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_BOUND,
    DEFAULT_SAMPLES,
    Algebra,
    ConeAlgebra,
    FiniteAlgebra,
    ProductAlgebra,
)
from .axioms import check_mv_axioms, validate
from .errors import (
    ConsistencyError,
    EvaluationError,
    InputError,
    NotValidatedError,
    UnsupportedError,
)

SCALAR_LIMIT = 10_000


@dataclass
class Verdict:
    """Boolean outcome with an optional witness and a short explanation."""

    holds: bool
    witness: object = None
    detail: str = ""
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.holds)

    def to_dict(self):
        out = {"holds": bool(self.holds)}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        out.update(self.data)
        return out


def ensure_valid(alg: Algebra, **kw):
    """Validate once (cached) and refuse algebras that fail the axioms."""
    report = alg._validation
    if report is None:
        report = validate(alg, **kw)
    if not report.passed:
        raise NotValidatedError(f"{alg.describe()} fails axioms {', '.join(report.failed_ids())}")
    return report


def idempotents(alg: Algebra):
    """Idempotent elements (exact for every built-in shape)."""
    ids = alg.idempotent_elements()
    if ids is None:
        raise UnsupportedError(f"idempotents of {alg.describe()} are not known")
    return ids


def atoms(alg: Algebra):
    if not isinstance(alg, FiniteAlgebra):
        raise UnsupportedError("atoms are computed for finite algebras only")
    return alg.known_atoms()


def scalar(alg: Algebra, n: int, x):
    """n.x: the n-fold sum x (+) ... (+) x, with 0.x = 0."""
    if n < 0:
        raise InputError("scalar multiple needs n >= 0")
    acc = alg.bottom
    for _ in range(n):
        acc = alg.oplus(acc, x)
    return acc


def odot(alg: Algebra, x, y):
    """x (.) y = 1 (-) ((1 (-) x) (+) (1 (-) y)).

    Topless cones are handled inside their representing algebra, products
    componentwise.
    """
    top = alg.top()
    if top is not None:
        return alg.ominus(top, alg.oplus(alg.ominus(top, x), alg.ominus(top, y)))
    if isinstance(alg, ConeAlgebra):
        from .structure import representing
        rep = representing(alg)
        return rep.project(odot(rep.ambient, rep.embed(x), rep.embed(y)))
    if isinstance(alg, ProductAlgebra):
        return tuple(odot(f, a, b) for f, a, b in zip(alg.factors, x, y))
    raise UnsupportedError(f"(.) is not available on {alg.describe()}")


def power(alg: Algebra, x, n: int):
    """x^n with x^1 = x and x^(n+1) = x (.) x^n; x^0 = 1 needs a top."""
    if n < 0:
        raise InputError("power needs n >= 0")
    if n == 0:
        top = alg.top()
        if top is None:
            raise EvaluationError("x^0 is only defined when a top element exists")
        return top
    acc = x
    for _ in range(n - 1):
        acc = odot(alg, x, acc)
    return acc


# --------------------------------------------------------------------------
# atoms and local MV-algebras


@dataclass
class AtomSubalgebra:
    atom: object
    elements: list
    m0: int | None
    description: str
    ominus_law: bool


def atom_subalgebra(alg: FiniteAlgebra, a):
    """The multiples {m.a} of an atom ``a``, with its classification."""
    if a not in atoms(alg):
        raise InputError(f"{alg.render(a)} is not an atom")
    elems = [alg.bottom]
    m0 = None
    while True:
        cur = elems[-1]
        if len(elems) > 1 and alg.oplus(cur, cur) == cur:
            m0 = len(elems) - 1
            break
        nxt = alg.oplus(cur, a)
        if nxt == cur or len(elems) > alg.size:
            raise ConsistencyError(f"multiples of {a} stall at a non-idempotent")
        elems.append(nxt)
    if set(elems) != {alg.oplus(x, y) for x in elems for y in elems} | set(elems):
        raise ConsistencyError("multiples of an atom are not closed under (+)")
    law = all(alg.ominus(elems[m], elems[n]) == elems[max(m - n, 0)]
              for m in range(len(elems)) for n in range(len(elems)))
    desc = f"MV-chain isomorphic to Gamma((1/{m0})Z,1)"
    return AtomSubalgebra(a, elems, m0, desc, law)


@dataclass
class LocalMV:
    """The interval [0,a] with x (+)_a y = (x (+) y) /\\ a and lambda_a(x) = a (-) x."""

    algebra: Algebra
    a: object
    elements: list
    mv_ok: bool
    mv_witness: object
    ominus_agrees: bool
    ominus_witness: object

    def oplus(self, x, y):
        return self.algebra.meet(self.algebra.oplus(x, y), self.a)

    def neg(self, x):
        return self.algebra.ominus(self.a, x)

    def ominus(self, x, y):
        return self.neg(self.oplus(self.neg(x), y))

    def odot(self, x, y):
        return self.neg(self.oplus(self.neg(x), self.neg(y)))

    @property
    def passed(self):
        return self.mv_ok and self.ominus_agrees

    def to_algebra(self):
        """[0,a] as a finite algebra with the local sum."""
        idx = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        A = self.algebra
        tabs = {k: np.zeros((n, n), dtype=np.int64) for k in ("join", "meet", "oplus", "ominus")}
        for x, i in idx.items():
            for y, j in idx.items():
                tabs["join"][i, j] = idx[A.join(x, y)]
                tabs["meet"][i, j] = idx[A.meet(x, y)]
                tabs["oplus"][i, j] = idx[self.oplus(x, y)]
                tabs["ominus"][i, j] = idx[self.ominus(x, y)]
        return FiniteAlgebra(tabs["join"], tabs["meet"], tabs["oplus"], tabs["ominus"],
                             labels=[A.render(x) if not isinstance(A, FiniteAlgebra) else A.label(x)
                                     for x in self.elements],
                             name=f"[0,{A.render(self.a)}]")


def local_mv(alg: Algebra, a, limit=4096):
    """MV-algebra on [0,a]; the MV axioms and the (-) agreement are checked exhaustively."""
    elems = _sorted_interval(alg, a, limit)
    loc = LocalMV(alg, a, elems, True, None, True, None)
    top = a
    ok, wit = check_mv_axioms(elems, loc.oplus, loc.neg, alg.bottom, top)
    loc.mv_ok, loc.mv_witness = ok, wit
    for x in elems:
        for y in elems:
            if loc.ominus(x, y) != alg.ominus(x, y):
                loc.ominus_agrees = False
                loc.ominus_witness = (x, y)
                return loc
    return loc


def _sorted_interval(alg, a, limit):
    if not alg.contains(a):
        raise InputError(f"{a!r} is not an element")
    return list(alg.interval(a, limit))


# --------------------------------------------------------------------------
# classification


def _pairs(alg, samples, seed, bound):
    if isinstance(alg, FiniteAlgebra):
        return [(x, y) for x in range(alg.size) for y in range(alg.size)]
    return alg.sample_tuples(2, samples, random.Random(seed), bound)


def _elements(alg, samples, seed, bound):
    if isinstance(alg, FiniteAlgebra):
        return alg.elements()
    probes = alg.probe_elements(bound)
    rest = [t[0] for t in alg.sample_tuples(1, samples, random.Random(seed), bound)]
    return list(dict.fromkeys(probes + rest))


def is_strict(alg: Algebra):
    ids = alg.idempotent_elements()
    if ids is None:
        raise UnsupportedError(f"idempotents of {alg.describe()} are not known")
    nonzero = [a for a in ids if a != alg.bottom]
    return Verdict(not nonzero, alg.render(nonzero[0]) if nonzero else None)


def is_emv(alg: Algebra, samples=DEFAULT_SAMPLES, seed=0, bound=DEFAULT_BOUND):
    """Every element lies under an idempotent a whose [0,a] is an MV-algebra."""
    ids = idempotents(alg)
    if isinstance(alg, FiniteAlgebra):
        for x in alg.elements():
            if not any(alg.leq(x, a) for a in ids):
                return Verdict(False, alg.render(x), "no idempotent above x")
        for a in ids:
            loc = local_mv(alg, a)
            for x in loc.elements:
                cand = [z for z in loc.elements if alg.oplus(x, z) == a]
                least = [z for z in cand if all(alg.leq(z, c) for c in cand)]
                if not least or least[0] != alg.ominus(a, x):
                    return Verdict(False, [alg.render(a), alg.render(x)],
                                   "lambda_a(x) is not min{z <= a : x (+) z = a}")
            if not loc.mv_ok:
                return Verdict(False, alg.render(a), f"[0,a] fails MV axiom {loc.mv_witness[0]}")
        return Verdict(True, detail="exhaustive")
    for x in _elements(alg, samples, seed, bound):
        if not any(alg.leq(x, a) for a in ids):
            return Verdict(False, alg.render(x), "no idempotent above x")
    top = alg.top()
    if top is None:
        raise ConsistencyError("every sampled element lies under an idempotent but no top exists")
    # the only nonzero idempotents of the symbolic shapes come from tops of
    # bounded factors, where [0,a] is a Gamma interval by construction
    return Verdict(True, detail="sampled")


def is_cancellative(alg: Algebra, samples=DEFAULT_SAMPLES, seed=0, bound=DEFAULT_BOUND):
    """x (+) y = x (+) z implies y = z; witness is the violating triple."""
    if isinstance(alg, FiniteAlgebra):
        for x in range(alg.size):
            row = alg.P[x]
            seen = {}
            for y in range(alg.size):
                v = int(row[y])
                if v in seen:
                    return Verdict(False, {"x": alg.render(x), "y": alg.render(seen[v]),
                                           "z": alg.render(y)}, "exhaustive")
                seen[v] = y
        return Verdict(True, detail="exhaustive")
    for x, y, z in alg.sample_tuples(3, samples, random.Random(seed), bound):
        for a, b in ((y, z), (y, x), (x, z)):
            if a != b and alg.oplus(x, a) == alg.oplus(x, b):
                return Verdict(False, {"x": alg.render(x), "y": alg.render(a), "z": alg.render(b)},
                               "sampled")
    # duplicated sums along boundary rows (tops absorb)
    probes = alg.probe_elements(bound)
    for x in probes:
        seen = {}
        for y in probes:
            v = alg.oplus(x, y)
            if v in seen:
                return Verdict(False, {"x": alg.render(x), "y": alg.render(seen[v]),
                                       "z": alg.render(y)}, "sampled")
            seen[v] = y
    return Verdict(True, detail="sampled")


def classify_linear(alg: Algebra, samples=DEFAULT_SAMPLES, seed=0, bound=DEFAULT_BOUND):
    """'not_linear', 'strict' or 'has_top', with a witness for non-linearity."""
    for x, y in _pairs(alg, samples, seed, bound):
        if not (alg.leq(x, y) or alg.leq(y, x)):
            return Verdict(False, [alg.render(x), alg.render(y)], "not_linear")
    if is_strict(alg):
        return Verdict(True, detail="strict")
    if alg.top() is not None:
        return Verdict(True, detail="has_top")
    raise ConsistencyError(f"{alg.describe()} is linear, not strict and topless")

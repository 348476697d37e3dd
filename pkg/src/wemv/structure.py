"""Decomposition into the idempotent-bounded part and the strict part, idempotent
splits, and representing algebras with a top element."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_BOUND,
    DEFAULT_SAMPLES,
    OPS,
    Algebra,
    ConeAlgebra,
    FiniteAlgebra,
    PerfectAlgebra,
    ProductAlgebra,
)
from .errors import ConsistencyError, InputError, UnsupportedError
from .ideals import down, make_ideal, quotient


# --------------------------------------------------------------------------
# parts


@dataclass
class Part:
    """A subset of an algebra: explicit (finite) or by membership predicate."""

    description: str
    member: object
    elements: list | None = None

    def __contains__(self, x):
        return self.member(x)

    def to_dict(self, alg):
        out = {"description": self.description}
        if self.elements is not None:
            out["elements"] = [alg.render(x) for x in self.elements]
        return out


def _explicit(alg, elems, description):
    elems = sorted(elems)
    s = set(elems)
    for op in OPS:
        for x in elems:
            for y in elems:
                if alg.op(op, x, y) not in s:
                    raise ConsistencyError(f"{description} is not closed under {op}")
    return Part(description, s.__contains__, elems)


def _max_idempotent(alg: FiniteAlgebra):
    ids = alg.idempotent_elements()
    best = ids[0]
    for a in ids[1:]:
        best = alg.join(best, a)
    return best


def m1_part(alg: Algebra) -> Part:
    """Down-closure of the idempotents."""
    if isinstance(alg, FiniteAlgebra):
        return _explicit(alg, down(alg, [_max_idempotent(alg)]).elements, "down-set of idempotents")
    if isinstance(alg, ConeAlgebra):
        zero = alg.bottom
        return Part("{0}", lambda x: x == zero)
    if isinstance(alg, PerfectAlgebra):
        return Part("whole algebra", alg.contains)
    if isinstance(alg, ProductAlgebra):
        parts = [m1_part(f) for f in alg.factors]
        return _product_part(alg, parts)
    raise UnsupportedError(f"M1 is not available for {alg.describe()}")


def m2_part(alg: Algebra) -> Part:
    """Elements meeting every idempotent in 0."""
    if isinstance(alg, FiniteAlgebra):
        ids = alg.idempotent_elements()
        elems = [x for x in alg.elements() if all(alg.meet(x, a) == 0 for a in ids)]
        return _explicit(alg, elems, "meets every idempotent in 0")
    if isinstance(alg, ConeAlgebra):
        return Part("whole algebra", alg.contains)
    if isinstance(alg, PerfectAlgebra):
        zero = alg.bottom
        return Part("{0}", lambda x: x == zero)
    if isinstance(alg, ProductAlgebra):
        return _product_part(alg, [m2_part(f) for f in alg.factors])
    raise UnsupportedError(f"M2 is not available for {alg.describe()}")


def _product_part(alg, parts):
    desc = " x ".join(_factor_desc(f, p) for f, p in zip(alg.factors, parts))
    elems = None
    if all(p.elements is not None for p in parts):
        import itertools
        elems = [tuple(c) for c in itertools.product(*(p.elements for p in parts))]
    return Part(desc, lambda x: all(p.member(c) for p, c in zip(parts, x)), elems)


def _factor_desc(f, p):
    if p.elements is not None:
        if len(p.elements) == f.size:
            return f.describe()
        if p.elements == [0]:
            return "{0}"
    if p.description == "whole algebra":
        return f.describe()
    if p.description == "{0}":
        return "{0}"
    return f"({p.description} in {f.describe()})"


# --------------------------------------------------------------------------
# decomposition


@dataclass
class Criterion:
    status: str  # "greatest" | "none" | "unknown"
    value: object = None


def decomposition_criterion(alg: Algebra, x) -> Criterion:
    """Greatest element of {x /\\ a : a idempotent}, if it exists."""
    ids = alg.idempotent_elements()
    if ids is None:
        return Criterion("unknown")
    cands = list(dict.fromkeys(alg.meet(x, a) for a in ids))
    top = [c for c in cands if all(alg.leq(d, c) for d in cands)]
    if top:
        return Criterion("greatest", top[0])
    return Criterion("none")


@dataclass
class Decomposition:
    status: str  # "decomposed" | "criterion_failed" | "unknown"
    m1: Part | None = None
    m2: Part | None = None
    phi: object = None
    witness: object = None
    checks: dict = field(default_factory=dict)
    iso_sample: list = field(default_factory=list)

    @property
    def ok(self):
        return self.status == "decomposed" and all(self.checks.values())

    def to_dict(self, alg):
        out = {"status": self.status}
        if self.m1 is not None:
            out["m1"] = self.m1.to_dict(alg)
            out["m2"] = self.m2.to_dict(alg)
        if self.witness is not None:
            out["witness"] = self.witness
        out["checks"] = dict(self.checks)
        out["iso_sample"] = [
            {"x": alg.render(x), "x1": alg.render(a), "x2": alg.render(b)} for x, (a, b) in self.iso_sample]
        return out


def decompose(alg: Algebra, samples=DEFAULT_SAMPLES, seed=0, bound=DEFAULT_BOUND) -> Decomposition:
    """Split x into (x1, x (-) x1) with x1 the greatest x /\\ a over idempotents a.

    Finite algebras are checked on every element and pair; symbolic ones on
    seeded samples (products cycle through all finite coordinates).
    """
    if alg.idempotent_elements() is None:
        return Decomposition("unknown", witness="idempotents are not known")
    finite = isinstance(alg, FiniteAlgebra)
    if finite:
        elements = alg.elements()
        pairs = [(x, y) for x in elements for y in elements]
    else:
        pairs = alg.sample_tuples(2, samples, random.Random(seed), bound)
        elements = list(dict.fromkeys([p[0] for p in pairs] + [p[1] for p in pairs]))

    parts = {}
    for x in elements:
        c = decomposition_criterion(alg, x)
        if c.status != "greatest":
            status = "unknown" if c.status == "unknown" else "criterion_failed"
            return Decomposition(status, witness=alg.render(x))
        parts[x] = (c.value, alg.ominus(x, c.value))

    m1, m2 = m1_part(alg), m2_part(alg)

    def phi(x):
        if x in parts:
            return parts[x]
        g = decomposition_criterion(alg, x).value
        return (g, alg.ominus(x, g))

    checks = {"parts": True, "homomorphism": True, "inverse": True, "section": True}
    for x in elements:
        a, b = parts[x]
        checks["parts"] &= a in m1 and b in m2
        checks["inverse"] &= alg.join(a, b) == x and alg.oplus(a, b) == x
    for x, y in pairs:
        (a1, b1), (a2, b2) = parts[x], parts[y]
        for op in OPS:
            lhs = phi(alg.op(op, x, y))
            rhs = (alg.op(op, a1, a2), alg.op(op, b1, b2))
            if lhs != rhs:
                checks["homomorphism"] = False
        # surjectivity: every (u, v) in M1 x M2 is hit by u \/ v
        u, v = a1, b2
        checks["section"] &= phi(alg.join(u, v)) == (u, v)
    if finite:
        checks["quotient_iso"] = _quotient_matches_m2(alg, m1, m2, phi)
    sample = [(x, parts[x]) for x in elements[:8]]
    return Decomposition("decomposed", m1, m2, phi, None, checks, sample)


def _quotient_matches_m2(alg, m1, m2, phi):
    """M/M1 is isomorphic to M2 via the class of x -> x (-) x1."""
    entry = quotient(alg, make_ideal(m1.elements))
    reps = entry.representatives
    image = [phi(r)[1] for r in reps]
    if sorted(image) != sorted(m2.elements):
        return False
    where = {v: i for i, v in enumerate(image)}
    for op in OPS:
        for i, r in enumerate(reps):
            for j, s in enumerate(reps):
                if where.get(alg.op(op, image[i], image[j])) != entry.quotient.op(op, i, j):
                    return False
    return True


# --------------------------------------------------------------------------
# representing algebras


@dataclass
class RepresentingAlgebra:
    """Ambient algebra with top in which ``algebra`` sits as a maximal ideal."""

    algebra: Algebra
    ambient: Algebra
    embed: object
    project: object
    member: object
    description: str

    def complement(self, x):
        """1 (-) x in the ambient algebra."""
        return self.ambient.ominus(self.ambient.top(), x)

    def verify(self, samples=DEFAULT_SAMPLES, seed=0, bound=DEFAULT_BOUND):
        """Spot checks on seeded samples; returns a dict of named booleans with witnesses."""
        N, one = self.ambient, self.ambient.top()
        if N is self.algebra:
            return {"embedding": True, "witnesses": {}}
        rng = random.Random(seed)
        pairs = self.algebra.sample_tuples(2, samples, rng, bound)
        out = {"embedding": True, "disjoint": True, "maximal": True, "odot_closed": True,
               "covers_ambient": True}
        wit = {}

        def fail(key, w):
            if out[key]:
                out[key] = False
                wit[key] = w

        from .ops import odot
        for x, y in pairs:
            ex, ey = self.embed(x), self.embed(y)
            for op in OPS:
                if self.embed(self.algebra.op(op, x, y)) != N.op(op, ex, ey):
                    fail("embedding", [op, self.algebra.render(x), self.algebra.render(y)])
            z = self.complement(ex)
            if self.member(z):
                fail("disjoint", N.render(z))
            else:
                # the ideal generated by the image and z contains z (+) (1 (-) z) = 1
                m = self.complement(z)
                if not (self.member(m) and N.oplus(z, m) == one):
                    fail("maximal", N.render(z))
            if not self.member(odot(N, ex, ey)):
                fail("odot_closed", [self.algebra.render(x), self.algebra.render(y)])
        for t in N.sample_tuples(1, samples, random.Random(seed + 1), bound):
            w = t[0]
            if not (self.member(w) or self.member(self.complement(w))):
                fail("covers_ambient", N.render(w))
        out["witnesses"] = wit
        return out

    def to_dict(self):
        return {"ambient_kind": self.ambient.kind, "ambient": self.ambient.describe(),
                "member_description": self.description}


def _identity(x):
    return x


def representing(alg: Algebra) -> RepresentingAlgebra:
    cached = getattr(alg, "_representing", None)
    if cached is not None:
        return cached
    rep = _build_representing(alg)
    alg._representing = rep
    return rep


def _build_representing(alg):
    if alg.top() is not None:
        return RepresentingAlgebra(alg, alg, _identity, _identity, alg.contains,
                                   "whole algebra (top element present)")
    if isinstance(alg, ConeAlgebra):
        amb = PerfectAlgebra(alg.rank, alg.order, unit=1)

        def embed(g):
            return (0,) + g

        def project(x):
            if x[0] != 0:
                raise ConsistencyError(f"{x} is not in the image of the cone")
            return x[1:]

        return RepresentingAlgebra(alg, amb, embed, project, lambda x: x[0] == 0,
                                   "first coordinate 0")
    if isinstance(alg, ProductAlgebra):
        reps = [representing(f) for f in alg.factors]
        amb = ProductAlgebra([r.ambient for r in reps],
                             name=" x ".join(r.ambient.describe() for r in reps))
        return RepresentingAlgebra(
            alg, amb,
            lambda x: tuple(r.embed(c) for r, c in zip(reps, x)),
            lambda x: tuple(r.project(c) for r, c in zip(reps, x)),
            lambda x: all(r.member(c) for r, c in zip(reps, x)),
            "; ".join(f"factor {i}: {r.description}" for i, r in enumerate(reps)))
    if isinstance(alg, FiniteAlgebra):
        raise ConsistencyError("finite algebra without a top element")
    raise UnsupportedError(f"no representing algebra for {alg.describe()}")


# --------------------------------------------------------------------------
# idempotent splits


@dataclass
class Split:
    a: object
    complement: object
    lower: Algebra
    upper: Algebra | Part
    iso: object
    checks: dict

    @property
    def ok(self):
        # identity_order only records whether the rebuilt product keeps the index order
        return all(v for k, v in self.checks.items() if k != "identity_order")


def split_at_idempotent(alg: Algebra, a, samples=DEFAULT_SAMPLES, seed=0, bound=DEFAULT_BOUND) -> Split:
    """M = [0,a] x ([0,a'] cap M) via x -> (x /\\ a, x /\\ a')."""
    if not alg.contains(a):
        raise InputError(f"{a!r} is not an element")
    if alg.oplus(a, a) != a:
        raise InputError(f"{alg.render(a)} is not idempotent")
    if a == alg.bottom or a == alg.top():
        raise InputError("splitting at 0 or at the top is trivial")
    rep = representing(alg)
    N = rep.ambient
    ea = rep.embed(a)
    comp = N.ominus(N.top(), ea)

    def iso(x):
        ex = rep.embed(x)
        return (rep.project(N.meet(ex, ea)), rep.project(N.meet(ex, comp)))

    checks = {"homomorphism": True, "inverse": True}
    if isinstance(alg, FiniteAlgebra):
        elements = alg.elements()
        pairs = [(x, y) for x in elements for y in elements]
        lower = alg.restrict([x for x in elements if alg.leq(x, a)], name=f"[0,{alg.render(a)}]")
        upper = alg.restrict([x for x in elements if N.leq(x, comp)],
                             name=f"[0,{alg.render(comp)}]")
        from .constructors import make_product
        rebuilt = make_product([lower, upper])
        images = [iso(x) for x in elements]
        index = {(lower.index(alg.label(u)), upper.index(alg.label(v))): i
                 for i, (u, v) in enumerate(images)}
        perm = np.array([index[(i, j)] for i in range(lower.size) for j in range(upper.size)])
        checks["reproduces"] = all(
            np.array_equal(perm[rebuilt.tables[op]], alg.tables[op][np.ix_(perm, perm)]) for op in OPS)
        checks["identity_order"] = bool((perm == np.arange(alg.size)).all())
    else:
        pairs = alg.sample_tuples(2, samples, random.Random(seed), bound)
        lower = _interval_part(alg, a)
        upper = Part(f"[0,{N.render(comp)}] in the representing algebra",
                     lambda x, comp=comp: N.leq(rep.embed(x), comp))
        checks["complement_maximal"] = _complement_maximal(rep, comp, pairs)
    for x, y in pairs:
        u1, v1 = iso(x)
        u2, v2 = iso(y)
        checks["inverse"] &= alg.join(u1, v1) == x
        for op in OPS:
            if iso(alg.op(op, x, y)) != (alg.op(op, u1, u2), alg.op(op, v1, v2)):
                checks["homomorphism"] = False
    return Split(a, comp, lower, upper, iso, checks)


def _interval_part(alg, a):
    return Part(f"[0,{alg.render(a)}]", lambda x: alg.leq(x, a))


def _complement_maximal(rep, comp, pairs):
    """[0,a'] cap M is a maximal ideal of [0,a']: each outsider z has a' (-) z inside."""
    N = rep.ambient
    if rep.member(comp):
        return False
    for x, _ in pairs:
        z = N.ominus(comp, N.meet(rep.embed(x), comp))
        if rep.member(z):
            continue
        w = N.ominus(comp, z)
        if not (rep.member(w) and N.meet(N.oplus(z, w), comp) == comp):
            return False
    return True

"""Pierce sheaf data of finite EMV-algebras.

Points are the prime ideals of the lattice of idempotents; the stalk over P is
M modulo the down-closure of P. Everything here is finite and computed by
enumeration; the topological statements about the sheaf space itself are
outside the scope of these checks.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .algebra import OPS, FiniteAlgebra
from .axioms import validate
from .errors import ConsistencyError, InputError, TopologyError, UnsupportedError
from .ideals import (
    Ideal,
    SpectrumEntry,
    down,
    ideals,
    intersection,
    is_ideal,
    is_prime,
    make_ideal,
    partition_from_relation,
    quotient,
    quotient_by_projection,
)
from .ops import Verdict, is_emv, odot


def _finite_emv(alg):
    if not isinstance(alg, FiniteAlgebra):
        raise UnsupportedError("Pierce sheaf data is computed for finite algebras only")
    v = is_emv(alg)
    if not v:
        raise InputError(f"not an EMV-algebra: {v.detail} at {v.witness}")
    return alg


@dataclass
class BooleanSpectrum:
    idempotents: list
    points: list  # Ideal of idempotents
    basis: dict  # idempotent -> sorted point indices

    def V(self, a):
        return self.basis[a]

    def to_dict(self, alg):
        return {
            "points": [[alg.render(e) for e in P] for P in self.points],
            "basis": {json.dumps(alg.render(a)): list(v) for a, v in self.basis.items()},
        }


def _idempotent_lattice_primes(alg, ids):
    """Proper prime ideals of the lattice of idempotents (down-sets of an idempotent)."""
    pts = set()
    for c in ids:
        P = make_ideal([a for a in ids if alg.leq(a, c)])
        if len(P) == len(ids):
            continue
        if all(alg.meet(x, y) not in P or x in P or y in P for x in ids for y in ids):
            pts.add(P)
    return sorted(pts, key=Ideal.key)


def boolean_spectrum(alg) -> BooleanSpectrum:
    alg = _finite_emv(alg)
    ids = sorted(alg.idempotent_elements())
    points = _idempotent_lattice_primes(alg, ids)
    basis = {a: [j for j, P in enumerate(points) if a not in P] for a in ids}
    for a in ids:
        for b in ids:
            if set(basis[a]) & set(basis[b]) != set(basis[alg.meet(a, b)]):
                raise ConsistencyError(f"V_a cap V_b != V_(a/\\b) at a={a}, b={b}")
    return BooleanSpectrum(ids, points, basis)


def idempotent_atoms(alg):
    ids = [a for a in alg.idempotent_elements() if a != 0]
    return [a for a in ids if not any(b != a and alg.leq(b, a) for b in ids)]


def _check_point(alg, P):
    ids = alg.idempotent_elements()
    P = make_ideal(P)
    if P not in _idempotent_lattice_primes(alg, sorted(ids)):
        raise InputError(f"{P.to_list()} is not a prime ideal of the idempotent lattice")
    return P


def stone_ideal(alg, P) -> Ideal:
    """Down-closure of a prime ideal of idempotents; an ideal of M."""
    P = _check_point(alg, P)
    I = down(alg, P)
    if not is_ideal(alg, I):
        raise ConsistencyError(f"down-closure of {P.to_list()} is not an ideal")
    return I


def idempotent_count(alg: FiniteAlgebra):
    return len(alg.idempotent_elements())


def stalk(alg, P) -> SpectrumEntry:
    entry = quotient(alg, stone_ideal(alg, P))
    if idempotent_count(entry.quotient) > 2:
        raise ConsistencyError("stalk is directly decomposable")
    return entry


@dataclass
class SheafData:
    spectrum: BooleanSpectrum
    stalks: list
    sections: list  # per element: tuple of stalk indices
    section_algebra: FiniteAlgebra | None
    section_report: object = None

    def section(self, x):
        return self.sections[x]

    def to_dict(self, alg, sample=8):
        from .ideals import is_chain
        return {
            **self.spectrum.to_dict(alg),
            "stalks": [{"point": j, "size": s.size, "is_chain": is_chain(s.quotient),
                        "idempotent_count": idempotent_count(s.quotient)}
                       for j, s in enumerate(self.stalks)],
            "sections_sample": [
                {"x": alg.render(x), "section": [s.quotient.render(c) for s, c in zip(self.stalks, sec)]}
                for x, sec in list(enumerate(self.sections))[:sample]],
            "section_algebra_valid": None if self.section_report is None else self.section_report.passed,
        }


def _image_algebra(alg, factors, images, name):
    """Subalgebra of the product of ``factors`` spanned by ``images`` (pointwise operations)."""
    distinct = list(dict.fromkeys(images))
    where = {v: i for i, v in enumerate(distinct)}
    if where.get(tuple(0 for _ in factors), None) != 0 and factors:
        raise ConsistencyError("the zero section is not the image of 0")
    n = len(distinct)
    tabs = {op: np.zeros((n, n), dtype=np.int64) for op in OPS}
    for op in OPS:
        for i, u in enumerate(distinct):
            for j, v in enumerate(distinct):
                w = tuple(f.op(op, a, b) for f, a, b in zip(factors, u, v))
                if w not in where:
                    raise ConsistencyError(f"sections are not closed under {op}")
                tabs[op][i, j] = where[w]
    return FiniteAlgebra(tabs["join"], tabs["meet"], tabs["oplus"], tabs["ominus"],
                         labels=distinct, name=name)


def sections(alg) -> SheafData:
    """Stalks over every point and the global sections x -> (x / down P)_P."""
    spec_ = boolean_spectrum(alg)
    stalks = [stalk(alg, P) for P in spec_.points]
    secs = [tuple(s.project(x) for s in stalks) for x in alg.elements()]
    sec_alg = _image_algebra(alg, [s.quotient for s in stalks], secs, f"sections of {alg.describe()}")
    return SheafData(spec_, stalks, secs, sec_alg, validate(sec_alg))


def u_basis(alg, I, x):
    """U(I, x): the classes of x over the points P with I not contained in P."""
    spec_ = boolean_spectrum(alg)
    I = make_ideal(I)
    ids = set(spec_.idempotents)
    if not set(I) <= ids or not I.elements:
        raise InputError("I must be a nonempty set of idempotents")
    for a in I:
        for b in ids:
            if alg.leq(b, a) and b not in I:
                raise InputError(f"{I.to_list()} is not a down-set of idempotents")
        for b in I:
            if alg.join(a, b) not in I:
                raise InputError(f"{I.to_list()} is not closed under joins")
    out = []
    for j, P in enumerate(spec_.points):
        if not I.issubset(P):
            out.append((j, stalk(alg, P).project(x)))
    return out


def u_basis_intersection_ok(alg):
    """Every point of U(I,x) cap U(J,y) lies in U(I cap J, x /\\ y) inside that intersection."""
    spec_ = boolean_spectrum(alg)
    lattice_ideals = sorted({make_ideal([b for b in spec_.idempotents if alg.leq(b, a)])
                             for a in spec_.idempotents}, key=Ideal.key)
    projs = [stalk(alg, P) for P in spec_.points]
    for I, J in itertools.product(lattice_ideals, repeat=2):
        K = make_ideal(set(I) & set(J))
        for x in alg.elements():
            for y in alg.elements():
                for j, P in enumerate(spec_.points):
                    s = projs[j]
                    inside = (not I.issubset(P) and not J.issubset(P)
                              and s.project(x) == s.project(y))
                    if inside and (K.issubset(P) or s.project(alg.meet(x, y)) != s.project(x)):
                        return False
    return True


# --------------------------------------------------------------------------
# restriction maps between the quotients by ~_a


@dataclass
class Restriction:
    a: int
    b: int
    lower: SpectrumEntry  # M / ~_a
    upper: SpectrumEntry  # M / ~_b
    mapping: list  # class in M/~_b -> class in M/~_a

    def __call__(self, cls):
        return self.mapping[cls]


def sim_relation(alg, a):
    """x ~_a y iff x (.) a = y (.) a."""
    n = alg.size
    vals = np.array([odot(alg, x, a) for x in range(n)])
    return vals[:, None] == vals[None, :]


def sim_relation_by_distance(alg, a, b):
    """x ~_a y iff (x (-) y) \\/ (y (-) x) <= lambda_b(a) for an idempotent b above a, x, y."""
    lam = alg.ominus(b, a)
    d = alg.J[alg.O, alg.O.T]
    return alg.M[d, lam] == d


def sim_quotient(alg, a) -> SpectrumEntry:
    proj, reps = partition_from_relation(sim_relation(alg, a))
    q = quotient_by_projection(alg, proj, reps, name=f"{alg.describe()}/~{alg.render(a)}")
    return SpectrumEntry(None, q, proj, reps)


def idempotent_restriction(alg, a, b) -> Restriction:
    """pi_(a,b): M/~_b -> M/~_a, x/b -> x/a, for idempotents a <= b."""
    alg = _finite_emv(alg)
    ids = alg.idempotent_elements()
    if a not in ids or b not in ids:
        raise InputError("a and b must be idempotent")
    if not alg.leq(a, b):
        raise InputError(f"{alg.render(a)} is not below {alg.render(b)}")
    lo, hi = sim_quotient(alg, a), sim_quotient(alg, b)
    mapping = [-1] * hi.size
    for x in alg.elements():
        c, d = hi.project(x), lo.project(x)
        if mapping[c] not in (-1, d):
            raise ConsistencyError("pi_(a,b) is not well defined")
        mapping[c] = d
    for op in OPS:
        for i in range(hi.size):
            for j in range(hi.size):
                if mapping[hi.quotient.op(op, i, j)] != lo.quotient.op(op, mapping[i], mapping[j]):
                    raise ConsistencyError(f"pi_(a,b) does not preserve {op}")
    if set(mapping) != set(range(lo.size)):
        raise ConsistencyError("pi_(a,b) is not onto")
    return Restriction(a, b, lo, hi, mapping)


def restriction_system_ok(alg) -> bool:
    """pi_(a,b) o pi_(b,c) = pi_(a,c) for a <= b <= c, and pi_(a,a) is the identity."""
    ids = sorted(alg.idempotent_elements())
    maps = {(a, b): idempotent_restriction(alg, a, b) for a in ids for b in ids if alg.leq(a, b)}
    for (a, b), r in maps.items():
        if a == b and r.mapping != list(range(len(r.mapping))):
            return False
    for a, b, c in itertools.product(ids, repeat=3):
        if alg.leq(a, b) and alg.leq(b, c):
            ab, bc, ac = maps[(a, b)], maps[(b, c)], maps[(a, c)]
            if [ab(bc(k)) for k in range(len(bc.mapping))] != ac.mapping:
                return False
    return True


# --------------------------------------------------------------------------
# semisimplicity, comparability, embeddings


def maximal_ideals(alg):
    proper = [I for I in ideals(alg, cap=None) if len(I) < alg.size]
    return [I for I in proper if not any(I != J and I.issubset(J) for J in proper)]


def is_semisimple(alg) -> Verdict:
    if alg.size == 1:
        return Verdict(True, detail="trivial algebra")
    rad = intersection(maximal_ideals(alg))
    if rad.elements == (0,):
        return Verdict(True)
    return Verdict(False, [alg.render(e) for e in rad], "radical is not {0}")


def has_general_comparability(alg) -> Verdict:
    """For idempotent a and x, y <= a: some idempotent e <= a has x /\\ e <= y and y /\\ (a (-) e) <= x."""
    ids = alg.idempotent_elements()
    for a in ids:
        below = [x for x in alg.elements() if alg.leq(x, a)]
        es = [e for e in ids if alg.leq(e, a)]
        for x in below:
            for y in below:
                if not any(alg.leq(alg.meet(x, e), y) and alg.leq(alg.meet(y, alg.ominus(a, e)), x)
                           for e in es):
                    return Verdict(False, {"a": alg.render(a), "x": alg.render(x), "y": alg.render(y)})
    return Verdict(True)


def _embedding_checks(alg, factors, projections):
    images = [tuple(p(x) for p in projections) for x in alg.elements()]
    injective = len(set(images)) == alg.size
    hom = all(images[alg.op(op, x, y)] == tuple(f.op(op, a, b) for f, a, b in
                                                 zip(factors, images[x], images[y]))
              for op in OPS for x in alg.elements() for y in alg.elements())
    return images, injective, hom


def semisimple_sheaf_embedding(alg) -> Verdict:
    """x -> (x / down P)_P; refused (not raised) when the hypotheses fail."""
    if not isinstance(alg, FiniteAlgebra):
        raise UnsupportedError("finite algebras only")
    emv = is_emv(alg)
    if not emv:
        return Verdict(False, emv.witness, "refused: not an EMV-algebra", {"refused": True})
    ss = is_semisimple(alg)
    if not ss:
        return Verdict(False, ss.witness, "refused: not semisimple", {"refused": True})
    gc = has_general_comparability(alg)
    if not gc:
        return Verdict(False, gc.witness, "refused: general comparability fails", {"refused": True})
    data = sections(alg)
    _, injective, hom = _embedding_checks(alg, [s.quotient for s in data.stalks],
                                          [s.project for s in data.stalks])
    rad = intersection([stone_ideal(alg, P) for P in data.spectrum.points])
    return Verdict(injective and hom, None, "embedded" if injective and hom else "not injective",
                   {"refused": False, "injective": injective, "homomorphism": hom,
                    "stalk_sizes": [s.size for s in data.stalks],
                    "stone_radical_zero": rad is None or rad.elements == (0,)})


@dataclass
class FiniteSpace:
    """Finite topological space on points 0..n-1 given by its open sets."""

    n: int
    opens: list = field(default_factory=list)

    def __post_init__(self):
        opens = {frozenset(o) for o in self.opens}
        everything = frozenset(range(self.n))
        for o in opens:
            if not o <= everything:
                raise TopologyError(f"open set {sorted(o)} has points outside 0..{self.n - 1}")
        if frozenset() not in opens or everything not in opens:
            raise TopologyError("the empty set and the whole space must be open")
        for u, v in itertools.combinations(opens, 2):
            if u | v not in opens:
                raise TopologyError(f"union of {sorted(u)} and {sorted(v)} is not open")
            if u & v not in opens:
                raise TopologyError(f"intersection of {sorted(u)} and {sorted(v)} is not open")
        self.opens = sorted(opens, key=lambda o: (len(o), sorted(o)))

    def is_open(self, s):
        return frozenset(s) in self.opens

    @classmethod
    def discrete(cls, n):
        pts = range(n)
        return cls(n, [set(c) for k in range(n + 1) for c in itertools.combinations(pts, k)])

    @classmethod
    def indiscrete(cls, n):
        return cls(n, [set(), set(range(n))])


def custom_sheaf_check(alg, space: FiniteSpace, family) -> Verdict:
    """Conditions on a family {I_p} of ideals over a finite space.

    (a) the I_p meet in {0}; (b) {p : m in I_p} is open for each m;
    (c) M -> prod M/I_p is an injective homomorphism.
    """
    if len(family) != space.n:
        raise InputError(f"need one ideal per point ({space.n}), got {len(family)}")
    fam = [make_ideal(I) for I in family]
    for p, I in enumerate(fam):
        if not is_ideal(alg, I):
            raise InputError(f"I_{p} = {I.to_list()} is not an ideal")
    failures = {}
    meet = intersection(fam) if fam else make_ideal(alg.elements())
    if meet.elements != (0,):
        failures["a"] = [alg.render(e) for e in meet]
    for m in alg.elements():
        s = {p for p, I in enumerate(fam) if m in I}
        if not space.is_open(s):
            failures["b"] = {"m": alg.render(m), "points": sorted(s)}
            break
    entries = [quotient(alg, I) for I in fam]
    _, injective, hom = _embedding_checks(alg, [e.quotient for e in entries],
                                          [e.project for e in entries])
    if not (injective and hom):
        failures["c"] = {"injective": injective, "homomorphism": hom}
    return Verdict(not failures, failures or None,
                   "all conditions hold" if not failures else "failed: " + ", ".join(sorted(failures)),
                   {"conditions": {k: k not in failures for k in "abc"}})


# --------------------------------------------------------------------------
# Stone conditions


def _complemented(alg, b, a, below):
    return any(alg.meet(b, c) == 0 and alg.join(b, c) == a for c in below)


def is_stone_lattice(alg, a) -> Verdict:
    """[0,a] is a Stone algebra: each annihilator is the down-set of a complemented element."""
    below = [x for x in alg.elements() if alg.leq(x, a)]
    for x in below:
        ann = {y for y in below if alg.meet(x, y) == 0}
        tops = [b for b in ann if all(alg.leq(y, b) for y in ann)]
        if not tops:
            return Verdict(False, alg.render(x), "annihilator has no largest element")
        b = tops[0]
        if ann != {y for y in below if alg.leq(y, b)} or not _complemented(alg, b, a, below):
            return Verdict(False, alg.render(x), "annihilator is not generated by a Boolean element")
    return Verdict(True)


def is_stone_emv(alg) -> Verdict:
    """Every x lies under an idempotent a with [0,a] a Stone algebra."""
    ids = alg.idempotent_elements()
    stone = {a: bool(is_stone_lattice(alg, a)) for a in ids}
    for x in alg.elements():
        if not any(stone[a] and alg.leq(x, a) for a in ids):
            return Verdict(False, alg.render(x))
    return Verdict(True)


def stone_ideals_prime(alg) -> bool:
    """Down-closures of points of the spectrum are prime ideals of M."""
    spec_ = boolean_spectrum(alg)
    return all(is_prime(alg, stone_ideal(alg, P)) for P in spec_.points)

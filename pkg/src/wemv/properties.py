"""Consequences of the axioms, run as a regression suite.

Equational and implicational laws share the machinery of the axiom validator
(exhaustive on tables, seeded samples otherwise). Laws about atoms are checked
separately on the known atoms of the algebra.
"""

from __future__ import annotations

import itertools
import random
from functools import reduce

from .algebra import DEFAULT_BOUND, DEFAULT_SAMPLES, FiniteAlgebra
from .axioms import Law, LawReport, Violation, run_laws
from .ops import scalar


def _interval_top(A, x, y, z, w):
    # a = w \/ x \/ y \/ z ranges over every upper bound of x, y, z as w varies
    return A.join(w, A.join(x, A.join(y, z)))


def _property_laws():
    L = []

    def add(pid, text, variables, fn):
        L.append(Law(pid, text, variables, fn))

    add("sum-monotone", "x <= y => x (+) z <= y (+) z", "xyz",
        lambda A, x, y, z, w=None: A.implies(A.leq(x, y), A.leq(A.oplus(x, z), A.oplus(y, z))))
    add("sum-order", "x <= y => x (+) (y (-) x) = y", "xy",
        lambda A, x, y, z, w=None: A.implies(A.leq(x, y), A.eq(A.oplus(x, A.ominus(y, x)), y)))
    add("sum-order", "x <= x (+) y", "xy",
        lambda A, x, y, z, w=None: A.leq(x, A.oplus(x, y)))
    add("diff-monotone", "x <= y => x (-) z <= y (-) z", "xyz",
        lambda A, x, y, z, w=None: A.implies(A.leq(x, y), A.leq(A.ominus(x, z), A.ominus(y, z))))
    add("diff-monotone", "y <= z => x (-) z <= x (-) y", "xyz",
        lambda A, x, y, z, w=None: A.implies(A.leq(y, z), A.leq(A.ominus(x, z), A.ominus(x, y))))
    add("diff-below", "z (-) x <= z", "xz",
        lambda A, x, y, z, w=None: A.leq(A.ominus(z, x), z))
    add("join-below-sum", "x \\/ y <= x (+) y", "xy",
        lambda A, x, y, z, w=None: A.leq(A.join(x, y), A.oplus(x, y)))
    add("diff-cancel", "x <= z => (z (-) x) (+) x = z", "xz",
        lambda A, x, y, z, w=None: A.implies(A.leq(x, z), A.eq(A.oplus(A.ominus(z, x), x), z)))
    add("diff-cancel", "x <= z => z (-) (z (-) x) = x", "xz",
        lambda A, x, y, z, w=None: A.implies(A.leq(x, z), A.eq(A.ominus(z, A.ominus(z, x)), x)))
    add("diff-min", "x <= z, y <= z, x (+) y = z => z (-) x <= y", "xyz",
        lambda A, x, y, z, w=None: A.implies(
            A.both(A.leq(x, z), A.both(A.leq(y, z), A.eq(A.oplus(x, y), z))),
            A.leq(A.ominus(z, x), y)))
    add("diff-min-meet", "(z (-) x) (+) (z /\\ x) = z", "xz",
        lambda A, x, y, z, w=None: A.eq(A.oplus(A.ominus(z, x), A.meet(z, x)), z))
    add("diff-min-meet", "t <= z, t (+) (z /\\ x) = z => z (-) x <= t", "xyz",
        lambda A, x, y, z, w=None: A.implies(
            A.both(A.leq(y, z), A.eq(A.oplus(y, A.meet(z, x)), z)), A.leq(A.ominus(z, x), y)))
    add("residuation", "z <= x (+) y <=> z (-) x <= y", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.leq(z, A.oplus(x, y)), A.leq(A.ominus(z, x), y)))
    add("diff-zero", "z (-) 0 = z", "z",
        lambda A, x, y, z, w=None: A.eq(A.ominus(z, A.zero(z)), z))
    add("diff-zero", "z (-) z = 0", "z",
        lambda A, x, y, z, w=None: A.eq(A.ominus(z, z), A.zero(z)))
    add("diff-zero", "z (-) y = 0 <=> z <= y", "yz",
        lambda A, x, y, z, w=None: A.eq(A.eq(A.ominus(z, y), A.zero(z)), A.leq(z, y)))
    add("diff-zero-eq", "x <= z, z (-) x = 0 => z = x", "xz",
        lambda A, x, y, z, w=None: A.implies(
            A.both(A.leq(x, z), A.eq(A.ominus(z, x), A.zero(z))), A.eq(z, x)))
    add("interval-involution", "x <= a => a (-) (a (-) x) = x", "xyzw",
        lambda A, x, y, z, w: (lambda a: A.eq(A.ominus(a, A.ominus(a, x)), x))(
            _interval_top(A, x, y, z, w)))
    add("interval-meet", "x, y <= a => x /\\ y = a (-) ((a (-) x) \\/ (a (-) y))", "xyzw",
        lambda A, x, y, z, w: (lambda a: A.eq(
            A.meet(x, y), A.ominus(a, A.join(A.ominus(a, x), A.ominus(a, y)))))(
            _interval_top(A, x, y, z, w)))
    add("interval-sum-meet", "(x /\\ y) (+) z = (x (+) z) /\\ (y (+) z)", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.oplus(A.meet(x, y), z),
                                         A.meet(A.oplus(x, z), A.oplus(y, z))))
    add("interval-diff-meet", "z (-) (x /\\ y) = (z (-) x) \\/ (z (-) y)", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.ominus(z, A.meet(x, y)),
                                         A.join(A.ominus(z, x), A.ominus(z, y))))
    add("triangle", "x (-) z <= (x (-) y) (+) (y (-) z)", "xyz",
        lambda A, x, y, z, w=None: A.leq(A.ominus(x, z), A.oplus(A.ominus(x, y), A.ominus(y, z))))
    add("diff-join", "(x \\/ y) (-) z = (x (-) z) \\/ (y (-) z)", "xyz",
        lambda A, x, y, z, w=None: A.eq(A.ominus(A.join(x, y), z),
                                         A.join(A.ominus(x, z), A.ominus(y, z))))
    add("sum-split", "x (+) y = (x \\/ y) (+) (x /\\ y)", "xy",
        lambda A, x, y, z, w=None: A.eq(A.oplus(x, y), A.oplus(A.join(x, y), A.meet(x, y))))
    add("disjoint-sum", "x /\\ y = 0 => x (+) y = x \\/ y", "xy",
        lambda A, x, y, z, w=None: A.implies(A.eq(A.meet(x, y), A.zero(x)),
                                              A.eq(A.oplus(x, y), A.join(x, y))))
    return L


PROPERTY_LAWS = _property_laws()
PROPERTY_IDS = tuple(dict.fromkeys(law.axiom for law in PROPERTY_LAWS)) + (
    "atoms-join-sum", "atom-multiples")


def _atom_checks(alg, bound, rng):
    """Distinct atoms: finite joins equal sums; elements below n.a are multiples of a."""
    out = []
    atoms = list(alg.known_atoms())
    for k in range(2, min(len(atoms), 6) + 1):
        for group in itertools.combinations(atoms, k):
            j = reduce(alg.join, group)
            s = reduce(alg.oplus, group)
            if j != s:
                out.append(Violation("atoms-join-sum", "a1 \\/ ... \\/ ak = a1 (+) ... (+) ak",
                                     {"atoms": [alg.render(a) for a in group]}))
                break
    for a in atoms:
        limit = alg.size if isinstance(alg, FiniteAlgebra) else bound
        multiples = [scalar(alg, m, a) for m in range(limit + 1)]
        if isinstance(alg, FiniteAlgebra):
            pool = alg.elements()
        else:
            pool = list(dict.fromkeys(alg.probe_elements(bound)
                                      + [alg.random_element(rng, bound) for _ in range(200)]))
        for b in pool:
            if any(alg.leq(b, m) for m in multiples) and b not in multiples:
                out.append(Violation("atom-multiples", "b <= n.a => b = m.a",
                                     {"a": alg.render(a), "b": alg.render(b)}))
                break
    return out


def property_suite(alg, samples=DEFAULT_SAMPLES, seed=0, bound=DEFAULT_BOUND, workers=1) -> LawReport:
    """Run every law; exhaustive on finite algebras, seeded samples otherwise."""
    report = run_laws(alg, "properties", range(len(PROPERTY_LAWS)), samples, seed, bound,
                      workers, alg.describe())
    report.ids = PROPERTY_IDS
    report.violations.extend(_atom_checks(alg, bound, random.Random(seed)))
    return report

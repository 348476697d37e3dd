"""Identity checking and membership in the subvarieties Can, Perf and Idem."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_BOUND, DEFAULT_SAMPLES, FiniteAlgebra
from .errors import ConsistencyError, EvaluationError, InputError
from .parallel import chunked_map
from .terms import evaluate, evaluate_tables, parse_identity, parse_term

MAX_EXHAUSTIVE_VARS = 4

CAN = ("(x (+) y) (-) x", "y")
PERF = ("(2.x)^2", "2.x^2")
IDEM = ("x (+) x", "x")


@dataclass
class IdentityVerdict:
    holds: bool
    strategy: str  # "exhaustive" | "sampled"
    count: int
    lhs: str
    rhs: str
    witness: dict | None = None
    values: tuple | None = None
    seed: int | None = None
    bound: int | None = None
    name: str = ""

    def __bool__(self):
        return self.holds

    def to_dict(self):
        out = {"identity": f"{self.lhs} = {self.rhs}", "holds": self.holds,
               "strategy": self.strategy, "count": self.count}
        if self.name:
            out = {"name": self.name, **out}
        if self.witness is not None:
            out["witness"] = self.witness
            out["values"] = list(self.values)
        if self.strategy == "sampled":
            out["seed"] = self.seed
            out["bound"] = self.bound
        return out


def _as_term(t):
    return parse_term(t) if isinstance(t, str) else t


def _variables(*terms):
    names = []
    for t in terms:
        if t is not None:
            names.extend(t.variables())
    return sorted(set(names))


def _holds_at(alg, lhs, rhs, premise, env):
    if premise is not None and evaluate(premise[0], alg, env) != evaluate(premise[1], alg, env):
        return True, None
    a, b = evaluate(lhs, alg, env), evaluate(rhs, alg, env)
    return a == b, (a, b)


def _scan_chunk(args):
    alg, lhs, rhs, premise, names, chunk = args
    for pos, values in chunk:
        ok, _ = _holds_at(alg, lhs, rhs, premise, dict(zip(names, values)))
        if not ok:
            return pos
    return None


def check_identity(alg, lhs, rhs, premise=None, samples=DEFAULT_SAMPLES, seed=0,
                   bound=DEFAULT_BOUND, max_vars=MAX_EXHAUSTIVE_VARS, workers=1, name=""):
    """Check ``lhs = rhs`` (optionally under ``premise[0] = premise[1]``).

    Finite algebras with at most ``max_vars`` variables are checked on every
    assignment; otherwise on ``samples`` seeded assignments. A failing verdict
    carries the first failing assignment, re-evaluated before returning.
    """
    lhs, rhs = _as_term(lhs), _as_term(rhs)
    if premise is not None:
        premise = (_as_term(premise[0]), _as_term(premise[1]))
    names = _variables(lhs, rhs, *(premise or ()))
    base = dict(lhs=str(lhs), rhs=str(rhs), name=name)
    if premise is not None:
        base["lhs"] = f"{premise[0]} = {premise[1]} => {lhs}"
    for t in (lhs, rhs, *(premise or ())):
        if t.needs_top() and alg.top() is None:
            raise EvaluationError(f"{t} needs a top element, {alg.describe()} has none")

    if isinstance(alg, FiniteAlgebra) and len(names) <= max_vars:
        n = alg.size
        k = len(names)
        grids = [np.arange(n).reshape([n if i == j else 1 for i in range(k)]) for j in range(k)]
        env = dict(zip(names, grids))
        shape = (n,) * k
        ok = np.broadcast_to(evaluate_tables(lhs, alg, env) == evaluate_tables(rhs, alg, env), shape)
        if premise is not None:
            pre = np.broadcast_to(
                evaluate_tables(premise[0], alg, env) == evaluate_tables(premise[1], alg, env), shape)
            ok = ok | ~pre
        bad = np.argwhere(~ok)
        if not len(bad):
            return IdentityVerdict(True, "exhaustive", n ** k, **base)
        values = tuple(int(v) for v in bad[0]) if k else ()
        return _failure(alg, lhs, rhs, premise, names, values, "exhaustive", n ** k, base)

    if samples <= 0:
        raise InputError("samples must be positive")
    k = max(len(names), 1)
    tuples = alg.sample_tuples(k, samples, random.Random(seed), bound)
    numbered = list(enumerate(tuples))
    hits = chunked_map(_scan_chunk, lambda c: (alg, lhs, rhs, premise, names, c), numbered, workers)
    first = min((h for h in hits if h is not None), default=None)
    if first is None:
        return IdentityVerdict(True, "sampled", len(tuples), seed=seed, bound=bound, **base)
    v = _failure(alg, lhs, rhs, premise, names, tuples[first][:len(names)], "sampled",
                 len(tuples), base)
    v.seed, v.bound = seed, bound
    return v


def _failure(alg, lhs, rhs, premise, names, values, strategy, count, base):
    env = dict(zip(names, values))
    ok, pair = _holds_at(alg, lhs, rhs, premise, env)
    if ok:
        raise ConsistencyError(f"witness {env} does not re-evaluate to a failure")
    witness = {k: alg.render(v) for k, v in env.items()}
    return IdentityVerdict(False, strategy, count, witness=witness,
                           values=(alg.render(pair[0]), alg.render(pair[1])), **base)


def in_can(alg, **kw):
    return check_identity(alg, *CAN, name="Can", **kw)


def in_perf(alg, **kw):
    return check_identity(alg, *PERF, name="Perf", **kw)


def in_idem(alg, **kw):
    return check_identity(alg, *IDEM, name="Idem", **kw)


def membership(alg, **kw):
    return {"Can": in_can(alg, **kw), "Perf": in_perf(alg, **kw), "Idem": in_idem(alg, **kw)}


PIXLEY = "((x (-) y) (+) z) /\\ (((z (-) y) (+) x) /\\ (x \\/ z))"


def pixley_term(x="x", y="y", z="z"):
    t = PIXLEY
    for src, dst in (("x", "@1"), ("y", "@2"), ("z", "@3")):
        t = t.replace(src, dst)
    return t.replace("@1", x).replace("@2", y).replace("@3", z)


def check_pixley(alg, **kw):
    """m(x,y,y) = x, m(x,x,y) = y and m(x,y,x) = x for the Pixley term m."""
    cases = [("m(x,y,y) = x", pixley_term("x", "y", "y"), "x"),
             ("m(x,x,y) = y", pixley_term("x", "x", "y"), "y"),
             ("m(x,y,x) = x", pixley_term("x", "y", "x"), "x")]
    return [check_identity(alg, lhs, rhs, name=label, **kw) for label, lhs, rhs in cases]


STOCK_IDENTITIES = [
    ("diff-join", "(x \\/ y) (-) z", "(x (-) z) \\/ (y (-) z)", None),
    ("sum-split", "x (+) y", "(x \\/ y) (+) (x /\\ y)", None),
    ("disjoint-sum", "x (+) y", "x \\/ y", ("x /\\ y", "0")),
    ("triangle", "(x (-) z) /\\ ((x (-) y) (+) (y (-) z))", "x (-) z", None),
    ("diff-zero-right", "z (-) 0", "z", None),
    ("diff-self", "z (-) z", "0", None),
    ("diff-below", "z /\\ (z (-) x)", "z (-) x", None),
    ("join-below-sum", "(x \\/ y) /\\ (x (+) y)", "x \\/ y", None),
    ("sum-monotone", "((x /\\ y) (+) z) /\\ (y (+) z)", "(x /\\ y) (+) z", None),
    ("diff-monotone-left", "((x /\\ y) (-) z) /\\ (y (-) z)", "(x /\\ y) (-) z", None),
    ("diff-antitone-right", "(x (-) (y \\/ z)) /\\ (x (-) y)", "x (-) (y \\/ z)", None),
    ("diff-cancel", "((x \\/ z) (-) x) (+) x", "x \\/ z", None),
    ("diff-involution", "(x \\/ z) (-) ((x \\/ z) (-) x)", "x", None),
    ("residuation", "((z /\\ (x (+) y)) (-) x) /\\ y", "(z /\\ (x (+) y)) (-) x", None),
]


@dataclass
class SuiteReport:
    verdicts: list = field(default_factory=list)

    @property
    def passed(self):
        return all(self.verdicts)

    def to_dict(self):
        return {"passed": self.passed, "identities": [v.to_dict() for v in self.verdicts]}


def identity_suite(alg, **kw) -> SuiteReport:
    """Run the stock identities that hold in every algebra of the variety."""
    return SuiteReport([check_identity(alg, lhs, rhs, premise=pre, name=name, **kw)
                        for name, lhs, rhs, pre in STOCK_IDENTITIES])


@dataclass
class Refutation:
    refuted: bool
    probe: str | None = None
    verdict: IdentityVerdict | None = None
    checked: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def message(self):
        if self.refuted:
            return f"refuted on {self.probe}"
        return "no counterexample found"

    def to_dict(self):
        out = {"refuted": self.refuted, "message": self.message, "checked": self.checked,
               "skipped": self.skipped}
        if self.verdict is not None:
            out["verdict"] = self.verdict.to_dict()
        return out


def probe_family():
    from .constructors import make_chain, make_cone
    return [make_chain(n) for n in range(1, 7)] + [make_cone(1), make_cone(2, "lex")]


def refute_in_variety(lhs, rhs, **kw) -> Refutation:
    """Look for a counterexample among small chains and two linearly ordered cones.

    A failure is a sound refutation; success on every probe is not a proof.
    """
    if isinstance(lhs, str) and rhs is None:
        lhs, rhs = parse_identity(lhs)
    out = Refutation(False)
    for alg in probe_family():
        try:
            v = check_identity(alg, lhs, rhs, **kw)
        except EvaluationError:
            out.skipped.append(alg.describe())
            continue
        out.checked.append(alg.describe())
        if not v.holds:
            out.refuted, out.probe, out.verdict = True, alg.describe(), v
            return out
    return out

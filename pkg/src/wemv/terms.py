"""Term language: parser, printer and evaluators.

Grammar (ASCII)::

    expr    := meetexp ("\\/" meetexp)*
    meetexp := sumexp ("/\\" sumexp)*
    sumexp  := prodexp (("(+)" | "(-)") prodexp)*
    prodexp := prefix ("(.)" prefix)*
    prefix  := NUMBER "." prefix | postfix
    postfix := atom ("^" NUMBER)*
    atom    := VAR | "0" | "1" | "(" expr ")" | "lam" "(" expr "," expr ")"

Binary operators associate to the left. ``lam(a, t)`` is lambda_a(t) = a (-) t
for an idempotent ``a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .algebra import FiniteAlgebra
from .errors import EvaluationError, TermSyntaxError

LITERAL_CAP = 16
KEYWORDS = {"lam"}

SYMBOLS = {"join": "\\/", "meet": "/\\", "oplus": "(+)", "ominus": "(-)", "odot": "(.)"}
LEVEL = {"join": 0, "meet": 1, "oplus": 2, "ominus": 2, "odot": 3}


class Term:
    def variables(self):
        out = []
        self._collect(out)
        return list(dict.fromkeys(out))

    def _collect(self, out):
        pass

    def needs_top(self):
        return any(t.needs_top() for t in self.children())

    def children(self):
        return ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def _collect(self, out):
        out.append(self.name)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const(Term):
    value: int  # 0 or 1 (top)

    def needs_top(self):
        return self.value == 1

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Bin(Term):
    op: str
    left: Term
    right: Term

    def children(self):
        return (self.left, self.right)

    def _collect(self, out):
        self.left._collect(out)
        self.right._collect(out)

    def __str__(self):
        return f"({self.left} {SYMBOLS[self.op]} {self.right})"


@dataclass(frozen=True)
class Scalar(Term):
    n: int
    term: Term

    def children(self):
        return (self.term,)

    def _collect(self, out):
        self.term._collect(out)

    def __str__(self):
        return f"{self.n}.{_wrap(self.term)}"


@dataclass(frozen=True)
class Power(Term):
    term: Term
    n: int

    def children(self):
        return (self.term,)

    def needs_top(self):
        return self.n == 0 or self.term.needs_top()

    def _collect(self, out):
        self.term._collect(out)

    def __str__(self):
        return f"{_wrap(self.term)}^{self.n}"


@dataclass(frozen=True)
class Lam(Term):
    a: Term
    term: Term

    def children(self):
        return (self.a, self.term)

    def needs_top(self):
        return True

    def _collect(self, out):
        self.a._collect(out)
        self.term._collect(out)

    def __str__(self):
        return f"lam({self.a}, {self.term})"


def _wrap(t):
    return str(t) if isinstance(t, (Var, Const, Bin, Lam)) else f"({t})"


def join(a, b):
    return Bin("join", a, b)


def meet(a, b):
    return Bin("meet", a, b)


def oplus(a, b):
    return Bin("oplus", a, b)


def ominus(a, b):
    return Bin("ominus", a, b)


def odot(a, b):
    return Bin("odot", a, b)


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op>\\/|/\\|\(\+\)|\(-\)|\(\.\))
  | (?P<num>\d+)
  | (?P<name>[a-z][a-z0-9]*)
  | (?P<punct>[().,^=])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    pos: int  # 1-based


def tokenize(text):
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise TermSyntaxError(i + 1, f"unexpected character {text[i]!r}")
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), i + 1))
        i = m.end()
    out.append(Token("eof", "", len(text) + 1))
    return out


_BINARY = {"\\/": "join", "/\\": "meet", "(+)": "oplus", "(-)": "ominus", "(.)": "odot"}


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.cur
        if t.text != text:
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise TermSyntaxError(t.pos, f"expected {text!r}, found {found}")
        return self.take()

    def fail(self, what):
        t = self.cur
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise TermSyntaxError(t.pos, f"expected {what}, found {found}")

    def binary_level(self, ops, sub):
        left = sub()
        while self.cur.kind == "op" and _BINARY[self.cur.text] in ops:
            op = _BINARY[self.take().text]
            left = Bin(op, left, sub())
        return left

    def expr(self):
        return self.binary_level({"join"}, self.meetexp)

    def meetexp(self):
        return self.binary_level({"meet"}, self.sumexp)

    def sumexp(self):
        return self.binary_level({"oplus", "ominus"}, self.prodexp)

    def prodexp(self):
        return self.binary_level({"odot"}, self.prefix)

    def literal(self, tok):
        n = int(tok.text)
        if n > LITERAL_CAP:
            raise TermSyntaxError(tok.pos, f"literal {n} exceeds the cap {LITERAL_CAP}")
        return n

    def prefix(self):
        if self.cur.kind == "num" and self.toks[self.i + 1].text == ".":
            tok = self.take()
            self.take()
            return Scalar(self.literal(tok), self.prefix())
        return self.postfix()

    def postfix(self):
        t = self.atom()
        while self.cur.text == "^":
            self.take()
            if self.cur.kind != "num":
                self.fail("an exponent")
            t = Power(t, self.literal(self.take()))
        return t

    def atom(self):
        tok = self.cur
        if tok.kind == "name":
            self.take()
            if tok.text == "lam":
                self.expect("(")
                a = self.expr()
                self.expect(",")
                t = self.expr()
                self.expect(")")
                return Lam(a, t)
            return Var(tok.text)
        if tok.kind == "num":
            if tok.text not in ("0", "1"):
                raise TermSyntaxError(tok.pos, f"unknown constant {tok.text!r}")
            self.take()
            return Const(int(tok.text))
        if tok.text == "(":
            self.take()
            t = self.expr()
            self.expect(")")
            return t
        self.fail("a term")

    def done(self):
        if self.cur.kind != "eof":
            self.fail("end of input")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.expr()
    p.done()
    return t


def parse_identity(text: str):
    """Parse ``lhs = rhs``; returns the pair of terms."""
    p = _Parser(text)
    lhs = p.expr()
    p.expect("=")
    rhs = p.expr()
    p.done()
    return lhs, rhs


def parse_identity_file(text: str):
    """One identity per line; ``#`` starts a comment. Returns (line number, lhs, rhs) triples."""
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if body:
            try:
                lhs, rhs = parse_identity(body)
            except TermSyntaxError as exc:
                raise TermSyntaxError(exc.position, f"line {no}: {exc}") from None
            out.append((no, lhs, rhs))
    return out


# --------------------------------------------------------------------------
# evaluation


def evaluate(term: Term, alg, env: dict):
    """Value of ``term`` under the assignment ``env`` (element per variable)."""
    from . import ops

    def ev(t):
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise EvaluationError(f"variable {t.name} is unassigned") from None
        if isinstance(t, Const):
            if t.value == 0:
                return alg.bottom
            top = alg.top()
            if top is None:
                raise EvaluationError("constant 1 needs a top element")
            return top
        if isinstance(t, Bin):
            a, b = ev(t.left), ev(t.right)
            if t.op == "odot":
                return ops.odot(alg, a, b)
            return alg.op(t.op, a, b)
        if isinstance(t, Scalar):
            return ops.scalar(alg, t.n, ev(t.term))
        if isinstance(t, Power):
            return ops.power(alg, ev(t.term), t.n)
        if isinstance(t, Lam):
            if alg.top() is None:
                raise EvaluationError("lam needs a top element")
            a = ev(t.a)
            if alg.oplus(a, a) != a:
                raise EvaluationError(f"lam index {alg.render(a)} is not idempotent")
            return alg.ominus(a, ev(t.term))
        raise EvaluationError(f"unknown node {t!r}")

    return ev(term)


def evaluate_tables(term: Term, alg: FiniteAlgebra, env: dict):
    """Vectorized evaluation on index arrays (broadcasting over assignments)."""
    J, M, P, O = alg.J, alg.M, alg.P, alg.O
    top = alg.top()

    def ot(x, y):
        return O[top, P[O[top, x], O[top, y]]]

    def ev(t):
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise EvaluationError(f"variable {t.name} is unassigned") from None
        if isinstance(t, Const):
            return np.int64(0 if t.value == 0 else top)
        if isinstance(t, Bin):
            a, b = ev(t.left), ev(t.right)
            if t.op == "join":
                return J[a, b]
            if t.op == "meet":
                return M[a, b]
            if t.op == "oplus":
                return P[a, b]
            if t.op == "ominus":
                return O[a, b]
            return ot(a, b)
        if isinstance(t, Scalar):
            x = ev(t.term)
            acc = np.zeros_like(x)
            for _ in range(t.n):
                acc = P[acc, x]
            return acc
        if isinstance(t, Power):
            x = ev(t.term)
            if t.n == 0:
                return np.full_like(x, top)
            acc = x
            for _ in range(t.n - 1):
                acc = ot(x, acc)
            return acc
        if isinstance(t, Lam):
            a = ev(t.a)
            bad = P[a, a] != a
            if np.any(bad):
                raise EvaluationError("lam index is not idempotent for some assignment")
            return O[a, ev(t.term)]
        raise EvaluationError(f"unknown node {t!r}")

    return ev(term)

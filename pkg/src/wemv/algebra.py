"""Algebra values over the signature (join, meet, oplus, ominus, 0).

Four shapes are supported:

* ``FiniteAlgebra``: carrier ``{0..n-1}`` with numpy Cayley tables, 0 is bottom.
* ``ConeAlgebra``: the positive cone of Z^k under the product or the
  lexicographic order; elements are integer tuples.
* ``PerfectAlgebra``: Gamma(Z lex G, (n, 0)) with G = Z^k (product or lex
  order); elements are tuples ``(s, g1, ..., gk)``.
* ``ProductAlgebra``: componentwise product of any of the above.

Symbolic shapes cannot be enumerated; they expose deterministic sample pools
instead (boundary elements first, then seeded random elements in a box).
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod

import numpy as np

from .errors import (
    ConsistencyError,
    InputError,
    NotEnumerableError,
    NotOminusDefinable,
    TableError,
    UnsupportedError,
)

OPS = ("join", "meet", "oplus", "ominus")
DEFAULT_BOUND = 12
DEFAULT_SAMPLES = 10_000


def to_json(value):
    """Element -> JSON-friendly value (tuples become lists)."""
    if isinstance(value, tuple):
        return [to_json(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    return value


def from_json(value):
    if isinstance(value, list):
        return tuple(from_json(v) for v in value)
    return value


class Algebra(ABC):
    """Common interface of all algebra values.

    Instances are treated as immutable; the only mutable slot is the cached
    validation report, which is written once by :func:`wemv.axioms.validate`.
    """

    kind = "abstract"
    is_finite = False

    def __init__(self, name=""):
        self.name = name
        self._validation = None

    def __getstate__(self):
        # cached closures (representing algebra, display overrides) stay in this process
        state = self.__dict__.copy()
        for key in ("_representing", "render"):
            state.pop(key, None)
        return state

    @property
    @abstractmethod
    def bottom(self): ...

    @abstractmethod
    def join(self, x, y): ...

    @abstractmethod
    def meet(self, x, y): ...

    @abstractmethod
    def oplus(self, x, y): ...

    @abstractmethod
    def ominus(self, x, y): ...

    @abstractmethod
    def contains(self, x) -> bool: ...

    def op(self, name, x, y):
        return getattr(self, name)(x, y)

    def leq(self, x, y):
        return self.meet(x, y) == x

    def top(self):
        return None

    def idempotent_elements(self):
        """Exact list of idempotents, or None if this shape cannot describe them."""
        return None

    def boundary_elements(self, bound=DEFAULT_BOUND):
        return [self.bottom]

    def random_element(self, rng, bound=DEFAULT_BOUND):
        raise UnsupportedError(f"{self.describe()} cannot be sampled")

    def probe_elements(self, bound=DEFAULT_BOUND, limit=64):
        """Small elements in a deterministic order, used for witness searches."""
        return self.boundary_elements(bound)[:limit]

    def interval(self, a, limit=4096):
        raise NotEnumerableError(f"[0,a] is not enumerable in {self.describe()}")

    def known_atoms(self):
        return []

    def sample_tuples(self, arity, count, rng, bound=DEFAULT_BOUND):
        """``count`` tuples of ``arity`` elements: boundary combinations first."""
        pool = self.boundary_elements(bound)
        head = list(itertools.islice(itertools.product(pool, repeat=arity), count // 4))
        out = head
        while len(out) < count:
            out.append(tuple(self.random_element(rng, bound) for _ in range(arity)))
        return out

    def render(self, x):
        return to_json(x)

    def parse_element(self, value):
        x = from_json(value)
        if not self.contains(x):
            raise InputError(f"{value!r} is not an element of {self.describe()}")
        return x

    def describe(self):
        return self.name or self.kind

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()}>"


# --------------------------------------------------------------------------
# finite algebras


def _as_table(op, table, size):
    try:
        arr = np.asarray(table)
    except (ValueError, TypeError) as exc:
        raise TableError(f"/{op}", f"not a rectangular array ({exc})") from None
    if arr.dtype == object or arr.ndim != 2:
        raise TableError(f"/{op}", f"expected a {size}x{size} table")
    if arr.shape != (size, size):
        if arr.shape[0] != size:
            raise TableError(f"/{op}", f"expected {size} rows, got {arr.shape[0]}")
        raise TableError(f"/{op}/0", f"expected {size} columns, got {arr.shape[1]}")
    if arr.dtype.kind not in "iu":
        bad = np.argwhere(arr != np.floor(arr)) if arr.dtype.kind == "f" else np.argwhere(np.ones_like(arr, bool))
        i, j = bad[0] if len(bad) else (0, 0)
        raise TableError(f"/{op}/{i}/{j}", f"entry {arr[i, j]!r} is not an integer index")
    outside = np.argwhere((arr < 0) | (arr >= size))
    if len(outside):
        i, j = outside[0]
        raise TableError(f"/{op}/{i}/{j}", f"entry {int(arr[i, j])} outside carrier 0..{size - 1}")
    arr = arr.astype(np.int64)
    arr.flags.writeable = False
    return arr


def derive_ominus(join, meet, oplus, bottom=0):
    """Table of z (-) x := min{t <= z : t (+) (z /\\ x) = z}.

    The minimum is taken in the lattice order; raises
    :class:`NotOminusDefinable` with the offending pair when it does not exist.
    """
    meet = np.asarray(meet)
    oplus = np.asarray(oplus)
    n = len(meet)
    if bottom != 0:
        raise InputError("bottom must be element 0")
    idx = np.arange(n)
    below = meet == idx[:, None]  # below[t, z]: t <= z
    out = np.zeros((n, n), dtype=np.int64)
    for z in range(n):
        for x in range(n):
            zx = meet[z, x]
            cand = [t for t in range(n) if below[t, z] and oplus[t, zx] == z]
            if not cand:
                raise NotOminusDefinable(z, x, "no t <= z with t (+) (z /\\ x) = z")
            least = [c for c in cand if all(below[c, t] for t in cand)]
            if not least:
                raise NotOminusDefinable(z, x, f"candidates {cand} have no minimum")
            out[z, x] = least[0]
    return out


class FiniteAlgebra(Algebra):
    """Finite algebra given by Cayley tables over ``{0..n-1}``.

    ``labels`` give each index a printable name (tuples for products);
    ``ominus`` may be omitted and is then derived from the other tables.
    """

    kind = "finite"
    is_finite = True

    def __init__(self, join, meet, oplus, ominus=None, labels=None, name="",
                 factors=None, chain_n=None, doc=None):
        super().__init__(name)
        try:
            size = len(join)
        except TypeError:
            raise TableError("/join", "not a table") from None
        if size == 0:
            raise TableError("/size", "carrier must be nonempty")
        self.size = size
        self.J = _as_table("join", join, size)
        self.M = _as_table("meet", meet, size)
        self.P = _as_table("oplus", oplus, size)
        if ominus is None:
            ominus = derive_ominus(self.J, self.M, self.P)
        self.O = _as_table("ominus", ominus, size)
        self.tables = {"join": self.J, "meet": self.M, "oplus": self.P, "ominus": self.O}
        self.labels = list(labels) if labels is not None else list(range(size))
        if len(self.labels) != size:
            raise InputError("labels must match the carrier size")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self.factors = factors
        self.chain_n = chain_n
        self.doc = doc
        self._top = -1

    @property
    def bottom(self):
        return 0

    def join(self, x, y):
        return int(self.J[x, y])

    def meet(self, x, y):
        return int(self.M[x, y])

    def oplus(self, x, y):
        return int(self.P[x, y])

    def ominus(self, x, y):
        return int(self.O[x, y])

    def leq(self, x, y):
        return bool(self.M[x, y] == x)

    def contains(self, x):
        return isinstance(x, (int, np.integer)) and 0 <= x < self.size

    def elements(self):
        return list(range(self.size))

    def leq_table(self):
        return self.M == np.arange(self.size)[:, None]

    def top(self):
        if self._top == -1:
            below = self.leq_table()
            tops = [t for t in range(self.size) if below[:, t].all()]
            self._top = tops[0] if tops else None
        return self._top

    def idempotent_elements(self):
        return [i for i in range(self.size) if self.P[i, i] == i]

    def boundary_elements(self, bound=DEFAULT_BOUND):
        t = self.top()
        return [0] if t in (None, 0) else [0, t]

    def random_element(self, rng, bound=DEFAULT_BOUND):
        return rng.randrange(self.size)

    def probe_elements(self, bound=DEFAULT_BOUND, limit=64):
        return self.elements()[:limit]

    def interval(self, a, limit=4096):
        return [x for x in range(self.size) if self.M[x, a] == x]

    def known_atoms(self):
        below = self.leq_table()
        return [a for a in range(1, self.size)
                if not any(below[b, a] for b in range(1, self.size) if b != a)]

    def index(self, label):
        """Index of an element given by its label."""
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise InputError(f"{label!r} is not an element label of {self.describe()}") from None

    def label(self, i):
        return self.labels[i]

    def render(self, x):
        return to_json(self.labels[x])

    def parse_element(self, value):
        if isinstance(value, bool):
            raise InputError(f"{value!r} is not an element")
        if isinstance(value, int):
            if not 0 <= value < self.size:
                raise InputError(f"index {value} outside carrier 0..{self.size - 1}")
            return value
        return self.index(from_json(value))

    def same_tables(self, other):
        return (self.size == other.size
                and all(np.array_equal(self.tables[k], other.tables[k]) for k in OPS))

    def restrict(self, elements, name=""):
        """Subalgebra on ``elements`` (sorted, must contain 0 and be closed)."""
        elems = sorted(set(int(e) for e in elements))
        if not elems or elems[0] != 0:
            raise InputError("a subalgebra must contain 0")
        pos = {e: i for i, e in enumerate(elems)}
        sub = np.ix_(elems, elems)
        tabs = {}
        for op, tab in self.tables.items():
            block = tab[sub]
            try:
                tabs[op] = np.vectorize(pos.__getitem__, otypes=[np.int64])(block)
            except KeyError as exc:
                raise ConsistencyError(f"subset not closed under {op}: produces {exc.args[0]}") from None
        return FiniteAlgebra(tabs["join"], tabs["meet"], tabs["oplus"], tabs["ominus"],
                             labels=[self.labels[e] for e in elems], name=name)

    def describe(self):
        return self.name or f"finite({self.size})"


# --------------------------------------------------------------------------
# symbolic families


def _vadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _vsub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _coord(rng, lo, hi):
    r = rng.random()
    if r < 0.125:
        return lo
    if r < 0.25:
        return hi
    return rng.randint(lo, hi)


class _GroupOrder:
    """Order on Z^k: ``product`` (coordinatewise, a lattice) or ``lex`` (a chain)."""

    def __init__(self, rank, order):
        if rank < 1:
            raise InputError("rank must be >= 1")
        if order not in ("product", "lex"):
            raise InputError(f"order must be 'product' or 'lex', not {order!r}")
        self.rank = rank
        self.order = order
        self.origin = (0,) * rank

    def leq(self, g, h):
        if self.order == "lex":
            return g <= h
        return all(a <= b for a, b in zip(g, h))

    def join(self, g, h):
        if self.order == "lex":
            return max(g, h)
        return tuple(max(a, b) for a, b in zip(g, h))

    def meet(self, g, h):
        if self.order == "lex":
            return min(g, h)
        return tuple(min(a, b) for a, b in zip(g, h))

    def positive(self, g):
        return self.leq(self.origin, g)

    def sample_positive(self, rng, bound):
        k = self.rank
        if self.order == "product":
            return tuple(_coord(rng, 0, bound) for _ in range(k))
        if rng.random() < 0.1:
            return self.origin
        lead = rng.randrange(k)
        return ((0,) * lead + (_coord(rng, 1, bound),)
                + tuple(_coord(rng, -bound, bound) for _ in range(k - lead - 1)))

    def boundary_positive(self, bound):
        k = self.rank
        if self.order == "product":
            return [tuple(v) for v in itertools.product((0, bound), repeat=k)]
        out = [self.origin]
        for lead in range(k):
            head = (0,) * lead
            out.append(head + (1,) + (0,) * (k - lead - 1))
            out.append(head + (bound,) + (bound,) * (k - lead - 1))
            if lead < k - 1:
                out.append(head + (1,) + (-bound,) * (k - lead - 1))
        return list(dict.fromkeys(out))

    def probe_positive(self, bound, limit):
        k = self.rank
        if self.order == "product":
            cand = itertools.product(range(bound + 1), repeat=k)
        else:
            cand = itertools.product(range(-bound, bound + 1), repeat=k)
        found = sorted((g for g in cand if self.positive(g)),
                       key=lambda g: (sum(abs(c) for c in g), [abs(c) for c in g], g))
        return found[:limit]

    def interval(self, a, limit):
        """Elements of [0, a] in the positive cone."""
        k = self.rank
        if self.order == "product":
            total = 1
            for c in a:
                total *= c + 1
            if total > limit:
                raise NotEnumerableError(f"[0,{a}] has {total} elements (limit {limit})")
            return [tuple(v) for v in itertools.product(*(range(c + 1) for c in a))]
        nz = [i for i, c in enumerate(a) if c != 0]
        if not nz:
            return [self.origin]
        if nz[0] != k - 1:
            raise NotEnumerableError(f"[0,{a}] is infinite in the lexicographic cone")
        if a[-1] + 1 > limit:
            raise NotEnumerableError(f"[0,{a}] has {a[-1] + 1} elements (limit {limit})")
        return [(0,) * (k - 1) + (t,) for t in range(a[-1] + 1)]

    def atoms(self):
        k = self.rank
        units = [tuple(int(i == j) for j in range(k)) for i in range(k)]
        return units if self.order == "product" else units[-1:]


class ConeAlgebra(Algebra):
    """Positive cone of Z^k: oplus is addition, x (-) y = (x - y) \\/ 0."""

    kind = "cone"

    def __init__(self, rank=1, order="product", name=""):
        super().__init__(name)
        self.group = _GroupOrder(rank, order)
        self.rank = rank
        self.order = order

    @property
    def bottom(self):
        return self.group.origin

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == self.rank
                and all(isinstance(c, int) for c in x) and self.group.positive(x))

    def join(self, x, y):
        return self.group.join(x, y)

    def meet(self, x, y):
        return self.group.meet(x, y)

    def oplus(self, x, y):
        return _vadd(x, y)

    def ominus(self, x, y):
        return self.group.join(_vsub(x, y), self.group.origin)

    def leq(self, x, y):
        return self.group.leq(x, y)

    def idempotent_elements(self):
        return [self.bottom]

    def boundary_elements(self, bound=DEFAULT_BOUND):
        return self.group.boundary_positive(bound)

    def random_element(self, rng, bound=DEFAULT_BOUND):
        return self.group.sample_positive(rng, bound)

    def probe_elements(self, bound=DEFAULT_BOUND, limit=64):
        return self.group.probe_positive(bound, limit)

    def interval(self, a, limit=4096):
        return self.group.interval(a, limit)

    def known_atoms(self):
        return self.group.atoms()

    def render(self, x):
        # rank-1 cone elements print as plain integers
        return x[0] if self.rank == 1 else list(x)

    def parse_element(self, value):
        if self.rank == 1 and isinstance(value, int) and not isinstance(value, bool):
            value = [value]
        return super().parse_element(value)

    def describe(self):
        return self.name or f"cone(rank={self.rank}, order={self.order})"


class PerfectAlgebra(Algebra):
    """Gamma(Z lex G, (unit, 0)) with G = Z^rank.

    Elements are tuples ``(s, g1, ..., gk)``. The order is the lexicographic
    extension: the first coordinate decides, ties are broken in G.
    """

    kind = "perfect"

    def __init__(self, rank=1, order="product", unit=1, name=""):
        super().__init__(name)
        if unit < 1:
            raise InputError("unit must be >= 1")
        self.group = _GroupOrder(rank, order)
        self.rank = rank
        self.order = order
        self.unit = unit
        self._zero = (0,) * (rank + 1)
        self._top = (unit,) + (0,) * rank

    @property
    def bottom(self):
        return self._zero

    def _leq(self, x, y):
        return x[0] < y[0] or (x[0] == y[0] and self.group.leq(x[1:], y[1:]))

    def _join(self, x, y):
        if x[0] != y[0]:
            return x if x[0] > y[0] else y
        return (x[0],) + self.group.join(x[1:], y[1:])

    def _meet(self, x, y):
        if x[0] != y[0]:
            return x if x[0] < y[0] else y
        return (x[0],) + self.group.meet(x[1:], y[1:])

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == self.rank + 1
                and all(isinstance(c, int) for c in x)
                and self._leq(self._zero, x) and self._leq(x, self._top))

    def join(self, x, y):
        return self._join(x, y)

    def meet(self, x, y):
        return self._meet(x, y)

    def leq(self, x, y):
        return self._leq(x, y)

    def oplus(self, x, y):
        return self._meet(_vadd(x, y), self._top)

    def ominus(self, x, y):
        return self._join(_vsub(x, y), self._zero)

    def top(self):
        return self._top

    def idempotent_elements(self):
        return [self._zero, self._top]

    def boundary_elements(self, bound=DEFAULT_BOUND):
        out = [self._zero, self._top]
        for g in self.group.boundary_positive(bound):
            out.append((0,) + g)
            out.append((self.unit,) + tuple(-c for c in g))
        if self.unit > 1:
            out.append((1,) + (0,) * self.rank)
            out.append((1,) + (-bound,) * self.rank)
        return list(dict.fromkeys(out))

    def random_element(self, rng, bound=DEFAULT_BOUND):
        s = rng.randint(0, self.unit)
        if s == 0:
            return (0,) + self.group.sample_positive(rng, bound)
        if s == self.unit:
            return (s,) + tuple(-c for c in self.group.sample_positive(rng, bound))
        return (s,) + tuple(_coord(rng, -bound, bound) for _ in range(self.rank))

    def probe_elements(self, bound=DEFAULT_BOUND, limit=64):
        low = [(0,) + g for g in self.group.probe_positive(bound, limit)]
        high = [(self.unit,) + tuple(-c for c in g) for g in self.group.probe_positive(bound, limit)]
        mixed = list(itertools.chain.from_iterable(zip(low, high)))
        return mixed[:limit]

    def interval(self, a, limit=4096):
        if a[0] != 0:
            raise NotEnumerableError(f"[0,{a}] is infinite in {self.describe()}")
        return [(0,) + g for g in self.group.interval(a[1:], limit)]

    def known_atoms(self):
        return [(0,) + g for g in self.group.atoms()]

    def describe(self):
        if self.name:
            return self.name
        tail = "Z" if self.rank == 1 else f"Z^{self.rank}({self.order})"
        return f"Gamma(Z lex {tail}, ({self.unit},0))"


class ProductAlgebra(Algebra):
    """Direct product of finitely many algebras, operations componentwise."""

    kind = "product"

    def __init__(self, factors, name=""):
        super().__init__(name)
        factors = list(factors)
        if not factors:
            raise InputError("a product needs at least one factor")
        self.factors = factors

    @property
    def bottom(self):
        return tuple(f.bottom for f in self.factors)

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == len(self.factors)
                and all(f.contains(c) for f, c in zip(self.factors, x)))

    def _each(self, op, x, y):
        return tuple(getattr(f, op)(a, b) for f, a, b in zip(self.factors, x, y))

    def join(self, x, y):
        return self._each("join", x, y)

    def meet(self, x, y):
        return self._each("meet", x, y)

    def oplus(self, x, y):
        return self._each("oplus", x, y)

    def ominus(self, x, y):
        return self._each("ominus", x, y)

    def leq(self, x, y):
        return all(f.leq(a, b) for f, a, b in zip(self.factors, x, y))

    def top(self):
        tops = [f.top() for f in self.factors]
        return None if any(t is None for t in tops) else tuple(tops)

    def idempotent_elements(self):
        parts = [f.idempotent_elements() for f in self.factors]
        if any(p is None for p in parts):
            return None
        return [tuple(c) for c in itertools.product(*parts)]

    def boundary_elements(self, bound=DEFAULT_BOUND):
        parts = [f.boundary_elements(bound) for f in self.factors]
        return [tuple(c) for c in itertools.islice(itertools.product(*parts), 64)]

    def random_element(self, rng, bound=DEFAULT_BOUND):
        return tuple(f.random_element(rng, bound) for f in self.factors)

    def probe_elements(self, bound=DEFAULT_BOUND, limit=64):
        parts = [f.probe_elements(bound, limit) for f in self.factors]
        return [tuple(c) for c in itertools.islice(itertools.product(*parts), limit)]

    def interval(self, a, limit=4096):
        parts = [f.interval(c, limit) for f, c in zip(self.factors, a)]
        total = 1
        for p in parts:
            total *= len(p)
        if total > limit:
            raise NotEnumerableError(f"[0,a] has {total} elements (limit {limit})")
        return [tuple(c) for c in itertools.product(*parts)]

    def known_atoms(self):
        out = []
        for i, f in enumerate(self.factors):
            for a in f.known_atoms():
                x = list(self.bottom)
                x[i] = a
                out.append(tuple(x))
        return out

    def sample_tuples(self, arity, count, rng, bound=DEFAULT_BOUND):
        # finite coordinates cycle through every combination so that a run of
        # at least that many samples is exhaustive on them
        finite = [i for i, f in enumerate(self.factors) if f.is_finite]
        combos = list(itertools.product(
            *(itertools.product(self.factors[i].elements(), repeat=arity) for i in finite)))
        symbolic = {i: f.sample_tuples(arity, count, rng, bound)
                    for i, f in enumerate(self.factors) if not f.is_finite}
        slot = {i: k for k, i in enumerate(finite)}
        out = []
        for j in range(count):
            combo = combos[j % len(combos)]
            row = []
            for p in range(arity):
                row.append(tuple(combo[slot[i]][p] if i in slot else symbolic[i][j][p]
                                 for i in range(len(self.factors))))
            out.append(tuple(row))
        return out

    def parse_element(self, value):
        if not isinstance(value, list) or len(value) != len(self.factors):
            raise InputError(f"{value!r} is not an element of {self.describe()}")
        return tuple(f.parse_element(v) for f, v in zip(self.factors, value))

    def render(self, x):
        return [f.render(c) for f, c in zip(self.factors, x)]

    def describe(self):
        return self.name or " x ".join(f.describe() for f in self.factors)

"""Built-in algebra families and combinators."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .algebra import (
    OPS,
    Algebra,
    ConeAlgebra,
    FiniteAlgebra,
    PerfectAlgebra,
    ProductAlgebra,
)
from .axioms import check_mv_axioms
from .errors import InputError, UnsupportedError


def make_chain(n: int) -> FiniteAlgebra:
    """L_n = Gamma(Z, n) on {0..n}: truncated sum and difference."""
    if n < 0:
        raise InputError("chain length must be >= 0")
    ar = np.arange(n + 1)
    x, y = ar[:, None], ar[None, :]
    return FiniteAlgebra(
        np.maximum(x, y), np.minimum(x, y),
        np.minimum(x + y, n), np.maximum(x - y, 0),
        name=f"L{n}", chain_n=n,
    )


def make_cone(rank: int = 1, order: str = "product") -> ConeAlgebra:
    name = "Z+" if rank == 1 else f"(Z^{rank})+ [{order}]"
    return ConeAlgebra(rank, order, name=name)


def make_perfect(rank: int = 1, order: str = "product") -> PerfectAlgebra:
    return PerfectAlgebra(rank, order, unit=1)


def make_kn(n: int) -> PerfectAlgebra:
    """K_n = Gamma(Z lex Z, (n, 0))."""
    if n < 1:
        raise InputError("K_n needs n >= 1")
    return PerfectAlgebra(1, "product", unit=n, name=f"K{n}")


def _product_tables(factors):
    sizes = tuple(f.size for f in factors)
    coords = np.indices(sizes).reshape(len(sizes), -1)
    tables = {}
    for op in OPS:
        parts = [f.tables[op][c[:, None], c[None, :]] for f, c in zip(factors, coords)]
        tables[op] = np.ravel_multi_index(tuple(parts), sizes)
    labels = [tuple(f.labels[c] for f, c in zip(factors, col)) for col in coords.T]
    return tables, labels


def make_product(factors) -> Algebra:
    """Direct product; all-finite products are materialized as tables.

    Element order of a materialized product is the lexicographic order of the
    coordinate indices, so ``(i, j)`` in ``L1 x L2`` has index ``3*i + j``.
    """
    factors = list(factors)
    if not factors:
        raise InputError("a product needs at least one factor")
    name = " x ".join(f.describe() for f in factors)
    if all(isinstance(f, FiniteAlgebra) for f in factors):
        tables, labels = _product_tables(factors)
        return FiniteAlgebra(tables["join"], tables["meet"], tables["oplus"], tables["ominus"],
                             labels=labels, name=name, factors=factors)
    return ProductAlgebra(factors, name=name)


def make_sum(factors) -> Algebra:
    """Finitely supported sum; for a finite index set it is the product."""
    if not isinstance(factors, Sequence):
        raise UnsupportedError("sums are supported over finite index sets only")
    return make_product(factors)


def mv_with_ominus(oplus, neg, zero=0) -> FiniteAlgebra:
    """Turn an MV-algebra (oplus table, negation list) into a finite algebra with (-).

    Lattice operations and (-) are derived: x \\/ y = x (+) (x (+) y')',
    x /\\ y = x (.) (x' (+) y), x (-) y = x (.) y'.
    """
    P = np.asarray(oplus)
    N = np.asarray(neg)
    if P.ndim != 2 or P.shape[0] != P.shape[1] or N.shape != (P.shape[0],):
        raise InputError("expected an n x n oplus table and a length-n negation")
    if zero != 0:
        raise InputError("the zero of the MV-algebra must be element 0")
    n = len(P)
    ok, wit = check_mv_axioms(range(n), lambda a, b: int(P[a, b]), lambda a: int(N[a]),
                              0, int(N[0]))
    if not ok:
        raise InputError(f"not an MV-algebra: {wit[0]} fails at {wit[1]}")
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]

    def odot(a, b):
        return N[P[N[a], N[b]]]

    join = P[x, N[P[x, N[y]]]]
    meet = odot(x, P[N[x], y])
    ominus = odot(x, N[y])
    return FiniteAlgebra(join, meet, P, ominus)

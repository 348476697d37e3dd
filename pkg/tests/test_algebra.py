import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import zoo
from wemv import make_chain, make_cone, make_kn, make_perfect, make_product, make_sum, mv_with_ominus
from wemv.algebra import FiniteAlgebra, derive_ominus
from wemv.errors import InputError, NotEnumerableError, TableError, UnsupportedError
from wemv.ops import atoms, idempotents


def test_chain_tables():
    l2 = make_chain(2)
    assert l2.oplus(1, 1) == 2
    assert l2.ominus(2, 1) == 1
    assert make_chain(1).size == 2
    assert make_chain(0).size == 1


def test_derive_ominus_examples():
    l2 = make_chain(2)
    O = derive_ominus(l2.J, l2.M, l2.P)
    assert O[2, 1] == 1
    assert all(O[z, 0] == z for z in range(3))
    m = zoo.max_chain3()
    assert m.ominus(2, 1) == 2


def test_derive_ominus_matches_chain_tables():
    for n in range(7):
        c = make_chain(n)
        assert np.array_equal(derive_ominus(c.J, c.M, c.P), c.O)


def test_table_errors_carry_locus():
    J = [[0, 1], [1, 1]]
    with pytest.raises(TableError) as exc:
        FiniteAlgebra(J, [[0, 0], [0, 1]], [[0, 1], [1, 7]])
    assert exc.value.locus == "/oplus/1/1"
    with pytest.raises(TableError) as exc:
        FiniteAlgebra(J, [[0, 0], [0, 1]], [[0, 1]])
    assert exc.value.locus == "/oplus"
    with pytest.raises(TableError):
        FiniteAlgebra(J, [[0, 0], [0, 1.5]], J)


def test_idempotents():
    assert idempotents(make_chain(2)) == [0, 2]
    assert idempotents(make_cone(1)) == [(0,)]
    assert idempotents(make_perfect(1)) == [(0, 0), (1, 0)]


def test_atoms():
    assert atoms(make_chain(3)) == [1]
    l11 = zoo.product(1, 1)
    assert sorted(l11.label(a) for a in atoms(l11)) == [(0, 1), (1, 0)]
    assert atoms(make_chain(0)) == []


def test_cone_arithmetic():
    c2 = make_cone(2, "product")
    assert c2.ominus((2, 1), (1, 3)) == (1, 0)
    assert make_cone(1).oplus((3,), (5,)) == (8,)
    lex = make_cone(2, "lex")
    assert lex.leq((0, 9), (1, -4))
    assert lex.join((0, 9), (1, -4)) == (1, -4)


def test_perfect_truncation():
    k = make_perfect(1)
    for b in range(20):
        assert k.oplus((0, b), (1, -b)) == (1, 0)
    assert make_kn(2).top() == (2, 0)


def test_products():
    p = zoo.product(1, 2)
    assert p.label(p.oplus(p.index((1, 1)), p.index((0, 2)))) == (1, 2)
    assert p.index((1, 0)) == 3
    assert zoo.l2_z().bottom == (0, (0,))
    single = make_product([make_chain(3)])
    assert single.size == 4
    for op in ("join", "meet", "oplus", "ominus"):
        assert np.array_equal(single.tables[op], make_chain(3).tables[op])


def test_product_errors():
    with pytest.raises(InputError):
        make_product([])
    with pytest.raises(UnsupportedError):
        make_sum(iter([make_chain(1)]))
    assert make_sum([make_chain(1), make_chain(2)]).same_tables(zoo.product(1, 2))


def test_mv_with_ominus():
    n = 2
    oplus = [[min(x + y, n) for y in range(n + 1)] for x in range(n + 1)]
    neg = [n - x for x in range(n + 1)]
    assert mv_with_ominus(oplus, neg).same_tables(make_chain(2))
    assert mv_with_ominus([[0, 1], [1, 1]], [1, 0]).same_tables(make_chain(1))
    # Boolean square: index = 2*i + j
    ops = [[(a | b) for b in range(4)] for a in range(4)]
    assert mv_with_ominus(ops, [3 - a for a in range(4)]).same_tables(zoo.product(1, 1))


def test_mv_with_ominus_rejects_non_mv():
    with pytest.raises(InputError):
        mv_with_ominus([[0, 1], [1, 0]], [1, 0])


def test_symbolic_interval_enumeration():
    c = make_cone(2, "product")
    assert sorted(c.interval((1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    with pytest.raises(NotEnumerableError):
        make_cone(2, "lex").interval((1, 0))


def test_finite_implies_top():
    for alg in zoo.finite_fixtures():
        assert alg.top() is not None


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 40), min_size=2, max_size=2), st.lists(st.integers(0, 40), min_size=2, max_size=2))
def test_product_cone_matches_numpy(x, y):
    c = make_cone(2, "product")
    a, b = np.array(x), np.array(y)
    assert c.oplus(tuple(x), tuple(y)) == tuple(a + b)
    assert c.ominus(tuple(x), tuple(y)) == tuple(np.maximum(a - b, 0))
    assert c.join(tuple(x), tuple(y)) == tuple(np.maximum(a, b))

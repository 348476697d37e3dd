import pytest

import zoo
from wemv import make_chain, make_cone, make_product
from wemv.algebra import ConeAlgebra
from wemv.errors import InputError
from wemv.structure import (
    decompose,
    decomposition_criterion,
    m1_part,
    m2_part,
    representing,
    split_at_idempotent,
)


def test_greatest_meet_examples():
    alg = zoo.l2_z()
    c = decomposition_criterion(alg, (1, (5,)))
    assert c.status == "greatest" and c.value == (1, (0,))
    assert decomposition_criterion(make_cone(1), (5,)).value == (0,)
    for fin in zoo.finite_fixtures():
        top = max(fin.idempotent_elements(), key=lambda a: sum(fin.leq(b, a) for b in fin.elements()))
        for x in fin.elements():
            assert decomposition_criterion(fin, x).value == fin.meet(x, top)


def test_decompose_examples():
    alg = zoo.l2_z()
    d = decompose(alg, samples=2000)
    assert d.ok and d.phi((1, (5,))) == ((1, (0,)), (0, (5,)))
    fin = zoo.product(1, 2)
    d = decompose(fin)
    assert d.ok and d.m2.elements == [0]
    d = decompose(make_cone(1), samples=500)
    assert d.ok and d.m1.description == "{0}"


def test_parts_are_disjoint_and_join_as_sums():
    alg = zoo.l2_z()
    d = decompose(alg, samples=1000)
    for s in range(3):
        for g in range(10):
            x1, x2 = (s, (0,)), (0, (g,))
            assert alg.oplus(x1, x2) == alg.join(x1, x2)


class _OpaqueCone(ConeAlgebra):
    """A cone that hides its idempotents, as an unknown shape would."""

    def idempotent_elements(self):
        return None


def test_unknown_status_is_reported_not_guessed():
    d = decompose(_OpaqueCone(1, "product", name="opaque"))
    assert d.status == "unknown" and not d.ok


def test_m1_is_largest_idempotent_bounded_downset():
    for fin in zoo.finite_fixtures():
        m1 = m1_part(fin)
        bounded = [x for x in fin.elements()
                   if any(fin.leq(x, a) for a in fin.idempotent_elements())]
        assert sorted(m1.elements) == bounded
        assert m2_part(fin).elements == [0]


def test_split_examples():
    p = zoo.product(1, 2)
    s = split_at_idempotent(p, p.index((1, 0)))
    assert p.label(s.complement) == (0, 2)
    assert s.lower.labels == [(0, 0), (1, 0)]
    assert s.upper.labels == [(0, 0), (0, 1), (0, 2)]
    alg = zoo.l2_z()
    s = split_at_idempotent(alg, (2, (0,)), samples=1000)
    assert s.ok and s.complement == (0, (1, 0))
    with pytest.raises(InputError):
        split_at_idempotent(p, p.top())
    with pytest.raises(InputError):
        split_at_idempotent(make_chain(2), 1)


def test_split_round_trip_on_products():
    for fin in zoo.pair_products():
        for a in fin.idempotent_elements():
            if a in (0, fin.top()):
                continue
            s = split_at_idempotent(fin, a)
            assert s.ok
            for x in fin.elements():
                u, v = s.iso(x)
                assert fin.join(u, v) == x


def test_representing_examples():
    r = representing(make_chain(2))
    assert r.ambient is r.algebra
    alg = zoo.l2_z()
    r = representing(alg)
    assert r.ambient.describe().endswith("K1") or "Gamma" in r.ambient.describe()
    for s in range(3):
        for g in range(6):
            z = r.complement(r.embed((s, (g,))))
            assert z == (2 - s, (1, -g))
    checks = r.verify(samples=2000)
    assert all(v for k, v in checks.items() if k != "witnesses")


def test_two_constructions_of_the_cone_ambient_agree():
    a = representing(make_cone(1, "product"))
    b = representing(make_cone(1, "lex"))
    for g in range(10):
        assert a.embed((g,)) == b.embed((g,))
        for h in range(10):
            x, y = a.embed((g,)), a.complement(a.embed((h,)))
            for op in ("join", "meet", "oplus", "ominus"):
                assert a.ambient.op(op, x, y) == b.ambient.op(op, x, y)

import pytest

import zoo
from wemv import make_chain, make_cone
from wemv.errors import InputError, TopologyError, UnsupportedError
from wemv.ideals import is_chain
from wemv.pierce import (
    FiniteSpace,
    boolean_spectrum,
    custom_sheaf_check,
    has_general_comparability,
    idempotent_restriction,
    is_semisimple,
    is_stone_emv,
    is_stone_lattice,
    restriction_system_ok,
    sections,
    semisimple_sheaf_embedding,
    sim_relation,
    sim_relation_by_distance,
    stalk,
    stone_ideal,
    stone_ideals_prime,
    u_basis,
    u_basis_intersection_ok,
)

L1L2 = zoo.product(1, 2)


def lab(alg, elems):
    return sorted(alg.label(e) for e in elems)


def point(alg, *labels_):
    return [alg.index(x) for x in labels_]


P1 = point(L1L2, (0, 0), (1, 0))
P2 = point(L1L2, (0, 0), (0, 2))


def test_spectrum_examples():
    bs = boolean_spectrum(L1L2)
    assert len(bs.idempotents) == 4
    assert {tuple(lab(L1L2, P)) for P in bs.points} == {((0, 0), (1, 0)), ((0, 0), (0, 2))}
    assert [P.to_list() for P in boolean_spectrum(make_chain(2)).points] == [[0]]
    v = bs.V(L1L2.index((1, 0)))
    assert [lab(L1L2, bs.points[j]) for j in v] == [[(0, 0), (0, 2)]]


def test_spectrum_refuses_non_emv_and_symbolic():
    with pytest.raises(UnsupportedError):
        boolean_spectrum(make_cone(1))


def test_stone_ideal_examples():
    assert lab(L1L2, stone_ideal(L1L2, P1)) == [(0, 0), (1, 0)]
    assert stone_ideal(make_chain(2), [0]).to_list() == [0]
    assert lab(L1L2, stone_ideal(L1L2, P2)) == [(0, 0), (0, 1), (0, 2)]
    with pytest.raises(InputError):
        stone_ideal(L1L2, [0])


def test_stalk_examples():
    assert stalk(L1L2, P1).quotient.same_tables(make_chain(2))
    assert stalk(L1L2, P2).quotient.same_tables(make_chain(1))
    data = sections(L1L2)
    assert set(data.section(0)) == {0}
    top = L1L2.top()
    assert data.section(top) == tuple(s.quotient.top() for s in data.stalks)


def test_u_basis_examples():
    for x in L1L2.elements():
        assert u_basis(L1L2, [0], x) == []
    everything = boolean_spectrum(L1L2).idempotents
    top = L1L2.top()
    got = u_basis(L1L2, everything, top)
    assert len(got) == 2
    a = L1L2.index((1, 0))
    got = u_basis(L1L2, [0, a], a)
    bs = boolean_spectrum(L1L2)
    assert [lab(L1L2, bs.points[j]) for j, _ in got] == [[(0, 0), (0, 2)]]
    with pytest.raises(InputError):
        u_basis(L1L2, [a], a)
    assert u_basis_intersection_ok(L1L2)


def test_restriction_examples():
    a = L1L2.index((1, 0))
    r = idempotent_restriction(L1L2, a, a)
    assert r.mapping == list(range(r.upper.size))
    assert r.lower.quotient.same_tables(make_chain(1))
    assert idempotent_restriction(L1L2, 0, 0).lower.size == 1
    with pytest.raises(InputError):
        idempotent_restriction(L1L2, L1L2.top(), a)


def test_sim_relations_agree_everywhere():
    for alg in zoo.finite_fixtures():
        ids = alg.idempotent_elements()
        for a in ids:
            for b in ids:
                if alg.leq(a, b):
                    below = [x for x in alg.elements() if alg.leq(x, b)]
                    r1 = sim_relation(alg, a)[list(below)][:, list(below)]
                    r2 = sim_relation_by_distance(alg, a, b)[list(below)][:, list(below)]
                    assert (r1 == r2).all(), (alg.describe(), a, b)
        assert restriction_system_ok(alg)


def test_semisimple_and_comparability():
    assert is_semisimple(L1L2) and has_general_comparability(L1L2)
    for n in range(1, 6):
        assert is_semisimple(make_chain(n)) and has_general_comparability(make_chain(n))


def test_sheaf_embedding_examples():
    v = semisimple_sheaf_embedding(L1L2)
    assert v.holds and sorted(v.data["stalk_sizes"]) == [2, 3]
    assert semisimple_sheaf_embedding(make_chain(3)).data["stalk_sizes"] == [4]
    assert semisimple_sheaf_embedding(make_chain(0)).holds


def test_sheaf_embedding_refuses_unmet_hypotheses():
    v = semisimple_sheaf_embedding(zoo.max_chain3())
    assert not v.holds and v.data["refused"]


def test_custom_sheaf_examples():
    family = [stone_ideal(L1L2, P) for P in (P1, P2)]
    assert custom_sheaf_check(L1L2, FiniteSpace.discrete(2), family)
    whole = list(L1L2.elements())
    v = custom_sheaf_check(L1L2, FiniteSpace.discrete(2), [family[0], whole])
    assert not v and not v.data["conditions"]["a"]
    v = custom_sheaf_check(L1L2, FiniteSpace.indiscrete(2), family)
    assert not v and v.data["conditions"] == {"a": True, "b": False, "c": True}


def test_indiscrete_failure_by_brute_force():
    # with distinct proper ideals some element lies in exactly one of them
    family = [stone_ideal(L1L2, P) for P in (P1, P2)]
    hits = [m for m in L1L2.elements() if sum(m in I for I in family) == 1]
    assert hits


def test_topology_errors():
    with pytest.raises(TopologyError):
        FiniteSpace(2, [[0], [0, 1]])
    with pytest.raises(TopologyError):
        FiniteSpace(3, [[], [0], [1], [0, 1, 2]])
    with pytest.raises(TopologyError):
        FiniteSpace(2, [[], [5], [0, 1]])


def test_stone_examples():
    for n in range(6):
        assert is_stone_emv(make_chain(n))
    l11 = zoo.product(1, 1)
    assert is_stone_lattice(l11, l11.top())
    assert is_stone_emv(make_chain(0))
    for alg in zoo.finite_fixtures():
        if is_stone_emv(alg):
            assert stone_ideals_prime(alg)


def test_stalks_are_chains_over_fixtures():
    for alg in zoo.finite_fixtures():
        for st in sections(alg).stalks:
            assert is_chain(st.quotient)

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import zoo
from wemv import make_chain, make_product
from wemv.errors import InputError, SizeCapError
from wemv.ideals import (
    generated_ideal,
    ideals,
    intersection,
    is_ideal,
    is_prime,
    make_ideal,
    quotient,
    quotient_is_chain,
    separating_prime,
    spec,
    subdirect_embedding,
    theta,
)


def labels(alg, ideal):
    return sorted(alg.label(e) for e in ideal)


def brute_force_ideals(alg):
    """Every nonempty down-set closed under the sum, by subset enumeration."""
    n = alg.size
    found = []
    for mask in range(1, 1 << n):
        s = {i for i in range(n) if mask >> i & 1}
        if 0 not in s:
            continue
        down = all(y in s for x in s for y in range(n) if alg.leq(y, x))
        closed = all(alg.oplus(x, y) in s for x in s for y in s)
        if down and closed:
            found.append(frozenset(s))
    return set(found)


@pytest.mark.parametrize("alg", [a for a in zoo.finite_fixtures() if a.size <= 12],
                         ids=zoo.ids([a for a in zoo.finite_fixtures() if a.size <= 12]))
def test_enumeration_matches_brute_force(alg):
    assert {frozenset(I) for I in ideals(alg)} == brute_force_ideals(alg)


def test_ideal_examples():
    assert [I.to_list() for I in ideals(make_chain(2))] == [[0], [0, 1, 2]]
    p = zoo.product(1, 2)
    got = [labels(p, I) for I in ideals(p)]
    assert got == [[(0, 0)], [(0, 0), (1, 0)], [(0, 0), (0, 1), (0, 2)],
                   sorted(p.labels)]
    v = is_ideal(make_chain(2), [0, 1])
    assert not v and v.witness == {"x": 1, "y": 1}


def test_generated_ideal_examples():
    l2 = make_chain(2)
    assert generated_ideal(l2, [0], [1]).to_list() == [0, 1, 2]
    assert generated_ideal(l2, [0], []).to_list() == [0]
    p = zoo.product(1, 2)
    assert labels(p, generated_ideal(p, [0], [p.index((1, 0))])) == [(0, 0), (1, 0)]


def test_primes_and_spectrum():
    assert [P.to_list() for P in spec(make_chain(2))] == [[0]]
    p = zoo.product(1, 2)
    assert [labels(p, P) for P in spec(p)] == [[(0, 0), (1, 0)], [(0, 0), (0, 1), (0, 2)]]
    q = zoo.product(1, 1)
    v = is_prime(q, [0])
    assert not v
    assert {q.label(q.parse_element(w)) for w in v.witness.values()} == {(1, 0), (0, 1)}
    with pytest.raises(InputError):
        is_prime(q, range(4))


def test_separating_prime_examples():
    assert separating_prime(make_chain(2), [0], 1).to_list() == [0]
    p = zoo.product(1, 2)
    got = separating_prime(p, [0], p.index((1, 0)))
    assert labels(p, got) == [(0, 0), (0, 1), (0, 2)]
    got = separating_prime(p, [0, p.index((1, 0))], p.index((0, 1)))
    assert labels(p, got) == [(0, 0), (1, 0)]
    with pytest.raises(InputError):
        separating_prime(p, [0], 0)


def test_separating_prime_is_prime_everywhere():
    for alg in zoo.finite_fixtures():
        for I in ideals(alg):
            for z in alg.elements():
                if z not in I:
                    P = separating_prime(alg, I, z)
                    assert is_prime(alg, P) and I.issubset(P) and z not in P


def test_every_ideal_is_an_intersection_of_primes():
    for alg in zoo.finite_fixtures():
        primes = spec(alg)
        for I in ideals(alg):
            if len(I) == alg.size:
                continue
            above = [P for P in primes if I.issubset(P)]
            assert intersection(above) == I


def test_quotient_examples():
    p = zoo.product(1, 2)
    e = quotient(p, [0, p.index((1, 0))])
    assert e.size == 3 and e.quotient.same_tables(make_chain(2))
    assert quotient(p, [0]).quotient.same_tables(p)
    assert quotient(p, range(6)).size == 1
    assert e.representatives == [0, 1, 2]


def test_quotient_chain_examples():
    p = zoo.product(1, 2)
    assert quotient_is_chain(p, [0, p.index((1, 0))])
    assert not quotient_is_chain(zoo.product(1, 1), [0])
    assert quotient_is_chain(p, range(6))


def test_theta_is_literal_relation():
    p = zoo.product(2, 2)
    I = make_ideal([0, 1, 2])
    rel = theta(p, I)
    for x, y in itertools.product(range(p.size), repeat=2):
        assert rel[x, y] == (p.ominus(x, y) in I and p.ominus(y, x) in I)


def test_subdirect_embedding_examples():
    p = zoo.product(1, 2)
    emb = subdirect_embedding(p)
    assert emb.injective and emb.homomorphism and len(emb.factors) == 2
    assert len(subdirect_embedding(make_chain(2)).factors) == 1


def test_size_cap():
    big = make_product([make_chain(4), make_chain(4)])
    with pytest.raises(SizeCapError):
        ideals(big)
    assert len(ideals(big, cap=None)) == 4


@settings(max_examples=12, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_ideals_of_products_are_boxes(ns):
    """Ideals of a product of chains are products of {0} or the whole factor."""
    alg = make_product([make_chain(n) for n in ns])
    if alg.size > 24:
        return
    assert len(ideals(alg)) == 2 ** len(ns)
    assert len(spec(alg)) == len(ns)

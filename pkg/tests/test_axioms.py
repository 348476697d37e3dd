import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import zoo
from wemv import make_chain, make_cone, make_product, validate
from wemv.algebra import FiniteAlgebra
from wemv.axioms import AXIOM_IDS, check_mv_axioms
from wemv.properties import PROPERTY_IDS, property_suite


def test_chain_passes_exhaustively():
    rep = validate(make_chain(3))
    assert rep.passed and rep.strategy == "exhaustive" and rep.checked == 64


def test_trivial_algebra_passes():
    assert validate(make_chain(0)).passed


def test_max_chain_fails_only_vi():
    rep = validate(zoo.max_chain3())
    d = rep.to_dict()
    assert [k for k, v in d["results"].items() if v == "fail"] == ["vi"]
    assert d["violations"][0]["witness"] == {"x": 1, "z": 2}
    assert list(d["results"]) == list(AXIOM_IDS)


def test_report_is_cached_on_algebra():
    alg = make_chain(4)
    rep = validate(alg)
    assert alg._validation is rep


def test_sampled_report_records_seed_and_bound():
    d = validate(make_cone(2, "lex"), samples=500, seed=5, bound=7).to_dict()
    assert d["strategy"] == "sampled" and d["seed"] == 5 and d["bound"] == 7


def test_broken_difference_is_caught():
    c = make_chain(3)
    O = np.array(c.O)
    O[3, 1] = 1
    bad = FiniteAlgebra(c.J, c.M, c.P, O)
    rep = validate(bad)
    assert not rep.passed
    # each witness must actually break its law
    for v in rep.violations:
        assert set(v.witness) <= set("xyzw")


def test_mv_axiom_checker():
    n = 3
    ok, _ = check_mv_axioms(range(n + 1), lambda a, b: min(a + b, n), lambda a: n - a, 0, n)
    assert ok
    ok, wit = check_mv_axioms(range(n + 1), max, lambda a: n - a, 0, n)
    assert not ok and wit is not None


def test_property_ids_cover_every_law():
    rep = property_suite(make_chain(2))
    assert set(rep.to_dict()["results"]) == set(PROPERTY_IDS)
    assert "triangle" in PROPERTY_IDS and "atom-multiples" in PROPERTY_IDS


def test_property_suite_flags_max_chain():
    assert not property_suite(zoo.max_chain3()).passed


chain_lengths = st.lists(st.integers(0, 3), min_size=1, max_size=2)


@settings(max_examples=15, deadline=None)
@given(chain_lengths)
def test_products_of_chains_validate(ns):
    alg = make_product([make_chain(n) for n in ns])
    assert validate(alg).passed
    assert property_suite(alg).passed


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 1000))
def test_sampled_validation_is_seed_stable(seed):
    c = make_cone(2, "product")
    a = validate(c, samples=300, seed=seed).to_dict()
    b = validate(c, samples=300, seed=seed).to_dict()
    assert a == b and a["passed"]

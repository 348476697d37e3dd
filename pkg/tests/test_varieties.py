import pytest

import zoo
from wemv import make_chain, make_cone, make_kn
from wemv.errors import EvaluationError
from wemv.varieties import (
    check_identity,
    check_pixley,
    identity_suite,
    in_can,
    membership,
    refute_in_variety,
)


def test_can_law():
    assert check_identity(make_cone(1), "(x (+) y) (-) x", "y").strategy == "sampled"
    assert check_identity(make_cone(1), "(x (+) y) (-) x", "y")
    v = check_identity(make_chain(2), "(x (+) y) (-) x", "y")
    assert not v and v.witness == {"x": 1, "y": 2} and v.values == (1, 2)
    for alg in zoo.all_fixtures():
        assert check_identity(alg, "x (-) x", "0")


def test_membership_examples():
    v = in_can(make_kn(1))
    assert not v and v.witness == {"x": [1, 0], "y": [1, 0]}
    assert all(membership(make_chain(0)).values())


def test_premise():
    assert check_identity(make_chain(3), "x (+) y", "x \\/ y", premise=("x /\\ y", "0"))
    assert not check_identity(make_chain(3), "x (+) y", "x \\/ y")


def test_top_terms_rejected_without_top():
    with pytest.raises(EvaluationError):
        check_identity(make_cone(1), "x^0", "1")


def test_pixley():
    for alg in (make_chain(2), zoo.product(1, 1), make_chain(0)):
        assert all(check_pixley(alg))
    assert [v.count for v in check_pixley(make_chain(2))] == [9, 9, 9]


def test_identity_suite():
    assert identity_suite(make_chain(2)).passed
    assert identity_suite(make_cone(1)).passed
    assert identity_suite(zoo.product(1, 2)).passed
    assert not identity_suite(zoo.max_chain3()).passed


def test_refutation():
    r = refute_in_variety("x (+) y = x \\/ y", None)
    assert r.refuted and r.probe == "L2"
    assert r.verdict.witness == {"x": 1, "y": 1}
    r = refute_in_variety("(x \\/ y) (-) z = (x (-) z) \\/ (y (-) z)", None, samples=2000)
    assert not r.refuted and r.message == "no counterexample found"
    assert not refute_in_variety("x = x", None, samples=200).refuted
    r = refute_in_variety("x (+) 1 = 1", None, samples=200)
    assert "Z+" in r.skipped


def test_sampled_verdicts_do_not_depend_on_workers():
    c = make_cone(2, "product")
    a = check_identity(c, "x (+) x", "x", samples=3000, seed=4, workers=1).to_dict()
    b = check_identity(c, "x (+) x", "x", samples=3000, seed=4, workers=2).to_dict()
    assert a == b

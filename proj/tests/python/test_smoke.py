import math

import pytest

import meanorder as mo


def test_gini_eval_known_values():
    assert mo.gini_eval(1, 0, [1, 2, 3]) == pytest.approx(2.0)
    assert mo.gini_eval(0, 0, [1, 4]) == pytest.approx(2.0)
    assert mo.gini_eval(-1, 1, [2, 8]) == pytest.approx(4.0)
    assert mo.gini_eval(2, 0, [3, 4]) == pytest.approx(math.sqrt(12.5))


def test_gini_eval_rejects_bad_input():
    with pytest.raises(ValueError):
        mo.gini_eval(1, 0, [])
    with pytest.raises(ValueError):
        mo.gini_eval(1, 0, [1.0, -2.0])
    with pytest.raises(ValueError):
        mo.gini_eval(501, 0, [1.0, 2.0])


def test_gini_order_predicate():
    assert mo.gini_leq((1, 2), (2, 3))
    assert not mo.gini_leq((0, 3), (1, 2))
    assert not mo.gini_leq((1, 2), (0, 3))


def test_interval_membership_includes_the_swapped_block():
    assert mo.gini_interval_contains((0, 1), (1, 2), (0.5, 1.5))
    assert mo.gini_interval_contains((0, 1), (1, 2), (1.5, 0.5))
    assert not mo.gini_interval_contains((0, 1), (1, 2), (0, 3))


def test_means_and_black_boxes():
    am = mo.Mean.gini(1, 0)
    assert am([1, 3]) == pytest.approx(2.0)
    assert am.serialize() == "gini:1,0"

    spread = mo.Mean.black_box("spread", lambda v: (min(v) + max(v)) / 2)
    assert spread([1, 2, 9]) == pytest.approx(5.0)

    check = mo.pointwise_leq(mo.parse_mean("blackbox:max"), mo.parse_mean("blackbox:min"))
    assert check["verdict"] == "no"
    assert check["witness"] is not None


def test_pointwise_leq_is_certain_for_parametric_pairs():
    check = mo.pointwise_leq(mo.Mean.gini(1, 0), mo.Mean.gini(2, 0))
    assert check["verdict"] == "yes"
    assert check["certain"]


def test_hardy_ratio_and_lower_bound():
    fam = mo.SequenceFamily.power_law(0.05, 20000)
    gm = mo.Mean.gini(0, 0)
    ratio = mo.hardy_ratio(gm, fam)
    assert 1.5 < ratio < math.e

    budget = mo.HardyBudget()
    budget.max_terms = 20000
    budget.grid_points = 10
    budget.refine_steps = 4
    est = mo.hardy_lower_bound(gm, budget)
    assert est.lower >= ratio - 1e-12
    assert math.isinf(est.upper)
    # the witness family reproduces the bound
    assert mo.hardy_ratio(gm, est.witness) == pytest.approx(est.lower, abs=0)


def test_rho_and_balls():
    dom = mo.SharedDomain.box(2, 1.0, 4.0, 33)
    est = mo.rho(mo.Mean.gini(1, 0), mo.Mean.gini(0, 0), dom)
    assert est["value"] == pytest.approx(0.5, abs=1e-12)
    assert sorted(est["witness"]) == [1.0, 4.0]

    check = mo.ball_member(mo.Mean.gini(1, 0), 0.4, mo.Mean.gini(0, 0), dom)
    assert check["verdict"] == "outside"


def test_poset_operations():
    text = """
elements: bot a b top
le: bot bot
le: a a
le: b b
le: top top
le: bot a
le: bot b
le: bot top
le: a top
le: b top
"""
    d = mo.Poset.parse(text)
    assert len(d) == 4
    assert d.leq("bot", "top")
    assert mo.bracket(d, ["a", "b"], "bot", "top") == ["a", "b"]
    verdict = mo.is_interval_type(d, ["a", "b"])
    assert verdict["interval_type"]

    chain = mo.Poset.chain(3)
    verdict = mo.is_interval_type(chain, ["1", "3"])
    assert not verdict["interval_type"]
    assert verdict["witness"] == "2"


def test_poset_validation_raises():
    with pytest.raises(ValueError):
        mo.Poset.parse("elements: a b\nle: a b\n")  # missing reflexive pairs


def test_verify_paper_rows():
    rows = mo.verify_paper(seed=3, trials=60, hardy_terms=3000)
    assert len(rows) >= 12
    assert all(r["pass"] for r in rows)

    rows = mo.verify_paper(seed=3, trials=60, hardy_terms=3000, sabotage="ginicomp")
    bad = [r for r in rows if not r["pass"]]
    assert bad and all(r["witness"] for r in bad)

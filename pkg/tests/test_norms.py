import random

import pytest

from truthpoint import Workspace
from truthpoint.coding import Universe
from truthpoint.fixpoint import (
    FixedPointReport, IterationTrace, classify, enumerate_fixed_points, lfp, report_for,
)
from truthpoint.norms import (
    ORDER, check_norm_b, check_norm_d, check_norm_e, check_norm_i, report_card,
)

from conftest import FIXTURES, load_fixture
from gen import random_workspace


def lfp_report(ws):
    return lfp(ws.model, ws.registry, ws.universe())


def test_norm_b_on_t_of_pure_sentences():
    ws = Workspace.from_text(
        'yes := exists x . forall y . not (y in x)\n'
        'no := forall x . exists y . x in y\n'
        'says_yes := T("yes")\nsays_no := T("no")', rank=3)
    result = check_norm_b(ws.model, ws.registry, lfp_report(ws))
    assert result.passed and result.checked == 2


def test_norm_b_catches_a_wrong_verdict():
    ws = Workspace.from_text('yes := e = e\nsays := T("yes")', rank=3)
    report = lfp_report(ws)
    report.classification[ws.definition("says")] = "ungrounded"
    result = check_norm_b(ws.model, ws.registry, report)
    assert not result.passed
    assert result.violations == ['e = e is true in the model but T("yes") is ungrounded']


def test_norm_d_exempts_liar():
    ws = load_fixture("liar")
    result = check_norm_d(ws.model, ws.registry, lfp_report(ws))
    assert result.passed and result.checked == 0
    assert any("ungrounded" in e for e in result.exemptions)


def test_norm_d_checks_grounded_sentences():
    ws = load_fixture("mixed")
    result = check_norm_d(ws.model, ws.registry, lfp_report(ws))
    assert result.passed and result.checked > 0


def test_norm_d_exempts_false_sentence_without_tracked_negation():
    ws = Workspace.from_text("no := forall x . exists y . x in y", rank=3)
    reg = ws.registry
    no = ws.definition("no")
    universe = Universe.closure(reg, [no])
    report = lfp(ws.model, reg, universe)
    result = check_norm_d(ws.model, reg, report)
    assert result.passed and result.checked == 0
    assert "negation is not tracked" in result.exemptions[0]


def test_norm_e_counts_five_checks_per_pair():
    ws = load_fixture("demo")
    result = check_norm_e(ws.model, ws.registry, lfp_report(ws), samples=50, seed=3)
    assert result.passed and result.checked == 250


def test_norm_e_on_every_fixed_point_of_loop():
    ws = load_fixture("loop")
    universe = ws.universe()
    for fp in enumerate_fixed_points(ws.model, ws.registry, universe):
        report = report_for(ws.model, ws.registry, universe, fp)
        assert check_norm_e(ws.model, ws.registry, report, samples=100).passed


def test_norm_i_on_liar():
    ws = load_fixture("liar")
    result = check_norm_i(ws.model, ws.registry, lfp_report(ws))
    assert result.passed
    assert result.checked == 3 and len(result.exemptions) == 3
    assert all(e.endswith(": ungrounded") for e in result.exemptions)


def inconsistent_report(ws):
    reg = ws.registry
    universe = ws.universe()
    a = ws.registry.aliases["a"]
    bad = frozenset({a, reg.negation_code(a)})
    cls = classify(ws.model, reg, bad, universe)
    return FixedPointReport(bad, universe, IterationTrace((bad,), "increasing"), cls)


def test_norm_i_fails_on_inconsistent_set():
    ws = Workspace.from_text('a := e = e\nb := T("a")', rank=3)
    result = check_norm_i(ws.model, ws.registry, inconsistent_report(ws))
    assert not result.passed
    assert result.violations[0].startswith("fixed point contains both")
    assert any("both true and false" in v for v in result.violations)


def test_norm_e_flags_both_instead_of_crashing():
    ws = Workspace.from_text('a := e = e\nb := T("a")', rank=3)
    result = check_norm_e(ws.model, ws.registry, inconsistent_report(ws), samples=30)
    assert not result.passed


def test_empty_workspace_is_vacuous():
    ws = Workspace.from_text("", rank=2)
    card = report_card(ws.model, ws.registry, lfp_report(ws))
    assert [r.norm for r in card] == list(ORDER)
    assert all(r.passed for r in card)
    assert all(r.checked == 0 for r in card)


@pytest.mark.parametrize("name", FIXTURES)
def test_report_card_passes_on_fixtures(name):
    ws = load_fixture(name)
    card = report_card(ws.model, ws.registry, lfp_report(ws))
    statuses = {r.norm: r.status for r in card}
    assert statuses == {n: ("pass" if n in "bdei" else "by-construction") for n in ORDER}


def test_report_card_serializes():
    ws = load_fixture("demo")
    d = report_card(ws.model, ws.registry, lfp_report(ws))[3].to_dict()
    assert d["norm"] == "d" and d["status"] == "pass" and isinstance(d["exemptions"], list)


def test_norms_hold_on_random_fixed_points():
    rng = random.Random(31)
    for _ in range(60):
        ws, universe = random_workspace(rng, max_tracked=8)
        reg, m = ws.registry, ws.model
        for fp in enumerate_fixed_points(m, reg, universe):
            report = report_for(m, reg, universe, fp)
            for check in (check_norm_b, check_norm_d, check_norm_i):
                assert check(m, reg, report).passed
            assert check_norm_e(m, reg, report, samples=20, seed=rng.randrange(99)).passed

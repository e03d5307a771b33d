"""Smoke tests for the python module: construction, checks, fixtures."""

import pytest

setstab = pytest.importorskip("setstab")


def test_subset_algebra():
    u = setstab.make_universe(3, labels=["a", "b", "c"])
    s = setstab.Subset(u, [0, 1])
    assert s.count() == 2
    assert str(setstab.complement(s)) == "{c}"
    assert setstab.complement(setstab.complement(s)) == s


def test_filters_and_ideals():
    u = setstab.make_universe(2, labels=["a", "b"])
    principal = setstab.SetFamily.up_generated([setstab.Subset(u, [0])])
    assert setstab.is_filter(principal).holds
    dual = setstab.dualize(principal)
    assert setstab.is_ideal(dual).holds
    assert setstab.member_of(dual, setstab.Subset(u, []))


def test_stability_checks():
    u = setstab.make_universe(2)
    ident = setstab.SetValuedMap.identity(u)
    up = setstab.SetFamily.up_generated([setstab.Subset(u, [0])])
    down = setstab.SetFamily.down_generated([setstab.Subset.full(u)])
    assert setstab.is_backward_stable(ident, up, up).holds
    assert setstab.is_forward_stable(ident, down, down).holds
    assert setstab.is_globally_stable(ident, up, down, up, down).holds
    result = setstab.construct_alpha(ident, up, down, up, down)
    assert result and setstab.verify_k_infinity(result.alpha).holds


def test_witnesses_have_labels():
    u = setstab.make_universe(2, labels=["a", "b"])
    down_a = setstab.SetFamily.down_generated([setstab.Subset(u, [0])])
    down_b = setstab.SetFamily.down_generated([setstab.Subset(u, [1])])
    verdict = setstab.is_forward_stable(setstab.SetValuedMap.identity(u), down_a, down_b)
    assert not verdict.holds
    assert verdict.witness[0].value == "{a}"


def test_enumeration_refusal():
    u = setstab.make_universe(24)
    fam = setstab.SetFamily.up_generated([setstab.Subset(u, [0])])
    with pytest.raises(setstab.EnumerationRefused):
        setstab.enumerate_family(fam)


def test_halving_feedback_small_gain():
    fb = setstab.example_halving_feedback()
    solution = setstab.feedback_solution_map(fb)
    assert solution.row(0).members() == [0]
    suites = setstab.run_all_fixtures()
    assert any(s.name == "example:halving" for s in suites)
    for suite in suites:
        for check in suite.checks:
            assert check.verdict.holds == check.expected, f"{suite.name}:{check.id}"


def test_spec_documents_run():
    doc = """
    {
      "universes": [{"name": "X", "size": 2, "labels": ["a", "b"]}],
      "families": [{"name": "A", "universe": "X", "kind": "up", "sets": [["a"]]}],
      "maps": [{"name": "Id", "identity": "X"}],
      "queries": [{"id": "q", "type": "backward", "map": "Id", "a": "A", "b": "A",
                   "expect": "holds"}]
    }
    """
    text, exit_code = setstab.run_spec_text(doc)
    assert exit_code == 0
    assert "q backward holds" in text

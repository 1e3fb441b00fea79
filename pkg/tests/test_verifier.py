"""Report rendering, determinism, and the five verification campaigns."""

from __future__ import annotations

import json

import pytest

from circledyn import NotExceptional
from circledyn.verifier import (
    LEMMA_TAGS,
    epsilon_sequence_report,
    lambda_measure_trend,
    render_json,
    star_witnesses,
    verify_multiplier_growth,
)


def test_render_json_canonical_floats():
    assert render_json(0.5) == "0.5"
    assert render_json(2.0) == "2.0"  # never a bare integer token
    assert render_json(2) == "2"
    assert render_json(True) == "true"
    assert render_json(None) == "null"
    assert render_json(1e-17) == "1.0000000000000001e-17"


def test_render_json_structure_and_escaping():
    doc = {"b": [1, 2.5], "a": 'say "hi"\\'}
    text = render_json(doc)
    assert text.index('"a"') < text.index('"b"')  # keys sorted
    parsed = json.loads(text)
    assert parsed == doc


def test_render_json_roundtrips_report(gapped_map):
    rep = lambda_measure_trend(gapped_map, depths=(0, 2))
    doc = json.loads(rep.to_json())
    assert doc["verdict"] == rep.verdict
    assert doc["seed"] == 0
    assert set(doc) == {
        "lemma_id", "map", "params", "verdict", "evidence", "seed", "versions",
    }
    assert doc["versions"]["backend"] in ("numpy", "numba")


def test_reports_are_deterministic(gapped_map):
    a = verify_multiplier_growth(gapped_map, s_max=6).to_json()
    b = verify_multiplier_growth(gapped_map, s_max=6).to_json()
    assert a == b


def test_multiplier_growth_passes(gapped_map):
    rep = verify_multiplier_growth(gapped_map, s_max=8)
    assert rep.lemma_id == "L3.5"
    assert rep.verdict == "pass"
    table = rep.evidence["min_multiplier_by_period"]
    floor = table[min(table, key=int)]
    assert all(v >= floor for v in table.values())
    assert all(v > 0 for v in rep.evidence["epsilon_by_K"].values())


def test_epsilon_nice_chain_modes(doubling_map, gapped_map):
    rep = epsilon_sequence_report(doubling_map, "nice_chain")
    assert rep.lemma_id == "L3.2"
    assert rep.verdict == "pass"
    eps = rep.evidence["epsilons"]
    assert eps == pytest.approx([2.0 ** (-n - 2) for n in range(7)], abs=1e-15)
    rep = epsilon_sequence_report(gapped_map, "nice_chain")
    assert rep.verdict == "pass"


def test_epsilon_gap_grid_decays(gapped_map):
    rep = epsilon_sequence_report(gapped_map, "gap_grid")
    assert rep.lemma_id == "L3.4"
    assert rep.verdict == "pass"
    eps = rep.evidence["epsilons"]
    assert all(b <= a + 1e-15 for a, b in zip(eps, eps[1:]))
    assert eps[-1] < 0.5 * eps[0]
    assert rep.evidence["proxy_depths"] == sorted(rep.evidence["proxy_depths"])


def test_epsilon_budget_inconclusive(doubling_map):
    rep = epsilon_sequence_report(doubling_map, "nice_chain", budget=1)
    assert rep.verdict == "inconclusive"
    assert rep.evidence["pruned"]


def test_gap_grid_requires_exceptional(doubling_map):
    with pytest.raises(NotExceptional):
        epsilon_sequence_report(doubling_map, "gap_grid")


def test_star_witnesses_parabolic(parabolic_map):
    rep = star_witnesses(parabolic_map)
    assert rep.verdict == "pass"
    rows = rep.evidence["candidates"]
    assert len(rows) == 1
    row = rows[0]
    assert row["location"] == 0.0
    assert row["fixed_ok"] and row["slope_ok"]
    assert row["left_repelling"] and row["right_repelling"]
    assert row["left_min_margin"] > 0 and row["right_min_margin"] > 0
    assert rep.witness_objects  # the elements themselves ride along


def test_star_witnesses_vacuous_cases(doubling_map, gapped_map):
    rep = star_witnesses(doubling_map)
    assert rep.verdict == "pass"
    assert rep.evidence["n_candidates"] == 0
    rep = star_witnesses(gapped_map)
    assert rep.verdict == "pass"
    attract = rep.evidence["attracting_points"]
    assert [p["location"] for p in attract] == [0.0]


def test_lambda_measure_trend(gapped_map):
    rep = lambda_measure_trend(gapped_map)
    assert rep.verdict == "pass"
    vals = [r["leb_estimate"] for r in rep.evidence["table"]]
    assert vals == sorted(vals, reverse=True)
    assert "not" in rep.evidence["note"]  # states the desk-scale limitation
    single = lambda_measure_trend(gapped_map, depths=(4,))
    assert single.verdict == "inconclusive"


def test_lemma_tags_are_frozen():
    assert LEMMA_TAGS == ("L3.2", "L3.4", "L3.5", "STAR", "LAMBDA_MEASURE")

"""Acceptance gate: one test per release criterion, at the stated tolerances.

Run with ``pytest -v tests/test_acceptance.py`` to get one pass/fail line per
criterion.  Every tolerance below is part of the package contract; loosening
one is a release decision, not a test fix.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from affine_oracle import is_dyadic, is_power_of_two, oracle_eval, oracle_pieces, oracle_slope
from conftest import random_element, sample_interior_points

from circledyn import (
    Arc,
    ChainNotDisjoint,
    chain_distortion,
    circle_dist,
    compose,
    doubling,
    eval_and_slope,
    evaluate,
    gapped_family,
    invert,
    minimality_test,
    nonexpandable_candidates,
    parabolic_doubling,
    validate,
)
from circledyn.verifier import (
    epsilon_sequence_report,
    lambda_measure_trend,
    star_witnesses,
    verify_multiplier_growth,
)


def test_criterion_01_doubling_oracle_equivalence(doubling_map):
    """100 random elements match the exact piecewise-affine oracle."""
    rng = np.random.default_rng(0)
    checked = 0
    for _ in range(100):
        g = random_element(doubling_map, rng, max_degree=4)
        assert validate(g).ok
        for lo, hi, slope, _ in oracle_pieces(g):
            assert is_power_of_two(slope)
            assert is_dyadic(lo) and is_dyadic(hi)
        for x in sample_interior_points(g, rng, per_piece=2):
            want = float(oracle_eval(g, float(x)))
            got, got_slope = eval_and_slope(g, float(x))
            assert circle_dist(got, want) < 1e-10
            assert got_slope == pytest.approx(float(oracle_slope(g, float(x))), rel=1e-9)
            checked += 1
    assert checked >= 100


def test_criterion_02_group_closure(doubling_map, gapped_map):
    """compose/invert stay valid and round-trip at 100 points, error < 1e-8."""
    rng = np.random.default_rng(1)
    for cm in (doubling_map, gapped_map):
        g = random_element(cm, rng)
        h = random_element(cm, rng)
        gh = compose(g, h)
        gi = invert(g)
        assert validate(gh).ok
        assert validate(gi).ok
        xs = rng.uniform(0.0, 1.0, 100)
        for x in xs:
            x = float(x)
            assert circle_dist(evaluate(gh, x), evaluate(g, evaluate(h, x))) < 1e-8
            assert circle_dist(evaluate(gi, evaluate(g, x)), x) < 1e-8


def test_criterion_03_distortion_chains(parabolic_map, doubling_map):
    """200 disjoint chains: parabolic <= 2 log 3 + 1e-6; doubling < 1e-12."""
    rng = np.random.default_rng(2)
    bound = 2.0 * math.log(3.0) + 1e-6

    def run(cmap, check, want=200, cap=4000):
        found = attempts = 0
        while found < want and attempts < cap:
            attempts += 1
            u = float(rng.uniform(0, 1))
            ln = float(np.exp(rng.uniform(np.log(1e-5), np.log(5e-3))))
            n = int(rng.integers(1, 9))
            try:
                chi = chain_distortion(cmap, Arc(u, u + ln), n)
            except ChainNotDisjoint:
                continue
            check(chi)
            found += 1
        assert found == want, f"only {found} disjoint chains in {attempts} attempts"

    run(parabolic_map, lambda chi: None if chi <= bound else pytest.fail(str(chi)))
    run(doubling_map, lambda chi: None if chi < 1e-12 else pytest.fail(str(chi)))


def test_criterion_04_derivative_consistency(all_maps):
    """Slopes agree with central differences, rel error < 1e-6, 100 pts/family."""
    rng = np.random.default_rng(3)
    h = 1e-6
    for cm in all_maps.values():
        xs = rng.uniform(0.0, 1.0, 100)
        for n in (1, 3):
            for x in xs:
                x = float(x)
                _, mult = cm.iterate_with_multiplier(x, n)
                fd = (cm.lift_iter(x + h, n) - cm.lift_iter(x - h, n)) / (2 * h)
                assert mult == pytest.approx(fd, rel=1e-6)
        g = random_element(cm, rng, n_splits=2)
        pts = sample_interior_points(g, rng, per_piece=4)
        for x in pts:
            x = float(x)
            _, slope = eval_and_slope(g, x)
            lo = evaluate(g, x - h)
            hi = evaluate(g, x + h)
            fd = ((hi - lo) % 1.0) / (2 * h)
            assert slope == pytest.approx(fd, rel=1e-6)


def test_criterion_05_minimality_classification(all_maps):
    """doubling/parabolic minimal (doubling probe 2^-10-dense); gapped exceptional."""
    res = minimality_test(all_maps["doubling"], probe_depth=10)
    assert res.verdict == "minimal"
    assert res.probe_max_gap <= 2.0**-10 + 1e-15
    res = minimality_test(all_maps["parabolic"], probe_depth=10)
    assert res.verdict == "minimal"
    res = minimality_test(all_maps["gapped"])
    assert res.verdict == "exceptional"
    assert len(res.witnesses) == 1
    arc = res.witnesses[0].arc
    gapped = all_maps["gapped"]
    for endpoint in (arc.left, arc.right):
        assert abs(gapped.eval(endpoint) - endpoint) < 1e-9


def test_criterion_06_lambda_measure_trend(gapped_map):
    """leb estimate strictly decreasing on depths 0,2,4,6,8 with >= 25% drop."""
    rep = lambda_measure_trend(gapped_map, depths=(0, 2, 4, 6, 8))
    assert rep.verdict == "pass"
    vals = [row["leb_estimate"] for row in rep.evidence["table"]]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] <= 0.75 * vals[0]
    assert "not" in rep.evidence["note"]  # desk-scale caveat is stated


def test_criterion_07_multiplier_growth(gapped_map):
    """min multiplier per period s in 8..12 is >= its s=2 value."""
    rep = verify_multiplier_growth(gapped_map, s_max=12)
    table = rep.evidence["min_multiplier_by_period"]
    floor = table["2"]
    for s in range(8, 13):
        assert table[str(s)] >= floor
    assert rep.verdict == "pass"


def test_criterion_08_star_witnesses(parabolic_map):
    """candidates == {0}; witness fixes 0 with slope 1; 10 pts/side repelled."""
    cands = nonexpandable_candidates(parabolic_map)
    assert [(p.location, p.period) for p in cands] == [(0.0, 1)]
    rep = star_witnesses(parabolic_map)
    assert rep.verdict == "pass"
    (cand, g), = rep.witness_objects
    q, slope = eval_and_slope(g, 0.0)
    assert circle_dist(q, 0.0) <= 1e-9
    assert abs(slope - 1.0) <= 1e-9
    offsets = np.arange(1, 11) * 9e-5  # ten points inside (0, 1e-3)
    for off in offsets:
        y = float(off)
        assert evaluate(g, y) > y  # pushed away from 0 on the right
        z = 1.0 - float(off)
        assert evaluate(g, z) < z  # pushed away from 0 on the left


def test_criterion_09_epsilon_sequences(doubling_map, parabolic_map):
    """doubling eps_n = 2^-n-2 exactly; parabolic nonincreasing, eps5 < eps1."""
    rep = epsilon_sequence_report(doubling_map, "nice_chain")
    eps = rep.evidence["epsilons"]
    for n, e in enumerate(eps):
        assert abs(e - 2.0 ** (-n - 2)) < 1e-12
    rep = epsilon_sequence_report(parabolic_map, "nice_chain")
    eps = rep.evidence["epsilons"]
    assert all(b <= a + 1e-15 for a, b in zip(eps, eps[1:]))
    assert eps[5] < eps[1]


def test_criterion_10_report_determinism():
    """Same seed, fresh objects: byte-identical reports."""
    runs = []
    for _ in range(2):
        gf = gapped_family()
        pd = parabolic_doubling()
        runs.append(
            (
                verify_multiplier_growth(gf, s_max=8, seed=0).to_json(),
                star_witnesses(pd, seed=0).to_json(),
                epsilon_sequence_report(gf, "gap_grid", seed=0).to_json(),
                lambda_measure_trend(gf, seed=0).to_json(),
            )
        )
    assert runs[0] == runs[1]

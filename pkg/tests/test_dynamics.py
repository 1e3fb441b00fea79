"""Periodic structure, the invariant Cantor set, nice intervals, distortion."""

from __future__ import annotations

import math

import numpy as np
import pytest

from circledyn import (
    Arc,
    ChainNotDisjoint,
    chain_distortion,
    distortion_bound,
    expansion_time,
    find_periodic_points,
    in_any_gap,
    lambda_approx,
    lambda_periodic_points,
    lambda_to_csv,
    maximal_periodic_intervals,
    minimality_test,
    nice_chain,
    nice_interval_at,
    nonexpandable_candidates,
    periodic_to_csv,
    semiconjugacy,
)

XSTAR = 0.23806103036829426  # repelling fixed point of the gapped family
MULT_XSTAR = 1.8875833634774812


def test_doubling_periodic_points(doubling_map):
    pts = find_periodic_points(doubling_map, 3)
    by_period = {}
    for p in pts:
        by_period.setdefault(p.period, []).append(p)
    assert sorted(p.location for p in by_period[1]) == [0.0]
    assert len(by_period[2]) == 2  # 1/3, 2/3
    assert len(by_period[3]) == 6  # the two 3-cycles k/7
    for p in by_period[3]:
        assert p.multiplier == pytest.approx(8.0, rel=1e-12)
        assert p.location == pytest.approx(round(p.location * 7) / 7, abs=1e-12)
        assert p.classification == "hyperbolic_repelling"


def test_fundamental_period_filter(doubling_map):
    one = find_periodic_points(doubling_map, 1)
    assert [p.location for p in one] == [0.0]
    two = find_periodic_points(doubling_map, 2)
    assert sorted(p.period for p in two) == [1, 2, 2]


def test_parabolic_fixed_point_is_exact(parabolic_map):
    pts = find_periodic_points(parabolic_map, 1)
    assert len(pts) == 1
    p = pts[0]
    assert p.location == 0.0
    assert p.multiplier == 1.0
    assert p.classification == "parabolic_candidate"
    assert p.side_behavior == ("repelling", "repelling")


def test_gapped_periodic_table(gapped_map):
    pts = find_periodic_points(gapped_map, 2)
    table = {(round(p.location, 10), p.period): p for p in pts}
    assert (0.0, 1) in table
    assert table[(0.0, 1)].classification == "attracting"
    xs = table[(round(XSTAR, 10), 1)]
    assert xs.multiplier == pytest.approx(MULT_XSTAR, rel=1e-10)
    two = sorted(p.location for p in pts if p.period == 2)
    assert two == pytest.approx([0.38569695783222702, 0.61430304216777298], abs=1e-10)
    for p in pts:
        if p.period == 2:
            assert p.multiplier == pytest.approx(9.793768643873612, rel=1e-9)


def test_periodic_csv(tmp_path, gapped_map):
    path = tmp_path / "pts.csv"
    periodic_to_csv(find_periodic_points(gapped_map, 1), str(path))
    rows = path.read_text().strip().splitlines()
    assert rows[0] == "location,period,multiplier,class"
    assert len(rows) == 4


def test_maximal_intervals(all_maps):
    assert maximal_periodic_intervals(all_maps["doubling"], 6) == []
    assert maximal_periodic_intervals(all_maps["parabolic"], 6) == []
    gapped = all_maps["gapped"]
    ivs = maximal_periodic_intervals(gapped, 6)
    assert len(ivs) == 1
    iv = ivs[0]
    assert iv.period == 1
    assert iv.arc.length == pytest.approx(0.47612206073658836, abs=1e-11)
    for endpoint in (iv.arc.left, iv.arc.right):
        assert abs(gapped.eval(endpoint) - endpoint) < 1e-9


def test_semiconjugacy_identity_on_doubling(doubling_map):
    assert semiconjugacy(doubling_map, 1 / 3, 32) == pytest.approx(1 / 3, abs=1e-9)
    assert semiconjugacy(doubling_map, 0.0, 32) == 0.0


def test_semiconjugacy_monotone_and_collapsing(gapped_map):
    xs = np.linspace(0.0, 0.999, 240)
    hs = np.array([semiconjugacy(gapped_map, float(x), 30) for x in xs])
    assert np.all(np.diff(hs) >= -1e-12)
    # the attracting gap through 0 collapses to the single circle point 0:
    # images approach it from both sides, so compare in the circle metric
    from circledyn import circle_dist

    assert circle_dist(
        semiconjugacy(gapped_map, 0.9, 30), semiconjugacy(gapped_map, 0.1, 30)
    ) < 1e-8


def test_minimality_verdicts(all_maps):
    res = minimality_test(all_maps["doubling"])
    assert res.verdict == "minimal"
    assert res.probe_max_gap == pytest.approx(2.0**-10, abs=1e-15)
    res = minimality_test(all_maps["parabolic"])
    assert res.verdict == "minimal"
    res = minimality_test(all_maps["gapped"])
    assert res.verdict == "exceptional"
    assert len(res.witnesses) == 1


def test_lambda_structure(gapped_map):
    lam = lambda_approx(gapped_map, 6)
    assert lam.depth == 6
    assert len(lam.gaps) == 64
    assert lam.leb_estimate == pytest.approx(0.094763449145455092, abs=1e-12)
    assert list(lam.births).count(0) == 1
    assert max(lam.births) == 6
    # gaps are pairwise disjoint: sorted lefts, each right before the next left
    lefts = lam.left_endpoints
    lens = np.array([g.length for g in lam.gaps])
    order = np.argsort(lefts)
    sl, ln = lefts[order], lens[order]
    assert np.all(sl[:-1] + ln[:-1] <= sl[1:] + 1e-12)
    assert sl[-1] + ln[-1] <= sl[0] + 1.0 + 1e-12


def test_lambda_leb_decreases_with_depth(gapped_map):
    vals = [lambda_approx(gapped_map, d).leb_estimate for d in (0, 1, 2, 4)]
    assert vals == sorted(vals, reverse=True)
    assert vals[0] == pytest.approx(0.523877939263, abs=1e-9)


def test_in_any_gap(gapped_map):
    lam = lambda_approx(gapped_map, 8)
    assert in_any_gap(lam, 0.0)
    assert in_any_gap(lam, 0.9)
    assert not in_any_gap(lam, XSTAR)


def test_lambda_periodic_points_avoid_gaps(gapped_map):
    lam = lambda_approx(gapped_map, 8)
    pts = lambda_periodic_points(gapped_map, 4, lam)
    assert pts
    for p in pts:
        assert not in_any_gap(lam, p.location)
        assert p.multiplier >= MULT_XSTAR - 1e-9


def test_lambda_csv(tmp_path, gapped_map):
    path = tmp_path / "gaps.csv"
    lambda_to_csv(lambda_approx(gapped_map, 3), str(path))
    rows = path.read_text().strip().splitlines()
    assert rows[0] == "left,right,birth_depth"
    assert len(rows) == 9


def test_nice_interval_examples(all_maps):
    arc = nice_interval_at(all_maps["doubling"], 0.0, "right", max_size=0.3)
    assert (arc.left, arc.right) == (0.0, 0.25)
    arc = nice_interval_at(all_maps["parabolic"], 0.0, "right")
    assert arc.left == 0.0
    assert arc.right == pytest.approx(0.2402527521683302, abs=1e-10)
    gapped = all_maps["gapped"]
    arc = nice_interval_at(gapped, XSTAR, "right")
    assert arc.left == pytest.approx(XSTAR, abs=1e-12)
    assert arc.length < 0.001
    # nice property: the boundary forward orbit stays out of the interior.
    # A boundary orbit that lands on a fixed point stays there in truth, so
    # stop once the numeric step stalls instead of amplifying rounding error.
    from circledyn import circle_dist

    for endpoint in (arc.left, arc.right):
        x = endpoint
        for _ in range(100):
            nxt = gapped.eval(x)
            if circle_dist(nxt, x) <= 1e-11:
                break
            x = nxt
            inside = (x - arc.left) % 1.0
            assert not (1e-12 < inside < arc.length - 1e-12)


def test_nice_chain_doubling_exact(doubling_map):
    base = nice_interval_at(doubling_map, 0.0, "right", max_size=0.3)
    chain = nice_chain(doubling_map, base, 0.0)
    want = [2.0 ** (-n - 2) for n in range(7)]
    assert list(chain.epsilons) == pytest.approx(want, abs=1e-15)
    assert chain.delta0 == pytest.approx(0.125, abs=1e-15)
    assert not chain.pruned


def test_nice_chain_budget_prunes(doubling_map):
    base = nice_interval_at(doubling_map, 0.0, "right", max_size=0.3)
    chain = nice_chain(doubling_map, base, 0.0, node_budget=1)
    assert chain.pruned


def test_distortion_bounds_closed_forms(all_maps):
    assert distortion_bound(all_maps["doubling"]).bound == pytest.approx(0.0, abs=1e-12)
    assert distortion_bound(all_maps["parabolic"]).bound == pytest.approx(
        2.0 * math.log(3.0), rel=1e-6
    )
    assert distortion_bound(all_maps["gapped"]).bound == pytest.approx(
        2.0 * (math.log(3.5) - math.log(0.5)), rel=1e-6
    )


def test_chain_distortion(parabolic_map, doubling_map):
    val = chain_distortion(parabolic_map, Arc(0.26, 0.27), 1)
    assert val == pytest.approx(0.029868918616279938, rel=1e-6)
    assert chain_distortion(doubling_map, Arc(0.26, 0.27), 4) < 1e-12
    with pytest.raises(ChainNotDisjoint):
        chain_distortion(doubling_map, Arc(0.1, 0.4), 3)


def test_expansion_time(parabolic_map, doubling_map):
    assert expansion_time(parabolic_map, 0.0, 1.01, 50) is None
    assert expansion_time(parabolic_map, 0.5, 2.0, 50) == 1
    assert expansion_time(doubling_map, 0.3, 8.0, 50) == 3


def test_nonexpandable_candidates(all_maps):
    assert nonexpandable_candidates(all_maps["doubling"]) == []
    cands = nonexpandable_candidates(all_maps["parabolic"])
    assert [(p.location, p.period) for p in cands] == [(0.0, 1)]
    assert nonexpandable_candidates(all_maps["gapped"]) == []

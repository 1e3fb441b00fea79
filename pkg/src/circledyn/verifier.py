"""Verification campaigns over the built-in dynamics, with deterministic reports.

Each campaign checks one family of inequalities at desk scale and returns a
LemmaReport whose verdict is recomputable from its evidence table alone.
Reports serialize to canonical JSON: keys sorted, floats printed with 17
significant digits, no whitespace variation — byte-identical across runs
with the same inputs and seed.

"inconclusive" is distinct from "fail": bounded-depth checks never claim a
refutation, and a genuinely violated inequality produces "fail" along with
the offending numbers for tolerance review.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy

from . import kernels
from .circle_maps import CirclePoint, CoveringMap, circle_dist, mod1
from .dynamics import (
    LAMBDA_DEPTH_LIMIT,
    NODE_BUDGET,
    LambdaApprox,
    find_periodic_points,
    lambda_approx,
    lambda_periodic_points,
    maximal_periodic_intervals,
    nice_chain,
    nice_interval_at,
    nonexpandable_candidates,
    _pullback_pairs,
)
from .errors import NotExceptional
from .thompson import ThompsonElement, build_local_power, element_to_json, eval_and_slope

LEMMA_TAGS = ("L3.2", "L3.4", "L3.5", "STAR", "LAMBDA_MEASURE")


@dataclass(frozen=True)
class LemmaReport:
    lemma_id: str
    map_descriptor: dict
    params: dict
    verdict: str  # "pass" | "fail" | "inconclusive"
    evidence: dict
    seed: int
    versions: dict
    witness_objects: tuple = field(default=(), repr=False, compare=False)

    def as_doc(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "map": self.map_descriptor,
            "params": self.params,
            "verdict": self.verdict,
            "evidence": self.evidence,
            "seed": self.seed,
            "versions": self.versions,
        }

    def to_json(self) -> str:
        return render_json(self.as_doc())


def render_json(value, indent: int = 0) -> str:
    """Canonical JSON: sorted keys, %.17g floats, fixed two-space layout."""
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = []
        for k in sorted(value):
            items.append(
                '%s  "%s": %s' % (pad, k, render_json(value[k], indent + 1))
            )
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not len(value):
            return "[]"
        items = ["%s  %s" % (pad, render_json(v, indent + 1)) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(value, bool) or value is None:
        return {True: "true", False: "false", None: "null"}[value]
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        out = "%.17g" % float(value)
        # %.17g may emit bare integers ("2"), which would round-trip as int.
        if out.lstrip("+-").isdigit():
            out += ".0"
        return out
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"unsupported report value {type(value)!r}")


def _versions() -> dict:
    from . import __version__

    return {
        "circledyn": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "backend": kernels.BACKEND,
    }


def _descriptor(cmap: CoveringMap) -> dict:
    return {
        "family": cmap.family_tag,
        "a": [float(v) for v in cmap.a],
        "b": [float(v) for v in cmap.b],
    }


def _report(lemma_id, cmap, params, verdict, evidence, seed, witnesses=()):
    return LemmaReport(
        lemma_id=lemma_id,
        map_descriptor=_descriptor(cmap),
        params=params,
        verdict=verdict,
        evidence=evidence,
        seed=seed,
        versions=_versions(),
        witness_objects=tuple(witnesses),
    )


# -- multiplier growth -----------------------------------------------------------


def verify_multiplier_growth(
    cmap: CoveringMap,
    x0: Optional[CirclePoint] = None,
    K_list: Sequence[float] = (2.0, 4.0),
    s_max: int = 12,
    seed: int = 0,
) -> LemmaReport:
    """Do multipliers of Cantor-set periodic points grow with period, and
    does every multiplier floor K hold on a small enough one-sided arc at x0?

    For each K the largest tested epsilon = 2^-j is recorded such that every
    Cantor-set periodic point of period <= s_max inside (x0, x0 + epsilon)
    has multiplier >= K.  Evidence also tabulates the min multiplier per
    period.  Pass requires the per-period min to stay above its value at the
    smallest tabulated period and the epsilon ladder to be positive and
    nonincreasing in K; fewer than two tabulated periods is inconclusive.
    """
    base = maximal_periodic_intervals(cmap, 6)
    if not base:
        raise NotExceptional("map has no periodic interval up to order 6")
    if x0 is None:
        x0 = base[0].arc.right
    x0 = mod1(x0)
    lam = lambda_approx(cmap, 12)
    pts = lambda_periodic_points(cmap, s_max, lam)
    min_by_period: dict[int, float] = {}
    for p in pts:
        cur = min_by_period.get(p.period)
        if cur is None or p.multiplier < cur:
            min_by_period[p.period] = p.multiplier
    eps_by_K = {}
    for K in K_list:
        chosen = 0.0
        for j in range(1, 25):
            eps = 2.0 ** (-j)
            ok = True
            for p in pts:
                d = mod1(p.location - x0)
                # the arc is open at x0: refinement roundoff can displace the
                # base orbit itself by ~1 ulp, so matches that close are x0
                if 1e-12 < d < eps and p.multiplier < K:
                    ok = False
                    break
            if ok:
                chosen = eps
                break
        eps_by_K["%.17g" % K] = chosen
    periods = sorted(min_by_period)
    evidence = {
        "x0": float(x0),
        "lambda_depth": lam.depth,
        "lambda_proxy": "periodic points outside depth-limited gap list",
        "min_multiplier_by_period": {str(s): min_by_period[s] for s in periods},
        "epsilon_by_K": eps_by_K,
        "n_lambda_periodic_points": len(pts),
    }
    params = {"s_max": s_max, "K_list": [float(K) for K in K_list]}
    if len(periods) < 2:
        return _report(
            "L3.5", cmap, params, "inconclusive",
            {**evidence, "reason": "fewer than two periods tabulated"}, seed,
        )
    floor = min_by_period[periods[0]]
    trend_periods = all(min_by_period[s] >= floor for s in periods[1:])
    eps_vals = [eps_by_K[k] for k in ("%.17g" % K for K in K_list)]
    trend_eps = all(v > 0.0 for v in eps_vals) and all(
        eps_vals[i + 1] <= eps_vals[i] for i in range(len(eps_vals) - 1)
    )
    verdict = "pass" if (trend_periods and trend_eps) else "fail"
    evidence["trend_periods"] = trend_periods
    evidence["trend_epsilon"] = trend_eps
    return _report("L3.5", cmap, params, verdict, evidence, seed)


# -- epsilon sequences -----------------------------------------------------------


def epsilon_sequence_report(
    cmap: CoveringMap,
    mode: str,
    budget: int = NODE_BUDGET,
    n_max: int = 6,
    i_max: int = 8,
    p0: Optional[CirclePoint] = None,
    seed: int = 0,
) -> LemmaReport:
    """Decay of the pullback length scales epsilon_n, in one of two modes.

    nice_chain: epsilon_n = sup component length over pullbacks of the n-th
    preimage component B_n of a nice base arc at 0 (or at the repelling
    endpoint in the exceptional case).

    gap_grid: epsilon_n = sup length of the circle components cut out by the
    gap left-endpoint set together with the depth-n backward orbit of p0,
    counting only components whose left endpoint is a backward-orbit point.

    Pass needs a nonincreasing sequence whose final value is below half the
    initial one; hitting the node budget yields inconclusive.
    """
    if mode == "nice_chain":
        return _eps_nice_chain(cmap, budget, n_max, i_max, seed)
    if mode == "gap_grid":
        return _eps_gap_grid(cmap, budget, n_max, p0, seed)
    raise ValueError("mode must be 'nice_chain' or 'gap_grid'")


def _eps_verdict(eps: list[float]) -> str:
    nonincreasing = all(eps[i + 1] <= eps[i] + 1e-15 for i in range(len(eps) - 1))
    return "pass" if (nonincreasing and eps and eps[-1] < 0.5 * eps[0]) else "fail"


def _eps_nice_chain(cmap, budget, n_max, i_max, seed):
    base_list = maximal_periodic_intervals(cmap, 6)
    x0 = mod1(base_list[0].arc.right) if base_list else 0.0
    base = nice_interval_at(cmap, x0, "right", max_size=0.3)
    chain = nice_chain(cmap, base, x0, n_max=n_max, i_max=i_max, node_budget=budget)
    eps = list(chain.epsilons)
    evidence = {
        "mode": "nice_chain",
        "x0": float(x0),
        "base": {"left": base.left, "right": base.right, "length": base.length},
        "epsilons": eps,
        "delta0": chain.delta0,
        "pruned": chain.pruned,
        "chain_lengths": [arc.length for arc in chain.chain],
    }
    params = {"budget": budget, "n_max": n_max, "i_max": i_max}
    if chain.pruned:
        evidence["reason"] = "node budget exhausted; epsilons are lower bounds"
        return _report("L3.2", cmap, params, "inconclusive", evidence, seed)
    return _report("L3.2", cmap, params, _eps_verdict(eps), evidence, seed)


def _eps_gap_grid(cmap, budget, n_max, p0, seed, base_depth: int = 8):
    base = maximal_periodic_intervals(cmap, 6)
    if not base:
        raise NotExceptional("gap_grid mode needs an exceptional map")
    if p0 is None:
        p0 = base[0].arc.right
    p0 = mod1(p0)
    # The true left-endpoint set is infinite; any finite subset only enlarges
    # the cut-out components, so each row is an upper bound for the lemma
    # quantity.  The subset depth grows with n so the proxy keeps resolving
    # the neighbourhood of p0 as the backward orbit deepens; a fixed depth
    # would freeze the component at p0 itself and carry no n-information.
    deepest = min(base_depth + n_max, LAMBDA_DEPTH_LIMIT)
    lam = lambda_approx(cmap, deepest)
    births = np.array(lam.births)
    orbit = np.array([p0])
    eps: list[float] = []
    depths_used: list[int] = []
    nodes = 0
    pruned = False
    params = {"budget": budget, "n_max": n_max, "p0": float(p0),
              "base_depth": base_depth}
    for n in range(n_max + 1):
        depth_n = min(base_depth + n, deepest)
        lefts = np.sort(lam.left_endpoints[births <= depth_n])
        depths_used.append(depth_n)
        pts = np.sort(np.concatenate([lefts, orbit]))
        lengths = np.diff(np.concatenate([pts, [pts[0] + 1.0]]))
        # a cut point counts as a gap endpoint iff it matches one exactly
        pos = np.searchsorted(lefts, pts)
        pos = np.clip(pos, 0, len(lefts) - 1)
        near = np.minimum(
            np.abs(pts - lefts[pos]), np.abs(pts - lefts[np.maximum(pos - 1, 0)])
        )
        from_orbit = near > 1e-12
        eligible = lengths[from_orbit]
        eps.append(float(np.max(eligible)) if len(eligible) else 0.0)
        if n == n_max:
            break
        if nodes + len(orbit) > budget:
            pruned = True
            break
        nodes += len(orbit)
        pl, _ = _pullback_pairs(cmap, orbit, orbit)
        orbit = np.unique(pl % 1.0)
    evidence = {
        "mode": "gap_grid",
        "proxy_depths": depths_used,
        "proxy_note": "epsilons are upper bounds from a finite left-endpoint set",
        "epsilons": eps,
        "pruned": pruned,
        "orbit_size_final": int(len(orbit)),
    }
    if pruned:
        evidence["reason"] = "node budget exhausted before n_max"
        return _report("L3.4", cmap, params, "inconclusive", evidence, seed)
    return _report("L3.4", cmap, params, _eps_verdict(eps), evidence, seed)


# -- one-sided repulsion witnesses -----------------------------------------------


def star_witnesses(
    cmap: CoveringMap, s_max: int = 6, n: int = 3, seed: int = 0
) -> LemmaReport:
    """For every nonexpandable candidate x of period s, build an element equal
    to the s-fold map near x and check it fixes x with slope 1 and pushes
    sampled neighbours strictly away from x on each required side.

    A side is required when the candidate is accumulated there: by the whole
    circle for minimal maps, by the invariant Cantor set otherwise.  No
    candidates at all is a vacuous pass (attracting points are noted).
    """
    pts = find_periodic_points(cmap, s_max)
    candidates = nonexpandable_candidates(cmap, s_max=s_max)
    witnesses_out = []
    minimal = not maximal_periodic_intervals(cmap, 6)
    lam = None
    if not minimal:
        lam = lambda_approx(cmap, 12)
    rows = []
    all_ok = True
    offsets = np.arange(1, 11) * 9e-5
    for cand in candidates:
        g = build_local_power(cmap, cand.location, cand.period, max(n, cand.period + 2))
        gx, slope = eval_and_slope(g, cand.location)
        fixed_ok = circle_dist(gx, cand.location) <= 1e-9
        slope_ok = abs(slope - 1.0) <= 1e-9
        row = {
            "location": float(cand.location),
            "period": cand.period,
            "fixed_ok": fixed_ok,
            "slope": float(slope),
            "slope_ok": slope_ok,
        }
        ok = fixed_ok and slope_ok
        for side in ("left", "right"):
            required = minimal or _accumulated(lam, cand.location, side)
            row[f"{side}_required"] = required
            if not required:
                continue
            margins = []
            for off in offsets:
                if side == "right":
                    y = mod1(cand.location + off)
                    gy, _ = eval_and_slope(g, y)
                    margins.append(mod1(gy - cand.location) - mod1(y - cand.location))
                else:
                    y = mod1(cand.location - off)
                    gy, _ = eval_and_slope(g, y)
                    margins.append(mod1(cand.location - gy) - mod1(cand.location - y))
            side_ok = all(m > 0.0 for m in margins)
            row[f"{side}_repelling"] = side_ok
            row[f"{side}_min_margin"] = float(min(margins))
            ok = ok and side_ok
        rows.append(row)
        witnesses_out.append((cand, g))
        all_ok = all_ok and ok
    evidence = {
        "candidates": rows,
        "n_candidates": len(candidates),
        "attracting_points": [
            {"location": p.location, "period": p.period, "multiplier": p.multiplier}
            for p in pts
            if p.classification == "attracting"
        ],
        "elements": [
            {"location": float(c.location), "element": _element_dict(g)}
            for c, g in witnesses_out
        ],
        "vacuous": len(candidates) == 0,
    }
    params = {"s_max": s_max, "n": n, "offsets_max": float(offsets[-1])}
    return _report(
        "STAR", cmap, params, "pass" if all_ok else "fail", evidence, seed,
        witnesses=witnesses_out,
    )


def _accumulated(lam: LambdaApprox, p: CirclePoint, side: str) -> bool:
    """Is p approached by Cantor-set points from the given side?

    p is assumed to lie in the set; the side is free exactly when p is not
    the matching endpoint of a gap.
    """
    for arc in lam.gaps:
        if side == "right" and circle_dist(arc.left, p) <= 1e-9:
            return False
        if side == "left" and circle_dist(arc.right, p) <= 1e-9:
            return False
    return True


def _element_dict(g: ThompsonElement) -> dict:
    import json

    return json.loads(element_to_json(g))


# -- measure trend ---------------------------------------------------------------


def lambda_measure_trend(
    cmap: CoveringMap, depths: Sequence[int] = (0, 2, 4, 6, 8), seed: int = 0
) -> LemmaReport:
    """Lebesgue estimate of the Cantor-set complement across pullback depths.

    Pass requires the estimate to be strictly decreasing across the listed
    depths; a single depth is inconclusive.  Convergence to zero is out of
    reach at these depths and the report says so explicitly.
    """
    depths = sorted(set(int(d) for d in depths))
    if max(depths, default=0) > LAMBDA_DEPTH_LIMIT:
        raise ValueError(f"depths beyond {LAMBDA_DEPTH_LIMIT} are not supported")
    deepest = lambda_approx(cmap, max(depths, default=0))
    rows = []
    for d in depths:
        total = sum(
            ln for ln, b in zip(
                (arc.length for arc in deepest.gaps), deepest.births
            ) if b <= d
        )
        rows.append({"depth": d, "leb_estimate": 1.0 - total})
    evidence = {
        "table": rows,
        "note": "finite-depth estimate only; convergence to zero is not "
        "checked at this scale",
    }
    params = {"depths": list(depths)}
    if len(rows) < 2:
        evidence["reason"] = "need at least two depths for a trend"
        return _report("LAMBDA_MEASURE", cmap, params, "inconclusive", evidence, seed)
    strictly_decreasing = all(
        rows[i + 1]["leb_estimate"] < rows[i]["leb_estimate"]
        for i in range(len(rows) - 1)
    )
    evidence["strictly_decreasing"] = strictly_decreasing
    verdict = "pass" if strictly_decreasing else "fail"
    return _report("LAMBDA_MEASURE", cmap, params, verdict, evidence, seed)

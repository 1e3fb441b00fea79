"""Periodic orbits, invariant Cantor structure, distortion, and expansion.

Periodic points of the s-fold map are localized by sign-scanning the lift
residual F^s(x) - x on a 2^(s+6)-cell grid (every integer level crossed
inside a cell brackets a root) and polished with a safeguarded Newton step
on the mod-1 orbit displacement.  Runs of consecutive fixed points sharing
a lift offset bound the periodic intervals; pulling those back through the
inverse branches yields the finite-depth gap picture of the invariant
Cantor set and its Lebesgue estimate.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np
from scipy.integrate import quad

from . import kernels
from .circle_maps import Arc, CirclePoint, CoveringMap, circle_dist, mod1
from .dyadic import preimage_grid
from .errors import (
    ChainNotDisjoint,
    DepthExceeded,
    NoNiceIntervalFound,
    NotExceptional,
)

TOL_MULT = 1e-6
_DEDUPE = 1e-11
S_MAX_LIMIT = 14
LAMBDA_DEPTH_LIMIT = 16
NODE_BUDGET = 1 << 16

Side = Literal["left", "right"]


@dataclass(frozen=True)
class PeriodicPoint:
    location: CirclePoint
    period: int
    multiplier: float
    classification: str
    side_behavior: tuple[str, str]  # (left, right): "repelling" / "attracting" / "indeterminate"


@dataclass(frozen=True)
class PeriodicInterval:
    arc: Arc
    period: int
    maximal: bool = True


@dataclass(frozen=True)
class LambdaApprox:
    """Finite-depth gap approximation of the invariant Cantor set."""

    depth: int
    gaps: tuple[Arc, ...]
    births: tuple[int, ...]
    leb_estimate: float
    left_endpoints: np.ndarray
    right_endpoints: np.ndarray


@dataclass(frozen=True)
class NiceChain:
    base: Arc
    chain: tuple[Arc, ...]
    epsilons: tuple[float, ...]
    delta0: float
    pruned: bool


@dataclass(frozen=True)
class DistortionEstimate:
    bound: float
    method: str = "total-variation-of-log-derivative"


@dataclass(frozen=True)
class MinimalityResult:
    verdict: str  # "minimal" | "exceptional"
    witnesses: tuple[PeriodicInterval, ...]
    s_max: int
    probe_depth: Optional[int] = None
    probe_max_gap: Optional[float] = None


# -- periodic points ------------------------------------------------------------


def _scan_roots(cmap: CoveringMap, s: int) -> tuple[np.ndarray, np.ndarray]:
    """All fixed points of the s-fold map on [0,1), with their lift offsets."""
    ncells = 1 << (s + 6)
    H = kernels.periodic_residual(s, ncells, cmap.a, cmap.b)
    x = np.linspace(0.0, 1.0, ncells + 1)
    roots: list[float] = []
    offsets: list[int] = []
    exact = H == np.round(H)
    for j in np.nonzero(exact)[0]:
        roots.append(float(x[j]))
        offsets.append(int(round(H[j])))
    k_first = np.ceil(np.minimum(H[:-1], H[1:]))
    k_last = np.floor(np.maximum(H[:-1], H[1:]))
    blo, bhi, bmid, bk = [], [], [], []
    for i in np.nonzero(k_last >= k_first)[0]:
        for k in range(int(k_first[i]), int(k_last[i]) + 1):
            # Strict sign change only; grid hits went through the exact path.
            if (H[i] - k) * (H[i + 1] - k) < 0.0:
                blo.append(x[i])
                bhi.append(x[i + 1])
                bmid.append(0.5 * (x[i] + x[i + 1]))
                bk.append(k)
    if bmid:
        refined = kernels.refine_periodic(
            np.array(bmid), s, np.array(blo), np.array(bhi), cmap.a, cmap.b
        )
        roots.extend(float(r) for r in refined)
        offsets.extend(bk)
    pos = np.array([mod1(r) for r in roots])
    off = np.array(offsets, dtype=np.int64)
    order = np.argsort(pos, kind="stable")
    pos, off = pos[order], off[order]
    keep = np.ones(len(pos), dtype=bool)
    for i in range(1, len(pos)):
        if pos[i] - pos[i - 1] < _DEDUPE:
            keep[i] = False
    if len(pos) > 1 and (1.0 - pos[-1]) + pos[0] < _DEDUPE:
        keep[-1] = False
    return pos[keep], off[keep]


def _prime_divisors(s: int) -> list[int]:
    out = []
    d = 2
    while d * d <= s:
        if s % d == 0:
            out.append(d)
            while s % d == 0:
                s //= d
        d += 1
    if s > 1:
        out.append(s)
    return out


def find_periodic_points(cmap: CoveringMap, s_max: int) -> list[PeriodicPoint]:
    """All periodic points up to period s_max, listed at fundamental period."""
    if s_max > S_MAX_LIMIT:
        raise DepthExceeded(f"s_max {s_max} > {S_MAX_LIMIT}")
    out: list[PeriodicPoint] = []
    d1_zero = float(kernels.d1(np.zeros(1), cmap.a, cmap.b)[0])
    for s in range(1, s_max + 1):
        pos, _ = _scan_roots(cmap, s)
        if len(pos) == 0:
            continue
        fundamental = np.ones(len(pos), dtype=bool)
        for q in _prime_divisors(s):
            sub, _ = kernels.orbit_multiplier(pos, s // q, cmap.a, cmap.b)
            disp = np.abs(sub - pos)
            disp = np.minimum(disp, 1.0 - disp)
            fundamental &= disp > 10.0 * kernels.TOL_ROOT
        pts = pos[fundamental]
        if len(pts) == 0:
            continue
        _, mult = kernels.orbit_multiplier(pts, s, cmap.a, cmap.b)
        sides = _side_behavior(cmap, pts, pos, s)
        for p, m, sb in zip(pts, mult, sides):
            p = float(p)
            m = float(m)
            if p < 10.0 * kernels.TOL_ROOT or 1.0 - p < 10.0 * kernels.TOL_ROOT:
                p = 0.0
                # The family formula pins the derivative at 0 analytically;
                # trust it over the orbit product when it says exactly 1.
                if s == 1 and abs(d1_zero - 1.0) <= 1e-12:
                    m = 1.0
            if m > 1.0 + TOL_MULT:
                cls = "hyperbolic_repelling"
            elif m < 1.0 - TOL_MULT:
                cls = "attracting"
            else:
                cls = "parabolic_candidate"
            out.append(PeriodicPoint(p, s, m, cls, sb))
    out.sort(key=lambda pp: (pp.period, pp.location))
    return out


def _side_behavior(
    cmap: CoveringMap, pts: np.ndarray, all_roots: np.ndarray, s: int
) -> list[tuple[str, str]]:
    """Sign of the s-fold displacement just left/right of each fixed point.

    The probe offset shrinks near neighbouring roots of the same order so it
    never jumps past them; all probes run as one batched orbit evaluation.
    """
    h = np.full(len(pts), 1e-3)
    nroots = len(all_roots)
    if nroots > 1:
        i = np.searchsorted(all_roots, pts)
        i = np.clip(i, 0, nroots - 1)
        prev_d = (pts - all_roots[(i - 1) % nroots]) % 1.0
        next_d = (all_roots[(i + 1) % nroots] - pts) % 1.0
        h = np.minimum(h, np.minimum(prev_d, next_d) / 4.0)
        h = np.maximum(h, 10.0 * _DEDUPE)
    flags_by_sign = []
    for sign in (-1.0, 1.0):
        y = (pts + sign * h) % 1.0
        img, _ = kernels.orbit_multiplier(y, s, cmap.a, cmap.b)
        disp = img - y
        disp -= np.round(disp)
        away = disp * sign > 1e-13
        toward = disp * sign < -1e-13
        flags_by_sign.append(
            [
                "repelling" if a else ("attracting" if t else "indeterminate")
                for a, t in zip(away, toward)
            ]
        )
    return list(zip(flags_by_sign[0], flags_by_sign[1]))


def periodic_to_csv(points: Sequence[PeriodicPoint], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["location", "period", "multiplier", "class"])
        for p in points:
            w.writerow(
                ["%.17g" % p.location, p.period, "%.17g" % p.multiplier, p.classification]
            )


# -- periodic intervals ---------------------------------------------------------


def maximal_periodic_intervals(cmap: CoveringMap, s_max: int) -> list[PeriodicInterval]:
    """Maximal proper arcs mapped onto themselves by some power up to s_max.

    Two adjacent fixed points of the s-fold lift with a common offset bound an
    arc that the power carries onto itself; maximal runs of a constant offset
    give the maximal such arcs.  The root list is doubled to x+1 (offset grows
    by 2^s - 1) so runs through the 0/1 seam are found as well.
    """
    if s_max > S_MAX_LIMIT:
        raise DepthExceeded(f"s_max {s_max} > {S_MAX_LIMIT}")
    found: list[tuple[Arc, int]] = []
    for s in range(1, s_max + 1):
        pos, off = _scan_roots(cmap, s)
        if len(pos) < 2:
            continue
        ext_pos = np.concatenate([pos, pos + 1.0])
        ext_off = np.concatenate([off, off + (1 << s) - 1])
        n = len(pos)
        i = 0
        while i < len(ext_pos):
            j = i
            while j + 1 < len(ext_pos) and ext_off[j + 1] == ext_off[i]:
                j += 1
            if j > i and i < n:
                left, right = float(ext_pos[i]), float(ext_pos[j])
                if right - left < 1.0 - 1e-9:
                    found.append((Arc(mod1(left), mod1(right)), s))
            i = j + 1
    # Containment filter across orders; the smallest order wins equal arcs.
    found.sort(key=lambda fs: fs[1])
    kept: list[tuple[Arc, int]] = []
    for arc, s in found:
        if any(_arc_contains(karc, arc) for karc, _ in kept):
            continue
        kept = [(ka, ks) for ka, ks in kept if not _arc_contains(arc, ka)]
        kept.append((arc, s))
    kept.sort(key=lambda fs: fs[0].left)
    return [PeriodicInterval(arc, s, True) for arc, s in kept]


def _arc_contains(a: Arc, b: Arc, tol: float = 1e-9) -> bool:
    """Closure of arc a contains closure of arc b."""
    db = mod1(b.left - a.left)
    if db > 1.0 - tol:
        db = 0.0
    return db <= a.length + tol and db + b.length <= a.length + tol


# -- semiconjugacy and minimality ------------------------------------------------


def semiconjugacy(cmap: CoveringMap, p: CirclePoint, depth: int) -> CirclePoint:
    """Itinerary coding against the branch cut; intertwines with doubling."""
    if depth > 48:
        raise DepthExceeded(f"depth {depth} > 48")
    m = cmap.branch_cut
    x = mod1(p)
    h = 0.0
    w = 0.5
    for _ in range(depth):
        if x >= m:
            h += w
        w *= 0.5
        x = cmap.eval(x)
    return h


def minimality_test(
    cmap: CoveringMap, s_max: int = 6, probe_depth: int = 10
) -> MinimalityResult:
    """Semi-decision at depth (s_max, probe_depth), reported as such.

    "exceptional" comes with periodic-interval witnesses and is conclusive;
    "minimal" only says no witness exists up to order s_max, and reports how
    dense the backward orbit of 0 is at probe_depth as supporting evidence.
    """
    witnesses = maximal_periodic_intervals(cmap, s_max)
    if witnesses:
        return MinimalityResult("exceptional", tuple(witnesses), s_max)
    grid = preimage_grid(cmap, probe_depth)
    gaps = np.diff(np.concatenate([grid, [1.0]]))
    return MinimalityResult("minimal", (), s_max, probe_depth, float(np.max(gaps)))


# -- the invariant Cantor set ----------------------------------------------------


def _pullback_pairs(
    cmap: CoveringMap, lefts: np.ndarray, rights: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Both inverse-branch images of lift arcs (left_i, right_i).

    Inputs satisfy 0 <= right - left < 1; the output lists the lift arcs of
    the two preimage components, branch 0 first, then branch 1.
    """
    lefts = np.asarray(lefts, dtype=np.float64)
    rights = np.asarray(rights, dtype=np.float64)
    out_l, out_r = [], []
    for j in (0.0, 1.0):
        y = np.concatenate([lefts + j, rights + j])
        y0 = y % 2.0
        shift = (y - y0) / 2.0
        x = kernels.invert(y0, np.zeros_like(y0), np.ones_like(y0), cmap.a, cmap.b)
        x += shift
        half = len(lefts)
        out_l.append(x[:half])
        out_r.append(x[half:])
    return np.concatenate(out_l), np.concatenate(out_r)


def lambda_approx(cmap: CoveringMap, depth: int, s_max: int = 6) -> LambdaApprox:
    """Depth-N gap list for the complement of the invariant Cantor set.

    Level N is the union of all preimages up to order N of the maximal
    periodic intervals.  Only components born at the previous level need
    pulling back: older components already are preimages of their own
    parents, which stay in the list with their original floats.
    """
    if depth > LAMBDA_DEPTH_LIMIT:
        raise DepthExceeded(f"depth {depth} > {LAMBDA_DEPTH_LIMIT}")
    base = maximal_periodic_intervals(cmap, s_max)
    if not base:
        raise NotExceptional(f"no maximal periodic interval up to order {s_max}")
    lefts = np.array([iv.arc.left for iv in base])
    lens = np.array([iv.arc.length for iv in base])
    births = np.zeros(len(base), dtype=np.int64)
    for d in range(1, depth + 1):
        fresh = births == d - 1
        new_l_lift, new_r_lift = _pullback_pairs(
            cmap, lefts[fresh], lefts[fresh] + lens[fresh]
        )
        new_l = new_l_lift % 1.0
        new_len = new_r_lift - new_l_lift
        if d == 1:
            # Base intervals reproduce themselves among their own preimages;
            # keep the original floats and births for those.
            keep = np.ones(len(new_l), dtype=bool)
            for i in range(len(new_l)):
                close = np.abs(lefts - new_l[i])
                close = np.minimum(close, 1.0 - close)
                if np.any((close < 1e-9) & (np.abs(lens - new_len[i]) < 1e-9)):
                    keep[i] = False
            new_l, new_len = new_l[keep], new_len[keep]
        lefts = np.concatenate([lefts, new_l])
        lens = np.concatenate([lens, new_len])
        births = np.concatenate([births, np.full(len(new_len), d, dtype=np.int64)])
    order = np.argsort(lefts, kind="stable")
    lefts, lens, births = lefts[order], lens[order], births[order]
    if len(lefts) > 1:
        if np.any(lefts[:-1] + lens[:-1] > lefts[1:] + 1e-9) or (
            lefts[-1] + lens[-1] > lefts[0] + 1.0 + 1e-9
        ):
            raise RuntimeError("gap pullback produced overlapping components")
    gaps = tuple(Arc(float(l), mod1(l + ln)) for l, ln in zip(lefts, lens))
    return LambdaApprox(
        depth=depth,
        gaps=gaps,
        births=tuple(int(b) for b in births),
        leb_estimate=1.0 - float(np.sum(lens)),
        left_endpoints=lefts.copy(),
        right_endpoints=(lefts + lens) % 1.0,
    )


def lambda_to_csv(lam: LambdaApprox, path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["left", "right", "birth_depth"])
        for arc, b in zip(lam.gaps, lam.births):
            w.writerow(["%.17g" % arc.left, "%.17g" % arc.right, b])


def in_any_gap(lam: LambdaApprox, p: float, tol: float = 1e-9) -> bool:
    """True iff p lies in some open gap, strictly away from its endpoints."""
    p = mod1(p)
    d = (p - lam.left_endpoints) % 1.0
    lens = (lam.right_endpoints - lam.left_endpoints) % 1.0
    return bool(np.any((d > tol) & (d < lens - tol)))


def lambda_periodic_points(
    cmap: CoveringMap, s_max: int, lam: LambdaApprox
) -> list[PeriodicPoint]:
    """Periodic points not interior to any known gap (depth-limited proxy)."""
    return [
        p for p in find_periodic_points(cmap, s_max) if not in_any_gap(lam, p.location)
    ]


# -- nice intervals and chains ---------------------------------------------------


def nice_interval_at(
    cmap: CoveringMap,
    x0: CirclePoint,
    side: Side = "right",
    max_size: float = 0.25,
    orbit_horizon: int = 100,
) -> Arc:
    """An arc with endpoint x0 whose boundary orbits avoid its interior.

    Exceptional case (x0 a fixed point accumulated by the Cantor set): the
    nearest gap endpoint on the chosen side is replaced by the closest point
    of the pulled-back orbit of the base-gap endpoint, which leaves the arc
    clear of that entire boundary set.  Minimal case (x0 = 0): the adjacent
    preimage-grid point of the shallowest degree that fits within max_size.
    The boundary orbits are checked against the interior for orbit_horizon
    iterates either way.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    x0 = mod1(x0)
    witnesses = maximal_periodic_intervals(cmap, 6)
    if not witnesses:
        if circle_dist(x0, 0.0) > 1e-9:
            raise NoNiceIntervalFound(
                "minimal case supports x0 = 0 (grid points are preimages of 0)"
            )
        for degree in range(1, 21):
            grid = preimage_grid(cmap, degree)
            if side == "right":
                z = float(grid[1])
                if z > max_size:
                    continue
                arc = Arc(0.0, z)
            else:
                z = float(grid[-1])
                if 1.0 - z > max_size:
                    continue
                arc = Arc(z, 0.0)
            if _boundary_orbit_clear(cmap, arc, orbit_horizon):
                return arc
        raise NoNiceIntervalFound(f"no grid arc of length <= {max_size} at x0 = 0")

    if circle_dist(cmap.eval(x0), x0) > 1e-9:
        raise NoNiceIntervalFound("x0 is not a fixed point of the covering map")
    lam = cmap._cache.get("nice_lam")
    if lam is None:
        lam = lambda_approx(cmap, 12)
        cmap._cache["nice_lam"] = lam
    best = None  # (distance from x0, endpoint, birth depth)
    for arc, birth in zip(lam.gaps, lam.births):
        z = arc.left if side == "right" else arc.right
        d = mod1(z - x0) if side == "right" else mod1(x0 - z)
        if 1e-12 < d <= max_size and (best is None or d < best[0]):
            best = (d, z, birth)
    if best is None:
        raise NoNiceIntervalFound(
            f"no gap endpoint within {max_size} on the {side} side of {x0}"
        )
    best_d, best_z, birth = best
    # best_z lands on a base-gap endpoint after `birth` steps; sweep the
    # pullbacks of that periodic endpoint and keep the closest point found.
    base0 = witnesses[0].arc
    pts = np.array([mod1(base0.left if side == "right" else base0.right)])
    for _ in range(birth):
        pl, _ = _pullback_pairs(cmap, pts, pts)
        pts = np.unique(pl % 1.0)
        d = (pts - x0) % 1.0 if side == "right" else (x0 - pts) % 1.0
        d[d < 1e-12] = 2.0
        i = int(np.argmin(d))
        if d[i] < best_d:
            best_d = float(d[i])
            best_z = float(pts[i])
    arc = Arc(x0, best_z) if side == "right" else Arc(best_z, x0)
    if arc.length > max_size + 1e-12:
        raise NoNiceIntervalFound("nearest admissible endpoint exceeds max_size")
    if not _boundary_orbit_clear(cmap, arc, orbit_horizon):
        raise NoNiceIntervalFound("boundary orbit enters the candidate interior")
    return arc


def _boundary_orbit_clear(cmap: CoveringMap, arc: Arc, horizon: int) -> bool:
    for endpoint in (arc.left, arc.right):
        x = endpoint
        for _ in range(horizon):
            nxt = cmap.eval(x)
            if circle_dist(nxt, x) <= 1e-11:
                # Parked at a fixed point: the true orbit is constant from
                # here on.  Iterating further only amplifies the rounding
                # error along the unstable direction.
                break
            x = nxt
            d = mod1(x - arc.left)
            if 1e-12 < d < arc.length - 1e-12:
                return False
    return True


def nice_chain(
    cmap: CoveringMap,
    base: Arc,
    x0: CirclePoint,
    n_max: int = 6,
    i_max: int = 8,
    node_budget: int = NODE_BUDGET,
) -> NiceChain:
    """Successive preimage components of a nice arc at x0, with the
    sup-over-pullbacks length sequence.

    epsilons[n] is the largest component length in the pullback tree of
    chain[n], explored i_max levels deep under a shared node budget; when the
    budget prunes the tree the values are lower bounds and pruned is True.
    """
    x0 = mod1(x0)
    chain = [base]
    cur = (base.left, base.length)
    for _ in range(n_max):
        pl, pr = _pullback_pairs(cmap, np.array([cur[0]]), np.array([cur[0] + cur[1]]))
        picked = None
        for l, r in zip(pl, pr):
            lm = mod1(l)
            d = mod1(x0 - lm)
            if d <= (r - l) + 1e-9 or d >= 1.0 - 1e-9:
                picked = (lm, r - l)
                break
        if picked is None:
            raise NoNiceIntervalFound("no preimage component contains x0")
        cur = picked
        chain.append(Arc(cur[0], mod1(cur[0] + cur[1])))
    nodes = 0
    pruned = False
    epsilons = []
    for arc in chain:
        eps = arc.length
        level_l = np.array([arc.left])
        level_r = np.array([arc.left + arc.length])
        for _ in range(i_max):
            if pruned or nodes + len(level_l) > node_budget:
                pruned = True
                break
            nodes += len(level_l)
            level_l, level_r = _pullback_pairs(cmap, level_l, level_r)
            eps = max(eps, float(np.max(level_r - level_l)))
        epsilons.append(eps)
    delta0 = chain[0].length - chain[1].length if len(chain) > 1 else 0.0
    return NiceChain(
        base=base,
        chain=tuple(chain),
        epsilons=tuple(epsilons),
        delta0=delta0,
        pruned=pruned,
    )


# -- distortion ------------------------------------------------------------------


def distortion_bound(cmap: CoveringMap) -> DistortionEstimate:
    """Total variation of log F' over one period; bounds chain distortion."""

    def integrand(x):
        return abs(
            float(kernels.d2(np.array([x]), cmap.a, cmap.b)[0])
            / float(kernels.d1(np.array([x]), cmap.a, cmap.b)[0])
        )

    val, _ = quad(integrand, 0.0, 1.0, epsabs=1e-12, epsrel=1e-6, limit=200)
    return DistortionEstimate(bound=float(val))


def chain_distortion(cmap: CoveringMap, J: Arc, n: int) -> float:
    """sup over x, y in J of the log n-fold multiplier ratio, on a 64-point
    grid; requires J, phi(J), ..., phi^(n-1)(J) pairwise disjoint.
    """
    if n == 0 or J.length == 0.0:
        return 0.0
    arcs = []
    l, length = J.left, J.length
    for _ in range(n):
        if length >= 1.0 - 1e-12:
            raise ChainNotDisjoint("an iterate covers the circle")
        arcs.append((mod1(l), length))
        new_l = cmap.lift(mod1(l))
        new_r = cmap.lift(mod1(l) + length)
        l, length = new_l, new_r - new_l
    arcs.sort()
    for i in range(len(arcs) - 1):
        if arcs[i][0] + arcs[i][1] > arcs[i + 1][0] + 1e-12:
            raise ChainNotDisjoint("chain arcs overlap")
    if len(arcs) > 1 and arcs[-1][0] + arcs[-1][1] > arcs[0][0] + 1.0 + 1e-12:
        raise ChainNotDisjoint("chain arcs overlap across the seam")
    xs = (J.left + J.length * np.linspace(0.0, 1.0, 64)) % 1.0
    _, mult = kernels.orbit_multiplier(xs, n, cmap.a, cmap.b)
    logs = np.log(mult)
    return float(np.max(logs) - np.min(logs))


# -- expansion -------------------------------------------------------------------


def expansion_time(
    cmap: CoveringMap, p: CirclePoint, lambda0: float, k_max: int
) -> Optional[int]:
    """Smallest k <= k_max whose k-fold multiplier at p reaches lambda0."""
    if lambda0 <= 1.0:
        raise ValueError("lambda0 must exceed 1")
    x = mod1(p)
    m = 1.0
    for k in range(1, k_max + 1):
        m *= cmap.lift_d1(x)
        if m >= lambda0:
            return k
        x = cmap.eval(x)
    return None


def nonexpandable_candidates(
    cmap: CoveringMap, s_max: int = 6, k_max: int = 50
) -> list[PeriodicPoint]:
    """Parabolic-candidate periodic points whose multiplier never clears 1."""
    out = []
    for p in find_periodic_points(cmap, s_max):
        if p.classification != "parabolic_candidate":
            continue
        if expansion_time(cmap, p.location, 1.0 + 1e-6, k_max) is None:
            out.append(p)
    return out

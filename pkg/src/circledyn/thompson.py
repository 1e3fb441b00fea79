"""Circle homeomorphisms built from matched pairs of dyadic partitions.

An element carries a source partition (I_1..I_r), a target partition
(J_1..J_r) and a pairing; on each piece it acts as inverse-chart-of-J
composed with chart-of-I.  Pieces are addressed by (degree, index), so
composition and inversion are exact integer bookkeeping: the common
refinement of two dyadic partitions is found by merging endpoint ids
(dyadic intervals are laminar, so the coarsest common refinement is unique),
and transporting a refined piece through an element is a shift-and-offset on
indices.  Floats only enter through evaluation.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional, Sequence

from .circle_maps import CirclePoint, CoveringMap, circle_dist, mod1
from .dyadic import (
    MAX_DEGREE,
    DyadicInterval,
    DyadicPartition,
    chart_apply,
    full_partition,
    grid_point_index,
    interval_by_index,
    interval_of_point,
)
from .errors import DepthExceeded, InvalidElement, NeighborhoodTooSmall

_CONTINUITY_TOL = 1e-8


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: str = ""
    piece: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class ThompsonElement:
    """Piecewise-chart homeomorphism; kept unreduced (see normalize)."""

    source: DyadicPartition
    target: DyadicPartition
    pairing: tuple[int, ...]

    @property
    def cmap(self) -> CoveringMap:
        return self.source.intervals[0].cmap

    def __len__(self) -> int:
        return len(self.source)


def element(
    source: Sequence[DyadicInterval],
    target: Sequence[DyadicInterval],
    pairing: Sequence[int],
) -> ThompsonElement:
    """Assemble an element; partitions are stored sorted by circle position."""
    pairs = list(zip(source, pairing))
    pairs.sort(key=lambda sp: sp[0].left)
    tgt = sorted(target, key=lambda iv: iv.left)
    tgt_pos = {(iv.degree, iv.index): i for i, iv in enumerate(tgt)}
    src = tuple(sp[0] for sp in pairs)
    remap = tuple(
        tgt_pos[(target[j].degree, target[j].index)] for _, j in pairs
    )
    return ThompsonElement(DyadicPartition(src), DyadicPartition(tuple(tgt)), remap)


def identity_element(cmap: CoveringMap) -> ThompsonElement:
    part = full_partition(cmap, 1)
    return ThompsonElement(part, part, (0, 1))


def validate(g: ThompsonElement) -> ValidationResult:
    """Check the element invariants; reports the first violated piece."""
    r = len(g.source)
    if r == 0 or len(g.target) != r or len(g.pairing) != r:
        return ValidationResult(False, "source/target/pairing lengths differ")
    if sorted(g.pairing) != list(range(r)):
        return ValidationResult(False, "pairing is not a permutation")
    cmap = g.source.intervals[0].cmap
    for name, part in (("source", g.source), ("target", g.target)):
        for i, iv in enumerate(part):
            if iv.cmap is not cmap:
                return ValidationResult(False, f"{name} mixes covering maps", i)
        lefts = [iv.left for iv in part]
        if any(lefts[i] >= lefts[i + 1] for i in range(r - 1)):
            return ValidationResult(False, f"{name} intervals not in cyclic order")
        if not part.cover:
            for i in range(r):
                if part[i].right_id() != part[(i + 1) % r].left_id():
                    return ValidationResult(
                        False, f"{name} is not a partition (endpoint chain breaks)", i
                    )
            return ValidationResult(False, f"{name} lengths do not sum to 1")
    base = g.pairing[0]
    for i in range(r):
        if g.pairing[i] != (base + i) % r:
            return ValidationResult(
                False, "pairing does not preserve cyclic order", i
            )
    # Numerical cross-check of continuity at shared endpoints: the right
    # endpoint image under piece i must meet the left endpoint image under
    # piece i+1.  With chained partitions and a cyclic pairing this is the
    # same grid point reached along two root-solving paths.
    for i in range(r):
        j, jn = g.pairing[i], g.pairing[(i + 1) % r]
        a = mod1(g.target[j].right)
        bpt = mod1(g.target[jn].left)
        if circle_dist(a, bpt) > _CONTINUITY_TOL:
            return ValidationResult(False, "discontinuity at shared endpoint", i)
    return ValidationResult(True)


def eval_and_slope(g: ThompsonElement, p: CirclePoint) -> tuple[CirclePoint, float]:
    """Apply g and return (g(p), g'(p)).

    Piece lookup at a shared endpoint resolves to the counterclockwise side;
    the slope is the chart-derivative ratio from the chain rule.
    """
    r = len(g.source)
    p = mod1(p)
    if r == 1:
        piece = 0
    else:
        lefts = [iv.left for iv in g.source]
        piece = bisect_right(lefts, p) - 1
        if piece < 0:  # defensive; lefts[0] is 0.0 for any partition
            piece = r - 1
    src = g.source[piece]
    tgt = g.target[g.pairing[piece]]
    t = chart_apply(src, p, "forward")
    q = chart_apply(tgt, t, "inverse")
    cmap = src.cmap
    num = cmap.iterate_with_multiplier(p, src.degree)[1]
    den = cmap.iterate_with_multiplier(q, tgt.degree)[1]
    return q, num / den


def evaluate(g: ThompsonElement, p: CirclePoint) -> CirclePoint:
    return eval_and_slope(g, p)[0]


def _refinement(pa: DyadicPartition, pb: DyadicPartition) -> list[DyadicInterval]:
    """Coarsest common refinement of two partitions of the same map."""
    by_left: dict[tuple[int, int], DyadicInterval] = {}
    endpoints: dict[tuple[int, int], float] = {}
    for part in (pa, pb):
        for iv in part:
            lid = iv.left_id()
            endpoints.setdefault(lid, iv.left)
            # Finer interval wins the left-id slot; checked against right ids below.
            cur = by_left.get(lid)
            if cur is None or iv.degree > cur.degree:
                by_left[lid] = iv
    order = sorted(endpoints, key=lambda eid: endpoints[eid])
    out = []
    for i, eid in enumerate(order):
        nxt = order[(i + 1) % len(order)]
        iv = by_left.get(eid)
        if iv is None or iv.right_id() != nxt:
            raise InvalidElement("partitions do not refine laminarly")
        out.append(iv)
    return out


def _containing_piece(part: DyadicPartition, piece: DyadicInterval) -> int:
    for i, iv in enumerate(part):
        if iv.contains_id(piece):
            return i
    raise InvalidElement("refined piece escapes the partition")


def _transport(g: ThompsonElement, piece: DyadicInterval) -> tuple[int, int]:
    """Image id of a piece nested inside one source interval of g."""
    i = _containing_piece(g.source, piece)
    src = g.source[i]
    tgt = g.target[g.pairing[i]]
    drop = piece.degree - src.degree
    pos = piece.index - (src.index << drop)
    out_degree = tgt.degree + drop
    if out_degree > MAX_DEGREE:
        raise DepthExceeded(f"transport needs degree {out_degree} > {MAX_DEGREE}")
    return out_degree, (tgt.index << drop) + pos


def compose(g: ThompsonElement, h: ThompsonElement) -> ThompsonElement:
    """The element acting as p -> g(h(p))."""
    for gg in (g, h):
        v = validate(gg)
        if not v:
            raise InvalidElement(v.reason)
    cmap = g.cmap
    refined = _refinement(h.target, g.source)
    hinv = ThompsonElement(h.target, h.source, _invert_permutation(h.pairing))
    src_ids = [_transport(hinv, piece) for piece in refined]
    tgt_ids = [_transport(g, piece) for piece in refined]
    src = [interval_by_index(cmap, d, k) for d, k in src_ids]
    tgt = [interval_by_index(cmap, d, k) for d, k in tgt_ids]
    return element(src, tgt, list(range(len(src))))


def _invert_permutation(pairing: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(pairing)
    for i, j in enumerate(pairing):
        out[j] = i
    return tuple(out)


def invert(g: ThompsonElement) -> ThompsonElement:
    v = validate(g)
    if not v:
        raise InvalidElement(v.reason)
    return ThompsonElement(g.target, g.source, _invert_permutation(g.pairing))


def normalize(g: ThompsonElement) -> ThompsonElement:
    """Cancel matched sibling pairs until none remain (on-demand reduction)."""
    src = list(g.source)
    tgt = list(g.target)
    pairing = list(g.pairing)
    changed = True
    while changed and len(src) > 1:
        changed = False
        r = len(src)
        for i in range(r):
            i2 = (i + 1) % r
            if pairing[i2] != (pairing[i] + 1) % r:
                continue
            s1, s2 = src[i], src[i2]
            t1, t2 = tgt[pairing[i]], tgt[pairing[i2]]
            if not _siblings(s1, s2) or not _siblings(t1, t2):
                continue
            cmap = s1.cmap
            new_src = DyadicInterval(
                cmap, s1.degree - 1, s1.index // 2, s1.left, s2.right
            )
            new_tgt = DyadicInterval(
                cmap, t1.degree - 1, t1.index // 2, t1.left, t2.right
            )
            keep = [k for k in range(r) if k not in (i, i2)]
            ns = [src[k] for k in keep] + [new_src]
            nt_ids = [tgt[pairing[k]] for k in keep] + [new_tgt]
            g2 = element(ns, nt_ids, list(range(len(ns))))
            src = list(g2.source)
            tgt = list(g2.target)
            pairing = list(g2.pairing)
            changed = True
            break
    return ThompsonElement(DyadicPartition(tuple(src)), DyadicPartition(tuple(tgt)), tuple(pairing))


def _siblings(u: DyadicInterval, v: DyadicInterval) -> bool:
    return (
        u.degree == v.degree
        and u.degree > 0
        and u.index % 2 == 0
        and v.index == u.index + 1
    )


# -- local powers ---------------------------------------------------------------


def build_local_power(
    cmap: CoveringMap, x: CirclePoint, s: int, n: int
) -> ThompsonElement:
    """An element equal to the s-fold covering map on a neighborhood of x.

    The one or two degree-n pieces at x map forward to degree-(n-s) pieces;
    both sides are completed by the coarsest dyadic tiling of the complement
    and the piece counts equalized by splitting the coarsest complementary
    target tile (ties: earliest after the distinguished block).  n is deepened
    to s+2 (grid point) / s+1 (interior) when the requested value cannot
    leave room for the completion.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    if s == 0:
        return identity_element(cmap)
    x = mod1(x)
    n_eff = max(n, s + 2)
    if n_eff > MAX_DEGREE:
        raise DepthExceeded(f"degree {n_eff} > {MAX_DEGREE}")
    gi = grid_point_index(cmap, n_eff, x)
    total = 1 << n_eff
    if gi is None:
        n_eff = max(n, s + 1)
        total = 1 << n_eff
        chosen = [interval_of_point(cmap, n_eff, x).index]
    else:
        chosen = [(gi - 1) % total, gi % total]
    base_t = n_eff - s
    total_t = 1 << base_t
    images = [k % total_t for k in chosen]
    if len(set(images)) != len(images):
        raise NeighborhoodTooSmall("chosen pieces collide after s forward steps")

    src_tiles = _coarsest_tiling((chosen[-1] + 1) % total, total - len(chosen), n_eff)
    tgt_tiles = _coarsest_tiling((images[-1] + 1) % total_t, total_t - len(images), base_t)

    src_ids = [(n_eff, k) for k in chosen] + src_tiles
    tgt_ids = [(base_t, j) for j in images] + tgt_tiles
    lead = len(chosen)
    while len(tgt_ids) < len(src_ids):
        tgt_ids = _split_coarsest(tgt_ids, lead)
    while len(src_ids) < len(tgt_ids):
        src_ids = _split_coarsest(src_ids, lead)

    src = [interval_by_index(cmap, d, k) for d, k in src_ids]
    tgt = [interval_by_index(cmap, d, k) for d, k in tgt_ids]
    out = element(src, tgt, list(range(len(src))))

    # Behavioral post-condition: the element really is the s-fold map on a
    # neighborhood of x.  Probe halfway toward both ends of the distinguished
    # block (wrap-aware: the block may straddle 0).
    probes = []
    dl = mod1(x - interval_by_index(cmap, n_eff, chosen[0]).left)
    dr = mod1(interval_by_index(cmap, n_eff, chosen[-1]).right - x)
    if dl > 0:
        probes.append(mod1(x - dl / 2.0))
    if dr > 0:
        probes.append(mod1(x + dr / 2.0))
    for y in probes:
        want = cmap.iterate_with_multiplier(y, s)[0]
        got = evaluate(out, y)
        if circle_dist(want, got) > 1e-8:
            raise NeighborhoodTooSmall(
                f"orbit of {y} escapes the chart block (try larger n)"
            )
    return out


def _coarsest_tiling(start: int, count: int, bits: int) -> list[tuple[int, int]]:
    """Greedy coarsest dyadic tiling of `count` base cells from `start`."""
    out = []
    p = start
    remaining = count
    total = 1 << bits
    while remaining > 0:
        pa = p % total
        align = bits if pa == 0 else (pa & -pa).bit_length() - 1
        j = min(align, remaining.bit_length() - 1, bits)
        out.append((bits - j, pa >> j))
        p += 1 << j
        remaining -= 1 << j
    return out


def _split_coarsest(ids: list[tuple[int, int]], lead: int) -> list[tuple[int, int]]:
    """Split the coarsest complementary tile (after position `lead`)."""
    tail = ids[lead:]
    if not tail:
        raise NeighborhoodTooSmall("no complementary tile available to split")
    best = min(range(len(tail)), key=lambda i: tail[i][0])
    d, k = tail[best]
    if d + 1 > MAX_DEGREE:
        raise DepthExceeded(f"equalization needs degree {d + 1} > {MAX_DEGREE}")
    tail = tail[:best] + [(d + 1, 2 * k), (d + 1, 2 * k + 1)] + tail[best + 1 :]
    return ids[:lead] + tail


# -- serialization --------------------------------------------------------------


def element_to_json(g: ThompsonElement) -> str:
    v = validate(g)
    if not v:
        raise InvalidElement(f"cannot serialize invalid element: {v.reason}")
    return json.dumps(
        {
            "source": [[iv.degree, iv.index] for iv in g.source],
            "target": [[iv.degree, iv.index] for iv in g.target],
            "offset": g.pairing[0],
        }
    )


def element_from_json(text: str, cmap: CoveringMap) -> ThompsonElement:
    doc = json.loads(text)
    src = [interval_by_index(cmap, d, k) for d, k in doc["source"]]
    tgt = [interval_by_index(cmap, d, k) for d, k in doc["target"]]
    r = len(src)
    offset = int(doc["offset"]) % r
    pairing = [(offset + i) % r for i in range(r)]
    return element(src, tgt, pairing)

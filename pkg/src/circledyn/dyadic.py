"""Dyadic interval structure of a degree-2 covering and its chart maps.

Degree-n intervals are the closed arcs between consecutive points of the
n-fold preimage of 0.  Intervals are addressed combinatorially by
(degree, index); floats are carried along for evaluation but equality never
compares them.  The chart of a degree-n interval is the n-fold map onto
[0, 1]; its inverse walks the binary digits of the index through the two
monotone inverse branches, one well-conditioned solve per level.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from . import kernels
from .circle_maps import CirclePoint, CoveringMap, mod1
from .errors import DepthExceeded, OutOfDomain

MAX_DEGREE = 24

_ENDPOINT_TOL = 1e-12


def preimage_grid(cmap: CoveringMap, n: int) -> np.ndarray:
    """The 2^n points of the n-fold preimage of 0, sorted, starting at 0.0.

    Built breadth-first through the two inverse branches, so the count is
    2^n by construction.  Cached on the map.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > MAX_DEGREE:
        raise DepthExceeded(f"grid degree {n} > {MAX_DEGREE}")
    key = ("grid", n)
    if key not in cmap._cache:
        if n == 0:
            cmap._cache[key] = np.zeros(1)
        else:
            prev = preimage_grid(cmap, n - 1)
            m = cmap.branch_cut
            lo0 = np.zeros_like(prev)
            hi0 = np.full_like(prev, m)
            left_half = kernels.invert(prev, lo0, hi0, cmap.a, cmap.b)
            right_half = kernels.invert(
                prev + 1.0, np.full_like(prev, m), np.ones_like(prev), cmap.a, cmap.b
            )
            grid = np.concatenate([left_half, right_half])
            grid[0] = 0.0
            cmap._cache[key] = grid
    return cmap._cache[key]


def reduce_endpoint(degree: int, k: int) -> tuple[int, int]:
    """Canonical (degree, index) id of the grid point k / 'slot k' at a degree.

    Endpoint k of the degree-n grid (k in [0, 2^n]) reduces by halving while
    even; the circle point 1 collapses to (0, 0).
    """
    while degree > 0 and k % 2 == 0:
        degree -= 1
        k //= 2
    if degree == 0:
        k = 0
    return degree, k


@dataclass(frozen=True, eq=False)
class DyadicInterval:
    """Closed degree-n interval [left, right] with combinatorial identity.

    Equality and hashing use (degree, index) relative to the same covering
    map; the floats are derived data.
    """

    cmap: CoveringMap
    degree: int
    index: int
    left: CirclePoint
    right: float  # lift coordinate; 1.0 for the last interval of a degree

    def __eq__(self, other):
        return (
            isinstance(other, DyadicInterval)
            and self.cmap is other.cmap
            and self.degree == other.degree
            and self.index == other.index
        )

    def __hash__(self):
        return hash((id(self.cmap), self.degree, self.index))

    @property
    def length(self) -> float:
        return self.right - self.left

    def left_id(self) -> tuple[int, int]:
        return reduce_endpoint(self.degree, self.index)

    def right_id(self) -> tuple[int, int]:
        return reduce_endpoint(self.degree, self.index + 1)

    def contains_id(self, other: "DyadicInterval") -> bool:
        """True iff other is nested inside self (laminar containment)."""
        shift = other.degree - self.degree
        return shift >= 0 and (other.index >> shift) == self.index


def interval_by_index(cmap: CoveringMap, degree: int, index: int) -> DyadicInterval:
    """Construct the interval (degree, index) by digit descent (no full grid)."""
    if degree < 0 or degree > MAX_DEGREE:
        raise DepthExceeded(f"degree {degree} outside [0, {MAX_DEGREE}]")
    if not 0 <= index < (1 << degree):
        raise ValueError(f"index {index} outside [0, 2^{degree})")
    left = _descend(cmap, degree, index, 0.0)
    right = _descend(cmap, degree, index, 1.0)
    return DyadicInterval(cmap, degree, index, left, right)


def _descend(cmap: CoveringMap, degree: int, index: int, t: float) -> float:
    """Apply the inverse-branch word of (degree, index) to t in [0, 1]."""
    m = cmap.branch_cut
    u = float(t)
    for j in range(degree):
        bit = (index >> j) & 1
        lo, hi = (0.0, m) if bit == 0 else (m, 1.0)
        u = float(
            kernels.invert(
                np.array([u + bit]), np.array([lo]), np.array([hi]), cmap.a, cmap.b
            )[0]
        )
    return u


def chart_apply(
    interval: DyadicInterval,
    value: float,
    direction: Literal["forward", "inverse"] = "forward",
) -> float:
    """Chart of the interval: forward maps I onto [0,1], inverse comes back.

    Forward output uses the lift, so the endpoints land exactly on 0 and 1;
    inverse output is a circle point (the right endpoint of the last interval
    comes back as 0.0).
    """
    cmap = interval.cmap
    if direction == "forward":
        p = float(value)
        if interval.right == 1.0 and p == 0.0:
            p = 1.0
        if p < interval.left - _ENDPOINT_TOL or p > interval.right + _ENDPOINT_TOL:
            raise OutOfDomain(
                f"{value} not in degree-{interval.degree} interval "
                f"[{interval.left}, {interval.right}]"
            )
        t = cmap.lift_iter(p, interval.degree) - interval.index
        return min(max(t, 0.0), 1.0)
    if direction == "inverse":
        t = float(value)
        if t < -_ENDPOINT_TOL or t > 1.0 + _ENDPOINT_TOL:
            raise OutOfDomain(f"chart coordinate {value} outside [0, 1]")
        t = min(max(t, 0.0), 1.0)
        return mod1(_descend(cmap, interval.degree, interval.index, t))
    raise ValueError("direction must be 'forward' or 'inverse'")


def split(interval: DyadicInterval) -> tuple[DyadicInterval, DyadicInterval]:
    """The two degree-(n+1) children, split at the next-level grid point."""
    if interval.degree >= MAX_DEGREE:
        raise DepthExceeded(f"cannot split below degree {MAX_DEGREE}")
    cmap = interval.cmap
    mid = _descend(cmap, interval.degree, interval.index, cmap.branch_cut)
    n, k = interval.degree + 1, 2 * interval.index
    return (
        DyadicInterval(cmap, n, k, interval.left, mid),
        DyadicInterval(cmap, n, k + 1, mid, interval.right),
    )


@dataclass(frozen=True)
class DyadicPartition:
    """Cyclic sequence of dyadic intervals tiling the circle."""

    intervals: tuple[DyadicInterval, ...]
    cover: bool = False

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))
        object.__setattr__(self, "cover", self._check_cover())

    def _check_cover(self) -> bool:
        ivs = self.intervals
        if not ivs:
            return False
        chained = all(
            ivs[i].right_id() == ivs[(i + 1) % len(ivs)].left_id()
            for i in range(len(ivs))
        )
        total = sum(iv.length for iv in ivs)
        return chained and abs(total - 1.0) <= 1e-9

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, i):
        return self.intervals[i]


def full_partition(cmap: CoveringMap, degree: int) -> DyadicPartition:
    """The partition by all 2^degree intervals of one degree."""
    grid = preimage_grid(cmap, degree)
    n = len(grid)
    ivs = [
        DyadicInterval(cmap, degree, k, float(grid[k]),
                       float(grid[k + 1]) if k + 1 < n else 1.0)
        for k in range(n)
    ]
    return DyadicPartition(tuple(ivs))


def partition_to_csv(intervals: Iterable[DyadicInterval], path: str) -> None:
    """Write rows degree,index,left,right (17 significant digits)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["degree", "index", "left", "right"])
        for iv in intervals:
            w.writerow([iv.degree, iv.index, "%.17g" % iv.left, "%.17g" % iv.right])


def interval_of_point(cmap: CoveringMap, degree: int, p: float) -> DyadicInterval:
    """The degree-n interval whose half-open [left, right) span contains p."""
    grid = preimage_grid(cmap, degree)
    p = mod1(p)
    k = int(np.searchsorted(grid, p, side="right")) - 1
    right = float(grid[k + 1]) if k + 1 < len(grid) else 1.0
    return DyadicInterval(cmap, degree, k, float(grid[k]), right)


def grid_point_index(cmap: CoveringMap, degree: int, p: float, tol: float = 1e-9):
    """Index of p in the degree-n grid if it is a grid point, else None."""
    grid = preimage_grid(cmap, degree)
    p = mod1(p)
    k = int(np.searchsorted(grid, p))
    for cand in (k - 1, k, k + 1):
        if 0 <= cand < len(grid) and abs(grid[cand] - p) <= tol:
            return cand
    if p > 1.0 - tol:
        return 0
    return None

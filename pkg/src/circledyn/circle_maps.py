"""Points, arcs, and degree-2 covering maps of the circle.

Circle points are plain floats in [0, 1) (additive coordinates); ``mod1`` and
``circle_dist`` provide the wrap-aware arithmetic.  A covering map is stored
through its lift F(x) = 2x + sum a_k sin(2 pi k x) + sum b_k (1 - cos(2 pi k x)),
so F(0) = 0 and F(x+1) = F(x) + 2 hold by construction and first/second
derivatives are analytic, never finite differences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import NonMonotoneLift

CirclePoint = float

_MONOTONE_GRID = 4096


def mod1(x: float) -> CirclePoint:
    """Reduce to [0, 1); exact at integers (mod1(1.0) == 0.0)."""
    return float(x) % 1.0


def circle_dist(p: float, q: float) -> float:
    d = abs(mod1(p) - mod1(q))
    return min(d, 1.0 - d)


def wrap_half(d: float) -> float:
    """Wrap a displacement to (-1/2, 1/2]."""
    d = float(d)
    return d - round(d)


@dataclass(frozen=True)
class Arc:
    """Open arc (left, right) traversed counterclockwise; wraps through 0 freely."""

    left: CirclePoint
    right: CirclePoint

    def __post_init__(self):
        object.__setattr__(self, "left", mod1(self.left))
        object.__setattr__(self, "right", mod1(self.right))
        if self.left == self.right:
            raise ValueError("degenerate arc: endpoints coincide")

    @property
    def length(self) -> float:
        return mod1(self.right - self.left) or 1.0

    def contains(self, p: float) -> bool:
        p = mod1(p)
        return p != self.left and mod1(p - self.left) < mod1(self.right - self.left)


@dataclass(frozen=True)
class SmoothnessReport:
    fixes_zero: bool
    unit_derivative_at_zero: bool
    flat_second_at_zero: bool
    monotone: bool
    degree_two: bool

    @property
    def valid(self) -> bool:
        return self.monotone and self.degree_two and self.fixes_zero


@dataclass(frozen=True, eq=False)
class CoveringMap:
    """Degree-2 circle covering, immutable; safe to share across threads."""

    a: np.ndarray
    b: np.ndarray
    family_tag: str = "trig"
    _cache: dict = field(default_factory=dict, repr=False)

    # -- lift-level evaluation ------------------------------------------------

    def lift(self, x: float) -> float:
        return float(kernels.lift(np.array([x], dtype=np.float64), self.a, self.b)[0])

    def lift_d1(self, x: float) -> float:
        return float(kernels.d1(np.array([x], dtype=np.float64), self.a, self.b)[0])

    def lift_d2(self, x: float) -> float:
        return float(kernels.d2(np.array([x], dtype=np.float64), self.a, self.b)[0])

    def lift_iter(self, x: float, n: int) -> float:
        return float(
            kernels.lift_iter(np.array([x], dtype=np.float64), n, self.a, self.b)[0]
        )

    # -- circle-level operations ----------------------------------------------

    def eval(self, p: CirclePoint) -> CirclePoint:
        return mod1(self.lift(mod1(p)))

    def derivative(self, p: CirclePoint, order: int = 1) -> float:
        if order == 1:
            return self.lift_d1(mod1(p))
        if order == 2:
            return self.lift_d2(mod1(p))
        raise ValueError("order must be 1 or 2")

    @property
    def branch_cut(self) -> CirclePoint:
        """The nonzero preimage of 0: the point m with F(m) = 1."""
        if "branch_cut" not in self._cache:
            x = kernels.invert(
                np.array([1.0]), np.array([0.0]), np.array([1.0]), self.a, self.b
            )
            self._cache["branch_cut"] = float(x[0])
        return self._cache["branch_cut"]

    def inverse_branch(self, y: CirclePoint, branch: int) -> CirclePoint:
        """Preimage of y on branch 0 (in [0, m)) or branch 1 (in [m, 1))."""
        if branch not in (0, 1):
            raise ValueError("branch must be 0 or 1")
        y = mod1(y)
        m = self.branch_cut
        lo, hi = (0.0, m) if branch == 0 else (m, 1.0)
        x = kernels.invert(
            np.array([y + branch]), np.array([lo]), np.array([hi]), self.a, self.b
        )
        return mod1(x[0]) if branch == 1 and x[0] >= 1.0 else float(x[0])

    def iterate_with_multiplier(self, p: CirclePoint, n: int) -> tuple[CirclePoint, float]:
        if n < 0:
            raise ValueError("n must be >= 0")
        pos, mult = kernels.orbit_multiplier(
            np.array([mod1(p)], dtype=np.float64), n, self.a, self.b
        )
        return mod1(pos[0]), float(mult[0])

    def smoothness_report(self, tol: float = 1e-9) -> SmoothnessReport:
        if tol <= 0:
            raise ValueError("tol must be positive")
        grid = np.arange(2 * _MONOTONE_GRID) / (2 * _MONOTONE_GRID)
        deriv = kernels.d1(grid, self.a, self.b)
        return SmoothnessReport(
            fixes_zero=abs(self.lift(0.0)) <= tol,
            unit_derivative_at_zero=abs(self.lift_d1(0.0) - 1.0) <= tol,
            flat_second_at_zero=abs(self.lift_d2(0.0)) <= tol,
            monotone=bool(np.min(deriv) > 0.0),
            degree_two=abs(self.lift(1.0) - self.lift(0.0) - 2.0) <= tol,
        )

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {"family": self.family_tag, "a": list(self.a), "b": list(self.b)}
        )


def make_trig_map(a: Sequence[float] = (), b: Sequence[float] = ()) -> CoveringMap:
    """Build a covering map from trig-polynomial lift coefficients.

    Raises NonMonotoneLift if F' fails to be positive on a 4096-point grid
    plus midpoints (a sampled certificate; adversarial high-frequency
    coefficient lists can evade it).
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    grid = np.arange(2 * _MONOTONE_GRID) / (2 * _MONOTONE_GRID)
    deriv = kernels.d1(grid, a, b)
    if np.min(deriv) <= 0.0:
        bad = float(grid[int(np.argmin(deriv))])
        raise NonMonotoneLift(f"F'({bad}) = {np.min(deriv)} <= 0")
    return CoveringMap(a=a, b=b)


def map_from_json(text: str) -> CoveringMap:
    doc = json.loads(text)
    if doc.get("family") != "trig":
        raise ValueError(f"unknown map family: {doc.get('family')!r}")
    return make_trig_map(doc.get("a", []), doc.get("b", []))


# -- built-in families ---------------------------------------------------------


def doubling() -> CoveringMap:
    """F(x) = 2x."""
    return make_trig_map([], [])


def parabolic_doubling() -> CoveringMap:
    """F(x) = 2x - sin(2 pi x)/(2 pi): F'(0) = 1, F''(0) = 0, expanding off 0."""
    return make_trig_map([-1.0 / (2.0 * np.pi)], [])


def gapped_family(c: float = 1.5) -> CoveringMap:
    """F(x) = 2x - c sin(2 pi x)/(2 pi): F'(0) = 2 - c.

    For 1 < c < 2 the fixed point 0 attracts, so the induced action is
    non-minimal and an invariant Cantor set appears.
    """
    return make_trig_map([-c / (2.0 * np.pi)], [])

"""Vectorized numpy implementations of the lift kernels.

All kernel entry points take 1-D float64 arrays for the moving coordinate and
the trig coefficient vectors ``a`` (sine terms) and ``b`` (1-cos terms).  The
lift is F(x) = 2x + sum_k a_k sin(2 pi k x) + sum_k b_k (1 - cos(2 pi k x)),
which satisfies F(x+1) = F(x) + 2 identically, so degree two is exact in
floating point up to rounding of the periodic part.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi

# Hybrid solver constants: bisection down to BISECT_WIDTH, then Newton capped
# at NEWTON_CAP steps.  TOL_ROOT is the guaranteed absolute tolerance on lift
# coordinates; the polish loop usually lands near machine precision.
TOL_ROOT = 1e-13
BISECT_WIDTH = 1e-9
NEWTON_CAP = 30


def lift(x, a, b):
    out = 2.0 * np.asarray(x, dtype=np.float64)
    for k in range(a.shape[0]):
        out = out + a[k] * np.sin(TWO_PI * (k + 1) * x)
    for k in range(b.shape[0]):
        out = out + b[k] * (1.0 - np.cos(TWO_PI * (k + 1) * x))
    return out


def d1(x, a, b):
    out = np.full_like(np.asarray(x, dtype=np.float64), 2.0)
    for k in range(a.shape[0]):
        w = TWO_PI * (k + 1)
        out = out + w * a[k] * np.cos(w * x)
    for k in range(b.shape[0]):
        w = TWO_PI * (k + 1)
        out = out + w * b[k] * np.sin(w * x)
    return out


def d2(x, a, b):
    out = np.zeros_like(np.asarray(x, dtype=np.float64))
    for k in range(a.shape[0]):
        w = TWO_PI * (k + 1)
        out = out - w * w * a[k] * np.sin(w * x)
    for k in range(b.shape[0]):
        w = TWO_PI * (k + 1)
        out = out + w * w * b[k] * np.cos(w * x)
    return out


def lift_iter(x, n, a, b):
    """n-fold lift composition F^n(x), unreduced."""
    out = np.asarray(x, dtype=np.float64).copy()
    for _ in range(n):
        out = lift(out, a, b)
    return out


def orbit_multiplier(x, n, a, b):
    """Mod-1 orbit endpoint and chain-rule multiplier after n steps."""
    pos = np.asarray(x, dtype=np.float64) % 1.0
    mult = np.ones_like(pos)
    for _ in range(n):
        mult = mult * d1(pos, a, b)
        pos = lift(pos, a, b) % 1.0
    return pos, mult


def invert(y, lo, hi, a, b):
    """Solve F(x) = y for x in [lo, hi] elementwise; F monotone increasing.

    Returns x with |F(x) - y| <= TOL_ROOT (typically ~1e-16).  Caller must
    supply true brackets; a small slack (1e-9) absorbs rounding at the ends.
    """
    y = np.asarray(y, dtype=np.float64)
    lo = np.array(lo, dtype=np.float64, copy=True)
    hi = np.array(hi, dtype=np.float64, copy=True)
    flo = lift(lo, a, b) - y
    fhi = lift(hi, a, b) - y
    bad = (flo > 1e-9) | (fhi < -1e-9)
    if np.any(bad):
        raise _bracket_error()
    # Endpoint hits (grid targets produce these exactly).
    done_lo = flo >= 0.0
    done_hi = fhi <= 0.0
    x = np.where(done_hi, hi, lo)
    x = np.where(done_lo, lo, x)
    active = ~(done_lo | done_hi)
    if not np.any(active):
        return x
    lo = np.where(active, lo, x)
    hi = np.where(active, hi, x)
    while np.max(hi - lo) > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        fm = lift(mid, a, b) - y
        take_hi = fm < 0.0
        lo = np.where(active & take_hi, mid, lo)
        hi = np.where(active & ~take_hi, mid, hi)
    xa = 0.5 * (lo + hi)
    for _ in range(NEWTON_CAP):
        f = lift(xa, a, b) - y
        if np.all(np.abs(f) < 1e-15):
            break
        step = f / d1(xa, a, b)
        xn = np.clip(xa - step, lo, hi)
        if np.all(np.abs(xn - xa) < 1e-16 * (1.0 + np.abs(xa))):
            xa = xn
            break
        xa = xn
    # Mop-up: guarantee TOL_ROOT by further bisection on stragglers.
    f = lift(xa, a, b) - y
    guard = 0
    while np.any(np.abs(f) > TOL_ROOT) and guard < 80:
        take_hi = f < 0.0
        lo = np.where(take_hi, xa, lo)
        hi = np.where(take_hi, hi, xa)
        xa = 0.5 * (lo + hi)
        f = lift(xa, a, b) - y
        guard += 1
    return np.where(active, xa, x)


def periodic_residual(s, ncells, a, b):
    """F^s(x) - x (lift residual) on the uniform grid j/ncells, j=0..ncells."""
    x = np.linspace(0.0, 1.0, ncells + 1)
    t = x.copy()
    for _ in range(s):
        t = lift(t, a, b)
    return t - x


def refine_periodic(x0, s, lo, hi, a, b):
    """Polish roots of the period-s circle condition inside brackets.

    The residual is the mod-1 orbit displacement wrapped to (-1/2, 1/2],
    which avoids the 2^s amplification of raw lift residuals; its derivative
    is multiplier - 1.  Safeguarded by the sign-bracket from the scan.
    """
    x = np.array(x0, dtype=np.float64, copy=True)
    lo = np.array(lo, dtype=np.float64, copy=True)
    hi = np.array(hi, dtype=np.float64, copy=True)

    def resid(pts):
        pos = pts % 1.0
        mult = np.ones_like(pos)
        for _ in range(s):
            mult = mult * d1(pos, a, b)
            pos = lift(pos, a, b) % 1.0
        dsp = pos - (pts % 1.0)
        return dsp - np.round(dsp), mult - 1.0

    slo, _ = resid(lo)
    for _ in range(NEWTON_CAP + 20):
        f, df = resid(x)
        if np.all(np.abs(f) < 1e-15):
            break
        newton_ok = np.abs(df) > 1e-8
        step = np.where(newton_ok, -f / np.where(newton_ok, df, 1.0), 0.0)
        xn = np.clip(x + step, lo, hi)
        # Bisection fallback where Newton is degenerate or stalled.
        stalled = ~newton_ok | (np.abs(xn - x) < 1e-17)
        same_side = np.sign(f) == np.sign(slo)
        lo = np.where(stalled & same_side, x, lo)
        hi = np.where(stalled & ~same_side, x, hi)
        xn = np.where(stalled & (np.abs(f) > 1e-15), 0.5 * (lo + hi), xn)
        x = xn
    return x


def _bracket_error():
    from ..errors import RootNotBracketed

    return RootNotBracketed("lift value outside bracket; covering map invalid")

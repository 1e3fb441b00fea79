"""Numba-jitted implementations of the lift kernels.

Same entry points and semantics as :mod:`.numpy_backend`; scalar cores are
jitted and the array drivers loop (``prange`` where elements are independent,
so results are bit-reproducible regardless of thread count).  No fastmath:
determinism across backends matters more than the last few percent.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

from ..errors import RootNotBracketed

TWO_PI = 2.0 * np.pi
TOL_ROOT = 1e-13
BISECT_WIDTH = 1e-9
NEWTON_CAP = 30


@njit(cache=True)
def _flift(x, a, b):
    out = 2.0 * x
    for k in range(a.shape[0]):
        out += a[k] * np.sin(TWO_PI * (k + 1) * x)
    for k in range(b.shape[0]):
        out += b[k] * (1.0 - np.cos(TWO_PI * (k + 1) * x))
    return out


@njit(cache=True)
def _fd1(x, a, b):
    out = 2.0
    for k in range(a.shape[0]):
        w = TWO_PI * (k + 1)
        out += w * a[k] * np.cos(w * x)
    for k in range(b.shape[0]):
        w = TWO_PI * (k + 1)
        out += w * b[k] * np.sin(w * x)
    return out


@njit(cache=True)
def _fd2(x, a, b):
    out = 0.0
    for k in range(a.shape[0]):
        w = TWO_PI * (k + 1)
        out -= w * w * a[k] * np.sin(w * x)
    for k in range(b.shape[0]):
        w = TWO_PI * (k + 1)
        out += w * w * b[k] * np.cos(w * x)
    return out


@njit(cache=True)
def lift(x, a, b):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _flift(x[i], a, b)
    return out


@njit(cache=True)
def d1(x, a, b):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _fd1(x[i], a, b)
    return out


@njit(cache=True)
def d2(x, a, b):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _fd2(x[i], a, b)
    return out


@njit(cache=True)
def lift_iter(x, n, a, b):
    out = x.copy()
    for i in range(out.shape[0]):
        t = out[i]
        for _ in range(n):
            t = _flift(t, a, b)
        out[i] = t
    return out


@njit(cache=True, parallel=True)
def orbit_multiplier(x, n, a, b):
    pos = np.empty(x.shape[0])
    mult = np.empty(x.shape[0])
    for i in prange(x.shape[0]):
        p = x[i] % 1.0
        m = 1.0
        for _ in range(n):
            m *= _fd1(p, a, b)
            p = _flift(p, a, b) % 1.0
        pos[i] = p
        mult[i] = m
    return pos, mult


@njit(cache=True)
def _invert_scalar(y, lo, hi, a, b):
    flo = _flift(lo, a, b) - y
    fhi = _flift(hi, a, b) - y
    if flo > 1e-9 or fhi < -1e-9:
        return lo, False
    if flo >= 0.0:
        return lo, True
    if fhi <= 0.0:
        return hi, True
    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if _flift(mid, a, b) - y < 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(NEWTON_CAP):
        f = _flift(x, a, b) - y
        if abs(f) < 1e-15:
            return x, True
        xn = x - f / _fd1(x, a, b)
        if xn < lo:
            xn = lo
        elif xn > hi:
            xn = hi
        if abs(xn - x) < 1e-16 * (1.0 + abs(x)):
            return xn, True
        x = xn
    guard = 0
    f = _flift(x, a, b) - y
    while abs(f) > TOL_ROOT and guard < 80:
        if f < 0.0:
            lo = x
        else:
            hi = x
        x = 0.5 * (lo + hi)
        f = _flift(x, a, b) - y
        guard += 1
    return x, True


@njit(cache=True, parallel=True)
def _invert_batch(y, lo, hi, a, b):
    n = y.shape[0]
    out = np.empty(n)
    ok = np.empty(n, dtype=np.bool_)
    for i in prange(n):
        out[i], ok[i] = _invert_scalar(y[i], lo[i], hi[i], a, b)
    return out, ok


def invert(y, lo, hi, a, b):
    y = np.ascontiguousarray(y, dtype=np.float64)
    lo = np.ascontiguousarray(np.broadcast_to(lo, y.shape), dtype=np.float64)
    hi = np.ascontiguousarray(np.broadcast_to(hi, y.shape), dtype=np.float64)
    out, ok = _invert_batch(y, lo, hi, a, b)
    if not np.all(ok):
        raise RootNotBracketed("lift value outside bracket; covering map invalid")
    return out


@njit(cache=True, parallel=True)
def periodic_residual(s, ncells, a, b):
    out = np.empty(ncells + 1)
    for j in prange(ncells + 1):
        x = j / ncells
        t = x
        for _ in range(s):
            t = _flift(t, a, b)
        out[j] = t - x
    return out


@njit(cache=True)
def _orbit_resid(x, s, a, b):
    pos = x % 1.0
    mult = 1.0
    for _ in range(s):
        mult *= _fd1(pos, a, b)
        pos = _flift(pos, a, b) % 1.0
    dsp = pos - (x % 1.0)
    return dsp - np.round(dsp), mult - 1.0


@njit(cache=True, parallel=True)
def refine_periodic(x0, s, lo, hi, a, b):
    n = x0.shape[0]
    out = np.empty(n)
    for i in prange(n):
        x = x0[i]
        llo = lo[i]
        lhi = hi[i]
        slo, _ = _orbit_resid(llo, s, a, b)
        for _ in range(NEWTON_CAP + 20):
            f, df = _orbit_resid(x, s, a, b)
            if abs(f) < 1e-15:
                break
            if abs(df) > 1e-8:
                xn = x - f / df
                if xn < llo:
                    xn = llo
                elif xn > lhi:
                    xn = lhi
            else:
                xn = x
            if abs(xn - x) < 1e-17:
                # Newton degenerate or stalled: take a safeguarded bisection step.
                if np.sign(f) == np.sign(slo):
                    llo = x
                else:
                    lhi = x
                xn = 0.5 * (llo + lhi)
            x = xn
        out[i] = x
    return out

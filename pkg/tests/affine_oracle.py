"""Independent piecewise-affine oracle for elements over the doubling map.

For the doubling map the degree-n interval (n, i) is exactly
[i/2^n, (i+1)/2^n] and its chart is x -> 2^n x - i, so an element is the
affine map x -> (2^n x - i + j) / 2^m on each source piece.  Everything here
is exact rational arithmetic straight off the combinatorial data; no chart,
lift, or root-finding code from the package is involved.
"""

from __future__ import annotations

from fractions import Fraction


def oracle_pieces(g):
    """Exact (lo, hi, slope, intercept) per source piece, sorted by lo."""
    pieces = []
    for k, iv in enumerate(g.source.intervals):
        n, i = iv.degree, iv.index
        jv = g.target.intervals[g.pairing[k]]
        m, j = jv.degree, jv.index
        lo = Fraction(i, 2**n)
        hi = Fraction(i + 1, 2**n)
        slope = Fraction(2**n, 2**m)
        intercept = Fraction(j, 2**m) - slope * lo
        pieces.append((lo, hi, slope, intercept))
    return pieces


def oracle_eval(g, x: float) -> Fraction:
    """Exact image of x (a float, hence a dyadic rational) under g."""
    fx = Fraction(x)
    if not 0 <= fx < 1:
        fx %= 1
    for lo, hi, slope, intercept in oracle_pieces(g):
        if lo <= fx <= hi:
            return (slope * fx + intercept) % 1
    raise AssertionError(f"{x} not covered by any source piece")


def oracle_slope(g, x: float) -> Fraction:
    fx = Fraction(x) % 1
    for lo, hi, slope, _ in oracle_pieces(g):
        if lo < fx < hi:
            return slope
    raise AssertionError(f"{x} sits on a breakpoint")


def is_power_of_two(q: Fraction) -> bool:
    """True iff q = 2^k for some integer k (possibly negative)."""
    num, den = q.numerator, q.denominator
    return num > 0 and (num & (num - 1)) == 0 and (den & (den - 1)) == 0


def is_dyadic(q: Fraction) -> bool:
    den = q.denominator
    return (den & (den - 1)) == 0

"""Shared fixtures and the random element builder used across the suite."""

from __future__ import annotations

import numpy as np
import pytest

from circledyn import (
    ThompsonElement,
    doubling,
    element,
    full_partition,
    gapped_family,
    parabolic_doubling,
    split,
)


@pytest.fixture(scope="session")
def doubling_map():
    return doubling()


@pytest.fixture(scope="session")
def parabolic_map():
    return parabolic_doubling()


@pytest.fixture(scope="session")
def gapped_map():
    return gapped_family()


@pytest.fixture(scope="session")
def all_maps(doubling_map, parabolic_map, gapped_map):
    return {
        "doubling": doubling_map,
        "parabolic": parabolic_map,
        "gapped": gapped_map,
    }


def _refined_pieces(cmap, rng, n_splits, max_degree):
    pieces = list(full_partition(cmap, 1).intervals)
    done = 0
    while done < n_splits:
        if all(iv.degree >= max_degree for iv in pieces):
            break
        k = int(rng.integers(len(pieces)))
        if pieces[k].degree >= max_degree:
            continue
        pieces[k : k + 1] = list(split(pieces[k]))
        done += 1
    return pieces


def random_element(cmap, rng, max_degree: int = 4, n_splits=None) -> ThompsonElement:
    """Random element: matched refinements of the base partition, rotated.

    Splitting keeps both piece lists sorted by circle position, so a rotation
    pairing is automatically orientation preserving.
    """
    if n_splits is None:
        n_splits = int(rng.integers(0, 5))
    src = _refined_pieces(cmap, rng, n_splits, max_degree)
    tgt = _refined_pieces(cmap, rng, n_splits, max_degree)
    assert len(src) == len(tgt)
    r = len(src)
    off = int(rng.integers(r))
    return element(src, tgt, [(k + off) % r for k in range(r)])


def sample_interior_points(g: ThompsonElement, rng, per_piece: int = 3) -> np.ndarray:
    """Points strictly inside source pieces, away from the breakpoints."""
    xs = []
    for iv in g.source.intervals:
        t = rng.uniform(0.02, 0.98, size=per_piece)
        xs.extend(iv.left + t * (iv.right - iv.left))
    return np.array(xs) % 1.0

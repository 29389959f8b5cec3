"""Shared test fixtures and independent oracles.

The oracle functions here re-derive cover membership and edges from the
written definition (pairwise distances, greedy first-uncovered scan, set
intersection) using different code paths than the library, so agreement is
meaningful.
"""

from __future__ import annotations

import numpy as np
import pytest

from ballmapper import PointCloud


def oracle_cover(points: np.ndarray, epsilon: float, order) -> list:
    """Greedy cover by the book: list of (landmark, member-set) in order."""
    n = len(points)
    covered = set()
    balls = []
    for p in order:
        if p in covered:
            continue
        members = {q for q in range(n)
                   if np.linalg.norm(points[p] - points[q]) <= epsilon}
        balls.append((int(p), members))
        covered |= members
    return balls


def oracle_edges(balls: list) -> set:
    """All 1-based id pairs of balls with intersecting member sets."""
    out = set()
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            if balls[i][1] & balls[j][1]:
                out.add((i + 1, j + 1))
    return out


@pytest.fixture
def line_cloud() -> PointCloud:
    """Three collinear points 0, 1, 1.8: two overlapping balls at radius 1."""
    return PointCloud(points=np.array([[0.0], [1.0], [1.8]]))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)

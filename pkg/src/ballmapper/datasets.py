"""Small built-in example clouds with known, hand-checkable graphs.

These exist so documentation, tests, and UI fixtures can all drill into
the same graph and see the same numbers, without shipping data files.
"""

from __future__ import annotations

import numpy as np

from .cloud import PointCloud

__all__ = ["drilldown_example", "DRILLDOWN_EPSILON", "DRILLDOWN_BALL"]

DRILLDOWN_EPSILON = 1.0
DRILLDOWN_BALL = 44


def drilldown_example() -> PointCloud:
    """A 45-point cloud whose natural-order cover has a known ball 44.

    The first 43 points are mutually distant anchors, each becoming its own
    single-member ball. Points 44 and 45 sit within one radius of each
    other but far from everything else, so at epsilon 1 the scan makes them
    ball 44 together: two members with opposite-sign X3 (the ``x3_pos``
    flag colors it 0.5) and outcomes engineered to a within-ball standard
    deviation of exactly 0.277.

    Build with the natural point order (no permutation) to get this shape.
    """
    d = 5
    n_anchors = 43
    points = np.zeros((n_anchors + 2, d))
    # Anchors on a sparse line, > 2 radii apart, with some X3 variety.
    points[:n_anchors, 0] = 3.0 * np.arange(n_anchors)
    points[:n_anchors, 2] = np.where(np.arange(n_anchors) % 2, 1.0, -1.0)
    # The close pair: 0.5 apart, X3 signs opposite.
    base = 3.0 * n_anchors
    points[n_anchors] = (base, 0.0, 0.2, 0.0, 0.0)
    points[n_anchors + 1] = (base + 0.3, 0.0, -0.2, 0.0, 0.0)

    outcome = points.sum(axis=1)
    pair_mean = outcome[n_anchors:].mean()
    outcome[n_anchors] = pair_mean + 0.277
    outcome[n_anchors + 1] = pair_mean - 0.277
    flag = (points[:, 2] > 0).astype(np.int8)
    return PointCloud(points=points, outcome=outcome,
                      binary_flags={"x3_pos": flag})

"""Point clouds, the Euclidean metric, and column-wise preprocessing.

A :class:`PointCloud` is an immutable n-by-d coordinate matrix plus optional
per-point payload: a scalar outcome used for coloration, and named binary
flags (0/1 vectors) used for proportion coloration. All coordinates are held
as 64-bit floats and must be finite.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping, Sequence

import numpy as np


class ConstantColumnWarning(UserWarning):
    """Min-max normalization met a zero-range column; its values map to 0."""


class Metric(Enum):
    """Distance functions available for ball membership.

    Only Euclidean ships. Anything added here must be symmetric, nonnegative,
    zero exactly on identical coordinates, and satisfy the triangle
    inequality; the cover construction relies on nothing else.
    """

    EUCLIDEAN = "euclidean"


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class PointCloud:
    """An immutable point cloud with optional outcome and binary flags.

    Parameters
    ----------
    points : (n, d) array
        One row per point, one column per axis. Finite values only.
    axis_names : sequence of str, optional
        Defaults to ``X1..Xd``.
    point_ids : sequence, optional
        Stable, unique per-point identifiers. Defaults to ``1..n``.
    outcome : (n,) array, optional
        Scalar outcome value per point.
    binary_flags : mapping of str to (n,) array, optional
        Each vector must contain only 0s and 1s.
    """

    points: np.ndarray
    axis_names: tuple[str, ...] = ()
    point_ids: tuple = ()
    outcome: np.ndarray | None = None
    binary_flags: Mapping[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError(f"points must be 2-D, got shape {pts.shape}")
        n, d = pts.shape
        if n < 1 or d < 1:
            raise ValueError(f"need at least 1 point and 1 axis, got {n}x{d}")
        if not np.isfinite(pts).all():
            raise ValueError("points contain NaN or Inf")
        object.__setattr__(self, "points", _readonly(pts))

        names = tuple(self.axis_names) or tuple(f"X{j + 1}" for j in range(d))
        if len(names) != d:
            raise ValueError(f"expected {d} axis names, got {len(names)}")
        object.__setattr__(self, "axis_names", names)

        ids = tuple(self.point_ids) or tuple(range(1, n + 1))
        if len(ids) != n:
            raise ValueError(f"expected {n} point ids, got {len(ids)}")
        if len(set(ids)) != n:
            raise ValueError("point_ids must be unique")
        object.__setattr__(self, "point_ids", ids)

        if self.outcome is not None:
            y = np.asarray(self.outcome, dtype=np.float64)
            if y.shape != (n,):
                raise ValueError(f"outcome must have length {n}, got {y.shape}")
            if not np.isfinite(y).all():
                raise ValueError("outcome contains NaN or Inf")
            object.__setattr__(self, "outcome", _readonly(y))

        flags = {}
        for name, v in dict(self.binary_flags).items():
            v = np.asarray(v, dtype=np.float64)
            if v.shape != (n,):
                raise ValueError(f"flag {name!r} must have length {n}")
            if not np.isin(v, (0.0, 1.0)).all():
                raise ValueError(f"flag {name!r} must contain only 0 and 1")
            flags[name] = _readonly(v)
        object.__setattr__(self, "binary_flags", flags)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def with_points(self, points: np.ndarray) -> "PointCloud":
        """Same payload (ids, outcome, flags) over replaced coordinates."""
        return replace(self, points=points)

    def with_outcome(self, outcome: np.ndarray) -> "PointCloud":
        return replace(self, outcome=outcome)

    def with_flag(self, name: str, values: np.ndarray) -> "PointCloud":
        flags = dict(self.binary_flags)
        flags[name] = values
        return replace(self, binary_flags=flags)


def distance(a: Sequence[float], b: Sequence[float],
             metric: Metric = Metric.EUCLIDEAN) -> float:
    """Distance between two coordinate rows of equal dimension."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if metric is not Metric.EUCLIDEAN:
        raise ValueError(f"unsupported metric: {metric}")
    diff = a - b
    return float(np.sqrt(np.dot(diff, diff)))


def distances_from(points: np.ndarray, index: int) -> np.ndarray:
    """Euclidean distances from row `index` to every row of `points`.

    The single distance kernel shared by the naive cover builder and the
    precomputed fast path, so both produce bit-identical memberships.
    """
    diff = points - points[index]
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def pairwise_distances(points: np.ndarray) -> np.ndarray:
    """Full (n, n) Euclidean distance matrix, row by row.

    Row i equals ``distances_from(points, i)`` bit for bit; a radius sweep
    can threshold this one matrix at each epsilon instead of recomputing
    distances.
    """
    n = len(points)
    out = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        out[i] = distances_from(points, i)
    return out


def normalize_minmax(cloud: PointCloud) -> PointCloud:
    """Map each column affinely onto [0, 1].

    Constant columns map to all zeros and raise a
    :class:`ConstantColumnWarning` naming them; a silent midpoint would
    invent structure where the data has none. Idempotent on clouds without
    constant columns. Ids, outcome and flags pass through unchanged.
    """
    pts = cloud.points
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = hi - lo
    flat = span == 0
    if flat.any():
        names = [cloud.axis_names[j] for j in np.flatnonzero(flat)]
        warnings.warn(
            f"constant column(s) {names} normalized to all zeros",
            ConstantColumnWarning,
            stacklevel=2,
        )
    safe = np.where(flat, 1.0, span)
    out = (pts - lo) / safe
    out[:, flat] = 0.0
    return cloud.with_points(out)


def winsorize(cloud: PointCloud, lower_q: float, upper_q: float) -> PointCloud:
    """Clamp each column at its empirical lower/upper quantiles.

    Quantiles use linear interpolation between order statistics. Requires
    ``0 <= lower_q < 0.5`` and ``0.5 < upper_q <= 1``; (0, 1) is a no-op.
    """
    if not (0 <= lower_q < 0.5):
        raise ValueError(f"lower_q must be in [0, 0.5), got {lower_q}")
    if not (0.5 < upper_q <= 1):
        raise ValueError(f"upper_q must be in (0.5, 1], got {upper_q}")
    pts = cloud.points
    lo = np.quantile(pts, lower_q, axis=0)
    hi = np.quantile(pts, upper_q, axis=0)
    return cloud.with_points(np.clip(pts, lo, hi))

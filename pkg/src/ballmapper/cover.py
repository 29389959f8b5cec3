"""Greedy epsilon-net covers and the ball graph built on them.

The cover scans the points in a caller-supplied order; the first point not
yet inside any ball becomes the next landmark, and its ball collects every
point of the cloud within ``epsilon`` (inclusive), covered or not. The scan
ends when no uncovered point remains, so every point lands in at least one
ball and any two landmarks sit strictly more than ``epsilon`` apart.

Randomness never enters here: permuting the input order is the only source
of variation, which keeps every construction replayable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .cloud import Metric, PointCloud, distances_from


@dataclass(frozen=True)
class Ball:
    """One cover element: a landmark point and everything within epsilon.

    ``ball_id`` is 1-based creation order and is the label shown on plots.
    ``landmark_index`` and ``members`` are row indices into the cloud;
    the landmark is always among the members.
    """

    ball_id: int
    landmark_index: int
    members: np.ndarray

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Cover:
    """A complete ball cover of a cloud."""

    balls: tuple[Ball, ...]
    epsilon: float
    order: np.ndarray
    metric: Metric
    n_points: int

    @property
    def landmarks(self) -> np.ndarray:
        return np.array([b.landmark_index for b in self.balls])

    def membership_matrix(self) -> np.ndarray:
        """Boolean (n_balls, n_points) matrix; row b marks ball b's members."""
        m = np.zeros((len(self.balls), self.n_points), dtype=bool)
        for i, ball in enumerate(self.balls):
            m[i, ball.members] = True
        return m


@dataclass(frozen=True)
class BallGraph:
    """Cover plus the intersection edges between its balls.

    Edges are unordered ``(ball_id, ball_id)`` pairs with the smaller id
    first; an edge exists exactly when two balls share at least one point.
    ``colors`` stays None until an aggregation fills it.
    """

    cover: Cover
    edges: frozenset
    ball_sizes: np.ndarray
    colors: np.ndarray | None = None

    @property
    def n_balls(self) -> int:
        return len(self.cover.balls)

    def with_colors(self, colors: np.ndarray) -> "BallGraph":
        colors = np.asarray(colors, dtype=np.float64)
        if colors.shape != (self.n_balls,):
            raise ValueError(f"expected {self.n_balls} colors, got {colors.shape}")
        return replace(self, colors=colors)


def _check_order(order, n: int) -> np.ndarray:
    order = np.asarray(order, dtype=np.intp)
    if order.shape != (n,) or not np.array_equal(np.sort(order), np.arange(n)):
        raise ValueError("order must be a permutation of all point indices")
    return order


def build_cover(cloud: PointCloud, epsilon: float,
                order: Sequence[int] | None = None,
                metric: Metric = Metric.EUCLIDEAN) -> Cover:
    """Build the greedy ball cover of ``cloud`` at radius ``epsilon``.

    ``order`` is a permutation of row indices (default: natural order).
    Deterministic: identical (cloud, epsilon, order, metric) always yields
    the identical cover.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if metric is not Metric.EUCLIDEAN:
        raise ValueError(f"unsupported metric: {metric}")
    n = cloud.n
    order = np.arange(n) if order is None else _check_order(order, n)

    covered = np.zeros(n, dtype=bool)
    balls = []
    for p in order:
        if covered[p]:
            continue
        inside = distances_from(cloud.points, p) <= epsilon
        members = np.flatnonzero(inside)
        balls.append(Ball(ball_id=len(balls) + 1, landmark_index=int(p),
                          members=members))
        covered |= inside
    return Cover(balls=tuple(balls), epsilon=float(epsilon), order=order,
                 metric=metric, n_points=n)


def _edges_from_membership(membership: np.ndarray) -> frozenset:
    """Edges (1-based id pairs) between balls sharing at least one point.

    Walks the points that sit in two or more balls; every such point
    witnesses an edge for each pair of its balls, which is exactly the
    nonempty-intersection condition.
    """
    counts = membership.sum(axis=0)
    cols = np.ascontiguousarray(membership.T)
    edges = set()
    for p in np.flatnonzero(counts >= 2):
        ids = np.flatnonzero(cols[p]) + 1
        edges.update(combinations(ids.tolist(), 2))
    return frozenset(edges)


def build_edges(cover: Cover) -> BallGraph:
    """Detect all pairwise ball intersections and assemble the graph."""
    membership = cover.membership_matrix()
    sizes = membership.sum(axis=1)
    return BallGraph(cover=cover, edges=_edges_from_membership(membership),
                     ball_sizes=sizes)


def point_to_ball_map(cover: Cover, point_ids: Sequence | None = None) -> dict:
    """Invert ball membership into ``point_id -> [ball_id, ...]``.

    Points in an intersection map to every ball containing them. Ids default
    to the 1-based sequence matching :class:`PointCloud`'s default; pass
    ``cloud.point_ids`` when the cloud carries custom identifiers.
    """
    if point_ids is None:
        point_ids = tuple(range(1, cover.n_points + 1))
    if len(point_ids) != cover.n_points:
        raise ValueError(f"expected {cover.n_points} point ids")
    mapping = {pid: [] for pid in point_ids}
    for ball in cover.balls:
        for idx in ball.members:
            mapping[point_ids[idx]].append(ball.ball_id)
    return mapping


def ball_degree_profile(graph: BallGraph) -> np.ndarray:
    """Connection count per ball, indexed by ``ball_id - 1``."""
    deg = np.zeros(graph.n_balls, dtype=np.int64)
    for a, b in graph.edges:
        deg[a - 1] += 1
        deg[b - 1] += 1
    return deg


class CoverEngine:
    """Repeated cover construction over one (cloud, epsilon, metric).

    Precomputes every point's membership row once with the same distance
    kernel as :func:`build_cover`, so covers built here are bit-identical to
    the naive path while each permutation costs only boolean scans. Meant
    for permutation repetitions and radius sweeps; for a one-off graph the
    plain functions are the clearer choice.
    """

    def __init__(self, cloud: PointCloud, epsilon: float,
                 metric: Metric = Metric.EUCLIDEAN,
                 distances: np.ndarray | None = None):
        """``distances`` may supply a precomputed matrix from
        :func:`ballmapper.cloud.pairwise_distances`, letting a radius sweep
        share one computation across engines."""
        if not epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {epsilon}")
        if metric is not Metric.EUCLIDEAN:
            raise ValueError(f"unsupported metric: {metric}")
        self.cloud = cloud
        self.epsilon = float(epsilon)
        self.metric = metric
        n = cloud.n
        if distances is not None:
            if distances.shape != (n, n):
                raise ValueError(f"distance matrix must be {(n, n)}")
            within = distances <= epsilon
        else:
            within = np.empty((n, n), dtype=bool)
            for i in range(n):
                within[i] = distances_from(cloud.points, i) <= epsilon
        self._within = within

    def _landmarks(self, order: np.ndarray) -> list[int]:
        covered = np.zeros(self.cloud.n, dtype=bool)
        landmarks = []
        pos = 0
        n = self.cloud.n
        while pos < n:
            uncovered = ~covered[order[pos:]]
            hit = int(np.argmax(uncovered))
            if not uncovered[hit]:
                break
            pos += hit
            p = int(order[pos])
            landmarks.append(p)
            covered |= self._within[p]
            pos += 1
        return landmarks

    def scan(self, order: np.ndarray) -> tuple[list[int], np.ndarray]:
        """Landmark indices and their membership rows for one permutation.

        The raw-array path for repetition loops; ``order`` must already be
        a valid permutation array. Row i of the returned matrix marks the
        members of ball i+1.
        """
        landmarks = self._landmarks(order)
        return landmarks, self._within[landmarks]

    def cover(self, order: Sequence[int] | None = None) -> Cover:
        n = self.cloud.n
        order = np.arange(n) if order is None else _check_order(order, n)
        balls = tuple(
            Ball(ball_id=i + 1, landmark_index=p,
                 members=np.flatnonzero(self._within[p]))
            for i, p in enumerate(self._landmarks(order))
        )
        return Cover(balls=balls, epsilon=self.epsilon, order=order,
                     metric=self.metric, n_points=n)

    def graph(self, order: Sequence[int] | None = None) -> BallGraph:
        n = self.cloud.n
        order = np.arange(n) if order is None else _check_order(order, n)
        landmarks = self._landmarks(order)
        membership = self._within[landmarks]
        balls = tuple(
            Ball(ball_id=i + 1, landmark_index=p,
                 members=np.flatnonzero(membership[i]))
            for i, p in enumerate(landmarks)
        )
        cover = Cover(balls=balls, epsilon=self.epsilon, order=order,
                      metric=self.metric, n_points=n)
        return BallGraph(cover=cover,
                         edges=_edges_from_membership(membership),
                         ball_sizes=membership.sum(axis=1))

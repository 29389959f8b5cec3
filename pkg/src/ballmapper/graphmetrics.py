"""Summary measures of a single ball graph.

One row of numbers per graph: how many balls, how unequal their sizes,
how wide the color range, how many isolated balls, and how densely the
connected ones link up. Averaged over many landmark permutations these
become stable descriptors of the cloud itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cover import BallGraph, ball_degree_profile

__all__ = ["GraphMetrics", "compute_metrics", "metrics_from_membership",
           "metrics_from_parts"]


@dataclass(frozen=True)
class GraphMetrics:
    """The measurement row for one graph.

    ``avg_connections_connected`` is the mean degree among balls having at
    least one connection — ``2 * total_connections / (balls - zero)`` — and
    0 when every ball is isolated.
    """

    balls: int
    min_size: int
    max_size: int
    mean_size: float
    delta_size: int
    min_col: float
    max_col: float
    delta_col: float
    zero_connection_balls: int
    total_connections: int
    avg_connections_connected: float

    @property
    def connections_per_connected_ball(self) -> float:
        """Total connections divided by the connected-ball count (0 if none).

        The classic summary-table convention: each connection counts once,
        not once per endpoint, so this is half the mean degree and can drop
        below 1 (a graph of isolated linked pairs scores 0.5).
        """
        connected = self.balls - self.zero_connection_balls
        return self.total_connections / connected if connected > 0 else 0.0

    def as_dict(self) -> dict:
        return {
            "balls": self.balls,
            "min_size": self.min_size,
            "max_size": self.max_size,
            "mean_size": self.mean_size,
            "delta_size": self.delta_size,
            "min_col": self.min_col,
            "max_col": self.max_col,
            "delta_col": self.delta_col,
            "zero_connection_balls": self.zero_connection_balls,
            "total_connections": self.total_connections,
            "avg_connections_connected": self.avg_connections_connected,
        }


def _assemble(sizes: np.ndarray, colors: np.ndarray, degrees: np.ndarray,
              n_edges: int) -> GraphMetrics:
    balls = len(sizes)
    zero = int(np.count_nonzero(degrees == 0))
    connected = balls - zero
    avg = 2.0 * n_edges / connected if connected > 0 else 0.0
    return GraphMetrics(
        balls=balls,
        min_size=int(sizes.min()),
        max_size=int(sizes.max()),
        mean_size=float(sizes.mean()),
        delta_size=int(sizes.max() - sizes.min()),
        min_col=float(colors.min()),
        max_col=float(colors.max()),
        delta_col=float(colors.max() - colors.min()),
        zero_connection_balls=zero,
        total_connections=n_edges,
        avg_connections_connected=avg,
    )


def compute_metrics(graph: BallGraph, colors=None) -> GraphMetrics:
    """Measure one graph; ``colors`` defaults to the graph's own."""
    if colors is None:
        colors = graph.colors
    if colors is None:
        raise ValueError("graph has no colors; pass aggregated values")
    colors = np.asarray(colors, dtype=np.float64)
    if colors.shape != (graph.n_balls,):
        raise ValueError(f"expected {graph.n_balls} color values")
    return _assemble(np.asarray(graph.ball_sizes), colors,
                     ball_degree_profile(graph), len(graph.edges))


def metrics_from_parts(sizes, colors, edges, n_balls: int) -> GraphMetrics:
    """Measure a graph given only sizes, colors, and its edge list.

    Serves deserialized graphs, which carry no membership matrix; the
    numbers match :func:`compute_metrics` on the original graph.
    """
    sizes = np.asarray(sizes)
    degrees = np.zeros(n_balls, dtype=np.int64)
    for a, b in edges:
        degrees[a - 1] += 1
        degrees[b - 1] += 1
    return _assemble(sizes, np.asarray(colors, dtype=np.float64), degrees,
                     len(edges))


def metrics_from_membership(membership: np.ndarray,
                            colors: np.ndarray) -> GraphMetrics:
    """Measure a graph straight from its boolean membership matrix.

    Array fast path for repetition loops: intersection counts come from one
    matrix product instead of explicit edge sets. float32 keeps the product
    in BLAS and stays exact (counts are small integers), so the numbers
    match :func:`compute_metrics` on the assembled graph.
    """
    m = membership.astype(np.float32)
    inter = m @ m.T
    adjacent = inter > 0.5
    np.fill_diagonal(adjacent, False)
    degrees = adjacent.sum(axis=1)
    n_edges = int(np.count_nonzero(adjacent)) // 2
    return _assemble(membership.sum(axis=1), np.asarray(colors, dtype=np.float64),
                     degrees, n_edges)

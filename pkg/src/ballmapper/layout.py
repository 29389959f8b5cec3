"""Deterministic 2-D placement of ball graphs.

A spring/repulsion scheme in the Fruchterman–Reingold style, run for a
fixed iteration budget from seed-determined starting positions. There is
no convergence test on purpose: a hard budget plus a fixed seed makes the
same graph lay out bit-identically every time, anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cover import BallGraph

__all__ = ["LayoutResult", "layout", "scale_sizes"]

DEFAULT_SEED = 123
DEFAULT_ITERATIONS = 60


@dataclass(frozen=True)
class LayoutResult:
    """Per-ball plot geometry: positions, display radii, and the seed used."""

    positions: np.ndarray
    radii: np.ndarray
    seed: int


def scale_sizes(member_counts, r_min: float = 0.02,
                r_max: float = 0.10) -> np.ndarray:
    """Map member counts affinely onto display radii in [r_min, r_max].

    All-equal counts land on the midpoint radius; otherwise the map is
    strictly increasing in count.
    """
    counts = np.asarray(member_counts, dtype=np.float64)
    if counts.size == 0:
        raise ValueError("need at least one ball")
    if not 0 < r_min <= r_max:
        raise ValueError("need 0 < r_min <= r_max")
    lo, hi = counts.min(), counts.max()
    if hi > lo:
        return r_min + (counts - lo) / (hi - lo) * (r_max - r_min)
    return np.full_like(counts, (r_min + r_max) / 2.0)


def layout(graph: BallGraph, seed: int = DEFAULT_SEED,
           iterations: int = DEFAULT_ITERATIONS) -> LayoutResult:
    """Lay out ``graph`` deterministically from ``seed``.

    Repulsion k²/d between every pair, attraction d²/k along edges, with a
    linearly cooling displacement cap; k = 1/sqrt(n_balls), so an isolated
    connected pair settles near separation k. A single ball sits at the
    origin, and every layout is recentered on its centroid.
    """
    b = graph.n_balls
    radii = scale_sizes(graph.ball_sizes)
    if b == 1:
        return LayoutResult(positions=np.zeros((1, 2)), radii=radii, seed=seed)

    rng = np.random.default_rng(seed)
    pos = rng.random((b, 2)) - 0.5
    k = 1.0 / np.sqrt(b)
    edges = np.array(sorted(graph.edges), dtype=np.int64) - 1
    t0 = 0.1
    for it in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt(np.einsum("ijk,ijk->ij", delta, delta))
        np.fill_diagonal(dist, 1.0)
        np.clip(dist, 1e-9, None, out=dist)
        disp = np.einsum("ijk,ij->ik", delta, k * k / dist**2)
        if len(edges):
            a, c = edges[:, 0], edges[:, 1]
            dvec = pos[a] - pos[c]
            d = np.clip(np.sqrt(np.einsum("ij,ij->i", dvec, dvec)), 1e-9, None)
            pull = dvec * (d / k)[:, None]
            np.add.at(disp, a, -pull)
            np.add.at(disp, c, pull)
        length = np.clip(np.sqrt(np.einsum("ij,ij->i", disp, disp)), 1e-12, None)
        temperature = t0 * (1.0 - it / iterations)
        pos += disp / length[:, None] * np.minimum(length, temperature)[:, None]
    pos -= pos.mean(axis=0)
    return LayoutResult(positions=pos, radii=radii, seed=seed)

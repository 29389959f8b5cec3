"""Conventional first-look analysis: summaries, correlations, k-means.

Before building any graphs, an analyst would table the moments, scan the
correlation matrix, and try k-means with an elbow plot. These are the
numbers the ball-graph reading is judged against, so the toolkit ships
them next to the graphs rather than assuming another package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cloud import PointCloud

__all__ = [
    "VariableSummary",
    "SummaryTable",
    "KMeansResult",
    "summarize_cloud",
    "correlations",
    "kmeans",
    "elbow_series",
]


@dataclass(frozen=True)
class VariableSummary:
    """Moments and quartiles of one variable.

    ``skewness`` is moment-based (m3 / m2^1.5) and ``kurtosis`` non-excess
    (m4 / m2^2, so a Normal sits near 3). Both are NaN for a constant
    variable, where they are undefined.
    """

    mean: float
    sd: float
    min: float
    q25: float
    q50: float
    q75: float
    max: float
    skewness: float
    kurtosis: float


@dataclass(frozen=True)
class SummaryTable:
    """Per-variable summaries over the axes plus the outcome (as ``Y``)."""

    variables: tuple
    rows: dict

    def as_rows(self) -> list:
        out = []
        for name in self.variables:
            r = self.rows[name]
            out.append({
                "variable": name, "mean": r.mean, "sd": r.sd, "min": r.min,
                "q25": r.q25, "q50": r.q50, "q75": r.q75, "max": r.max,
                "skewness": r.skewness, "kurtosis": r.kurtosis,
            })
        return out


def _summary(v: np.ndarray) -> VariableSummary:
    q25, q50, q75 = np.quantile(v, [0.25, 0.5, 0.75])
    centered = v - v.mean()
    m2 = float(np.mean(centered**2))
    if m2 > 0:
        skew = float(np.mean(centered**3) / m2**1.5)
        kurt = float(np.mean(centered**4) / m2**2)
    else:
        skew = kurt = float("nan")
    return VariableSummary(
        mean=float(v.mean()), sd=float(v.std(ddof=1)),
        min=float(v.min()), q25=float(q25), q50=float(q50), q75=float(q75),
        max=float(v.max()), skewness=skew, kurtosis=kurt,
    )


def summarize_cloud(cloud: PointCloud) -> SummaryTable:
    """Moment/quartile table over every axis, plus ``Y`` when present."""
    if cloud.n < 2:
        raise ValueError("need at least 2 points to summarize")
    names = list(cloud.axis_names)
    columns = [cloud.points[:, j] for j in range(cloud.d)]
    if cloud.outcome is not None:
        names.append("Y")
        columns.append(cloud.outcome)
    return SummaryTable(variables=tuple(names),
                        rows={n: _summary(c) for n, c in zip(names, columns)})


def correlations(cloud: PointCloud) -> np.ndarray:
    """Pearson correlation matrix of the axes (symmetric, unit diagonal)."""
    sds = cloud.points.std(axis=0)
    flat = np.flatnonzero(sds == 0)
    if flat.size:
        raise ValueError(
            f"constant column(s) have no correlation: "
            f"{[cloud.axis_names[j] for j in flat]}")
    return np.corrcoef(cloud.points, rowvar=False)


@dataclass(frozen=True)
class KMeansResult:
    """Best-of-restarts clustering, clusters relabeled in report order.

    Clusters are numbered by ascending outcome mean when the cloud has an
    outcome, otherwise by ascending center coordinate sum, so labels are
    stable across runs that find the same structure.
    """

    k: int
    assignments: np.ndarray
    centers: np.ndarray
    wss: float
    cluster_sizes: np.ndarray
    cluster_outcome_means: np.ndarray | None


def _squared_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _plus_plus_seed(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(points)
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(n)]
    d2 = _squared_distances(points, centers[:1]).ravel()
    for c in range(1, k):
        total = d2.sum()
        if total <= 0:
            centers[c:] = points[rng.integers(n, size=k - c)]
            break
        centers[c] = points[rng.choice(n, p=d2 / total)]
        d2 = np.minimum(d2, _squared_distances(points, centers[c:c + 1]).ravel())
    return centers


def _lloyd(points: np.ndarray, centers: np.ndarray,
           max_iter: int = 300) -> tuple[np.ndarray, np.ndarray, float]:
    """Iterate to an assignment fixed point; WSS may never increase."""
    n, k = len(points), len(centers)
    centers = centers.copy()
    prev_labels = None
    prev_wss = np.inf
    for _ in range(max_iter):
        d2 = _squared_distances(points, centers)
        labels = d2.argmin(axis=1)
        point_cost = d2[np.arange(n), labels]
        for c in np.flatnonzero(np.bincount(labels, minlength=k) == 0):
            far = int(point_cost.argmax())
            centers[c] = points[far]
            labels[far] = c
            point_cost[far] = 0.0
        wss = float(point_cost.sum())
        if wss > prev_wss + 1e-9 * max(1.0, prev_wss):
            raise AssertionError("WSS increased across a Lloyd iteration")
        prev_wss = wss
        if prev_labels is not None and np.array_equal(labels, prev_labels):
            break
        prev_labels = labels
        for c in range(k):
            centers[c] = points[labels == c].mean(axis=0)
    d2 = _squared_distances(points, centers)
    labels = d2.argmin(axis=1)
    return labels, centers, float(d2[np.arange(n), labels].sum())


def _finish(cloud: PointCloud, k: int, labels: np.ndarray, centers: np.ndarray,
            wss: float) -> KMeansResult:
    sizes = np.bincount(labels, minlength=k)
    if cloud.outcome is not None:
        means = np.array([cloud.outcome[labels == c].mean() for c in range(k)])
        order = np.argsort(means, kind="stable")
    else:
        means = None
        order = np.argsort(centers.sum(axis=1), kind="stable")
    relabel = np.empty(k, dtype=np.int64)
    relabel[order] = np.arange(k)
    return KMeansResult(
        k=k,
        assignments=relabel[labels],
        centers=centers[order],
        wss=wss,
        cluster_sizes=sizes[order],
        cluster_outcome_means=None if means is None else means[order],
    )


def kmeans(cloud: PointCloud, k: int, restarts: int = 25,
           seed: int = 0) -> KMeansResult:
    """Lloyd's k-means, k-means++ seeded, best WSS over ``restarts``.

    Empty clusters that appear mid-iteration are re-seeded from the point
    currently farthest from its center.
    """
    if not 1 <= k <= cloud.n:
        raise ValueError(f"k must be in [1, {cloud.n}], got {k}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best = None
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        labels, centers, wss = _lloyd(cloud.points,
                                      _plus_plus_seed(cloud.points, k, rng))
        if best is None or wss < best[2]:
            best = (labels, centers, wss)
    return _finish(cloud, k, *best)


def elbow_series(cloud: PointCloud, k_max: int, restarts: int = 25,
                 seed: int = 0) -> np.ndarray:
    """Best WSS for each k in 1..k_max.

    Alongside the seeded restarts, each k also tries the previous k's best
    centers plus the point farthest from them, which pins the series
    non-increasing by construction.
    """
    if not 1 <= k_max <= cloud.n:
        raise ValueError(f"k_max must be in [1, {cloud.n}], got {k_max}")
    points = cloud.points
    out = np.empty(k_max)
    children = np.random.SeedSequence(seed).spawn(k_max)
    prev_centers = None
    for k in range(1, k_max + 1):
        best = None
        for child in children[k - 1].spawn(restarts):
            rng = np.random.default_rng(child)
            result = _lloyd(points, _plus_plus_seed(points, k, rng))
            if best is None or result[2] < best[2]:
                best = result
        if prev_centers is not None:
            d2 = _squared_distances(points, prev_centers).min(axis=1)
            seeded = np.vstack([prev_centers, points[d2.argmax()]])
            result = _lloyd(points, seeded)
            if result[2] < best[2]:
                best = result
        out[k - 1] = best[2]
        prev_centers = best[1]
    return out

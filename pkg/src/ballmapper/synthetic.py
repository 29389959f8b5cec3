"""Artificial point clouds with a known ground truth.

Three families: pure Gaussian noise, a five-group mixture whose groups sit
at staggered means on every axis, and uniform draws on the unit cube. The
standard outcome rule sums a point's coordinates and adds a little noise,
so structure in the cloud shows up as color structure in the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .cloud import PointCloud

__all__ = ["CloudKind", "CloudSpec", "generate", "attach_outcome", "attach_flag"]


class CloudKind(Enum):
    NOISE = "noise"
    FIVE_PART = "five_part"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class CloudSpec:
    """Recipe for one synthetic cloud; same spec always generates the same cloud.

    ``five_part_means`` also sets the group count (its length), and groups
    must divide ``n_points`` evenly. ``noise_sd`` scales the noise cloud
    only; the grouped cloud keeps unit spread so the means alone separate
    the groups. ``outcome_noise_sd`` is the default for
    :func:`attach_outcome` on clouds built from this spec.
    """

    kind: CloudKind
    n_points: int
    n_axes: int
    seed: int
    five_part_means: tuple = (0.0, 2.0, 4.0, 6.0, 8.0)
    noise_sd: float = 1.0
    outcome_noise_sd: float = 0.1

    def __post_init__(self):
        if self.n_points < 1 or self.n_axes < 1:
            raise ValueError("n_points and n_axes must be positive")
        if self.noise_sd < 0 or self.outcome_noise_sd < 0:
            raise ValueError("standard deviations must be nonnegative")
        if self.kind is CloudKind.FIVE_PART:
            groups = len(self.five_part_means)
            if groups == 0 or self.n_points % groups:
                raise ValueError(
                    f"n_points={self.n_points} not divisible into {groups} equal groups")

    @property
    def group_labels(self) -> np.ndarray:
        """Group index per point (all zeros for ungrouped kinds)."""
        if self.kind is not CloudKind.FIVE_PART:
            return np.zeros(self.n_points, dtype=np.int64)
        per = self.n_points // len(self.five_part_means)
        return np.repeat(np.arange(len(self.five_part_means)), per)


def generate(spec: CloudSpec) -> PointCloud:
    """Draw the cloud described by ``spec``."""
    rng = np.random.default_rng(spec.seed)
    n, d = spec.n_points, spec.n_axes
    if spec.kind is CloudKind.UNIFORM:
        points = rng.random((n, d))
    else:
        z = rng.standard_normal((n, d))
        if spec.kind is CloudKind.NOISE:
            points = z * spec.noise_sd
        else:
            means = np.asarray(spec.five_part_means, dtype=np.float64)
            points = z + means[spec.group_labels][:, None]
    return PointCloud(points=points)


def attach_outcome(cloud: PointCloud, seed: int,
                   noise_sd: float = 0.1) -> PointCloud:
    """Attach the coordinate-sum outcome: Y = X1 + ... + Xd + noise.

    The noise term is Normal(0, noise_sd**2), drawn from its own seed so
    the same cloud can carry reproducible alternative outcomes.
    """
    if noise_sd < 0:
        raise ValueError("noise_sd must be nonnegative")
    rng = np.random.default_rng(seed)
    y = cloud.points.sum(axis=1) + rng.standard_normal(cloud.n) * noise_sd
    return cloud.with_outcome(y)


def attach_flag(cloud: PointCloud, axis: int, threshold: float,
                name: str) -> PointCloud:
    """Attach the binary flag ``X[axis] > threshold`` (strict) as ``name``."""
    if not 0 <= axis < cloud.d:
        raise ValueError(f"axis {axis} out of range for {cloud.d} axes")
    flag = (cloud.points[:, axis] > threshold).astype(np.int8)
    return cloud.with_flag(name, flag)

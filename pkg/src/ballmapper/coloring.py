"""Ball colorations: outcome aggregation and color-scale assignment.

A ball graph becomes readable once each ball is reduced to one number —
usually the mean outcome of its members, but the proportion of a binary
flag or the within-ball standard deviation tell their own stories. The
number is then placed on a red-to-purple gradient spanning the values
present in the graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .cloud import PointCloud
from .cover import BallGraph

__all__ = [
    "ColorFunction",
    "ColorScale",
    "GRADIENT_STOPS",
    "aggregate",
    "color_scale",
    "gradient_color",
    "member_values",
]


class ColorFunction(Enum):
    """Aggregations mapping a ball's member values to one display value.

    All variants read the cloud's ``outcome`` except PROPORTION, which reads
    a binary flag instead.
    """

    MEAN = "mean"
    PROPORTION = "proportion"
    STDDEV = "stddev"
    MIN = "min"
    MAX = "max"
    RANGE = "range"

    @property
    def needs_flag(self) -> bool:
        return self is ColorFunction.PROPORTION


# Six anchor colors, low to high: a rainbow running red for the lowest
# values through purple for the highest. Exact hex stops are this
# library's convention (see README).
GRADIENT_STOPS = (
    "#ff0000",  # red
    "#ff7f00",  # orange
    "#ffff00",  # yellow
    "#00c000",  # green
    "#0000ff",  # blue
    "#8000ff",  # purple
)

_STOP_RGB = np.array(
    [[int(h[1:3], 16), int(h[3:5], 16), int(h[5:7], 16)] for h in GRADIENT_STOPS],
    dtype=np.float64,
)


def gradient_color(t: float) -> str:
    """Hex color at gradient position ``t`` in [0, 1].

    Piecewise-linear interpolation between the six anchor stops, so the
    mapping is continuous and monotone along the rainbow.
    """
    t = min(max(float(t), 0.0), 1.0)
    x = t * (len(GRADIENT_STOPS) - 1)
    i = min(int(x), len(GRADIENT_STOPS) - 2)
    frac = x - i
    rgb = np.rint(_STOP_RGB[i] * (1 - frac) + _STOP_RGB[i + 1] * frac).astype(int)
    return "#{:02x}{:02x}{:02x}".format(*rgb)


@dataclass(frozen=True)
class ColorScale:
    """Affine placement of per-ball values onto the gradient.

    ``low``/``high`` span the values present in the graph; ``positions``
    are each ball's gradient coordinate in [0, 1] and ``hex_colors`` the
    resulting colors. A degenerate all-equal graph sits at the midpoint.
    """

    low: float
    high: float
    positions: np.ndarray
    hex_colors: tuple[str, ...]


def member_values(cloud: PointCloud, fn: ColorFunction,
                  flag_name: str | None = None) -> np.ndarray:
    """The per-point vector that ``fn`` aggregates: a flag or the outcome.

    PROPORTION reads the flag named ``flag_name`` (or the only flag when
    exactly one exists); every other function reads ``cloud.outcome``.
    Raises ``ValueError`` naming whichever requirement is unmet.
    """
    if fn.needs_flag:
        if not cloud.binary_flags:
            raise ValueError("proportion coloring requires a binary flag on the cloud")
        if flag_name is None:
            if len(cloud.binary_flags) > 1:
                raise ValueError(
                    f"multiple flags present, pass flag_name: {sorted(cloud.binary_flags)}")
            flag_name = next(iter(cloud.binary_flags))
        try:
            return np.asarray(cloud.binary_flags[flag_name], dtype=np.float64)
        except KeyError:
            raise ValueError(f"cloud has no flag named {flag_name!r}") from None
    if cloud.outcome is None:
        raise ValueError(f"{fn.value} coloring requires an outcome on the cloud")
    return cloud.outcome


def aggregate(graph: BallGraph, cloud: PointCloud,
              fn: ColorFunction = ColorFunction.MEAN,
              flag_name: str | None = None) -> np.ndarray:
    """Aggregate member values of every ball under ``fn``.

    Returns one float per ball, in ball-id order; see :func:`member_values`
    for how the per-point vector is chosen. Standard deviation is the
    population form, so a single-member ball aggregates to 0.
    """
    if graph.cover.n_points != cloud.n:
        raise ValueError("graph and cloud disagree on point count")
    values = member_values(cloud, fn, flag_name)
    out = np.empty(graph.n_balls, dtype=np.float64)
    for i, ball in enumerate(graph.cover.balls):
        v = values[ball.members]
        if fn is ColorFunction.MEAN or fn is ColorFunction.PROPORTION:
            out[i] = v.mean()
        elif fn is ColorFunction.STDDEV:
            out[i] = v.std()
        elif fn is ColorFunction.MIN:
            out[i] = v.min()
        elif fn is ColorFunction.MAX:
            out[i] = v.max()
        else:
            out[i] = v.max() - v.min()
    return out


def color_scale(values) -> ColorScale:
    """Build the red-to-purple scale for one graph's aggregated values."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("need at least one ball value")
    low, high = float(values.min()), float(values.max())
    if high > low:
        positions = (values - low) / (high - low)
    else:
        positions = np.full_like(values, 0.5)
    return ColorScale(low=low, high=high, positions=positions,
                      hex_colors=tuple(gradient_color(t) for t in positions))

"""Permutation repetitions and parameter sweeps.

A single ball graph depends on the landmark scan order, so any one graph is
an arbitrary representative. The lab answer is distributional: rebuild the
graph under many independent permutations, measure each, and report means,
sample standard deviations, and empirical 95% bands (2.5th/97.5th
percentiles) per metric — optionally swept across point counts, axis
counts, or radii.

Seeding
-------
Everything descends from integers through ``numpy.random.SeedSequence``:
``run_repetitions`` spawns one child stream per repetition, and ``sweep``
spawns one child per parameter value (plus per-value cloud and outcome
streams when it must generate clouds). Rerunning any spec reproduces its
output exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .cloud import PointCloud, pairwise_distances
from .coloring import ColorFunction, member_values
from .cover import CoverEngine
from .graphmetrics import GraphMetrics, metrics_from_membership
from .synthetic import CloudSpec, attach_outcome, generate

__all__ = [
    "FieldSummary",
    "SummaryRow",
    "SweepParameter",
    "SweepSpec",
    "SweepSummary",
    "generated_cloud",
    "run_repetitions",
    "summarize",
    "sweep",
]

METRIC_FIELDS = (
    "balls",
    "min_size",
    "max_size",
    "mean_size",
    "delta_size",
    "min_col",
    "max_col",
    "delta_col",
    "zero_connection_balls",
    "total_connections",
    "avg_connections_connected",
)


@dataclass(frozen=True)
class FieldSummary:
    """Distribution of one metric across repetitions."""

    mean: float
    sd: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class SummaryRow:
    """All metric distributions for one batch of repetitions.

    ``size_min``/``size_max`` and ``col_min``/``col_max`` are extremes of
    extremes across the whole batch (the outer envelope a sweep plots), and
    ``single_ball_fraction`` flags how often a repetition degenerated to
    one ball — such repetitions stay in the summary rather than being
    dropped.
    """

    repetitions: int
    fields: dict
    size_min: int
    size_max: int
    col_min: float
    col_max: float
    single_ball_fraction: float

    def __getitem__(self, field: str) -> FieldSummary:
        return self.fields[field]

    def as_dict(self) -> dict:
        """Flat column layout for table export."""
        out: dict = {"repetitions": self.repetitions}
        for name in METRIC_FIELDS:
            s = self.fields[name]
            out[f"{name}_mean"] = s.mean
            out[f"{name}_sd"] = s.sd
            out[f"{name}_ci_low"] = s.ci_low
            out[f"{name}_ci_high"] = s.ci_high
        out.update(size_min=self.size_min, size_max=self.size_max,
                   col_min=self.col_min, col_max=self.col_max,
                   single_ball_fraction=self.single_ball_fraction)
        return out


class SweepParameter(Enum):
    N_POINTS = "n_points"
    N_AXES = "n_axes"
    EPSILON = "epsilon"


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: which knob to turn, over which values, on which cloud.

    Epsilon sweeps hold the cloud fixed (either ``cloud`` as given or one
    generated from ``cloud_spec``) and vary only the radius. Point- and
    axis-count sweeps must regenerate the cloud per value, so they require
    ``cloud_spec`` plus a fixed ``epsilon``; each value gets its own derived
    generator seed so clouds across values are independent draws.
    """

    parameter: SweepParameter
    values: tuple
    repetitions: int = 10000
    base_seed: int = 0
    cloud_spec: CloudSpec | None = None
    cloud: PointCloud | None = None
    epsilon: float | None = None
    color_fn: ColorFunction = ColorFunction.MEAN
    flag_name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.parameter is SweepParameter.EPSILON:
            if (self.cloud is None) == (self.cloud_spec is None):
                raise ValueError(
                    "epsilon sweep needs exactly one of cloud or cloud_spec")
            if any(v <= 0 for v in self.values):
                raise ValueError("epsilon values must be positive")
        else:
            if self.cloud_spec is None:
                raise ValueError(
                    f"{self.parameter.value} sweep needs a cloud_spec generator")
            if self.cloud is not None:
                raise ValueError(
                    f"{self.parameter.value} sweep regenerates clouds; "
                    "a fixed cloud cannot be swept")
            if self.epsilon is None or self.epsilon <= 0:
                raise ValueError("positive epsilon required for this sweep")
            if any(int(v) != v or v < 1 for v in self.values):
                raise ValueError("swept counts must be positive integers")


@dataclass(frozen=True)
class SweepSummary:
    """Sweep output: one SummaryRow per parameter value, in value order."""

    spec: SweepSpec
    rows: tuple

    def series(self, field: str) -> dict:
        """Plot-ready arrays for one metric across the sweep."""
        return {
            "values": np.array(self.spec.values, dtype=np.float64),
            "mean": np.array([r[field].mean for r in self.rows]),
            "sd": np.array([r[field].sd for r in self.rows]),
            "ci_low": np.array([r[field].ci_low for r in self.rows]),
            "ci_high": np.array([r[field].ci_high for r in self.rows]),
        }

    def envelope_series(self) -> dict:
        """Outer extremes of ball size and color per value."""
        return {
            "values": np.array(self.spec.values, dtype=np.float64),
            "size_min": np.array([r.size_min for r in self.rows], dtype=np.float64),
            "size_max": np.array([r.size_max for r in self.rows], dtype=np.float64),
            "col_min": np.array([r.col_min for r in self.rows]),
            "col_max": np.array([r.col_max for r in self.rows]),
        }

    def as_rows(self) -> list:
        """Flat dict per value, for CSV export."""
        out = []
        for value, row in zip(self.spec.values, self.rows):
            d = {self.spec.parameter.value: value}
            d.update(row.as_dict())
            out.append(d)
        return out


def _ball_colors(membership: np.ndarray, sizes: np.ndarray,
                 values: np.ndarray, fn: ColorFunction) -> np.ndarray:
    """Per-ball aggregation on raw arrays; mirrors ``coloring.aggregate``."""
    if fn is ColorFunction.MEAN or fn is ColorFunction.PROPORTION:
        return membership @ values / sizes
    out = np.empty(len(membership), dtype=np.float64)
    for i, row in enumerate(membership):
        v = values[row]
        if fn is ColorFunction.STDDEV:
            out[i] = v.std()
        elif fn is ColorFunction.MIN:
            out[i] = v.min()
        elif fn is ColorFunction.MAX:
            out[i] = v.max()
        else:
            out[i] = v.max() - v.min()
    return out


def run_repetitions(cloud: PointCloud, epsilon: float, reps: int, seed: int,
                    color_fn: ColorFunction = ColorFunction.MEAN,
                    flag_name: str | None = None,
                    engine: CoverEngine | None = None) -> list:
    """Measure ``reps`` independent-permutation graphs of one cloud.

    Each repetition draws a uniform permutation from its own child stream
    of ``SeedSequence(seed)``, scans the cover, and records the full
    :class:`~ballmapper.graphmetrics.GraphMetrics` row under ``color_fn``
    coloration. Pass a prebuilt ``engine`` to reuse its distance work; it
    must describe the same cloud and epsilon.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    values = member_values(cloud, color_fn, flag_name)
    if engine is None:
        engine = CoverEngine(cloud, epsilon)
    elif engine.cloud is not cloud or engine.epsilon != epsilon:
        raise ValueError("engine was built for a different cloud or epsilon")
    n = cloud.n
    out = []
    for child in np.random.SeedSequence(seed).spawn(reps):
        order = np.random.default_rng(child).permutation(n)
        _, membership = engine.scan(order)
        sizes = membership.sum(axis=1)
        colors = _ball_colors(membership, sizes, values, color_fn)
        out.append(metrics_from_membership(membership, colors))
    return out


def summarize(metrics: list) -> SummaryRow:
    """Reduce one batch of metric rows to its distribution summary."""
    if not metrics:
        raise ValueError("no metrics to summarize")
    columns = {
        name: np.array([getattr(m, name) for m in metrics], dtype=np.float64)
        for name in METRIC_FIELDS
    }
    fields = {}
    for name, v in columns.items():
        sd = float(v.std(ddof=1)) if len(v) > 1 else 0.0
        lo, hi = np.percentile(v, [2.5, 97.5])
        fields[name] = FieldSummary(mean=float(v.mean()), sd=sd,
                                    ci_low=float(lo), ci_high=float(hi))
    return SummaryRow(
        repetitions=len(metrics),
        fields=fields,
        size_min=int(columns["min_size"].min()),
        size_max=int(columns["max_size"].max()),
        col_min=float(columns["min_col"].min()),
        col_max=float(columns["max_col"].max()),
        single_ball_fraction=float(np.mean(columns["balls"] == 1.0)),
    )


def _seed_int(ss: np.random.SeedSequence) -> int:
    return int(ss.generate_state(1, np.uint64)[0])


def generated_cloud(spec: CloudSpec) -> PointCloud:
    """Generate from ``spec`` and attach the coordinate-sum outcome.

    The outcome stream is spawned from the generator seed, so a CloudSpec
    alone pins both the coordinates and the outcome draw.
    """
    outcome_seed = _seed_int(np.random.SeedSequence(spec.seed).spawn(1)[0])
    return attach_outcome(generate(spec), outcome_seed,
                          noise_sd=spec.outcome_noise_sd)


def sweep(spec: SweepSpec) -> SweepSummary:
    """Run the full sweep; output is a pure function of ``spec``."""
    children = np.random.SeedSequence(spec.base_seed).spawn(len(spec.values) + 1)
    rep_seeds = [_seed_int(c) for c in children[1:]]
    rows = []
    if spec.parameter is SweepParameter.EPSILON:
        cloud = spec.cloud if spec.cloud is not None else generated_cloud(spec.cloud_spec)
        distances = pairwise_distances(cloud.points)
        for eps, rep_seed in zip(spec.values, rep_seeds):
            engine = CoverEngine(cloud, eps, distances=distances)
            metrics = run_repetitions(cloud, eps, spec.repetitions, rep_seed,
                                      spec.color_fn, spec.flag_name, engine=engine)
            rows.append(summarize(metrics))
    else:
        field = spec.parameter.value
        for value, rep_seed, child in zip(spec.values, rep_seeds, children[1:]):
            cloud_seed = _seed_int(child.spawn(1)[0])
            vspec = replace(spec.cloud_spec, **{field: int(value)}, seed=cloud_seed)
            cloud = generated_cloud(vspec)
            metrics = run_repetitions(cloud, spec.epsilon, spec.repetitions,
                                      rep_seed, spec.color_fn, spec.flag_name)
            rows.append(summarize(metrics))
    return SweepSummary(spec=spec, rows=tuple(rows))

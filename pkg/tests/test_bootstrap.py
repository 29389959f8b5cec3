"""Permutation repetitions, batch summaries, and parameter sweeps."""

import numpy as np
import pytest

from ballmapper import (
    CloudKind,
    CloudSpec,
    ColorFunction,
    CoverEngine,
    PointCloud,
    aggregate,
    build_cover,
    build_edges,
    compute_metrics,
    generated_cloud,
    run_repetitions,
    summarize,
    sweep,
    SweepParameter,
    SweepSpec,
)
from ballmapper.bootstrap import METRIC_FIELDS


def small_cloud(seed=0, n=60, d=3):
    return generated_cloud(CloudSpec(CloudKind.NOISE, n, d, seed=seed))


class TestRunRepetitions:
    def test_matches_single_graph_computation(self):
        # One repetition must equal building that permutation's graph by
        # hand through the public single-graph path.
        cloud = small_cloud()
        metrics = run_repetitions(cloud, 1.5, reps=1, seed=42)[0]
        child = np.random.SeedSequence(42).spawn(1)[0]
        order = np.random.default_rng(child).permutation(cloud.n)
        graph = build_edges(build_cover(cloud, 1.5, order))
        assert metrics == compute_metrics(graph, aggregate(graph, cloud))

    def test_deterministic(self):
        cloud = small_cloud()
        a = run_repetitions(cloud, 1.5, reps=5, seed=7)
        b = run_repetitions(cloud, 1.5, reps=5, seed=7)
        assert a == b

    def test_seed_changes_results(self):
        cloud = small_cloud()
        a = run_repetitions(cloud, 1.5, reps=5, seed=7)
        b = run_repetitions(cloud, 1.5, reps=5, seed=8)
        assert a != b

    def test_prefix_stability(self):
        # Growing the batch never changes earlier repetitions.
        cloud = small_cloud()
        short = run_repetitions(cloud, 1.5, reps=3, seed=7)
        long = run_repetitions(cloud, 1.5, reps=6, seed=7)
        assert long[:3] == short

    def test_engine_reuse_is_transparent(self):
        cloud = small_cloud()
        engine = CoverEngine(cloud, 1.5)
        assert run_repetitions(cloud, 1.5, 4, 9, engine=engine) == \
            run_repetitions(cloud, 1.5, 4, 9)

    def test_engine_mismatch_rejected(self):
        cloud = small_cloud()
        engine = CoverEngine(cloud, 1.5)
        with pytest.raises(ValueError, match="different cloud or epsilon"):
            run_repetitions(cloud, 2.0, 2, 0, engine=engine)
        with pytest.raises(ValueError, match="different cloud or epsilon"):
            run_repetitions(small_cloud(seed=1), 1.5, 2, 0, engine=engine)

    def test_reps_validated(self):
        with pytest.raises(ValueError):
            run_repetitions(small_cloud(), 1.5, reps=0, seed=0)

    def test_proportion_coloring(self):
        from ballmapper import attach_flag

        cloud = attach_flag(small_cloud(), 0, 0.0, "pos")
        rows = run_repetitions(cloud, 1.5, 3, 0,
                               color_fn=ColorFunction.PROPORTION,
                               flag_name="pos")
        for m in rows:
            assert 0.0 <= m.min_col <= m.max_col <= 1.0

    def test_duplicate_cloud_collapses_to_one_ball(self):
        cloud = PointCloud(points=np.zeros((10, 2)), outcome=np.arange(10.0))
        rows = run_repetitions(cloud, 0.5, 5, 0)
        for m in rows:
            assert m.balls == 1 and m.max_size == 10
            assert m.zero_connection_balls == 1
            assert m.avg_connections_connected == 0.0


class TestSummarize:
    def test_hand_check(self):
        cloud = small_cloud()
        metrics = run_repetitions(cloud, 1.5, 20, 3)
        row = summarize(metrics)
        balls = np.array([m.balls for m in metrics], dtype=float)
        s = row["balls"]
        assert s.mean == pytest.approx(balls.mean())
        assert s.sd == pytest.approx(balls.std(ddof=1))
        assert row.repetitions == 20
        assert row.size_min == min(m.min_size for m in metrics)
        assert row.size_max == max(m.max_size for m in metrics)
        assert row.col_min == min(m.min_col for m in metrics)
        assert row.col_max == max(m.max_col for m in metrics)

    def test_percentile_interpolation(self):
        # Build rows whose ball counts are exactly 0..100; the empirical
        # 2.5%/97.5% points interpolate to 2.5 and 97.5.
        from ballmapper.graphmetrics import GraphMetrics

        rows = [GraphMetrics(balls=k, min_size=1, max_size=1, mean_size=1.0,
                             delta_size=0, min_col=0.0, max_col=0.0,
                             delta_col=0.0, zero_connection_balls=0,
                             total_connections=0,
                             avg_connections_connected=0.0)
                for k in range(101)]
        s = summarize(rows)["balls"]
        assert (s.ci_low, s.ci_high) == (2.5, 97.5)

    def test_single_repetition_sd_zero(self):
        row = summarize(run_repetitions(small_cloud(), 1.5, 1, 0))
        assert row["balls"].sd == 0.0
        assert row["balls"].ci_low == row["balls"].ci_high

    def test_single_ball_fraction(self):
        cloud = PointCloud(points=np.zeros((4, 1)), outcome=np.zeros(4))
        assert summarize(run_repetitions(cloud, 1.0, 3, 0)) \
            .single_ball_fraction == 1.0
        assert summarize(run_repetitions(small_cloud(), 0.1, 3, 0)) \
            .single_ball_fraction == 0.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            summarize([])

    def test_as_dict_columns(self):
        row = summarize(run_repetitions(small_cloud(), 1.5, 2, 0))
        d = row.as_dict()
        assert d["repetitions"] == 2
        for name in METRIC_FIELDS:
            for suffix in ("mean", "sd", "ci_low", "ci_high"):
                assert f"{name}_{suffix}" in d
        assert {"size_min", "size_max", "col_min", "col_max",
                "single_ball_fraction"} <= set(d)


class TestSweepSpecValidation:
    def test_epsilon_needs_exactly_one_cloud_source(self):
        spec = CloudSpec(CloudKind.NOISE, 10, 2, seed=0)
        with pytest.raises(ValueError, match="exactly one"):
            SweepSpec(SweepParameter.EPSILON, (1.0, 2.0), repetitions=1)
        with pytest.raises(ValueError, match="exactly one"):
            SweepSpec(SweepParameter.EPSILON, (1.0, 2.0), repetitions=1,
                      cloud_spec=spec, cloud=small_cloud())

    def test_values_strictly_increasing(self):
        spec = CloudSpec(CloudKind.NOISE, 10, 2, seed=0)
        with pytest.raises(ValueError, match="increasing"):
            SweepSpec(SweepParameter.EPSILON, (2.0, 1.0), repetitions=1,
                      cloud_spec=spec)
        with pytest.raises(ValueError, match="increasing"):
            SweepSpec(SweepParameter.EPSILON, (1.0, 1.0), repetitions=1,
                      cloud_spec=spec)

    def test_count_sweeps_need_generator_and_epsilon(self):
        spec = CloudSpec(CloudKind.NOISE, 10, 2, seed=0)
        with pytest.raises(ValueError, match="cloud_spec"):
            SweepSpec(SweepParameter.N_POINTS, (10, 20), repetitions=1)
        with pytest.raises(ValueError, match="epsilon"):
            SweepSpec(SweepParameter.N_POINTS, (10, 20), repetitions=1,
                      cloud_spec=spec)
        with pytest.raises(ValueError, match="integers"):
            SweepSpec(SweepParameter.N_POINTS, (10.5, 20.0), repetitions=1,
                      cloud_spec=spec, epsilon=1.0)
        with pytest.raises(ValueError, match="cannot be swept"):
            SweepSpec(SweepParameter.N_POINTS, (10, 20), repetitions=1,
                      cloud_spec=spec, epsilon=1.0, cloud=small_cloud())

    def test_empty_values_rejected(self):
        with pytest.raises(ValueError, match="at least one"):
            SweepSpec(SweepParameter.EPSILON, (), repetitions=1,
                      cloud_spec=CloudSpec(CloudKind.NOISE, 10, 2, seed=0))


class TestSweep:
    def test_epsilon_sweep_shapes_and_determinism(self):
        spec = SweepSpec(SweepParameter.EPSILON, (0.5, 1.0, 2.0),
                         repetitions=20, base_seed=5,
                         cloud_spec=CloudSpec(CloudKind.NOISE, 50, 3, seed=1))
        out = sweep(spec)
        assert len(out.rows) == 3
        assert all(r.repetitions == 20 for r in out.rows)
        again = sweep(spec)
        assert out.rows == again.rows

    def test_epsilon_sweep_on_fixed_cloud_matches_direct_runs(self):
        cloud = small_cloud(seed=3)
        spec = SweepSpec(SweepParameter.EPSILON, (1.0, 2.0), repetitions=15,
                         base_seed=11, cloud=cloud)
        out = sweep(spec)
        children = np.random.SeedSequence(11).spawn(3)
        for eps, row, child in zip((1.0, 2.0), out.rows, children[1:]):
            seed = int(child.generate_state(1, np.uint64)[0])
            direct = summarize(run_repetitions(cloud, eps, 15, seed))
            assert row == direct

    def test_larger_radius_never_increases_balls(self):
        spec = SweepSpec(SweepParameter.EPSILON, (0.5, 1.0, 2.0, 4.0),
                         repetitions=25, base_seed=2,
                         cloud_spec=CloudSpec(CloudKind.NOISE, 80, 3, seed=9))
        means = sweep(spec).series("balls")["mean"]
        assert (np.diff(means) <= 0).all()

    def test_n_points_sweep(self):
        spec = SweepSpec(SweepParameter.N_POINTS, (20, 40), repetitions=10,
                         base_seed=4, epsilon=1.5,
                         cloud_spec=CloudSpec(CloudKind.NOISE, 10, 3, seed=0))
        out = sweep(spec)
        assert len(out.rows) == 2
        # More points at fixed radius means more to cover: sizes envelope up.
        assert out.rows[1].size_max >= out.rows[0].size_max

    def test_n_axes_sweep_curse_of_dimensionality(self):
        spec = SweepSpec(SweepParameter.N_AXES, (2, 8), repetitions=10,
                         base_seed=4, epsilon=1.5,
                         cloud_spec=CloudSpec(CloudKind.NOISE, 60, 2, seed=0))
        means = sweep(spec).series("balls")["mean"]
        assert means[1] > means[0]

    def test_series_and_rows_layout(self):
        spec = SweepSpec(SweepParameter.EPSILON, (1.0, 2.0), repetitions=5,
                         base_seed=0,
                         cloud_spec=CloudSpec(CloudKind.NOISE, 30, 2, seed=0))
        out = sweep(spec)
        series = out.series("balls")
        assert list(series["values"]) == [1.0, 2.0]
        assert len(series["mean"]) == len(series["sd"]) == 2
        env = out.envelope_series()
        assert {"size_min", "size_max", "col_min", "col_max"} <= set(env)
        rows = out.as_rows()
        assert [r["epsilon"] for r in rows] == [1.0, 2.0]
        assert "balls_mean" in rows[0]


class TestGeneratedCloud:
    def test_outcome_attached_and_reproducible(self):
        spec = CloudSpec(CloudKind.FIVE_PART, 50, 4, seed=6)
        a, b = generated_cloud(spec), generated_cloud(spec)
        assert a.outcome is not None
        assert np.array_equal(a.points, b.points)
        assert np.array_equal(a.outcome, b.outcome)

    def test_outcome_tracks_row_sums(self):
        cloud = generated_cloud(CloudSpec(CloudKind.NOISE, 200, 5, seed=8))
        resid = cloud.outcome - cloud.points.sum(axis=1)
        assert abs(resid).max() < 0.5  # noise_sd defaults to 0.1

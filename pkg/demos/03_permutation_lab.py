"""
Distributions over landmark permutations
========================================

A ball graph depends on the order in which points are scanned.  Instead
of trusting one ordering, rebuild the graph under many random
permutations and study the distribution of every metric -- then sweep
the radius and watch the structure coarsen.
"""

from ballmapper import (CloudKind, CloudSpec, SweepParameter, SweepSpec,
                        generated_cloud, run_repetitions, summarize, sweep)

# Pure noise: 500 standard-normal points in 5 axes, outcome = coordinate
# sum.  Any structure a ball graph finds here is an artifact of the
# permutation, which is exactly what the distributional view exposes.
cloud = generated_cloud(CloudSpec(CloudKind.NOISE, 500, 5, seed=42))

# 300 independent permutations at radius 2.  Each repetition draws a
# fresh scan order, rebuilds cover + edges, and records the metrics.
rows = run_repetitions(cloud, epsilon=2.0, reps=300, seed=0)
row = summarize(rows)

print(f"{row.repetitions} permutations at epsilon=2.0")
print(f"{'metric':28s} {'mean':>9s} {'sd':>7s}   95% band")
for name in ("balls", "mean_size", "zero_connection_balls",
             "total_connections", "avg_connections_connected"):
    f = row.fields[name]
    print(f"{name:28s} {f.mean:9.2f} {f.sd:7.2f}   "
          f"[{f.ci_low:.2f}, {f.ci_high:.2f}]")
print(f"largest ball seen across all reps: {row.size_max}")
print(f"runs that collapsed to a single ball: "
      f"{row.single_ball_fraction:.0%}")

# Radius sweep: same cloud, growing epsilon.  Mean ball count can only
# fall and the largest ball can only grow -- coarser covers merge balls,
# never split them.
spec = SweepSpec(
    parameter=SweepParameter.EPSILON,
    values=(1.5, 2.0, 3.0, 4.0, 6.0),
    repetitions=300,
    base_seed=7,
    cloud=cloud,
)
summary = sweep(spec)

balls = summary.series("balls")
largest = summary.series("max_size")
isolated = summary.series("zero_connection_balls")
print(f"\n{'epsilon':>7s} {'balls':>8s} {'largest':>8s} {'isolated':>9s}")
for i, eps in enumerate(balls["values"]):
    print(f"{eps:7.1f} {balls['mean'][i]:8.1f} {largest['mean'][i]:8.1f} "
          f"{isolated['mean'][i]:9.2f}")

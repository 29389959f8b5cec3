"""
From point cloud to ball graph
==============================

Cover a synthetic cloud with greedy epsilon-balls, connect overlapping
balls into a graph, and read off the structural metrics.
"""

import numpy as np

from ballmapper import (CloudKind, CloudSpec, aggregate, ball_degree_profile,
                        build_cover, build_edges, compute_metrics,
                        generated_cloud, point_to_ball_map)

# A five-part cloud: 500 points in 5 axes, split evenly across five
# Gaussian blobs whose centers sit at coordinates (0,...,0), (2,...,2),
# ..., (8,...,8).  The generator also attaches an outcome column whose
# group means are 0, 10, 20, 30, 40.
cloud = generated_cloud(CloudSpec(CloudKind.FIVE_PART, 500, 5, seed=7))
print(f"cloud: {cloud.n} points, {cloud.d} axes")

# Greedy cover: scan the points in a fixed order; each point that no
# existing ball covers becomes the landmark of a new ball of radius
# epsilon.  Membership is inclusive (distance <= epsilon), so one point
# can belong to several balls.
epsilon = 2.0
cover = build_cover(cloud, epsilon)
print(f"cover at epsilon={epsilon}: {len(cover.balls)} balls")

# Landmarks of distinct balls are always more than epsilon apart --
# otherwise the later landmark would have been covered already.
landmarks = np.array([ball.landmark_index for ball in cover.balls])
gaps = np.linalg.norm(
    cloud.points[landmarks][:, None, :] - cloud.points[landmarks][None, :, :],
    axis=-1,
)
off_diag = gaps[~np.eye(len(landmarks), dtype=bool)]
print(f"closest landmark pair: {off_diag.min():.3f} (> epsilon)")

# Two balls are connected exactly when they share at least one point.
graph = build_edges(cover)
print(f"graph: {len(graph.edges)} connections")

# Every point knows which balls it landed in.
membership = point_to_ball_map(cover, cloud.point_ids)
multiply_covered = sum(1 for balls in membership.values() if len(balls) > 1)
print(f"{multiply_covered} points sit in more than one ball")

# Degree profile: how many connections each ball has.
degrees = ball_degree_profile(graph)
print(f"degrees: min={degrees.min()}, max={degrees.max()}, "
      f"mean={degrees.mean():.2f}")

# The metrics bundle used throughout the toolkit: ball count, size and
# coloration extremes, isolated-ball count, connection totals.
colors = aggregate(graph, cloud)
metrics = compute_metrics(graph, colors)
for name, value in metrics.as_dict().items():
    print(f"  {name:28s} {value}")

# Shrinking epsilon always produces at least as many balls; growing it
# produces at least as large a biggest ball.
for eps in (1.0, 2.0, 4.0, 8.0):
    c = build_cover(cloud, eps)
    biggest = max(len(ball.members) for ball in c.balls)
    print(f"epsilon={eps:4.1f}: {len(c.balls):3d} balls, "
          f"largest holds {biggest}")

"""
Classical baselines for comparison
==================================

Before reading structure off a ball graph, look at the same cloud the
way a statistics textbook would: per-variable summaries, correlations,
and k-means clustering with an elbow check.
"""

import numpy as np

from ballmapper import (CloudKind, CloudSpec, correlations, elbow_series,
                        generated_cloud, kmeans, summarize_cloud)

cloud = generated_cloud(CloudSpec(CloudKind.FIVE_PART, 500, 5, seed=1))

# Location, spread, quartiles, and shape for every axis plus the
# outcome column.
table = summarize_cloud(cloud)
print(f"{'var':4s} {'mean':>7s} {'sd':>6s} {'min':>7s} {'median':>7s} "
      f"{'max':>7s} {'skew':>6s} {'kurt':>6s}")
for name in table.variables:
    r = table.rows[name]
    print(f"{name:4s} {r.mean:7.2f} {r.sd:6.2f} {r.min:7.2f} {r.q50:7.2f} "
          f"{r.max:7.2f} {r.skewness:6.2f} {r.kurtosis:6.2f}")

# Five blobs strung along the diagonal make every pair of axes highly
# correlated -- the between-group spread dominates.
corr = correlations(cloud)
off_diag = corr[~np.eye(cloud.d, dtype=bool)]
print(f"\naxis correlations: min={off_diag.min():.3f}, "
      f"max={off_diag.max():.3f}")

# k-means with restarts; clusters come back relabeled so that outcome
# means ascend, making runs comparable.
result = kmeans(cloud, k=5, restarts=25, seed=0)
print(f"\nk-means, k={result.k}: wss={result.wss:.1f}")
print(f"{'cluster':>7s} {'size':>5s} {'outcome mean':>13s}")
for c in range(result.k):
    print(f"{c:7d} {result.cluster_sizes[c]:5d} "
          f"{result.cluster_outcome_means[c]:13.2f}")

# The elbow: within-cluster sum of squares as k grows.  The drop from
# k=4 to k=5 is the last big one -- matching the five groups actually
# present -- after which the curve flattens.
wss = elbow_series(cloud, k_max=8, restarts=10)
print(f"\n{'k':>2s} {'wss':>9s} {'drop':>7s}")
for k, value in enumerate(wss, start=1):
    drop = "" if k == 1 else f"{wss[k - 2] - value:7.0f}"
    print(f"{k:2d} {value:9.0f} {drop:>7s}")

"""
A real-shaped CSV, end to end
=============================

Ingest a firm-ratio table from disk, clean it, cover it, color it by
failure rate, and export the finished graph -- the same pipeline the
`ballmapper run` CLI drives from a manifest.
"""

from pathlib import Path

import numpy as np

from ballmapper import (ColorFunction, aggregate, build_cover, build_edges,
                        compute_metrics, document_from_graph, export_document,
                        ingest_csv, layout, normalize_minmax, winsorize)

# data/credit_standin.csv ships with the repository: 3605 synthetic
# firms, five balance-sheet ratio columns, and a binary `fail` flag that
# concentrates in one corner of the ratio space.
csv_path = Path(__file__).resolve().parent.parent / "data" / "credit_standin.csv"
cloud = ingest_csv(csv_path, id_column="firm_id", flag_columns=("fail",))
print(f"{cloud.n} firms, axes {cloud.axis_names}")
fail = cloud.binary_flags["fail"]
print(f"{int(fail.sum())} failures ({fail.mean():.1%})")

# Ratio columns live on wildly different scales, so clip the extreme
# tails and min-max normalize every axis onto [0, 1] before choosing a
# radius.
clean = normalize_minmax(winsorize(cloud, 0.01, 0.99))
spans = clean.points.max(axis=0) - clean.points.min(axis=0)
print(f"axis spans after cleaning: {np.round(spans, 3)}")

# Cover at radius 0.25 (a quarter of each normalized axis) and color
# each ball by its members' failure rate.
graph = build_edges(build_cover(clean, epsilon=0.25))
colors = aggregate(graph, clean, ColorFunction.PROPORTION, flag_name="fail")
metrics = compute_metrics(graph, colors)
print(f"epsilon=0.25: {metrics.balls} balls, "
      f"{metrics.total_connections} connections, "
      f"largest ball {metrics.max_size}")

# Failure rate is far from uniform across the graph: most balls are
# nearly clean while a few are nearly pure failures.
print(f"ball failure rates: min={colors.min():.2f}, max={colors.max():.2f}")
hot = np.argsort(colors)[-3:][::-1]
for i in hot:
    ball = graph.cover.balls[i]
    print(f"  ball {ball.ball_id}: {len(ball.members)} firms, "
          f"failure rate {colors[i]:.2f}")

# Export with a seeded layout.  The equivalent one-liner:
#   ballmapper -o out run --input data/credit_standin.csv \
#       --id-column firm_id --flag-column fail --winsorize 0.01,0.99 \
#       --normalize --epsilon 0.25 --color proportion --flag-name fail
doc = document_from_graph(graph, colors, layout(graph),
                          point_ids=clean.point_ids,
                          color_fn="proportion", flag="fail")
raw = export_document(doc)
print(f"graph document: {len(raw)} bytes, "
      f"{len(doc.data['balls'])} balls, {len(doc.data['edges'])} edges")

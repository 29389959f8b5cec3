"""Ball-graph models of multidimensional point clouds.

Cover a cloud with greedy epsilon-balls, connect overlapping balls into a
graph, color the balls by outcome aggregations, and study the resulting
structure — one graph at a time or distributionally across thousands of
landmark permutations and parameter sweeps.

Typical use::

    from ballmapper import (CloudKind, CloudSpec, generated_cloud,
                            build_cover, build_edges, aggregate,
                            compute_metrics)

    cloud = generated_cloud(CloudSpec(CloudKind.FIVE_PART, 500, 5, seed=7))
    graph = build_edges(build_cover(cloud, epsilon=2.0))
    print(compute_metrics(graph, aggregate(graph, cloud)))
"""

from .baseline import (KMeansResult, SummaryTable, VariableSummary,
                       correlations, elbow_series, kmeans, summarize_cloud)
from .bootstrap import (FieldSummary, SummaryRow, SweepParameter, SweepSpec,
                        SweepSummary, generated_cloud, run_repetitions,
                        summarize, sweep)
from .cloud import (ConstantColumnWarning, Metric, PointCloud, distance,
                    distances_from, normalize_minmax, pairwise_distances,
                    winsorize)
from .coloring import (GRADIENT_STOPS, ColorFunction, ColorScale, aggregate,
                       color_scale, gradient_color, member_values)
from .cover import (Ball, BallGraph, Cover, CoverEngine, ball_degree_profile,
                    build_cover, build_edges, point_to_ball_map)
from .datasets import DRILLDOWN_BALL, DRILLDOWN_EPSILON, drilldown_example
from .export import (SCHEMA_VERSION, GraphDocument, canonical_json_bytes,
                     document_from_graph, export_document, export_graph,
                     import_graph, render_document)
from .graphmetrics import (GraphMetrics, compute_metrics,
                           metrics_from_membership, metrics_from_parts)
from .ingest import cloud_csv_text, ingest_csv, ingest_csv_text, write_cloud_csv
from .layout import LayoutResult, layout, scale_sizes
from .synthetic import (CloudKind, CloudSpec, attach_flag, attach_outcome,
                        generate)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # clouds
    "PointCloud", "Metric", "ConstantColumnWarning", "distance",
    "distances_from", "pairwise_distances", "normalize_minmax", "winsorize",
    # cover and graph
    "Ball", "Cover", "BallGraph", "CoverEngine", "build_cover", "build_edges",
    "point_to_ball_map", "ball_degree_profile",
    # coloring
    "ColorFunction", "ColorScale", "GRADIENT_STOPS", "aggregate",
    "color_scale", "gradient_color", "member_values",
    # metrics
    "GraphMetrics", "compute_metrics", "metrics_from_membership",
    "metrics_from_parts",
    # synthetic clouds
    "CloudKind", "CloudSpec", "generate", "attach_outcome", "attach_flag",
    "generated_cloud",
    # repetitions and sweeps
    "FieldSummary", "SummaryRow", "SweepParameter", "SweepSpec",
    "SweepSummary", "run_repetitions", "summarize", "sweep",
    # baseline statistics
    "VariableSummary", "SummaryTable", "KMeansResult", "summarize_cloud",
    "correlations", "kmeans", "elbow_series",
    # layout and serialization
    "LayoutResult", "layout", "scale_sizes", "SCHEMA_VERSION",
    "GraphDocument", "canonical_json_bytes", "document_from_graph",
    "export_document", "export_graph", "import_graph", "render_document",
    # example data
    "drilldown_example", "DRILLDOWN_EPSILON", "DRILLDOWN_BALL",
    # I/O
    "ingest_csv", "ingest_csv_text", "write_cloud_csv", "cloud_csv_text",
]

"""Serialization of laid-out ball graphs: canonical JSON, dot, and CSV.

The JSON document is the single contract between the engine, stored
artifacts, and the explorer UI. It is canonical — fixed key order, floats
printed to 6 significant digits — so exporting, importing, and exporting
again reproduces the same bytes, and equal graphs always serialize
identically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .coloring import color_scale
from .cover import BallGraph
from .graphmetrics import GraphMetrics, metrics_from_parts
from .layout import LayoutResult

__all__ = [
    "SCHEMA_VERSION",
    "GraphDocument",
    "canonical_json_bytes",
    "document_from_graph",
    "export_document",
    "export_graph",
    "import_graph",
    "render_document",
]

SCHEMA_VERSION = 1

_METADATA_KEYS = ("epsilon", "metric", "color_fn", "flag", "color_low",
                  "color_high", "layout_seed", "n_points")
_BALL_KEYS = ("id", "landmark", "members", "size", "value", "hex", "x", "y",
              "radius")


# Floats print at 6 significant digits — except under these keys, which
# feed exact metric recomputation after import and therefore keep full
# (shortest round-trip) precision.
_FULL_PRECISION_KEYS = frozenset({"value"})


def _fmt_float(x: float, full: bool) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    return repr(x) if full else format(x, ".6g")


def _emit(obj, out: list, key=None) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj), key in _FULL_PRECISION_KEYS))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, value) in enumerate(obj.items()):
            if i:
                out.append(",")
            out.append(json.dumps(str(k)))
            out.append(":")
            _emit(value, out, key=k)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(",")
            _emit(value, out, key=key)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json_bytes(obj) -> bytes:
    """Canonical JSON encoding: insertion key order, floats at 6 significant
    digits, newline-terminated. Equal inputs always produce equal bytes."""
    out: list = []
    _emit(obj, out)
    out.append("\n")
    return "".join(out).encode("utf-8")


_canonical_bytes = canonical_json_bytes


@dataclass(frozen=True)
class GraphDocument:
    """A parsed (or freshly built) graph document.

    ``data`` holds the full document in canonical key order; the accessors
    below read it. Metrics recomputed here equal those computed on the
    original in-memory graph.
    """

    data: dict

    @property
    def metadata(self) -> dict:
        return self.data["metadata"]

    @property
    def balls(self) -> list:
        return self.data["balls"]

    @property
    def edges(self) -> list:
        return self.data["edges"]

    @property
    def n_balls(self) -> int:
        return len(self.balls)

    def ball_sizes(self) -> np.ndarray:
        return np.array([b["size"] for b in self.balls], dtype=np.int64)

    def colors(self) -> np.ndarray:
        return np.array([b["value"] for b in self.balls], dtype=np.float64)

    def positions(self) -> np.ndarray:
        return np.array([[b["x"], b["y"]] for b in self.balls], dtype=np.float64)

    def metrics(self) -> GraphMetrics:
        return metrics_from_parts(self.ball_sizes(), self.colors(),
                                  [tuple(e) for e in self.edges], self.n_balls)


def _point_labels(graph: BallGraph, point_ids) -> list:
    if point_ids is None:
        return list(range(1, graph.cover.n_points + 1))
    point_ids = list(point_ids)
    if len(point_ids) != graph.cover.n_points:
        raise ValueError(f"expected {graph.cover.n_points} point ids")
    return point_ids


def document_from_graph(graph: BallGraph, colors, layout: LayoutResult,
                        point_ids=None, color_fn: str | None = None,
                        flag: str | None = None,
                        extra_metadata: dict | None = None) -> GraphDocument:
    """Assemble the canonical document for one laid-out, colored graph.

    ``point_ids`` defaults to 1..n; pass ``cloud.point_ids`` for clouds
    with custom identifiers. ``extra_metadata`` entries (e.g. permutation
    seed) are stored after the standard keys, sorted by name.
    """
    colors = np.asarray(colors, dtype=np.float64)
    if colors.shape != (graph.n_balls,):
        raise ValueError(f"expected {graph.n_balls} color values")
    if layout.positions.shape != (graph.n_balls, 2):
        raise ValueError("layout does not match graph")
    labels = _point_labels(graph, point_ids)
    scale = color_scale(colors)
    metadata = {
        "epsilon": graph.cover.epsilon,
        "metric": graph.cover.metric.value,
        "color_fn": color_fn,
        "flag": flag,
        "color_low": scale.low,
        "color_high": scale.high,
        "layout_seed": layout.seed,
        "n_points": graph.cover.n_points,
    }
    for key in sorted(extra_metadata or {}):
        if key in metadata:
            raise ValueError(f"metadata key collision: {key!r}")
        metadata[key] = (extra_metadata or {})[key]
    balls = []
    for i, ball in enumerate(graph.cover.balls):
        balls.append({
            "id": ball.ball_id,
            "landmark": labels[ball.landmark_index],
            "members": [labels[j] for j in ball.members],
            "size": ball.size,
            "value": float(colors[i]),
            "hex": scale.hex_colors[i],
            "x": float(layout.positions[i, 0]),
            "y": float(layout.positions[i, 1]),
            "radius": float(layout.radii[i]),
        })
    document = {
        "schema_version": SCHEMA_VERSION,
        "metadata": metadata,
        "balls": balls,
        "edges": [list(e) for e in sorted(graph.edges)],
    }
    return GraphDocument(data=document)


def export_document(doc: GraphDocument) -> bytes:
    """Canonical JSON bytes of a document; a fixpoint under import/export."""
    return _canonical_bytes(doc.data)


def _dot_bytes(doc: GraphDocument) -> bytes:
    lines = ["graph ballmapper {"]
    for ball in doc.balls:
        lines.append(
            f'b{ball["id"]} [label="{ball["id"]}" shape=circle style=filled '
            f'fixedsize=true width={_fmt_float(ball["radius"] * 10, False)} '
            f'fillcolor="{ball["hex"]}"];')
    for a, b in doc.edges:
        lines.append(f"b{a} -- b{b};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _csv_bytes(doc: GraphDocument) -> bytes:
    pairs = []
    for ball in doc.balls:
        pairs.extend((member, ball["id"]) for member in ball["members"])
    pairs.sort()
    lines = ["point_id,ball_id"]
    lines.extend(f"{p},{b}" for p, b in pairs)
    return ("\n".join(lines) + "\n").encode("utf-8")


def export_graph(graph: BallGraph, colors, layout: LayoutResult,
                 fmt: str = "json", point_ids=None,
                 color_fn: str | None = None, flag: str | None = None,
                 extra_metadata: dict | None = None) -> bytes:
    """Serialize one graph as ``json`` (canonical), ``dot``, or ``csv``.

    dot carries node size/fill attributes and undirected edges for
    external renderers; csv is the point-to-ball membership table, one row
    per membership.
    """
    doc = document_from_graph(graph, colors, layout, point_ids=point_ids,
                              color_fn=color_fn, flag=flag,
                              extra_metadata=extra_metadata)
    return render_document(doc, fmt)


def render_document(doc: GraphDocument, fmt: str = "json") -> bytes:
    """Serialize an existing document as ``json``, ``dot``, or ``csv``."""
    if fmt == "json":
        return export_document(doc)
    if fmt == "dot":
        return _dot_bytes(doc)
    if fmt == "csv":
        return _csv_bytes(doc)
    raise ValueError(f"unknown export format {fmt!r} (use json, dot, or csv)")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(f"invalid graph document: {message}")


def import_graph(raw) -> GraphDocument:
    """Parse and validate canonical JSON bytes (or str) into a document."""
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid graph document: not JSON ({exc})") from None
    _require(isinstance(data, dict), "top level must be an object")
    _require(set(data) == {"schema_version", "metadata", "balls", "edges"},
             "top-level keys must be schema_version, metadata, balls, edges")
    _require(data["schema_version"] == SCHEMA_VERSION,
             f"unsupported schema_version {data['schema_version']!r}")
    metadata, balls, edges = data["metadata"], data["balls"], data["edges"]
    _require(isinstance(metadata, dict)
             and set(_METADATA_KEYS) <= set(metadata),
             f"metadata must contain {_METADATA_KEYS}")
    _require(isinstance(balls, list) and balls, "balls must be nonempty")
    for i, ball in enumerate(balls):
        _require(isinstance(ball, dict) and tuple(ball) == _BALL_KEYS,
                 f"ball {i} keys must be exactly {_BALL_KEYS}")
        _require(ball["id"] == i + 1, "ball ids must be 1..n in order")
        _require(isinstance(ball["members"], list) and ball["members"],
                 f"ball {i + 1} has no members")
        _require(ball["size"] == len(ball["members"]),
                 f"ball {i + 1} size disagrees with members")
        _require(ball["landmark"] in ball["members"],
                 f"ball {i + 1} landmark not among members")
    ids = range(1, len(balls) + 1)
    _require(isinstance(edges, list), "edges must be a list")
    for e in edges:
        _require(isinstance(e, list) and len(e) == 2 and e[0] < e[1]
                 and e[0] in ids and e[1] in ids,
                 f"bad edge {e!r}")
    _require(edges == sorted(edges), "edges must be sorted")
    return GraphDocument(data=data)

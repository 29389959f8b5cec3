"""Command-line entry points.

Subcommands: generate, run, sweep, stats, kmeans, serve, export. Every
command that writes files also writes ``manifest.json`` capturing the
resolved configuration, seeds, and library versions — rerunning the same
command reproduces every output byte for byte, so manifests deliberately
carry no timestamps.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
Failures print a single machine-readable JSON line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import platform
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .baseline import correlations, elbow_series, kmeans, summarize_cloud
from .bootstrap import (METRIC_FIELDS, SweepParameter, SweepSpec,
                        generated_cloud, sweep)
from .cloud import PointCloud, normalize_minmax, winsorize
from .coloring import ColorFunction, aggregate
from .cover import build_cover, build_edges
from .export import (canonical_json_bytes, export_graph, import_graph,
                     render_document)
from .graphmetrics import compute_metrics
from .ingest import ingest_csv, write_cloud_csv
from .layout import DEFAULT_SEED as DEFAULT_LAYOUT_SEED
from .layout import layout as compute_layout
from .synthetic import CloudKind, CloudSpec, attach_flag

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    """Bad flags or flag values; exits 1."""


class DataError(Exception):
    """Unusable input data; exits 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; we reserve 2 for data
        raise UsageError(message)


def _fail(kind: str, code: int, message: str) -> int:
    line = json.dumps({"error": {"kind": kind, "exit": code, "message": message}})
    print(line, file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            raise UsageError("choose a subcommand (see --help)")
        return args.func(args)
    except UsageError as exc:
        return _fail("usage", EXIT_USAGE, str(exc))
    except DataError as exc:
        return _fail("data", EXIT_DATA, str(exc))
    except OSError as exc:
        return _fail("data", EXIT_DATA, str(exc))
    except Exception as exc:  # anything unplanned
        return _fail("internal", EXIT_INTERNAL, f"{type(exc).__name__}: {exc}")


# ---------------------------------------------------------------- helpers

def _outdir(args) -> Path:
    path = Path(args.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write(outdir: Path, name: str, data: bytes) -> str:
    (outdir / name).write_bytes(data)
    print(f"wrote {outdir / name}")
    return name


def _write_manifest(args, outdir: Path, outputs: list) -> None:
    config = {}
    for key in sorted(vars(args)):
        if key == "func":
            continue
        value = getattr(args, key)
        config[key] = str(value) if isinstance(value, Path) else value
    manifest = {
        "command": args.command,
        "package_version": __version__,
        "python_version": platform.python_version(),
        "numpy_version": np.__version__,
        "config": config,
        "outputs": outputs,
    }
    _write(outdir, "manifest.json", canonical_json_bytes(manifest))


def _csv_bytes(header: list, rows: list) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float) else v
                         for v in row])
    return buf.getvalue().encode("utf-8")


def _parse_floats(text: str, flag: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated numbers, got {text!r}")


def _cloud_spec(args) -> CloudSpec:
    try:
        kind = CloudKind(args.generator)
    except ValueError:
        raise UsageError(f"unknown generator kind {args.generator!r}")
    try:
        return CloudSpec(kind=kind, n_points=args.n, n_axes=args.d,
                         seed=args.cloud_seed,
                         five_part_means=_parse_floats(args.means, "--means"),
                         noise_sd=args.noise_sd,
                         outcome_noise_sd=args.outcome_noise_sd)
    except ValueError as exc:
        raise UsageError(str(exc))


def _load_cloud(args) -> PointCloud:
    """input/generator + flag derivation + winsorize + normalize."""
    if (args.input is None) == (args.generator is None):
        raise UsageError("provide exactly one of --input or --generator")
    if args.input is not None:
        axes = args.axes.split(",") if args.axes else None
        try:
            cloud = ingest_csv(args.input, axes, args.outcome_column,
                               args.id_column, args.flag_column)
        except ValueError as exc:
            raise DataError(str(exc))
        except FileNotFoundError:
            raise DataError(f"no such file: {args.input}")
    else:
        cloud = generated_cloud(_cloud_spec(args))
    for spec in args.flag or ():
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError(f"--flag expects AXIS:THRESHOLD:NAME, got {spec!r}")
        axis_name, threshold, name = parts
        if axis_name not in cloud.axis_names:
            raise DataError(f"no axis named {axis_name!r} to flag on")
        cloud = attach_flag(cloud, cloud.axis_names.index(axis_name),
                            float(threshold), name)
    if args.winsorize:
        lo, hi = _parse_floats(args.winsorize, "--winsorize")
        try:
            cloud = winsorize(cloud, lo, hi)
        except ValueError as exc:
            raise UsageError(str(exc))
    if args.normalize:
        cloud = normalize_minmax(cloud)
    return cloud


def _color_fn(args) -> ColorFunction:
    try:
        return ColorFunction(args.color)
    except ValueError:
        raise UsageError(f"unknown color function {args.color!r}")


def _add_input_options(sub, generator_only: bool = False):
    if not generator_only:
        sub.add_argument("--input", help="CSV file with a header row")
        sub.add_argument("--axes", help="comma-separated axis column names "
                                        "(default: all unclaimed columns)")
        sub.add_argument("--outcome-column", help="column holding the outcome")
        sub.add_argument("--id-column", help="column holding unique point ids")
        sub.add_argument("--flag-column", action="append", default=[],
                         help="0/1 column to ingest as a binary flag (repeatable)")
    sub.add_argument("--generator", choices=[k.value for k in CloudKind],
                     help="synthetic cloud family")
    sub.add_argument("--n", type=int, default=500, help="points to generate")
    sub.add_argument("--d", type=int, default=5, help="axes to generate")
    sub.add_argument("--cloud-seed", type=int, default=0,
                     help="generator seed (outcome stream derives from it)")
    sub.add_argument("--means", default="0,2,4,6,8",
                     help="five_part group means")
    sub.add_argument("--noise-sd", type=float, default=1.0)
    sub.add_argument("--outcome-noise-sd", type=float, default=0.1)
    sub.add_argument("--flag", action="append", default=[],
                     help="derive a flag: AXIS:THRESHOLD:NAME (repeatable)")
    sub.add_argument("--winsorize", help="clip quantiles, e.g. 0.01,0.99")
    sub.add_argument("--normalize", action="store_true",
                     help="min-max normalize every axis onto [0,1]")
    if generator_only:
        sub.set_defaults(input=None, axes=None, outcome_column=None,
                         id_column=None, flag_column=[])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ballmapper",
                     description="Ball-graph models of point clouds")
    parser.add_argument("--output-dir", "-o",
                        default=os.environ.get("BALLMAPPER_OUTPUT_DIR", "."),
                        help="directory for all written artifacts "
                             "(default: $BALLMAPPER_OUTPUT_DIR or .)")
    commands = parser.add_subparsers(dest="command")

    gen = commands.add_parser("generate", help="write a synthetic cloud CSV")
    _add_input_options(gen, generator_only=True)
    gen.add_argument("--out", default="cloud.csv", help="output file name")
    gen.set_defaults(func=cmd_generate, generator_required=True)

    run = commands.add_parser("run", help="build one graph end to end")
    _add_input_options(run)
    run.add_argument("--epsilon", type=float, required=True, help="ball radius")
    run.add_argument("--color", default="mean",
                     help="mean|proportion|stddev|min|max|range")
    run.add_argument("--flag-name", help="flag for proportion coloring")
    run.add_argument("--order-seed", type=int, default=None,
                     help="seed of the landmark-scan permutation "
                          "(omit to scan in input order)")
    run.add_argument("--layout-seed", type=int, default=DEFAULT_LAYOUT_SEED)
    run.add_argument("--formats", default="json",
                     help="comma-separated: json,dot,csv")
    run.set_defaults(func=cmd_run)

    swp = commands.add_parser("sweep", help="sweep a parameter, many repetitions")
    _add_input_options(swp)
    swp.add_argument("--parameter", required=True,
                     choices=[p.value for p in SweepParameter])
    swp.add_argument("--values", required=True,
                     help="comma-separated, strictly increasing")
    swp.add_argument("--reps", type=int, default=10000)
    swp.add_argument("--base-seed", type=int, default=0)
    swp.add_argument("--epsilon", type=float,
                     help="fixed radius for n_points/n_axes sweeps")
    swp.add_argument("--color", default="mean")
    swp.add_argument("--flag-name", help="flag for proportion coloring")
    swp.set_defaults(func=cmd_sweep)

    st = commands.add_parser("stats", help="summary moments and correlations")
    _add_input_options(st)
    st.set_defaults(func=cmd_stats)

    km = commands.add_parser("kmeans", help="k-means baseline with elbow series")
    _add_input_options(km)
    km.add_argument("--k", type=int, required=True)
    km.add_argument("--restarts", type=int, default=25)
    km.add_argument("--seed", type=int, default=0)
    km.add_argument("--elbow-max", type=int, default=0,
                    help="also write WSS for k=1..this")
    km.set_defaults(func=cmd_kmeans)

    srv = commands.add_parser("serve", help="start the local explorer service")
    _add_input_options(srv)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8765)
    srv.add_argument("--ui", help="directory with the built explorer "
                                  "(index.html + dist/), served at /")
    srv.set_defaults(func=cmd_serve)

    exp = commands.add_parser("export", help="re-serialize a stored graph")
    exp.add_argument("--graph", required=True, help="canonical graph JSON file")
    exp.add_argument("--format", default="json", choices=["json", "dot", "csv"])
    exp.add_argument("--out", help="output file name (default: graph.<format>)")
    exp.set_defaults(func=cmd_export)
    return parser


# ---------------------------------------------------------------- commands

def cmd_generate(args) -> int:
    if args.generator is None:
        raise UsageError("generate requires --generator")
    cloud = _load_cloud(args)
    outdir = _outdir(args)
    write_cloud_csv(cloud, outdir / args.out)
    print(f"wrote {outdir / args.out}")
    _write_manifest(args, outdir, [args.out])
    return EXIT_OK


def cmd_run(args) -> int:
    if not args.epsilon > 0:
        raise UsageError(f"--epsilon must be positive, got {args.epsilon}")
    formats = args.formats.split(",")
    for fmt in formats:
        if fmt not in ("json", "dot", "csv"):
            raise UsageError(f"unknown format {fmt!r}")
    fn = _color_fn(args)
    cloud = _load_cloud(args)
    order = (None if args.order_seed is None
             else np.random.default_rng(args.order_seed).permutation(cloud.n))
    graph = build_edges(build_cover(cloud, args.epsilon, order))
    try:
        colors = aggregate(graph, cloud, fn, args.flag_name)
    except ValueError as exc:
        raise DataError(str(exc))
    lay = compute_layout(graph, seed=args.layout_seed)
    outdir = _outdir(args)
    outputs = []
    for fmt in formats:
        data = export_graph(graph, colors, lay, fmt,
                            point_ids=cloud.point_ids, color_fn=fn.value,
                            flag=args.flag_name,
                            extra_metadata={"order_seed": args.order_seed})
        outputs.append(_write(outdir, f"graph.{fmt}", data))
    metrics = compute_metrics(graph, colors)
    # Full precision here (not the canonical 6-digit form): this file should
    # equal a recomputation from the graph document exactly.
    metrics_bytes = (json.dumps(metrics.as_dict()) + "\n").encode("utf-8")
    outputs.append(_write(outdir, "metrics.json", metrics_bytes))
    _write_manifest(args, outdir, outputs)
    return EXIT_OK


def cmd_sweep(args) -> int:
    parameter = SweepParameter(args.parameter)
    values = _parse_floats(args.values, "--values")
    fn = _color_fn(args)
    try:
        if parameter is SweepParameter.EPSILON and args.input is not None:
            spec = SweepSpec(parameter=parameter, values=values,
                             repetitions=args.reps, base_seed=args.base_seed,
                             cloud=_load_cloud(args), color_fn=fn,
                             flag_name=args.flag_name)
        else:
            if args.generator is None:
                raise UsageError("this sweep needs --generator (or --input "
                                 "with --parameter epsilon)")
            spec = SweepSpec(parameter=parameter, values=values,
                             repetitions=args.reps, base_seed=args.base_seed,
                             cloud_spec=_cloud_spec(args), epsilon=args.epsilon,
                             color_fn=fn, flag_name=args.flag_name)
    except ValueError as exc:
        raise UsageError(str(exc))
    summary = sweep(spec)
    rows = summary.as_rows()
    outdir = _outdir(args)
    outputs = [_write(outdir, "sweep_summary.csv",
                      _csv_bytes(list(rows[0]), [list(r.values()) for r in rows]))]
    fields = {}
    for name in METRIC_FIELDS:
        fields[name] = {k: v.tolist() for k, v in summary.series(name).items()
                        if k != "values"}
    series = {
        "parameter": parameter.value,
        "values": list(values),
        "fields": fields,
        "envelope": {k: v.tolist() for k, v in summary.envelope_series().items()
                     if k != "values"},
    }
    outputs.append(_write(outdir, "sweep_series.json",
                          canonical_json_bytes(series)))
    _write_manifest(args, outdir, outputs)
    return EXIT_OK


def cmd_stats(args) -> int:
    cloud = _load_cloud(args)
    table = summarize_cloud(cloud)
    rows = table.as_rows()
    outdir = _outdir(args)
    outputs = [_write(outdir, "summary.csv",
                      _csv_bytes(list(rows[0]), [list(r.values()) for r in rows]))]
    try:
        corr = correlations(cloud)
    except ValueError as exc:
        raise DataError(str(exc))
    header = ["variable", *cloud.axis_names]
    corr_rows = [[name, *corr[i]] for i, name in enumerate(cloud.axis_names)]
    outputs.append(_write(outdir, "correlations.csv",
                          _csv_bytes(header, corr_rows)))
    _write_manifest(args, outdir, outputs)
    return EXIT_OK


def cmd_kmeans(args) -> int:
    cloud = _load_cloud(args)
    if not 1 <= args.k <= cloud.n:
        raise UsageError(f"--k must be in [1, {cloud.n}]")
    result = kmeans(cloud, args.k, restarts=args.restarts, seed=args.seed)
    outdir = _outdir(args)
    header = ["cluster", "size", "outcome_mean",
              *(f"center_{a}" for a in cloud.axis_names)]
    rows = []
    for c in range(result.k):
        mean = (float(result.cluster_outcome_means[c])
                if result.cluster_outcome_means is not None else "")
        rows.append([c + 1, int(result.cluster_sizes[c]), mean,
                     *result.centers[c]])
    outputs = [_write(outdir, "kmeans_clusters.csv", _csv_bytes(header, rows))]
    assign_rows = [[cloud.point_ids[i], int(result.assignments[i]) + 1]
                   for i in range(cloud.n)]
    outputs.append(_write(outdir, "kmeans_assignments.csv",
                          _csv_bytes(["point_id", "cluster"], assign_rows)))
    print(f"k={result.k} wss={result.wss!r}")
    if args.elbow_max:
        if not 1 <= args.elbow_max <= cloud.n:
            raise UsageError(f"--elbow-max must be in [1, {cloud.n}]")
        wss = elbow_series(cloud, args.elbow_max, restarts=args.restarts,
                           seed=args.seed)
        outputs.append(_write(outdir, "elbow.csv",
                              _csv_bytes(["k", "wss"],
                                         [[k + 1, float(w)]
                                          for k, w in enumerate(wss)])))
    _write_manifest(args, outdir, outputs)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    cloud = None
    if args.input is not None or args.generator is not None:
        cloud = _load_cloud(args)
    static_dir = None
    if args.ui is not None:
        static_dir = Path(args.ui)
        if not (static_dir / "index.html").is_file():
            raise DataError(f"no index.html under {static_dir}")
    app = create_app(initial_cloud=cloud, static_dir=static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def cmd_export(args) -> int:
    path = Path(args.graph)
    if not path.exists():
        raise DataError(f"no such file: {path}")
    try:
        doc = import_graph(path.read_bytes())
        data = render_document(doc, args.format)
    except ValueError as exc:
        raise DataError(str(exc))
    outdir = _outdir(args)
    name = args.out or f"graph.{args.format}"
    outputs = [_write(outdir, name, data)]
    _write_manifest(args, outdir, outputs)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

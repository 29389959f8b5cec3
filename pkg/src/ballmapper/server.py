"""Local HTTP service behind the explorer UI.

One cloud is loaded at a time; every graph-shaped response is a pure
function of the loaded cloud and the query parameters, and built graphs
are cached on (cloud content, epsilon, color, flag, seed) so an epsilon
slider can revisit radii without rebuilding. Single-analyst tool:
localhost by default, no auth, nothing persisted.

Error statuses: 400 malformed parameters, 404 unknown ball, 409 no cloud
loaded, 422 CSV ingestion failure (message carries line/column detail).
"""

from __future__ import annotations

import hashlib
import threading
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from . import __version__
from .bootstrap import SweepParameter, SweepSpec, generated_cloud, sweep
from .cloud import PointCloud, normalize_minmax, winsorize
from .coloring import ColorFunction, aggregate
from .cover import build_cover, build_edges
from .export import SCHEMA_VERSION, export_graph
from .ingest import ingest_csv_text
from .layout import DEFAULT_SEED as DEFAULT_LAYOUT_SEED
from .layout import layout as compute_layout
from .synthetic import CloudKind, CloudSpec, attach_flag

__all__ = ["create_app"]

_KIND_BY_STATUS = {400: "bad_request", 404: "not_found", 409: "no_cloud",
                   422: "ingest"}


def _error(status: int, message: str) -> HTTPException:
    return HTTPException(status_code=status, detail=message)


class _State:
    def __init__(self):
        self.lock = threading.Lock()
        self.cloud: PointCloud | None = None
        self.cloud_key: str | None = None
        self.graphs: dict = {}
        self.jobs: dict = {}
        self.job_counter = 0

    def set_cloud(self, cloud: PointCloud) -> None:
        digest = hashlib.sha1(cloud.points.tobytes())
        if cloud.outcome is not None:
            digest.update(cloud.outcome.tobytes())
        for name in sorted(cloud.binary_flags):
            digest.update(name.encode())
            digest.update(cloud.binary_flags[name].tobytes())
        with self.lock:
            self.cloud = cloud
            self.cloud_key = digest.hexdigest()
            self.graphs = {}


def _parse_float(raw: str, name: str) -> float:
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise _error(400, f"parameter {name!r} must be a number, got {raw!r}")


def _parse_int(raw: str, name: str) -> int:
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise _error(400, f"parameter {name!r} must be an integer, got {raw!r}")


def _cloud_summary(state: _State) -> dict:
    cloud = state.cloud
    return {
        "cloud_key": state.cloud_key,
        "n": cloud.n,
        "d": cloud.d,
        "axes": list(cloud.axis_names),
        "has_outcome": cloud.outcome is not None,
        "flags": sorted(cloud.binary_flags),
    }


def _build_graph(state: _State, epsilon: str, color: str, flag: str | None,
                 seed: str | None, layout_seed: str):
    """Fetch or build the cached (bytes, graph, colors) for one query."""
    with state.lock:
        cloud, cloud_key = state.cloud, state.cloud_key
    if cloud is None:
        raise _error(409, "no cloud loaded; POST /api/cloud first")
    eps = _parse_float(epsilon, "epsilon")
    if not eps > 0:
        raise _error(400, f"epsilon must be positive, got {eps}")
    order_seed = None if seed is None else _parse_int(seed, "seed")
    lay_seed = _parse_int(layout_seed, "layout_seed")
    try:
        fn = ColorFunction(color)
    except ValueError:
        raise _error(400, f"unknown color function {color!r}")
    key = (cloud_key, eps, fn.value, flag, order_seed, lay_seed)
    with state.lock:
        hit = state.graphs.get(key)
    if hit is not None:
        return hit
    order = (None if order_seed is None
             else np.random.default_rng(order_seed).permutation(cloud.n))
    graph = build_edges(build_cover(cloud, eps, order))
    try:
        colors = aggregate(graph, cloud, fn, flag)
    except ValueError as exc:
        raise _error(400, str(exc))
    lay = compute_layout(graph, seed=lay_seed)
    body = export_graph(graph, colors, lay, "json",
                        point_ids=cloud.point_ids, color_fn=fn.value,
                        flag=flag, extra_metadata={"order_seed": order_seed})
    entry = (body, graph, colors, cloud)
    with state.lock:
        state.graphs.setdefault(key, entry)
    return entry


def create_app(initial_cloud: PointCloud | None = None,
               static_dir: "Path | None" = None) -> FastAPI:
    app = FastAPI(title="ballmapper explorer service", version=__version__)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    state = _State()
    if initial_cloud is not None:
        state.set_cloud(initial_cloud)

    @app.exception_handler(HTTPException)
    async def _http_error(request: Request, exc: HTTPException):
        kind = _KIND_BY_STATUS.get(exc.status_code, "error")
        return JSONResponse(status_code=exc.status_code,
                            content={"error": {"kind": kind,
                                               "message": str(exc.detail)}})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": {"kind": "bad_request",
                                               "message": str(exc)}})

    @app.post("/api/cloud")
    def api_cloud(payload: dict):
        if ("generator" in payload) == ("csv" in payload):
            raise _error(400, "provide exactly one of 'generator' or 'csv'")
        if "generator" in payload:
            g = payload["generator"]
            if not isinstance(g, dict):
                raise _error(400, "'generator' must be an object")
            try:
                spec = CloudSpec(
                    kind=CloudKind(g.get("kind", "noise")),
                    n_points=int(g.get("n_points", 500)),
                    n_axes=int(g.get("n_axes", 5)),
                    seed=int(g.get("seed", 0)),
                    five_part_means=tuple(g.get("five_part_means",
                                                (0, 2, 4, 6, 8))),
                    noise_sd=float(g.get("noise_sd", 1.0)),
                    outcome_noise_sd=float(g.get("outcome_noise_sd", 0.1)),
                )
            except (TypeError, ValueError) as exc:
                raise _error(400, f"bad generator spec: {exc}")
            cloud = generated_cloud(spec)
        else:
            if not isinstance(payload["csv"], str):
                raise _error(400, "'csv' must be the file text")
            try:
                cloud = ingest_csv_text(
                    payload["csv"],
                    payload.get("axis_columns"),
                    payload.get("outcome_column"),
                    payload.get("id_column"),
                    payload.get("flag_columns", ()),
                )
            except ValueError as exc:
                raise _error(422, str(exc))
        try:
            for spec in payload.get("flags", ()):
                axis = spec["axis"]
                if axis not in cloud.axis_names:
                    raise _error(400, f"no axis named {axis!r}")
                cloud = attach_flag(cloud, cloud.axis_names.index(axis),
                                    float(spec["threshold"]), str(spec["name"]))
            if payload.get("winsorize"):
                lo, hi = payload["winsorize"]
                cloud = winsorize(cloud, float(lo), float(hi))
            if payload.get("normalize"):
                cloud = normalize_minmax(cloud)
        except (KeyError, TypeError, ValueError) as exc:
            raise _error(400, f"bad preprocessing spec: {exc}")
        state.set_cloud(cloud)
        return _cloud_summary(state)

    @app.get("/api/graph")
    def api_graph(epsilon: str, color: str = "mean", flag: str | None = None,
                  seed: str | None = None, layout_seed: str = str(DEFAULT_LAYOUT_SEED)):
        body, _, _, _ = _build_graph(state, epsilon, color, flag, seed,
                                     layout_seed)
        return Response(content=body, media_type="application/json")

    @app.get("/api/ball/{ball_id}")
    def api_ball(ball_id: int, epsilon: str, color: str = "mean",
                 flag: str | None = None, seed: str | None = None,
                 layout_seed: str = str(DEFAULT_LAYOUT_SEED)):
        _, graph, colors, cloud = _build_graph(state, epsilon, color, flag,
                                               seed, layout_seed)
        if not 1 <= ball_id <= graph.n_balls:
            raise _error(404, f"no ball {ball_id}; graph has {graph.n_balls}")
        ball = graph.cover.balls[ball_id - 1]
        members = ball.members
        detail = {
            "id": ball.ball_id,
            "landmark": cloud.point_ids[ball.landmark_index],
            "member_ids": [cloud.point_ids[i] for i in members],
            "size": ball.size,
            "value": float(colors[ball_id - 1]),
            "axes": list(cloud.axis_names),
            "rows": cloud.points[members].tolist(),
        }
        if cloud.outcome is not None:
            v = cloud.outcome[members]
            mean, sd = float(v.mean()), float(v.std())
            detail["outcome"] = {
                "values": v.tolist(),
                "mean": mean,
                "sd": sd,
                "mean_sd_ratio": mean / sd if sd > 0 else None,
            }
        if cloud.binary_flags:
            detail["flag_proportions"] = {
                name: float(values[members].mean())
                for name, values in sorted(cloud.binary_flags.items())
            }
        return detail

    @app.get("/api/axes")
    def api_axes(epsilon: str, color: str = "mean", flag: str | None = None,
                 seed: str | None = None, layout_seed: str = str(DEFAULT_LAYOUT_SEED)):
        _, graph, _, cloud = _build_graph(state, epsilon, color, flag, seed,
                                          layout_seed)
        series = {}
        for j, name in enumerate(cloud.axis_names):
            column = cloud.points[:, j]
            series[name] = [float(column[b.members].mean())
                            for b in graph.cover.balls]
        return {"axes": list(cloud.axis_names), "n_balls": graph.n_balls,
                "series": series}

    @app.get("/api/sweep")
    def api_sweep(parameter: str = "epsilon", values: str = "",
                  reps: str = "1000", base_seed: str = "0",
                  color: str = "mean", flag: str | None = None):
        with state.lock:
            cloud = state.cloud
        if cloud is None:
            raise _error(409, "no cloud loaded; POST /api/cloud first")
        if parameter != SweepParameter.EPSILON.value:
            raise _error(400, "the service sweeps epsilon on the loaded cloud;"
                              " use the CLI for n_points/n_axes sweeps")
        if not values:
            raise _error(400, "parameter 'values' is required, e.g. 1,2,3")
        try:
            parsed = tuple(float(v) for v in values.split(","))
            fn = ColorFunction(color)
            spec = SweepSpec(parameter=SweepParameter.EPSILON, values=parsed,
                             repetitions=_parse_int(reps, "reps"),
                             base_seed=_parse_int(base_seed, "base_seed"),
                             cloud=cloud, color_fn=fn, flag_name=flag)
        except ValueError as exc:
            raise _error(400, str(exc))
        with state.lock:
            state.job_counter += 1
            job_id = f"job{state.job_counter}"
            state.jobs[job_id] = {"status": "running"}

        def _run():
            try:
                summary = sweep(spec)
                result = {"status": "done",
                          "parameter": spec.parameter.value,
                          "values": list(spec.values),
                          "rows": summary.as_rows()}
            except Exception as exc:  # report, don't kill the worker silently
                result = {"status": "error",
                          "message": f"{type(exc).__name__}: {exc}"}
            with state.lock:
                state.jobs[job_id] = result

        threading.Thread(target=_run, daemon=True).start()
        return {"job_id": job_id, "status": "running"}

    @app.get("/api/sweep/{job_id}")
    def api_sweep_job(job_id: str):
        with state.lock:
            job = state.jobs.get(job_id)
        if job is None:
            raise _error(404, f"no job {job_id!r}")
        return job

    @app.get("/api/meta")
    def api_meta():
        with state.lock:
            loaded = state.cloud is not None
            summary = _cloud_summary(state) if loaded else None
        return {
            "schema_version": SCHEMA_VERSION,
            "package_version": __version__,
            "cloud": summary,
            "colors": [fn.value for fn in ColorFunction],
            "default_layout_seed": DEFAULT_LAYOUT_SEED,
        }

    # Mounted last so every /api route wins; the UI's relative fetches
    # then share the API's origin and need no base-URL configuration.
    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="ui")

    return app

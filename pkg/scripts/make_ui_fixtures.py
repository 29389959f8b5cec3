"""Regenerate the explorer UI test fixtures in frontend/test/fixtures/.

Every fixture is a genuine HTTP response from the service loaded with the
shipped drill-down walkthrough cloud, so the UI tests exercise exactly the
payloads a live server produces. The engine's own point-to-ball map is
stored alongside as the independent ground truth for drill-down fidelity.

Usage: python3 scripts/make_ui_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from ballmapper import (DRILLDOWN_EPSILON, build_cover, cloud_csv_text,
                        drilldown_example, point_to_ball_map)
from ballmapper.server import create_app

OUT = Path(__file__).resolve().parents[1] / "frontend" / "test" / "fixtures"
SLIDER_EPSILONS = (1.0, 2.0, 4.0, 6.0, 10.0)


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    cloud = drilldown_example()
    client = TestClient(create_app())
    posted = client.post("/api/cloud", json={
        "csv": cloud_csv_text(cloud),
        "id_column": "point_id",
        "outcome_column": "Y",
        "flag_columns": ["x3_pos"],
    })
    posted.raise_for_status()

    def write(name: str, payload) -> None:
        (OUT / name).write_bytes(
            json.dumps(payload, indent=1).encode() + b"\n")

    proportion = {"epsilon": str(DRILLDOWN_EPSILON),
                  "color": "proportion", "flag": "x3_pos"}
    graph = client.get("/api/graph", params=proportion)
    graph.raise_for_status()
    (OUT / "graph_proportion.json").write_bytes(graph.content)

    mean = {"epsilon": str(DRILLDOWN_EPSILON), "color": "mean"}
    graph_mean = client.get("/api/graph", params=mean)
    graph_mean.raise_for_status()
    (OUT / "graph_mean.json").write_bytes(graph_mean.content)

    details = {}
    for ball in graph.json()["balls"]:
        r = client.get(f"/api/ball/{ball['id']}", params=proportion)
        r.raise_for_status()
        details[str(ball["id"])] = r.json()
    write("balls_proportion.json", details)

    cover = build_cover(cloud, DRILLDOWN_EPSILON)
    write("point_to_ball_map.json",
          {str(pid): balls
           for pid, balls in point_to_ball_map(cover, cloud.point_ids).items()})

    by_epsilon = {}
    for eps in SLIDER_EPSILONS:
        r = client.get("/api/graph", params={"epsilon": str(eps)})
        r.raise_for_status()
        by_epsilon[str(eps)] = r.json()
    write("graphs_by_epsilon.json", by_epsilon)

    meta = client.get("/api/meta")
    meta.raise_for_status()
    write("meta.json", meta.json())

    counts = {eps: len(doc["balls"]) for eps, doc in by_epsilon.items()}
    print(f"wrote fixtures to {OUT}")
    print(f"  drill-down graph: {len(details)} balls at eps={DRILLDOWN_EPSILON}")
    print(f"  slider ball counts: {counts}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""
Driving the explorer service
============================

Walk the HTTP API that backs the browser explorer, in-process via the
test client (needs the `dev` extras for httpx).  Against a live server
-- `ballmapper serve --port 8123` -- the same calls work with curl.
"""

import json
import time

from fastapi.testclient import TestClient

from ballmapper.server import create_app

client = TestClient(create_app())

# Nothing is loaded yet: graph requests answer 409 with a structured
# error body until a cloud arrives.
resp = client.get("/api/graph", params={"epsilon": "2"})
print(f"GET /api/graph before load -> {resp.status_code} "
      f"{resp.json()['error']['kind']}")

# Load a synthetic cloud.  The same endpoint accepts {"csv": "..."} with
# ingest options (id_column, outcome_column, flag_columns) for real data.
resp = client.post("/api/cloud", json={
    "generator": {"kind": "five_part", "n": 500, "d": 5, "seed": 7},
})
print(f"POST /api/cloud -> {resp.status_code} {resp.json()}")

# The graph endpoint returns the same canonical JSON document the CLI
# writes: metadata, colored + laid-out balls, edges.  Identical query
# parameters always return identical bytes.
params = {"epsilon": "2", "color": "mean", "seed": "3"}
first = client.get("/api/graph", params=params).content
second = client.get("/api/graph", params=params).content
doc = json.loads(first)
print(f"GET /api/graph -> {len(doc['balls'])} balls, "
      f"{len(doc['edges'])} edges, byte-stable={first == second}")

ball = doc["balls"][0]
print(f"first ball: id={ball['id']}, size={ball['size']}, "
      f"value={ball['value']:.3f}, hex={ball['hex']}")

# Drill into one ball: member ids, their rows, and outcome statistics.
detail = client.get(f"/api/ball/{ball['id']}", params=params).json()
print(f"GET /api/ball/{ball['id']} -> {detail['size']} members, "
      f"outcome mean {detail['outcome']['mean']:.3f}, "
      f"sd {detail['outcome']['sd']:.3f}")

# Per-axis means over each ball, for coordinate-space readouts.
axes = client.get("/api/axes", params=params).json()
print(f"GET /api/axes -> {axes['axes']} over {axes['n_balls']} balls")

# Radius sweeps run as background jobs; poll until done.
resp = client.get("/api/sweep", params={
    "values": "1.5,2,3", "reps": "50", "base_seed": "0",
}).json()
job = resp["job_id"]
while True:
    status = client.get(f"/api/sweep/{job}").json()
    if status["status"] != "running":
        break
    time.sleep(0.05)
print(f"GET /api/sweep -> {job} {status['status']}, "
      f"{len(status['rows'])} rows")
for row in status["rows"]:
    print(f"  epsilon={row['epsilon']}: mean balls {row['balls_mean']:.1f}")

# Service metadata: schema version, loaded-cloud summary, color menu.
meta = client.get("/api/meta").json()
print(f"GET /api/meta -> schema {meta['schema_version']}, "
      f"cloud n={meta['cloud']['n']}, colors {meta['colors']}")

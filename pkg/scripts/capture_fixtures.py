#!/usr/bin/env python3
"""Capture real API responses into frontend/test/fixtures.

The frontend's DOM tests render these verbatim, so they stay honest about
the wire format the service actually produces.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from seqcomp.service import create_app

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "test" / "fixtures"


def main() -> None:
    client = TestClient(create_app(ROOT / "data"))
    doc = client.post("/sessions", json={"dataset": "sample"}).json()
    sid = doc["sessionId"]
    grid = doc["initialGrid"]
    expanded = client.post(
        "/sessions/%s/matrix" % sid,
        json={
            "op": "expandCell",
            "rowPath": grid["rows"][0]["path"],
            "colPath": grid["columns"][0]["path"],
        },
    ).json()["grid"]

    cells = [
        (r, c)
        for r in range(len(expanded["rows"]))
        for c in range(len(expanded["columns"]))
        if expanded["cells"][r][c]["count"] > 0
    ]
    client.post(
        f"/sessions/{sid}/selection",
        json={
            "picksA": [{"mode": "cell", "row": cells[0][0], "col": cells[0][1]}],
            "picksB": [{"mode": "cell", "row": cells[1][0], "col": cells[1][1]}],
        },
    )
    patterns = client.get(
        f"/sessions/{sid}/patterns",
        params={"patternLayout": "map2d", "unitLayout": "maxfill", "minSupport": 25},
    ).json()
    first = patterns["patterns"][0]
    sequences = client.get(
        f"/sessions/{sid}/patterns/{first['id']}/sequences",
        params={"alignEvent": first["events"][-1]},
    ).json()

    OUT.mkdir(parents=True, exist_ok=True)
    for name, payload in (
        ("grid", {"grid": expanded, "noop": False}),
        ("patterns", patterns),
        ("sequences", sequences),
    ):
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()

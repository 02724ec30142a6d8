"""Record API fixtures for the frontend contract tests.

Drives the HTTP service in-process and freezes the JSON bodies the UI
renders from. Rerun after engine changes:

    python frontend/scripts/record_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from fairmine.service import app

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def csv_text(header, rows):
    return "\n".join([",".join(header)] + [",".join(map(str, r)) for r in rows]) + "\n"


def main_session(client: TestClient) -> None:
    rows = []
    m1, m2, outcome = [], [], []

    def block(dept, gender, band, n, benef1, benef2, benef_true):
        for i in range(n):
            hours = 30 + (10 if i < benef_true else 0) + (i % 5) - 2
            rows.append([gender, dept, band, hours, "1" if i < benef_true else "0"])
            m1.append(1 if i < benef1 else 0)
            m2.append(1 if i < benef2 else 0)
            outcome.append(1 if i < benef_true else 0)

    # dept=sales: strong discrimination against f in m1; m2 differs on high
    block("sales", "f", "low", 10, 2, 3, 3)
    block("sales", "f", "high", 10, 2, 6, 4)
    block("sales", "m", "low", 10, 8, 8, 7)
    block("sales", "m", "high", 10, 8, 4, 7)
    # dept=eng: fine in m1, reverse discrimination in m2
    block("eng", "f", "low", 10, 7, 9, 6)
    block("eng", "f", "high", 10, 7, 9, 7)
    block("eng", "m", "low", 10, 6, 3, 6)
    block("eng", "m", "high", 10, 6, 3, 7)

    payload = {
        "csv": csv_text(["gender", "dept", "band", "hours", "admit"], rows),
        "schema": {
            "gender": {"role": "protected", "protected_label": "f"},
            "hours": {"kind": "continuous"},
            "admit": {"role": "outcome", "beneficial_label": "1"},
        },
        "predictions": {"m1": m1, "m2": m2},
        "tau": 0.25,
        "min_support": 5,
        "resolving": ["dept"],
    }
    resp = client.post("/sessions", json=payload)
    resp.raise_for_status()
    info = resp.json()
    sid = info["session_id"]
    info["session_id"] = "fixture-main"
    write("session.json", info)

    write("results_m1.json", client.get(f"/sessions/{sid}/results/m1").json())
    write("results_m2.json", client.get(f"/sessions/{sid}/results/m2").json())
    write("histograms_m1.json", client.get(f"/sessions/{sid}/histograms/m1").json())
    write("geometry_m1_0.json", client.get(f"/sessions/{sid}/geometry/m1/0").json())
    write("geometry_m1_0_outline0.json",
          client.get(f"/sessions/{sid}/geometry/m1/0", params={"outline": 0}).json())
    write("geometry_m1_0_budget.json",
          client.get(f"/sessions/{sid}/geometry/m1/0", params={"dot_budget": 5}).json())
    write("compare.json",
          client.get(f"/sessions/{sid}/compare", params={"m1": "m1", "m2": "m2"}).json())


def toy_session(client: TestClient) -> None:
    rows = []
    preds = []

    def block(x, gender, n, benef):
        for i in range(n):
            rows.append([gender, x, "1"])
            preds.append(1 if i < benef else 0)

    block("u", "f", 10, 2)
    block("u", "m", 10, 8)
    block("v", "f", 2, 1)
    block("v", "m", 2, 1)
    payload = {
        "csv": csv_text(["gender", "x", "label"], rows),
        "schema": {"gender": {"role": "protected", "protected_label": "f"},
                   "label": {"role": "outcome", "beneficial_label": "1"}},
        "predictions": {"m": preds},
        "tau": 0.25,
        "min_support": 4,
        "min_group_support": 2,
        "resolving": [],
        "allow_empty_resolving": True,
    }
    resp = client.post("/sessions", json=payload)
    resp.raise_for_status()
    sid = resp.json()["session_id"]
    write("toy_results.json", client.get(f"/sessions/{sid}/results/m").json())
    preview = client.post(f"/sessions/{sid}/mitigate",
                          json={"model": "m", "selected": ["x=u"],
                                "tau_target": 0.25, "preview": True})
    preview.raise_for_status()
    write("toy_mitigate_preview.json", preview.json())


def write(name: str, payload: dict) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {name}")


if __name__ == "__main__":
    client = TestClient(app)
    main_session(client)
    toy_session(client)

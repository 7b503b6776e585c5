"""Record API responses for the frontend fidelity tests.

Boots the HTTP app against a throwaway store, runs the two demo scenarios
(sex=Female strong, v_decile_score 6..10 weak) in both modes, and writes
the raw response bytes under frontend/tests/fixtures/.  The frontend tests
feed these recorded responses through the UI and assert that every
rendered value equals the corresponding snapshot field.

Usage: python3 scripts/record_ui_fixtures.py
"""
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from filterlens.server import create_app

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "frontend" / "tests" / "fixtures"
DEMO = ROOT / "data" / "recidivism_demo.csv"
OUTCOME = "two_year_recid"
NUMERIC = ("decile_score", "v_decile_score")

SCENARIOS = {
    "strong": {"column": "sex", "categories": ["Female"]},
    "weak": {"column": "v_decile_score", "range": [6, 10]},
}
DETAIL_FEATURE = {"strong": "age", "weak": "sex"}


def record(client: TestClient) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    def save(name: str, response) -> None:
        (FIXTURES / f"{name}.json").write_bytes(response.content)
        print(f"  {name}.json <- {response.status_code}")

    params = [("name", "recidivism_demo"), *[("numeric", c) for c in NUMERIC]]
    upload = client.post("/datasets", params=params, content=DEMO.read_bytes())
    assert upload.status_code == 201, upload.content
    ds_id = upload.json()["id"]
    save("manifest", upload)
    save("column_sex", client.get(f"/datasets/{ds_id}/columns/sex"))
    save("column_age", client.get(f"/datasets/{ds_id}/columns/age"))
    save("column_v_decile_score",
         client.get(f"/datasets/{ds_id}/columns/v_decile_score"))

    bad = client.post("/datasets", params=[("name", "bad")], content=b"only_header\n")
    assert bad.status_code == 400, bad.content
    save("err_upload", bad)

    for label, constraint in SCENARIOS.items():
        for mode in ("counterfactual", "control"):
            created = client.post("/sessions", json={
                "dataset": ds_id, "outcome": OUTCOME, "mode": mode,
            })
            assert created.status_code == 201, created.content
            sid = created.json()["id"]
            suffix = "_create" if mode == "counterfactual" else "_control_create"
            save(f"{label}{suffix}", created)
            pushed = client.post(f"/sessions/{sid}/filters", json=constraint)
            assert pushed.status_code == 200, pushed.content
            save(label if mode == "counterfactual" else f"{label}_control", pushed)
            detail = client.get(f"/sessions/{sid}",
                                params={"feature": DETAIL_FEATURE[label]})
            suffix = "_detail" if mode == "counterfactual" else "_control_detail"
            save(f"{label}{suffix}", detail)

    # A rejected edit, for the non-destructive toast path.
    created = client.post("/sessions", json={"dataset": ds_id, "outcome": OUTCOME})
    sid = created.json()["id"]
    client.post(f"/sessions/{sid}/filters",
                json={"column": "sex", "categories": ["Female"]})
    refused = client.post(f"/sessions/{sid}/filters",
                          json={"column": "age", "range": [1000, 2000]})
    assert refused.status_code == 422, refused.content
    save("err_empty_included", refused)


def main() -> int:
    with tempfile.TemporaryDirectory() as root:
        record(TestClient(create_app(data_root=root)))
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""HTTP API surface: payloads, responses, and error mapping."""

import pytest
from fastapi.testclient import TestClient

from ccrt.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"
    assert body["version"]


def test_reconstruct_worked_example(client):
    resp = client.post(
        "/reconstruct",
        json={
            "system": {"M": 2, "cofactors": ["1+4i", "-3-4i", "13+16i"]},
            "remainders": ["-3+6i", "-1-6i", "-15+44i"],
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["n"] == "17.0+18.0i"
    assert body["r_common"] == "1.0"
    assert body["n0"] == "8+9i"


def test_reconstruct_domain_error_is_400(client):
    resp = client.post(
        "/reconstruct",
        json={"system": {"M": 10, "cofactors": ["2", "4"]}, "remainders": ["1", "1"]},
    )
    assert resp.status_code == 400
    assert "coprime" in resp.json()["detail"]


def test_reconstruct_shape_error_is_422(client):
    resp = client.post("/reconstruct", json={"system": {"M": 10}})
    assert resp.status_code == 422


def test_estimate(client):
    resp = client.post(
        "/estimate",
        json={
            "system": {"M": 10, "cofactors": ["3+4i", "3-4i"]},
            "remainders": ["12.1+3.9i", "41.8+34.2i"],
            "sigmas": [1.0, 1.5],
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["evaluations"] == 4
    assert body["real_mults"] <= 32
    assert body["objective"] >= 0


def test_estimate_rejects_bad_sigma(client):
    resp = client.post(
        "/estimate",
        json={
            "system": {"M": 10, "cofactors": ["3+4i", "3-4i"]},
            "remainders": ["1", "1"],
            "sigmas": [1.0, -1.0],
        },
    )
    assert resp.status_code == 400


def test_robustness_check(client):
    resp = client.post(
        "/robustness/subset-check",
        json={"M": 10, "deltas": ["0.1+0.2i", "-0.3+0.1i"], "sigmas": [1.0, 1.0]},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["condition_holds"] is True
    assert body["first_violating_subset"] is None
    assert body["rmse_theory"] > 0

    resp = client.post(
        "/robustness/subset-check",
        json={"M": 10, "deltas": ["3", "-3"], "sigmas": [1.0, 1.0]},
    )
    assert resp.json()["condition_holds"] is False


def test_simulate_prob(client):
    resp = client.post(
        "/simulate",
        json={
            "config": {
                "campaign": "prob",
                "M": 10,
                "sigmas": [2.4, 2.5],
                "k_grid": [0.0],
                "trials": 2000,
                "seed": 0,
            }
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["campaign"] == "prob"
    assert body["columns"][0] == "k"
    assert len(body["rows"]) == 1
    assert body["csv"].startswith("k,sigma1,sigma2")
    assert body["manifest"]["rows"] == 1


def test_simulate_bad_campaign_is_400(client):
    resp = client.post("/simulate", json={"config": {"campaign": "nope"}})
    assert resp.status_code == 400


def test_count_ops(client):
    resp = client.post("/count-ops", json={"channel_counts": [2, 4, 8]})
    assert resp.status_code == 200
    counts = resp.json()["counts"]
    assert [c["L"] for c in counts] == [2, 4, 8]
    for c in counts:
        assert c["real_mults"] <= c["bound"] == 8 * c["L"] ** 2

"""HTTP service: endpoints, validation, error mapping."""

import numpy as np
import pytest
from fastapi.testclient import TestClient

from wigner_entropy.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"
    assert "version" in body


def test_entropy_reference_point(client):
    response = client.post(
        "/entropy",
        json={"mass": 1.0, "width": 0.1, "beta": 0.6, "axis": "x"},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["alpha"] == pytest.approx(np.arctanh(0.6), rel=1e-12)
    assert body["t"] == pytest.approx(1.38889e-4, rel=1e-4)
    assert body["s_leading"] == pytest.approx(1.3725e-3, rel=1e-4)
    assert body["s_numeric"] == pytest.approx(body["s_leading"], rel=0.1)
    assert abs(body["n"][0]) < 1e-10 and abs(body["n"][1]) < 1e-10
    assert body["quadrature"]["nodes_per_axis"] == 48
    lam = body["eigenvalues"]
    assert lam[0] + lam[1] == pytest.approx(1.0, abs=1e-12)


def test_entropy_no_boost_is_pure(client):
    body = client.post(
        "/entropy", json={"mass": 1.0, "width": 0.1, "rapidity": 0.0}
    ).json()
    assert body["s_numeric"] < 1e-12
    assert body["nz_numeric"] == pytest.approx(1.0, abs=1e-12)


def test_entropy_rejects_superluminal_beta(client):
    response = client.post("/entropy", json={"mass": 1.0, "width": 0.1, "beta": 1.5})
    assert response.status_code == 422
    assert "beta" in response.text


def test_entropy_rejects_both_rapidity_and_beta(client):
    response = client.post(
        "/entropy", json={"mass": 1.0, "width": 0.1, "beta": 0.5, "rapidity": 1.0}
    )
    assert response.status_code == 422


def test_entropy_rejects_bad_packet(client):
    assert client.post("/entropy", json={"mass": -1.0, "width": 0.1}).status_code == 422
    assert client.post("/entropy", json={"mass": 1.0, "width": 0.0}).status_code == 422
    response = client.post(
        "/entropy", json={"mass": 1.0, "width": 0.1, "spin": [[1.0, 0.0], [1.0, 0.0]]}
    )
    assert response.status_code == 422
    assert "unit" in response.text


def test_entropy_custom_spinor(client):
    body = client.post(
        "/entropy",
        json={
            "mass": 1.0,
            "width": 0.1,
            "rapidity": 0.0,
            "spin": [[0.6, 0.0], [0.0, 0.8]],
        },
    ).json()
    assert body["s_numeric"] < 1e-12  # pure product state in its own frame
    np.testing.assert_allclose(body["n"], [0.0, 0.96, -0.28], atol=1e-12)


def test_entropy_nonconvergence_maps_to_409(client):
    response = client.post(
        "/entropy", json={"mass": 1.0, "width": 0.1, "rapidity": 1.0, "nodes": 12}
    )
    assert response.status_code == 409
    detail = response.json()["detail"]
    assert detail["code"] == "quadrature_nonconvergent"
    assert detail["error_estimate"] > 0


def test_scan_grid_order_and_consistency(client):
    response = client.post(
        "/scan",
        json={"mass": 1.0, "widths": [0.05, 0.1], "alphas": [0.5, 1.0, 1.5]},
    )
    assert response.status_code == 200
    rows = response.json()["rows"]
    assert len(rows) == 6
    assert [(r["w"], r["alpha"]) for r in rows] == [
        (0.05, 0.5), (0.05, 1.0), (0.05, 1.5), (0.1, 0.5), (0.1, 1.0), (0.1, 1.5)
    ]
    for row in rows:
        t = (row["w"] * np.tanh(row["alpha"] / 2)) ** 2 / (8 * row["m"] ** 2)
        assert row["t"] == pytest.approx(t, rel=1e-12)
        assert row["nz_leading"] == pytest.approx(1 - 2 * t, rel=1e-12)
    # ratio to leading order improves as width shrinks
    small = next(r for r in rows if r["w"] == 0.05 and r["alpha"] == 1.0)
    large = next(r for r in rows if r["w"] == 0.1 and r["alpha"] == 1.0)
    assert abs(small["s_numeric"] / small["s_leading"] - 1) < abs(
        large["s_numeric"] / large["s_leading"] - 1
    )


def test_verify_endpoint_passes(client):
    response = client.post("/verify", json={"seed": 0})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is True
    names = {c["name"] for c in body["checks"]}
    assert {"wigner_unitarity", "explicit_boost_agreement", "convergence_order"} <= names
    assert all(c["passed"] for c in body["checks"])


def test_verify_seed_reproducibility(client):
    a = client.post("/verify", json={"seed": 7, "nodes": 16}).json()
    b = client.post("/verify", json={"seed": 7, "nodes": 16}).json()
    assert a == b


def test_rest_frame_endpoint(client):
    response = client.post(
        "/frame/rest",
        json={"mass": 1.0, "width": 0.1, "boost_rapidity": 1.0},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["converged"] is True
    np.testing.assert_allclose(body["rapidity"], [-1.0, 0.0, 0.0], atol=2e-3)
    assert np.linalg.norm(body["residual_mean_momentum"]) <= 1e-6 * 0.1


def test_min_entropy_frame_endpoint(client):
    response = client.post(
        "/frame/min-entropy",
        json={"mass": 1.0, "width": 0.1, "boost_rapidity": 0.4, "max_evaluations": 200},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["converged"] is True
    assert body["s_min"] < 1e-6
    np.testing.assert_allclose(body["rapidity"], [-0.4, 0.0, 0.0], atol=1e-3)


def test_frame_search_budget_exhaustion_flagged(client):
    response = client.post(
        "/frame/min-entropy",
        json={"mass": 1.0, "width": 0.1, "boost_rapidity": 0.5, "max_evaluations": 3},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["converged"] is False
    assert body["evaluations"] <= 6  # capped per simplex run

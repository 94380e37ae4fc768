import math

import numpy as np
import pytest
from fastapi.testclient import TestClient

from deltabeam.service.app import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_freq_classical(client):
    response = client.post("/freq", json={"bc": "pp"})
    assert response.status_code == 200
    body = response.json()
    assert body["shortfall"] is None
    alphas = [row["alpha"] for row in body["modes"]]
    assert np.allclose(alphas, [math.pi, 2 * math.pi, 3 * math.pi], atol=1e-8)
    assert body["modes"][0]["omega"] == pytest.approx(math.pi ** 2)
    assert [row["mode_index"] for row in body["modes"]] == [1, 2, 3]


def test_freq_shortfall_reports_partial_rows(client):
    response = client.post("/freq", json={"bc": "pp", "n_modes": 4,
                                          "alpha_max": 7.0})
    assert response.status_code == 200
    body = response.json()
    assert len(body["modes"]) == 2
    assert body["shortfall"]["found"] == 2
    assert body["shortfall"]["requested"] == 4


@pytest.mark.parametrize("field,value", [("xi0", 1.5), ("xi0", 0.0),
                                         ("k", -1.0), ("m", 0.0),
                                         ("bc", "zz"), ("n_modes", 0)])
def test_validation_errors(client, field, value):
    response = client.post("/freq", json={"bc": "pp", field: value})
    assert response.status_code == 422


def test_shape_returns_samples_continuous_at_the_junction(client):
    response = client.post("/shape", json={"bc": "pp", "k": 1.5, "xi0": 0.4,
                                           "lambda0": 2.0, "lambda1": 2.0,
                                           "mode_index": 1, "samples": 801})
    assert response.status_code == 200
    body = response.json()
    xs = np.array(body["x"])
    phi = np.array(body["phi"])
    assert len(xs) == 801
    assert xs[0] == 0.0 and xs[-1] == 1.0
    assert np.max(np.abs(phi)) == pytest.approx(1.0, abs=1e-6)
    # no jump at the junction: successive differences stay sample-spacing sized
    gaps = np.abs(np.diff(phi))
    assert np.max(gaps) < 5 * np.median(gaps) + 1e-3


def test_shape_with_explicit_alpha(client):
    response = client.post("/shape", json={"bc": "pp", "alpha": math.pi,
                                           "samples": 11})
    assert response.status_code == 200
    phi = response.json()["phi"]
    assert phi[5] == pytest.approx(1.0, abs=1e-9)


def test_shape_rejects_non_frequency(client):
    response = client.post("/shape", json={"bc": "pp", "alpha": 3.2})
    assert response.status_code == 409
    detail = response.json()["detail"]
    assert detail["abs_det"] > 0
    assert detail["sigma_min"] > 1e-6


def test_shape_mode_index_out_of_range(client):
    response = client.post("/shape", json={"bc": "pp", "mode_index": 5})
    assert response.status_code == 422


def test_sweep_uniform_second_column_constant(client):
    response = client.post("/sweep", json={"bc": "pp", "param": "lambda",
                                           "start": 0.0, "stop": 10.0,
                                           "count": 5})
    assert response.status_code == 200
    rows = response.json()["rows"]
    col2 = [row["alphas"][1] for row in rows]
    assert max(col2) - min(col2) < 1e-10


def test_sweep_invalid_grid(client):
    response = client.post("/sweep", json={"bc": "pp", "param": "xi0",
                                           "start": 0.0, "stop": 0.5,
                                           "count": 3})
    assert response.status_code == 422


def test_verify_cracked_beam_passes(client):
    response = client.post("/verify", json={"bc": "cc", "k": 1.5, "xi0": 0.4,
                                            "lambda0": 2.0, "lambda1": 2.0})
    assert response.status_code == 200
    body = response.json()
    assert body["all_passed"]
    assert len(body["modes"]) == 3
    for mode in body["modes"]:
        bound = body["tolerance"] * mode["scale"]
        assert all(abs(v) <= bound for v in mode["delta_coeffs"].values())
        assert mode["smooth_residual_max"] <= bound


def test_algebra_check_endpoint(client):
    response = client.post("/algebra-check", json={"seed": 7, "triples": 10})
    assert response.status_code == 200
    body = response.json()
    assert body["all_passed"]
    assert body["n_failed"] == 0
    assert body["n_passed"] == len(body["checks"])

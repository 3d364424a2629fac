import pytest
from fastapi.testclient import TestClient

from app.main import app

SMALL_GRID = {"boundary_points": 256, "radii": [0.5, 0.9, 1.0]}


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_claims_listing(client):
    response = client.get("/api/v1/claims", params={"lambda": 1, "mu": 2.5})
    assert response.status_code == 200
    body = response.json()
    assert body["total"] == 21
    t22 = next(c for c in body["claims"] if c["id"] == "t22-ratio")
    assert t22["valid"] is False


def test_claims_rejects_lambda(client):
    assert client.get("/api/v1/claims", params={"lambda": -1, "mu": 2.5}).status_code == 422


def test_registry(client):
    response = client.get("/api/v1/claims/registry")
    assert response.status_code == 200
    assert len(response.json()) == 21


def test_evaluate(client):
    response = client.post("/api/v1/evaluate", json={
        "kind": "raw", "lambda": 1, "mu": 1, "z": {"re": 1, "im": 0},
    })
    assert response.status_code == 200
    body = response.json()
    assert body["value"]["re"] == pytest.approx(2.2795853023360673, abs=1e-14)
    assert body["certified"] is True


def test_evaluate_outside_disc(client):
    response = client.post("/api/v1/evaluate", json={
        "kind": "norm-first", "lambda": 1, "mu": 2.5, "z": {"re": 2, "im": 0},
    })
    assert response.status_code == 422
    assert response.json()["error"] == "DomainError"


def test_evaluate_invalid_lambda(client):
    response = client.post("/api/v1/evaluate", json={
        "kind": "raw", "lambda": -2, "mu": 1, "z": {"re": 0.5, "im": 0},
    })
    assert response.status_code == 422


def test_evaluate_invalid_normalization(client):
    response = client.post("/api/v1/evaluate", json={
        "kind": "norm-second", "lambda": -0.5, "mu": 0.2, "z": {"re": 0.5, "im": 0},
    })
    assert response.status_code == 422
    assert response.json()["predicate"] == "lambda > -1, lambda + mu > 0"


def test_certify_one_claim(client):
    response = client.post("/api/v1/certify", json={
        "claim": "t21-ratio", "lambda": 1, "mu": 2.5, "n": 0, "grid": SMALL_GRID,
    })
    assert response.status_code == 200
    body = response.json()
    assert body["total"] == 1
    assert body["reports"][0]["verdict"] == "certified"


def test_certify_unknown_claim(client):
    response = client.post("/api/v1/certify", json={"claim": "nope", "lambda": 1, "mu": 2.5})
    assert response.status_code == 422
    assert "predicate" in response.json()


def test_remark(client):
    response = client.post("/api/v1/remark", json=SMALL_GRID)
    assert response.status_code == 200
    body = response.json()
    assert [item["function"] for item in body["inequalities"]] == ["W/z", "z/W", "f", "g"]
    assert body["closed_form_residual_flipped_sign"] <= 1e-12

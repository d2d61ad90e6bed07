import pytest
from fastapi.testclient import TestClient

from main import app
from steiner.service import EXAMPLE_BST, EXAMPLE_VERTICES, EXAMPLE_WEIGHTS


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"
    assert response.json()["service"] == "multitree"


def test_root(client):
    body = client.get("/").json()
    assert body["docs"] == "/docs"
    assert body["health"] == "/health"
    assert body["routers"] == ["/geometry", "/realizability", "/fermat", "/inverse", "/steiner", "/multitree"]


def test_cayley_menger(client):
    response = client.post("/geometry/cayley-menger", json={"n": 4, "lengths": [12, 11, 9, 10, 8, 7]})
    assert response.status_code == 200
    body = response.json()
    assert body["determinant"] == 1994518
    assert body["volume_factor"] == 288


def test_volume_of_unrealizable_lengths(client):
    response = client.post("/geometry/volume", json={"n": 4, "lengths": [1, 1, 1, 1, 1, 1.9]})
    assert response.status_code == 400


def test_realizability_check(client):
    response = client.post("/realizability/check", json={"lengths": [7, 8, 9, 10, 11, 12]})
    assert response.status_code == 200
    body = response.json()
    assert body["incongruent"] == body["realizable"] == 30
    assert body["hertog_verdict"] is True


def test_enumerate_in_table_order(client):
    response = client.post("/realizability/enumerate", json={"lengths": [7, 8, 9, 10, 11, 12], "paper_order": True})
    body = response.json()
    assert body["count"] == 30
    assert all(row["columns"][0] == 12 for row in body["rows"])


def test_thresholds(client):
    body = client.get("/realizability/thresholds", params={"N": 3}).json()
    assert body["consecutive_integer_start"] == 13
    assert body["hertog_start"] == 7
    assert 1.91 < body["blumenthal_ratio"] < 1.92


def test_fermat_solve(client):
    response = client.post("/fermat/solve", json={"points": [[0, 0], [3, 0], [0, 4]], "weights": [1, 1, 1]})
    assert response.status_code == 200
    body = response.json()
    assert body["kind"] == "Floating"
    assert body["vertex_objectives"] == pytest.approx([7.0, 8.0, 9.0])


def test_fermat_rejects_collinear_points(client):
    response = client.post("/fermat/solve", json={"points": [[0, 0], [1, 0], [2, 0]], "weights": [1, 1, 1]})
    assert response.status_code == 400


def test_invert(client):
    payload = {"vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], "point": [0.2, 0.2, 0.2], "C": 1.0}
    body = client.post("/inverse/invert", json=payload).json()
    assert sum(body["weights"]) == pytest.approx(1.0)


def test_steiner_tetrahedron(client):
    payload = {"vertices": [list(v) for v in EXAMPLE_VERTICES], "weights": list(EXAMPLE_WEIGHTS),
               "bst": EXAMPLE_BST}
    response = client.post("/steiner/tetrahedron", json=payload)
    assert response.status_code == 200
    assert response.json()["weighted_length"] == pytest.approx(15.25268, abs=1e-4)


def test_multitree_build(client):
    response = client.post("/multitree/build", json={"lengths": [7, 8, 9, 10, 11, 12]})
    assert response.status_code == 200
    body = response.json()
    assert body["schema"] == 1
    assert len(body["rows"]) == 30


def test_most_natural_below_the_start(client):
    response = client.post("/multitree/most-natural", json={"lengths": [6, 7, 8, 9, 10, 11]})
    assert response.status_code == 400

"""
test_api_routes_analysis.py – Pruebas para los endpoints /analysis y /conjugacy

Se usa TestClient sobre la aplicación completa (con el registro dinámico de routers) y
se comprueba el mapeo de errores del dominio a códigos HTTP.
"""

import os

from fastapi.testclient import TestClient

from api.app import app
from core.boolean import TruthTable
from core.catalog import xor_shift, xor_shift_conjugate
from core.formats import render_truth_table

client = TestClient(app)

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


def read(name):
    with open(os.path.join(DATA_DIR, name), encoding="utf-8") as f:
        return f.read()


def test_fixed_points_endpoint():
    response = client.post("/analysis/fixed-points", json={"table": read("staircase.tt")})
    assert response.status_code == 200
    assert response.json() == {"width": 2, "fixed_points": ["00", "11"]}


def test_nullclins_endpoint():
    response = client.post("/analysis/nullclins", json={"table": read("staircase.tt")})
    assert response.json()["nullclins"]["2"] == ["00", "11"]


def test_transitive_endpoint():
    body = {"table": read("negation2.tt"), "mode": "forall"}
    data = client.post("/analysis/transitive", json=body).json()
    assert data["transitive"] is False
    assert data["counterexample"] is not None
    body["mode"] = "exists"
    assert client.post("/analysis/transitive", json=body).json()["transitive"] is True


def test_portrait_endpoint():
    response = client.post("/analysis/portrait", json={"table": read("staircase.tt"), "self_loops": True})
    assert response.status_code == 200
    assert '[style=dashed]' in response.json()["dot"]


def test_parse_error_maps_to_422():
    response = client.post("/analysis/fixed-points", json={"table": "n=2\n00 -> 00\n"})
    assert response.status_code == 422
    data = response.json()
    assert data["code"] == "missing-input"
    assert data["detail"].startswith("table:")


def test_invalid_body_maps_to_422():
    response = client.post("/analysis/transitive", json={"table": read("not1.tt"), "mode": "a veces"})
    assert response.status_code == 422


def test_capability_error_maps_to_400():
    table = render_truth_table(TruthTable.identity(4))
    response = client.post("/conjugacy/search", json={"phi": table, "psi": table})
    assert response.status_code == 400
    assert "4" in response.json()["detail"]


def test_conjugacy_search_and_check():
    body = {"phi": render_truth_table(xor_shift()), "psi": render_truth_table(xor_shift_conjugate())}
    data = client.post("/conjugacy/search", json=body).json()
    assert data["equivalent"] is True

    body["witness"] = read("xor_shift.witness")
    body["check_invariants"] = True
    data = client.post("/conjugacy/check", json=body).json()
    assert data["equivalent"] is True
    assert data["invariants"]["holds"] is True


def test_conjugacy_bad_witness_maps_to_422():
    body = {
        "phi": read("not1.tt"),
        "psi": read("not1.tt"),
        "witness": "n=1\n0 -> 0\n1 -> 1\n---\nn=1\n0 -> 1\n1 -> 0\n",
    }
    assert client.post("/conjugacy/check", json=body).status_code == 422

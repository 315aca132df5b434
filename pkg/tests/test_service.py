"""HTTP surface: endpoints, schemas, error mapping, payload determinism."""
import json

import pytest
from fastapi.testclient import TestClient

from qcsearch.service import app

client = TestClient(app)


def payload_of(response) -> dict:
    return response.json()["payload"]


def csv_body(text: str) -> str:
    """CSV payload with the metadata comment lines stripped."""
    return "\n".join(line for line in text.splitlines() if not line.startswith("#"))


class TestHealth:
    def test_health(self):
        r = client.get("/v1/health")
        assert r.status_code == 200
        assert r.json()["status"] == "ok"


class TestGainEndpoint:
    def test_basic_row(self):
        r = client.post("/v1/gain", json={"n": 12, "k": 2})
        assert r.status_code == 200
        p = payload_of(r)
        assert p["M"] == "79"
        assert p["G_sci"] == "8.98336e-01"
        assert p["log10_G"] == pytest.approx(-0.046561040533377, abs=1e-12)

    def test_pure_quantum_limit(self):
        r = client.post("/v1/gain", json={"n": 100, "k": 0})
        assert payload_of(r)["log10_G"] == pytest.approx(0.0, abs=1e-12)

    def test_big_count_is_string_encoded(self):
        r = client.post("/v1/gain", json={"n": 1000, "k": 61})
        p = payload_of(r)
        assert isinstance(p["M"], str)
        assert len(p["M"]) == 99  # exact 99-digit integer survives JSON

    def test_width_bound_rejected(self):
        r = client.post("/v1/gain", json={"n": 2000, "k": 1})
        assert r.status_code == 422
        assert "1024" in json.dumps(r.json())

    def test_k_bound_rejected(self):
        r = client.post("/v1/gain", json={"n": 8, "k": 9})
        assert r.status_code == 422

    def test_csv_format(self):
        r = client.post("/v1/gain", json={"n": 12, "k": 2, "format": "csv"})
        assert r.headers["content-type"].startswith("text/csv")
        lines = csv_body(r.text).splitlines()
        assert lines[0] == "n,k,M,log10_NG,log10_NC,log10_NGC,log10_G,G_sci"
        assert lines[1].startswith("12,2,79,")


class TestKoptEndpoint:
    def test_n100(self):
        r = client.post("/v1/kopt", json={"n": 100})
        p = payload_of(r)
        assert p["k_star"] == 7
        assert p["best"]["k"] == 7
        assert p["G_closed_form_sci"] == "1.56277e-05"

    def test_sweep_rows_ascend(self):
        r = client.post("/v1/kopt", json={"n": 12, "sweep": True})
        ks = [row["k"] for row in payload_of(r)["sweep"]]
        assert ks == list(range(13))

    def test_tiny_sweep(self):
        r = client.post("/v1/kopt", json={"n": 1, "sweep": True})
        assert len(payload_of(r)["sweep"]) == 2

    def test_csv_marks_optimum(self):
        r = client.post("/v1/kopt", json={"n": 12, "sweep": True, "format": "csv"})
        rows = csv_body(r.text).splitlines()[1:]
        flags = [row.split(",")[-2] for row in rows]
        assert flags.count("1") == 1
        assert flags[1] == "1"  # k* = 1 at n = 12


class TestTable1Endpoint:
    def test_reference_values_round_trip(self):
        r = client.post("/v1/table1", json={})
        rows = {row["n"]: row for row in payload_of(r)["rows"]}
        assert rows[500]["G_ref_sci"] == "1.67000e-25"
        assert rows[700]["k_ref"] == 43
        assert len(rows) == 10

    def test_reconciliation_deltas_within_half_decade(self):
        r = client.post("/v1/table1", json={})
        for row in payload_of(r)["rows"]:
            assert abs(row["delta_log10_at_k_star"]) <= 0.5
            assert abs(row["delta_log10_closed_form"]) <= 0.5
            assert abs(row["delta_k"]) <= 2

    def test_csv_columns(self):
        r = client.post("/v1/table1", json={"format": "csv"})
        header = csv_body(r.text).splitlines()[0].split(",")
        assert header[:6] == ["n", "k_ref", "G_ref_sci", "log10_G_ref", "k_star", "delta_k"]
        assert len(csv_body(r.text).splitlines()) == 11


class TestSimulateEndpoint:
    def test_smart_strategy(self):
        r = client.post(
            "/v1/simulate",
            json={"strategy": "smart", "n": 64, "trials": 100, "seed": 1},
        )
        p = payload_of(r)
        assert p["found_rate"] == 1.0
        assert p["stats"]["distance_queries"]["max"] <= 65
        assert p["model"] is None

    def test_hybrid_attaches_model(self):
        r = client.post(
            "/v1/simulate",
            json={"strategy": "hybrid", "n": 12, "k": 2, "trials": 50, "seed": 7},
        )
        p = payload_of(r)
        assert p["model"]["M"] == "79"
        assert set(p["stats"]) == {
            "distance_queries",
            "threshold_queries",
            "promise_queries",
            "equality_queries",
            "quantum_oracle_calls",
            "total",
            "restarts",
        }

    def test_statevector_scale_guard(self):
        r = client.post(
            "/v1/simulate",
            json={
                "strategy": "hybrid",
                "n": 30,
                "k": 2,
                "trials": 10,
                "seed": 1,
                "engine": "statevector",
            },
        )
        assert r.status_code == 422
        assert "idealized" in r.json()["detail"]

    def test_missing_seed_rejected(self):
        r = client.post(
            "/v1/simulate", json={"strategy": "smart", "n": 8, "trials": 10}
        )
        assert r.status_code == 422

    def test_payload_deterministic_across_calls(self):
        body = {"strategy": "hybrid", "n": 12, "k": 2, "trials": 60, "seed": 42}
        first = client.post("/v1/simulate", json=body)
        second = client.post("/v1/simulate", json=body)
        assert json.dumps(payload_of(first)) == json.dumps(payload_of(second))

    def test_csv_stats_rows(self):
        r = client.post(
            "/v1/simulate",
            json={
                "strategy": "pure_classical",
                "n": 8,
                "trials": 20,
                "seed": 9,
                "format": "csv",
            },
        )
        lines = csv_body(r.text).splitlines()
        assert lines[0] == "kind,mean,stddev,min,max,ci95_low,ci95_high"
        assert len(lines) == 8  # five counters + total + restarts


class TestPromiseEndpoint:
    def test_prefix_instance(self):
        r = client.post(
            "/v1/promise", json={"n": 8, "g": "prefix:4", "l": 0, "k": 4}
        )
        p = payload_of(r)
        assert p["M_gl"] == "16"
        assert p["ball_sum"] == "163"
        assert p["NGC_sci"] == "8.46416e+01"
        assert p["enumeration"]["checked"] is True
        assert p["enumeration"]["M_gl_enumerated"] == 16
        assert p["enumeration"]["diameter_ok"] is True

    def test_degenerate_distance_rejected(self):
        r = client.post(
            "/v1/promise", json={"n": 8, "g": "distance", "l": 2, "k": 2}
        )
        assert r.status_code == 422
        assert "admissibility" in r.json()["detail"]

    def test_false_diameter_promise_rejected(self):
        # prefix:6 with l=0 is admissible at k=1 (M_gl=4 <= 9/2) but its
        # sublevel set has true diameter 2, so the promise check fires
        r = client.post(
            "/v1/promise", json={"n": 8, "g": "prefix:6", "l": 0, "k": 1}
        )
        assert r.status_code == 422
        assert "promise violated" in r.json()["detail"]

    def test_unknown_g_spec(self):
        r = client.post("/v1/promise", json={"n": 8, "g": "fourier", "l": 0, "k": 2})
        assert r.status_code == 422

    def test_large_n_skips_enumeration(self):
        r = client.post(
            "/v1/promise", json={"n": 64, "g": "prefix:32", "l": 0, "k": 32}
        )
        p = payload_of(r)
        assert p["enumeration"] == {"checked": False}
        assert p["M_gl"] == str(1 << 32)

    def test_json_round_trips_schema(self):
        r = client.post(
            "/v1/promise",
            json={"n": 8, "g": "prefix:4", "l": 0, "k": 4, "format": "json"},
        )
        doc = r.json()
        assert set(doc) == {"format", "metadata", "payload"}
        assert json.loads(json.dumps(doc)) == doc

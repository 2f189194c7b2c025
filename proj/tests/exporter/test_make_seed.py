"""Seed files and the fixture generator: schema, shape, class-number gate, round trip."""

import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

ROOT = Path(__file__).resolve().parents[2]
SEEDS = ROOT / "data" / "seeds"
SCHEMA = json.loads((ROOT / "data" / "schema" / "seed.schema.json").read_text())
MAKE_SEED = ROOT / "scripts" / "make_seed.py"
KUMMER_RT = Path(os.environ.get("KUMMER_RT", ROOT / "build" / "kummer_rt"))


def have_cypari2():
    try:
        import cypari2  # noqa: F401
        return True
    except ImportError:
        return False


def seed_files():
    return sorted(SEEDS.glob("seed_*.json"))


@pytest.mark.parametrize("path", seed_files(), ids=lambda p: p.stem)
def test_checked_in_seed_matches_schema(path):
    data = json.loads(path.read_text())
    jsonschema.validate(data, SCHEMA)
    p, ell0, ell1 = (data["params"][k] for k in ("p", "ell0", "ell1"))
    assert path.name == f"seed_{p}_{ell0}_{ell1}.json"
    if not data["class_number_coprime"]:
        return
    ds, db = data["rank_small"] + 1, data["rank_big"] + 1
    # unit rank plus one per prime over ell0; ell0 splits completely in both fields
    assert data["rank_small"] == (p - 3) // 2 + (p - 1)
    assert data["rank_big"] == p * (p - 1) // 2 - 1 + p * (p - 1)
    assert len(data["basis_small"]) == ds and len(data["basis_big"]) == db
    for u in data["basis_small"]:
        assert len(u["coeffs"]) == p - 1 and all(len(r) == p for r in u["coeffs"])
        assert all(c == "0" for r in u["coeffs"] for c in r[1:])
    for name, rows, cols in (("sigma_matrix", db, db), ("delta_matrix", db, db), ("inclusion_matrix", ds, db)):
        m = data[name]
        assert len(m) == rows and all(len(r) == cols and all(0 <= x < p for x in r) for r in m)


def test_expected_ranks_for_5_11_23():
    data = json.loads((SEEDS / "seed_5_11_23.json").read_text())
    assert (data["rank_small"], data["rank_big"]) == (5, 29)


def test_gate_file_is_checked_in():
    data = json.loads((SEEDS / "seed_7_29_347.json").read_text())
    jsonschema.validate(data, SCHEMA)
    assert data["class_number_coprime"] is False


@pytest.mark.skipif(not have_cypari2(), reason="cypari2 not installed")
def test_exporter_gates_7_29_347(tmp_path):
    out = tmp_path / "gate.json"
    r = subprocess.run([sys.executable, str(MAKE_SEED), "7", "29", "347", str(out)], capture_output=True, text=True,
                       timeout=600)
    assert r.returncode == 3
    assert "p | h_K" in r.stderr
    data = json.loads(out.read_text())
    jsonschema.validate(data, SCHEMA)
    assert data["class_number_coprime"] is False


@pytest.mark.skipif(not have_cypari2(), reason="cypari2 not installed")
def test_export_roundtrip_5_11_23(tmp_path):
    out = tmp_path / "seed_5_11_23.json"
    subprocess.run([sys.executable, str(MAKE_SEED), "5", "11", "23", str(out)], check=True, timeout=3600)
    data = json.loads(out.read_text())
    jsonschema.validate(data, SCHEMA)
    assert (data["rank_small"], data["rank_big"]) == (5, 29)
    cert = subprocess.run([str(KUMMER_RT), "--trials", "20", "certify", str(out)], capture_output=True, text=True)
    assert cert.returncode == 0, cert.stdout + cert.stderr
    run = subprocess.run([str(KUMMER_RT), "--data", str(out), "--format", "json", "run", "5", "11", "23"],
                         capture_output=True, text=True)
    assert run.returncode == 0, run.stderr
    assert json.loads(run.stdout)["conclusion"] == "R = T"

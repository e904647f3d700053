import json
import os
import pathlib
import subprocess

import pytest

import gdrazin

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMA = json.loads((ROOT / "docs" / "gdrazin.schema.json").read_text())


def validate(doc, kind):
    jsonschema = pytest.importorskip("jsonschema")
    jsonschema.validate(doc, {"$ref": f"#/$defs/{kind}", "$defs": SCHEMA["$defs"]})


def cli():
    path = os.environ.get("GDRAZIN_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("GDRAZIN_CLI not set")
    return path


def test_version():
    assert gdrazin.__version__ == "0.1.0"


def test_drazin_idempotent_and_nilpotent():
    e = gdrazin.matrix([[1, 1], [0, 0]])
    out = gdrazin.drazin(e)
    assert out["index"] == 1
    assert gdrazin.to_complex_rows(out["dinv"]) == [[1, 1], [0, 0]]
    n = gdrazin.drazin(gdrazin.matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    assert n["index"] == 3
    assert all(v == 0 for row in gdrazin.to_complex_rows(n["dinv"]) for v in row)


def test_approx_backend_matches_exact():
    rows = [[2, 1j], [0, 0]]
    ex = gdrazin.to_complex_rows(gdrazin.drazin(gdrazin.matrix(rows))["dinv"])
    ap = gdrazin.to_complex_rows(gdrazin.drazin(gdrazin.matrix(rows, "approx"), backend="approx")["dinv"])
    assert max(abs(a - b) for ra, rb in zip(ex, ap) for a, b in zip(ra, rb)) < 1e-9


def test_entry_parsing_roundtrip():
    m = gdrazin.matrix([["1/2-3i", 2 + 1j, -1]])
    assert gdrazin.to_complex_rows(m) == [[0.5 - 3j, 2 + 1j, -1]]


def test_shift_fixture_pierce():
    b = gdrazin.generate("G3", target="T31")
    rep = gdrazin.check(b)
    assert rep["holds"] and rep["lambda"] == "2"
    out = gdrazin.apply(b)
    assert out["agree"]
    assert all(v == 0 for row in gdrazin.to_complex_rows(out["result"]) for v in row)


def test_unit_lambda_rejected():
    b = gdrazin.generate("G3", target="T31")
    rep = gdrazin.check(b, lambda_="1")
    assert not rep["holds"]
    assert rep["first_failure"] == "a^pi b d = lambda a b"
    with pytest.raises(gdrazin.HypothesisViolation):
        gdrazin.apply(b, lambda_="1")


def test_block_fixture_reports_disagreement():
    # the printed block formula doubles the diagonal terms on this fixture
    b = gdrazin.generate("G3", target="T43")
    out = gdrazin.apply(b)
    assert out["hypothesis"]["holds"]
    assert not out["agree"]
    assert [row[2] for row in gdrazin.to_complex_rows(out["oracle"])[:3]] == [-1, -1, 1]


def test_generated_families_agree():
    for fam in ("G1", "G2", "G4"):
        for seed in range(3):
            out = gdrazin.apply(gdrazin.generate(fam, seed=seed, dim=4))
            assert out["agree"], (fam, seed)


def test_verify_summary():
    rep = gdrazin.verify(["G2"], count=5, seed=1, dim_min=3, dim_max=5)
    assert rep["summary"]["total"] == 5
    assert rep["summary"]["agree"] == 5
    validate(rep, "verify_output")


def test_errors_are_typed():
    with pytest.raises(gdrazin.DimensionError):
        gdrazin.drazin(gdrazin.matrix([[1, 2, 3]]))
    with pytest.raises(gdrazin.Error):
        gdrazin.drazin({"rows": 1, "cols": 1, "backend": "exact", "entries": ["x"]})


def test_bundle_schema():
    validate(gdrazin.generate("G5", seed=3, target="C42"), "bundle")


def test_cli_outputs_match_schema(tmp_path):
    exe = cli()
    m = tmp_path / "m.json"
    m.write_text(json.dumps(gdrazin.matrix([[1, 1], [0, 0]])))
    bundle = tmp_path / "b.json"
    bundle.write_text(json.dumps(gdrazin.generate("G2", seed=2, dim=4)))

    def run(*args):
        p = subprocess.run([exe, *args], capture_output=True, text=True)
        assert p.returncode == 0, p.stderr
        return json.loads(p.stdout)

    validate(run("drazin", str(m)), "drazin_output")
    validate(run("check", str(bundle)), "check_output")
    validate(run("apply", str(bundle)), "apply_output")
    validate(run("verify", "--suite", "G1,G2", "--count", "3", "--dim", "2-4"), "verify_output")

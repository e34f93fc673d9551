import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from conftest import DATA
from sdepth.cli import ENVELOPE_SCHEMA, main
from sdepth.hypergraph import build_kpartite, chained_primes
from sdepth.monomial import MonomialIdeal
from sdepth.textformat import ParseError, format_ideal, parse_ideal

IDEAL = DATA / "bipartite_2_4.txt"
PARTITION = DATA / "bipartite_2_4_partition.json"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def envelope(capsys, *argv, expect=0):
    code, out = run(capsys, *argv)
    assert code == expect
    data = json.loads(out)
    jsonschema.validate(data, ENVELOPE_SCHEMA)
    _no_floats(data)
    return data


def _no_floats(obj):
    if isinstance(obj, float):
        raise AssertionError(f"float in output: {obj}")
    if isinstance(obj, dict):
        for v in obj.values():
            _no_floats(v)
    elif isinstance(obj, list):
        for v in obj:
            _no_floats(v)


# --- text format ---------------------------------------------------------

def test_parse_roundtrip():
    for sizes in [(2, 4), (1, 2, 3), (3,)]:
        _, ideal = build_kpartite(sizes)
        assert parse_ideal(format_ideal(ideal, ["c"])) == ideal
    weird = MonomialIdeal.from_exponents(3, [(2, 0, 1), (0, 3, 0)])
    assert parse_ideal(format_ideal(weird)) == weird


def test_parse_grammar_details(caplog):
    text = "# header comment\nvars: 3\n# between\ngens:\n  x1*x3^2  \n# inside\nx2\nx1*x2\n"
    ideal = parse_ideal(text)
    assert [str(g) for g in ideal.gens] == ["x2", "x1*x3^2"]
    assert "dropped 1" in caplog.text


@pytest.mark.parametrize("text,line,col", [
    ("gens:\nx1\n", 1, 1),
    ("vars: 2\nx1\n", 2, 1),
    ("vars: 2\ngens:\nx3\n", 3, 2),
    ("vars: 2\ngens:\nx1+x2\n", 3, 3),
    ("vars: 2\ngens:\nx1^0\n", 3, 4),
    ("vars: 2\ngens:\n", 3, 1),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as err:
        parse_ideal(text)
    assert (err.value.line, err.value.column) == (line, col)


# --- commands ------------------------------------------------------------

def test_exact_ideal(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    data = envelope(capsys, "exact", IDEAL, "--cert", cert)
    assert data["outputs"]["sdepth"] == 4
    assert data["input_digest"].startswith("sha256:")
    assert data["outputs"]["certificate"] == str(cert)
    code, _ = run(capsys, "verify", IDEAL, "--partition", cert)
    assert code == 0


def test_exact_quotient(capsys):
    data = envelope(capsys, "exact", IDEAL, "--quotient")
    out = data["outputs"]
    assert out["bracket"]["lower"] <= out["sdepth"] <= out["bracket"]["upper"]
    assert out["sdepth"] == 2 and out["bracket"]["lower"] == 2
    assert isinstance(out["certificate"], dict)


def test_exact_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("vars: 2\ngens:\nx1*y2\n")
    code = main(["exact", str(bad)])
    err = capsys.readouterr().err
    assert code == 2 and "line 3, column 4" in err


def test_exact_budget_and_size_exits(capsys, tmp_path):
    f = tmp_path / "i.txt"
    f.write_text(format_ideal(build_kpartite((1, 1, 1, 2, 2))[1]))
    assert main(["exact", str(f), "--quotient", "--budget", "3"]) == 3
    assert main(["exact", str(IDEAL), "--max-points", "10"]) == 4
    capsys.readouterr()


def test_bounds_commands(capsys, tmp_path):
    data = envelope(capsys, "bounds", IDEAL)
    reports = {(r["name"], r["kind"]): r for r in data["outputs"]["reports"]}
    assert reports["thm2.6", "upper"]["value"] == 4
    assert reports["cor2.8", "lower"]["value"] == 3
    f = tmp_path / "33.txt"
    f.write_text(format_ideal(build_kpartite((3, 3))[1]))
    data = envelope(capsys, "bounds", f)
    assert data["outputs"]["exact"] == 4
    assert any(r["name"] == "cor2.9" and r["value"] == 4 for r in data["outputs"]["reports"])
    data = envelope(capsys, "bounds", IDEAL, "--quotient", "--order", "2,1", "--best-order")
    reports = {r["name"]: r for r in data["outputs"]["reports"]}
    assert reports["thm3.1"]["value"] == 2 and reports["thm3.1-best"]["value"] == 2
    assert main(["bounds", str(IDEAL), "--quotient", "--order", "1,1"]) == 2
    capsys.readouterr()


def test_bounds_chained_example(capsys):
    data = envelope(capsys, "bounds", DATA / "chained_primes.txt")
    report = next(r for r in data["outputs"]["reports"] if r["name"] == "thm2.13")
    assert (report["value"], report["raw_num"], report["raw_den"]) == (21, 43, 2)
    assert "23" in report["note"]


def test_verify_fixture_and_failures(capsys, tmp_path):
    data = envelope(capsys, "verify", IDEAL, "--partition", PARTITION)
    assert data["outputs"]["partition_sdepth"] == 4 and data["outputs"]["points"] == 45
    tampered = json.loads(PARTITION.read_text())
    tampered["intervals"].pop(0)
    t = tmp_path / "tampered.json"
    t.write_text(json.dumps(tampered))
    data = envelope(capsys, "verify", IDEAL, "--partition", t, expect=5)
    assert data["outputs"]["reason"] == "uncovered point" and data["outputs"]["point"] == [1, 0, 1, 0, 0, 0]
    data = envelope(capsys, "verify", IDEAL, "--partition", PARTITION, "--quotient", expect=5)
    assert data["outputs"]["reason"] == "point outside poset"


def test_kpartite_and_minprimes(capsys, tmp_path):
    code, out = run(capsys, "kpartite", "2,4")
    assert code == 0 and parse_ideal(out) == parse_ideal(IDEAL.read_text())
    target = tmp_path / "k.txt"
    data = envelope(capsys, "kpartite", "2,4", "-o", target)
    assert data["input_digest"] is None and data["outputs"]["generators"] == 8
    assert parse_ideal(target.read_text()) == build_kpartite((2, 4))[1]
    data = envelope(capsys, "minprimes", IDEAL)
    assert data["outputs"]["primes"] == [[1, 2], [3, 4, 5, 6]]
    assert main(["kpartite", "2,x"]) == 2
    capsys.readouterr()


def test_survey(capsys, tmp_path):
    code, out = run(capsys, "survey", "--max-n", "6", "--k", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 9
    row = next(r for r in rows if r["part_sizes"] == "2,4")
    assert row["exact"] == "4" and row["upper"] == "4"
    assert list(rows[0])[:4] == ["part_sizes", "n", "k", "exact"]
    out_csv = tmp_path / "s.csv"
    data = envelope(capsys, "survey", "--max-n", "5", "--quotient", "--out", out_csv)
    assert data["outputs"]["rows"] == len(out_csv.read_text().splitlines()) - 1
    assert b"\r" not in out_csv.read_bytes()
    assert main(["survey", "--max-n", "9"]) == 2
    capsys.readouterr()


def test_survey_is_deterministic(capsys):
    _, first = run(capsys, "survey", "--max-n", "5")
    _, second = run(capsys, "survey", "--max-n", "5")
    assert first == second


def test_stdin_and_module_entry_point():
    text = IDEAL.read_text()
    proc = subprocess.run([sys.executable, "-m", "sdepth", "exact", "-"], input=text,
                          capture_output=True, text=True, check=True)
    data = json.loads(proc.stdout)
    jsonschema.validate(data, ENVELOPE_SCHEMA)
    assert data["outputs"]["sdepth"] == 4


def test_threads_env_default(monkeypatch, capsys):
    monkeypatch.setenv("SDEPTH_THREADS", "2")
    data = envelope(capsys, "exact", IDEAL)
    assert data["command"]["args"]["threads"] == 2
    assert data["outputs"]["sdepth"] == 4


def test_schema_rejects_unknown_fields(capsys):
    data = envelope(capsys, "minprimes", IDEAL)
    data["extra"] = 1
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(data, ENVELOPE_SCHEMA)

import csv
import io
import json
from pathlib import Path

import pytest

from hizwkb.cli import main

jsonschema = pytest.importorskip("jsonschema")
SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def validate(doc, name):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.validate(doc, schema)


def test_jack_table_check_low_orders():
    code, text = run("jack-table", "--order", "3", "--alpha", "2", "--check")
    assert code == 0
    assert text.count("[ok]") == 6


def test_jack_table_alpha_one_json():
    code, text = run("jack-table", "--order", "2", "--alpha", "1", "--format", "json")
    doc = json.loads(text)
    validate(doc, "jack_table")
    rows = {tuple(r["partition"]): r for r in doc["rows"]}
    assert [r["partition"] for r in doc["rows"]] == [[1], [2], [1, 1]]
    assert {tuple(t["partition"]): t["coeff"] for t in rows[(2,)]["power_sum_coeffs"]} == {(2,): "1", (1, 1): "1"}
    assert rows[(1, 1)]["character"] == "1"
    assert rows[(2,)]["dimension_factors"] == "k*(k + 1)"


def test_jack_table_reports_reference_mismatch(capsys):
    code, _ = run("jack-table", "--order", "5", "--alpha", "1/3", "--check")
    assert code == 1
    assert "[2^21] character" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ("jack-table", "--order", "2", "--alpha", "two"),
    ("coeff-table", "--k", "5"),
    ("coeff-table", "--k", "5", "--beta", "4", "--alpha", "-1"),
    ("oracle", "beta2", "--x", "1,2", "--lambda", "1"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_coeff_alpha_tableoth_pipelines():
    code, text = run("coeff-table", "--beta", "4", "--k", "5", "--order", "3", "--pipeline", "both")
    assert code == 0
    doc = json.loads(text)
    validate(doc, "coeff_table")
    assert doc["agreement"] is True
    assert len([e for e in doc["entries"] if e["order"] == 3]) == 8


def test_coeff_alpha_tableeta_two(capsys):
    code, _ = run("coeff-table", "--beta", "2", "--k", "5")
    assert code == 2
    assert "singular duality point; use oracle beta2" in capsys.readouterr().err


def test_coeff_table_csv():
    code, text = run("coeff-table", "--alpha", "1/2", "--k", "6", "--order", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["graph_name", "edge_list", "coefficient", "leading_largek"]
    assert rows[1] == ["I", "1-2x1", "-1/6", "-1/6"]


def test_verify_identities_only():
    code, text = run("verify", "--only", "identities", "--k", "4", "--format", "json")
    doc = json.loads(text)
    validate(doc, "verify_report")
    assert code == 0 and [r["check"] for r in doc["results"]] == ["identities k=4"]


def test_verify_fault_injection():
    code, text = run("verify", "--only", "residual-equations", "--k", "5", "--inject-fault")
    assert code == 1
    assert "FAIL  residual equations k=5 beta=4: violated: order2-a" in text


def test_verify_default_suite():
    code, text = run("verify")
    assert code == 0, text
    assert "FAIL" not in text


def test_oracle_mc_json():
    argv = ("oracle", "mc", "--group", "u", "--k", "3", "--x", "0.3,0.1,-0.2", "--lambda", "0.25,0,-0.15",
            "--samples", "5000", "--seed", "9")
    code, text = run(*argv)
    assert code == 0
    doc = json.loads(text)
    validate(doc, "mc_estimate")
    assert run(*argv)[1] == text


def test_oracle_beta2():
    code, text = run("oracle", "beta2", "--x", "1,0", "--lambda", "1,0")
    doc = json.loads(text)
    validate(doc, "beta2_value")
    assert code == 0 and doc["value"] == pytest.approx(1.718281828459045)

"""Command-line interface: subcommands, exit codes, germ files, and
certificate serialization."""

import json

import pytest

from e8nash import certificate
from e8nash.cli import main, parse_germ_file, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_no_subcommand_is_usage_error(capsys):
    code, _, _ = run(capsys, )
    assert code == 1


def test_tables_text(capsys):
    code, out, _ = run(capsys, "tables")
    assert code == 0
    assert "table1" in out and "table2" in out


def test_tables_json_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "tables", "--format", "json")
    code2, out2, _ = run(capsys, "tables", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["passed"] is True
    # all exact numbers are serialized as strings
    assert doc["table2"]["7"]["multiplicity"] == "36"


def test_eliminate_json(capsys):
    code, out, _ = run(capsys, "eliminate", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["pairs"] == "56"
    assert len(doc["rule1_eliminated"]) == 28
    assert len(doc["rule3_eliminated"]) == 14
    assert len(doc["remaining"]) == 14


def test_cases_json(capsys):
    code, out, _ = run(capsys, "cases", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["cases"]) == 25
    assert len(doc["nt_markers"]) == 3
    assert "N7:3+5" in doc["cases"]
    for m in doc["nt_markers"]:
        assert m["surrogate"] in doc["cases"]


def test_e6_subcommand(capsys):
    code, out, _ = run(capsys, "e6", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True


def test_delta_needs_exactly_one_source(capsys):
    code, _, err = run(capsys, "delta")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "delta", "--case", "N7:3+5", "--germ", "x")
    assert code == 1 and "error" in err


def test_delta_bad_case_label(capsys):
    code, _, err = run(capsys, "delta", "--case", "bogus")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "delta", "--case", "N2:3+5")
    assert code == 1 and "error" in err


def test_delta_case(capsys):
    code, out, _ = run(capsys, "delta", "--case", "N7:3+5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["drop"] == "1"
    assert doc["expected_drop"] == "1"
    assert doc["passed"] is True


def test_delta_germ_file(tmp_path, capsys):
    f = tmp_path / "node.germ"
    f.write_text("# a node: two smooth branches\n"
                 "t; 0; 0\n"
                 "0; t; 0\n", encoding="utf-8")
    code, out, _ = run(capsys, "delta", "--germ", str(f), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["delta"] == "1"
    assert doc["branches"] == "2"


def test_germ_file_coefficients(tmp_path):
    f = tmp_path / "coeffs.germ"
    f.write_text("t^2 + 3/4*t^5; -t^3; (1/2*z5 + 1/2*z5^4)*t\n", encoding="utf-8")
    germ = parse_germ_file(str(f))
    (xs, ys, zs), = germ.branches
    assert xs.support() == [2, 5]
    assert ys.support() == [3]
    # (z5 + z5^4)/2 is a nonzero real cyclotomic coefficient
    assert zs.support() == [1]
    assert not zs.coefficient(1).is_zero()


def test_germ_file_errors(tmp_path, capsys):
    f = tmp_path / "bad.germ"
    f.write_text("t; t\n", encoding="utf-8")
    with pytest.raises(UsageError):
        parse_germ_file(str(f))
    f.write_text("t^x; 0; 0\n", encoding="utf-8")
    with pytest.raises(UsageError):
        parse_germ_file(str(f))
    f.write_text("", encoding="utf-8")
    with pytest.raises(UsageError):
        parse_germ_file(str(f))
    code, _, err = run(capsys, "delta", "--germ", str(tmp_path / "missing"))
    assert code == 1 and "error" in err


def test_certify_single_stage(capsys):
    code, out, _ = run(capsys, "certify", "--stage", "group")
    assert code == 0
    assert "stage group" in out and "pass" in out


def _group_tamper_seed():
    for seed in range(200):
        note = certificate.tamper(certificate.expected_data(), seed)
        if note["path"][0] == "group":
            return seed
    raise AssertionError("no seed tampering the group stage found")


def test_certify_tamper_flips_exit_code(capsys):
    seed = _group_tamper_seed()
    code, out, _ = run(capsys, "certify", "--stage", "group",
                       "--tamper", str(seed))
    assert code == 2
    assert "FAIL" in out or "discrepancy" in out


def test_certify_stage_json_schema(capsys):
    code, out, _ = run(capsys, "certify", "--stage", "invariants",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "1"
    assert doc["stages"]["invariants"]["passed"] is True
    assert len(doc["axioms"]) == 6
    ids = {a["id"] for a in doc["axioms"]}
    assert "delta-drop-equals-stratum-codimension" in ids


def test_missing_case_row_makes_verdict_incomplete():
    # evaluate() with one Table row removed must refuse the final verdict
    # and name the unresolved case
    from e8nash.adjacency import elimination_report
    from e8nash.deformation import STRATUM_RECORDS

    rep = elimination_report()
    eliminate = {
        "pairs": rep["pairs"],
        "rule1_eliminated": [list(p) for p in rep["rule1_eliminated"]],
        "rule3_eliminated": [list(p) for p in rep["rule3_eliminated"]],
        "remaining": [list(p) for p in rep["remaining"]],
        "cases": ["N%d:%s" % (i, "+".join(str(k) for k in prof))
                  for i, prof in rep["cases"]],
        "nt_markers": [
            {"pair": list(m["pair"]), "kind": m["kind"], "at": list(m["at"]),
             "surrogate": "N%d:%s" % (m["pair"][0],
                                      "+".join(str(k) for k in m["surrogate"]))}
            for m in rep["nt_markers"]
        ],
    }
    drops = [{
        "case": r.label(),
        "drop": r.expected_drop,
        "stratum_equations": list(r.stratum_equations),
        "arc_equations": list(r.arc_equations),
    } for r in STRATUM_RECORDS]
    complete = certificate.evaluate(
        {"eliminate": eliminate, "drops": drops}, certificate.expected_data())
    assert complete["verdict"]["complete"]
    removed = drops.pop(3)
    cert = certificate.evaluate(
        {"eliminate": eliminate, "drops": drops}, certificate.expected_data())
    assert not cert["passed"]
    assert not cert["verdict"]["complete"]
    assert removed["case"] in cert["verdict"]["unresolved_cases"]


def test_serialize_rejects_floats():
    with pytest.raises(TypeError):
        certificate.serialize({"x": 1.5})


def test_serialize_byte_stable():
    doc = {"b": 2, "a": [1, {"z": 3, "y": None}], "flag": True}
    assert certificate.serialize(doc) == certificate.serialize(doc)
    assert certificate.serialize(doc).endswith("\n")

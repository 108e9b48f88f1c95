"""Command-line interface: JSON shape, determinism, round trips, errors."""

import json

from germres import Jet, jet_from_json, jet_to_json
from germres.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_residue_command(capsys):
    code, out = run_cli(capsys, "residue", "--jet", '{"order":3,"coeffs":["1","-1","0"]}')
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["report"]["resit"] == "1"
    assert doc["result"]["report"]["expanding"] is False
    assert "paper_refs" in doc


def test_residue_from_catalog(capsys):
    code, out = run_cli(capsys, "residue", "--catalog", "moebius", "--order", "5")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["report"]["resit"] == "0"
    assert doc["result"]["report"]["res"] == "1"


def test_normal_form_trace(capsys):
    code, out = run_cli(
        capsys, "normal-form", "--jet", '{"order":5,"coeffs":["1","0","1","1","1"]}'
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["report"]["resit"] == "3/2"
    steps = doc["result"]["trace"]["steps"]
    assert steps == [[2, "1"]]
    reduced = doc["result"]["trace"]["reduced"]
    assert reduced["coeffs"][3] == "0"  # x^4 killed


def test_flow_and_power_agree(capsys):
    jet = '{"order":3,"coeffs":["1","1","0"]}'
    _, out_flow = run_cli(capsys, "flow", "--jet", jet, "--time", "3")
    _, out_pow = run_cli(capsys, "power", "--jet", jet, "--n", "3")
    flow_jet = json.loads(out_flow)["result"]["jet"]
    pow_jet = json.loads(out_pow)["result"]["jet"]
    assert flow_jet == pow_jet


def test_field_and_exp_round_trip(capsys):
    jet = '{"order":3,"coeffs":["1","-1","0"]}'
    _, out = run_cli(capsys, "field", "--jet", jet)
    field_doc = json.loads(out)["result"]["field"]
    assert field_doc["coeffs"] == ["-1", "-1"]
    _, out2 = run_cli(capsys, "exp", "--field", json.dumps(field_doc), "--time", "1")
    assert json.loads(out2)["result"]["jet"]["coeffs"] == ["1", "-1", "0"]


def test_szekeres_command(capsys):
    code, out = run_cli(
        capsys, "szekeres", "--catalog", "moebius", "--x0", "0.3", "--n", "100000", "--tol", "0"
    )
    doc = json.loads(out)
    assert code == 0
    assert abs(doc["result"]["value"] + 0.09) < 1e-6


def test_estimate_resit_command(capsys):
    code, out = run_cli(
        capsys, "estimate-resit", "--catalog", "moebius", "--x0", "0.5", "--n", "1000000"
    )
    doc = json.loads(out)
    assert code == 0
    assert abs(doc["result"]["extrapolated"]) <= 0.2
    ns = [n for n, _v in doc["result"]["samples"]]
    assert ns == [1000, 10000, 100000, 1000000]


def test_estimate_resit_csv(capsys):
    code, out = run_cli(
        capsys,
        "estimate-resit", "--catalog", "moebius", "--x0", "0.5", "--n", "10000",
        "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,estimate"
    assert len(lines) == 3  # schedule 1000, 10000


def test_contour_command(capsys):
    code, out = run_cli(capsys, "contour", "--poly", "1,1,0.7", "--radius", "0.3")
    doc = json.loads(out)
    assert code == 0
    assert abs(doc["result"]["value"]["re"] - 0.7) < 1e-8
    assert abs(doc["result"]["value"]["im"]) < 1e-12


def test_conjugate_command(capsys):
    code, out = run_cli(
        capsys,
        "conjugate", "--X", "neg_x2", "--Y", "neg_2x2", "--x0", "0.3",
        "--grid", "0.1,0.2,0.3",
    )
    doc = json.loads(out)
    assert code == 0
    x, h, dh = doc["result"]["samples"][1]
    assert abs(h - 0.2 * 0.3 / (2 * 0.3 - 0.2)) < 1e-9


def test_diagnose_command(capsys):
    code, out = run_cli(
        capsys,
        "diagnose", "--X", "poly:-1,-1", "--Y", "poly:-1", "--grid", "1e-2,1e-3,1e-4,1e-5",
    )
    doc = json.loads(out)
    assert code == 0
    assert 0.7 <= doc["result"]["slope"] <= 1.3


def test_jet_round_trip_through_serialization():
    jet = Jet.of(1, "-1/2", "3/4")
    assert jet_from_json(jet_to_json(jet)) == jet


def test_determinism(capsys):
    argv = ["residue", "--expr", "x - x^2", "--order", "6"]
    _, first = run_cli(capsys, *argv)
    _, second = run_cli(capsys, *argv)
    assert first == second
    _, third = run_cli(capsys, "diagnose", "--X", "neg_x2", "--Y", "neg_x2",
                       "--grid", "1e-2,1e-3,1e-4")
    _, fourth = run_cli(capsys, "diagnose", "--X", "neg_x2", "--Y", "neg_x2",
                        "--grid", "1e-2,1e-3,1e-4")
    assert third == fourth


def test_error_is_structured(capsys):
    code, out = run_cli(capsys, "residue", "--jet", '{"order":2,"coeffs":["1","1","1"]}')
    assert code == 1
    doc = json.loads(out)
    assert doc["error"]["code"] == "OrderError"

    code, out = run_cli(capsys, "residue", "--expr", "x + log(x)")
    assert code == 1
    assert json.loads(out)["error"]["code"] == "NotASeries"

    code, out = run_cli(capsys, "szekeres", "--catalog", "nope", "--x0", "0.3")
    assert code == 1
    assert json.loads(out)["error"]["code"] == "KeyError"


def test_csv_unavailable_elsewhere(capsys):
    code, out = run_cli(
        capsys, "residue", "--expr", "x - x^2", "--format", "csv"
    )
    assert code == 1
    assert json.loads(out)["error"]["code"] == "ValueError"

import io
import json
import subprocess
import sys

import pytest

from fasla.algebra import commutator_algebra
from fasla.catalog import dim2_family, zero_triple
from fasla.cli import run
from fasla.double_extension import ExtensionParams
from fasla.serialize import algebra_to_doc, dump_triple, dumps, params_to_doc


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, t in [("abelian", dim2_family(1, 0, 0)), ("lam_mu", dim2_family(0, 1, 1)),
                    ("zero", zero_triple())]:
        p = tmp_path / f"{name}.json"
        dump_triple(t, p)
        paths[name] = str(p)
    p = tmp_path / "ex.json"
    p.write_text(dumps(params_to_doc(ExtensionParams.zero(0, 0, 1, 1))))
    paths["params"] = str(p)
    p = tmp_path / "bad_params.json"
    p.write_text(dumps(params_to_doc(ExtensionParams.zero(0, 0, 3, 1))))
    paths["bad_params"] = str(p)
    t = dim2_family(0, 1, 1)
    p = tmp_path / "bracket.json"
    p.write_text(dumps(algebra_to_doc(commutator_algebra(t.algebra), t.omega)))
    paths["bracket"] = str(p)
    paths["dir"] = tmp_path
    return paths


def test_verify_pass(files):
    code, out, _ = call("verify", "--input", files["abelian"])
    assert code == 0 and "FAIL" not in out
    code, out, _ = call("verify", "--input", files["abelian"], "--format", "json")
    assert code == 0 and all(c["passed"] for c in json.loads(out))


def test_verify_fail(files, tmp_path):
    doc = json.loads(open(files["abelian"]).read())
    doc["omega"] = [["0", "0"], ["0", "0"]]
    p = tmp_path / "degenerate.json"
    p.write_text(json.dumps(doc))
    code, out, _ = call("verify", "--input", str(p))
    assert code == 1 and "nondegenerate" in out


def test_bad_input_exit_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{bad")
    code, _, err = call("verify", "--input", str(p))
    assert code == 2 and "line 1" in err
    code, _, err = call("verify", "--input", str(tmp_path / "missing.json"))
    assert code == 2
    assert call("no-such-command")[0] == 2


def test_double_extend_then_verify(files):
    out_path = str(files["dir"] / "ext.json")
    code, _, _ = call("double-extend", "--base", files["zero"], "--params", files["params"],
                      "--out", out_path)
    assert code == 0
    assert call("verify", "--input", out_path)[0] == 0
    code, out, _ = call("double-extend", "--base", files["zero"], "--params",
                        files["bad_params"])
    assert code == 1 and "lambda_mu_relation" in out


def test_complete_is_an_analysis(files):
    code, out, _ = call("complete", "--input", files["lam_mu"])
    assert code == 0 and json.loads(out)["verdict"] == "incomplete"
    code, out, _ = call("complete", "--input", files["abelian"])
    assert json.loads(out)["verdict"] == "complete"


def test_reduce_and_decompose(files):
    code, out, _ = call("reduce", "--input", files["abelian"], "--e", "0", "--d", "1")
    doc = json.loads(out)
    assert code == 0 and doc["params"]["beta"] == "1" and doc["base"]["dim"] == 0
    code, out, _ = call("decompose", "--input", files["lam_mu"])
    assert code == 0 and json.loads(out)["success"]
    code, _, err = call("reduce", "--input", files["abelian"], "--e", "7")
    assert code == 2 and "out of range" in err


def test_etale(files):
    code, out, _ = call("etale", "--input", files["abelian"], "--x", "0,2")
    doc = json.loads(out)
    assert code == 0 and doc["translation"] == ["2", "2"]
    assert doc["linear"] == [["1", "2"], ["0", "1"]]
    code, out, _ = call("etale", "--input", files["lam_mu"], "--x", "0,1")
    assert code == 1 and json.loads(out)["min_poly"] == ["1", "0", "-1"]
    code, out, _ = call("etale", "--input", files["lam_mu"], "--x", "0,1", "--approx",
                        "--order", "5")
    assert code == 0 and json.loads(out)["mode"] == "approx"
    assert call("etale", "--input", files["abelian"], "--x", "1")[0] == 2


def test_central(files):
    code, out, _ = call("central", "--input", files["lam_mu"])
    doc = json.loads(out)
    assert code == 0 and doc["central_translations"] == []
    assert doc["translation_directions"] == [["1", "0"]]


def test_cohomology(files):
    code, out, _ = call("cohomology", "--input", files["abelian"],
                        "--degree", "2")
    assert code == 0 and json.loads(out)["dim_H"] == 2
    code, out, _ = call("cohomology", "--input", files["lam_mu"], "--degree", "1",
                        "--module", "canonical-dual")
    assert code == 0 and set(json.loads(out)) >= {"dim_Z", "dim_B", "dim_H"}
    assert call("cohomology", "--input", files["lam_mu"], "--degree", "9")[0] == 2


def test_cotangent_and_detect(files):
    base = str(files["dir"] / "base.json")
    with open(base, "w") as fh:
        fh.write(dumps(algebra_to_doc(dim2_family(0, 1, 1).algebra)))
    out_path = str(files["dir"] / "hess.json")
    assert call("cotangent", "--hess", "--base", base, "--out", out_path)[0] == 0
    code, out, _ = call("detect-lagrangian", "--input", out_path)
    assert code == 0 and json.loads(out)["source"] == "leading-block"
    assert call("cotangent")[0] == 2


def test_catalog(files):
    code, out, _ = call("catalog", "--list")
    assert code == 0 and "even-dim-n3" in out
    code, out, _ = call("catalog", "--emit", "dim2-abelian-beta0")
    assert code == 0 and json.loads(out)["dim"] == 2
    code, out, _ = call("catalog", "--family", "dim2", "--beta", "1/2", "--lambda", "1",
                        "--mu", "2")
    assert code == 0
    assert call("catalog", "--family", "dim2", "--lambda", "3", "--mu", "1")[0] == 2
    assert call("catalog", "--emit", "nope")[0] == 2


def test_chu(files):
    code, out, _ = call("chu", "--input", files["bracket"])
    assert code == 0 and json.loads(out)["dim"] == 2
    assert call("chu", "--input", files["lam_mu"])[0] == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fasla", "catalog", "--list"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "dim2-abelian-beta0" in res.stdout

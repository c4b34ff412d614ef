import json
import subprocess
import sys

import pytest

from curvecomp.cli import main

CURVE_EXP = {"components": [
    [{"coeff": [[1, 1, 0, 1]], "exp": []}],
    [{"coeff": [[1, 1, 0, 1]], "exp": [[0, 1, 0, 1], [1, 1, 0, 1]]}],
]}

SUM_SPEC = {
    "M": 2,
    "p1": [[0, 1, 0, 1], [1, 1, 0, 1]],
    "p2": [[0, 1, 0, 1], [2, 1, 0, 1]],
    "terms": [
        {"coeff": [1, 1, 0, 1], "i": 2, "j": 0, "k": 1},
        {"coeff": [-3, 2, 0, 1], "i": 1, "j": 1, "k": 0},
        {"coeff": [1, 2, 0, 1], "i": 0, "j": 0, "k": 0},
    ],
}

FORM_DZ1DZ2 = {"M": 2, "basis": "plain", "vars": ["z1", "z2"], "coeffs": [
    {"num": [], "den": [{"exponents": [0, 0], "coeff": [1, 1, 0, 1]}]},
    {"num": [{"exponents": [0, 0], "coeff": [1, 1, 0, 1]}],
     "den": [{"exponents": [0, 0], "coeff": [1, 1, 0, 1]}]},
    {"num": [], "den": [{"exponents": [0, 0], "coeff": [1, 1, 0, 1]}]},
]}

CONF_FLAGGED = {"curves": [
    {"monomials": [{"exponents": [0, 3, 0], "coeff": [1, 1]},
                   {"exponents": [0, 0, 3], "coeff": [-1, 1]},
                   {"exponents": [2, 0, 1], "coeff": [-1, 1]}]},
    {"monomials": [{"exponents": [1, 1, 0], "coeff": [1, 1]},
                   {"exponents": [0, 0, 2], "coeff": [-1, 1]}]},
    {"monomials": [{"exponents": [3, 0, 0], "coeff": [1, 1]},
                   {"exponents": [0, 2, 1], "coeff": [-1, 1]},
                   {"exponents": [0, 0, 3], "coeff": [1, 1]}]},
]}


def run_cli(tmp_path, name, argv):
    out = tmp_path / name
    code = main(argv + ["--output", str(out)])
    return code, out.read_bytes()


def run_json(tmp_path, name, argv):
    code, raw = run_cli(tmp_path, name, argv)
    return code, json.loads(raw)


@pytest.fixture
def curve_file(tmp_path):
    p = tmp_path / "curve.json"
    p.write_text(json.dumps(CURVE_EXP))
    return str(p)


class TestChernCli:
    def test_invariants_example(self, tmp_path):
        code, doc = run_json(tmp_path, "o.json",
                             ["chern", "invariants", "--a", "1", "--b", "2,2,2"])
        assert code == 0
        assert doc["c1sq_minus_c2"] == 0
        assert doc["meta"]["version"]

    def test_enumerate_bmax3(self, tmp_path):
        code, doc = run_json(tmp_path, "o.json",
                             ["chern", "enumerate", "--a", "1", "--bmax", "3"])
        assert code == 0
        rows = {(r["b1"], r["b2"], r["b3"]): r["case"] for r in doc["rows"]}
        assert rows[(2, 2, 3)] == "c" and rows[(2, 2, 2)] == "none"

    def test_golden_write_then_match(self, tmp_path):
        gold = tmp_path / "golden"
        argv = ["chern", "enumerate", "--a", "1", "--bmax", "3",
                "--golden", str(gold)]
        code, doc = run_json(tmp_path, "w.json", argv + ["--update"])
        assert code == 0 and doc["golden"]["mode"] == "written"
        code, doc = run_json(tmp_path, "c.json", argv)
        assert code == 0 and doc["golden"]["mode"] == "match"
        # corrupt and verify mismatch is detected
        path = gold / "chern_enumerate_a1_bmax3.csv"
        path.write_text(path.read_text().replace("2,2,3,1", "2,2,3,9"))
        code, doc = run_json(tmp_path, "m.json", argv)
        assert code == 1 and "golden mismatch" in doc["error"]["message"]


class TestNevCli:
    def test_order_documented_example(self, tmp_path, curve_file):
        code, doc = run_json(tmp_path, "o.json",
                             ["nev", "order", "--curve", curve_file,
                              "--radii", "2,4,8,16,32"])
        assert code == 0
        assert abs(doc["fit"]["order"] - 1.0) < 0.1

    def test_T_and_N(self, tmp_path, curve_file):
        code, doc = run_json(tmp_path, "t.json",
                             ["nev", "T", "--curve", curve_file, "--r", "10"])
        assert code == 0 and abs(doc["values"]["T"] - 10 / 3.14159) < 0.1
        div = tmp_path / "div.json"
        div.write_text(json.dumps(
            {"monomials": [{"exponents": [1, 0], "coeff": [-1, 1, 0, 1]},
                           {"exponents": [0, 1], "coeff": [1, 1, 0, 1]}]}))
        code, doc = run_json(tmp_path, "n.json",
                             ["nev", "N", "--curve", curve_file,
                              "--divisor", str(div), "--r", "20"])
        assert code == 0 and abs(doc["values"]["N"] - 20 / 3.14159) < 0.2

    def test_payload_input(self, tmp_path):
        payload = tmp_path / "in.json"
        payload.write_text(json.dumps({"curve": CURVE_EXP, "r": 5.0}))
        code, doc = run_json(tmp_path, "o.json",
                             ["nev", "T", "--input", str(payload)])
        assert code == 0 and doc["values"]["r"] == 5.0


class TestBorelCli:
    def test_analyze(self, tmp_path):
        p = tmp_path / "sum.json"
        p.write_text(json.dumps(SUM_SPEC))
        code, doc = run_json(tmp_path, "o.json",
                             ["borel", "analyze", "--input", str(p)])
        assert code == 0
        assert doc["kind"] == "case2_proportional"
        assert doc["lambda"] == [1, 1, 0, 1]
        assert doc["gamma"] == [1, 2, 0, 1]
        assert "dxi1/xi1" in doc["omega0"]


class TestCoverCli:
    def test_pushdown_worked_example(self, tmp_path):
        p = tmp_path / "form.json"
        p.write_text(json.dumps(FORM_DZ1DZ2))
        code, doc = run_json(tmp_path, "o.json",
                             ["cover", "pushdown", "--b", "2", "--form", str(p)])
        assert code == 0
        pushed = doc["pushed"]
        assert pushed["basis"] == "log1" and pushed["M"] == 4
        r2 = pushed["coeffs"][2]
        assert r2["num"] == [{"exponents": [1, 0], "coeff": [-1, 4, 0, 1]}]

    def test_check(self, tmp_path):
        form = tmp_path / "form.json"
        # xi2 dxi1 - xi1 dxi2
        form.write_text(json.dumps({
            "M": 1, "basis": "plain", "vars": ["xi1", "xi2"], "coeffs": [
                {"num": [{"exponents": [1, 0], "coeff": [-1, 1, 0, 1]}],
                 "den": [{"exponents": [0, 0], "coeff": [1, 1, 0, 1]}]},
                {"num": [{"exponents": [0, 1], "coeff": [1, 1, 0, 1]}],
                 "den": [{"exponents": [0, 0], "coeff": [1, 1, 0, 1]}]}]}))
        g = tmp_path / "g.json"
        g.write_text(json.dumps(
            [{"coeff": [[1, 1, 0, 1]], "exp": [[0, 1, 0, 1], [1, 1, 0, 1]]}]))
        code, doc = run_json(tmp_path, "o.json",
                             ["cover", "check", "--form", str(form),
                              "--g1", str(g), "--g2", str(g)])
        assert code == 0 and doc["annihilates"] is True


class TestPlaneCli:
    def test_intersect(self, tmp_path):
        p = tmp_path / "pair.json"
        p.write_text(json.dumps({"curves": [
            {"monomials": [{"exponents": [1, 0, 1], "coeff": [1, 1]},
                           {"exponents": [0, 2, 0], "coeff": [-1, 1]}]},
            {"monomials": [{"exponents": [0, 1, 0], "coeff": [1, 1]}]}]}))
        code, doc = run_json(tmp_path, "o.json",
                             ["plane", "intersect", "--input", str(p)])
        assert code == 0 and doc["bezout_total"] == 2

    def test_engine(self, tmp_path):
        code, doc = run_json(tmp_path, "o.json",
                             ["plane", "engine", "--degrees", "2,2,3",
                              "--d0max", "10"])
        assert code == 0
        assert doc["survivors"] and all(v["d0"] == 1 for v in doc["survivors"])

    def test_nc_and_exclusion(self, tmp_path):
        conf = tmp_path / "conf.json"
        conf.write_text(json.dumps(CONF_FLAGGED))
        code, doc = run_json(tmp_path, "nc.json",
                             ["plane", "nc", "--config", str(conf)])
        assert code == 0
        code, doc = run_json(tmp_path, "ex.json",
                             ["plane", "exclusion", "--config", str(conf)])
        assert code == 0 and doc["pass"] is False


class TestExpfunCli:
    def test_eval(self, tmp_path):
        f = tmp_path / "f.json"
        f.write_text(json.dumps(
            [{"coeff": [[1, 1, 0, 1]], "exp": [[0, 1, 0, 1], [1, 1, 0, 1]]}]))
        code, doc = run_json(tmp_path, "o.json",
                             ["expfun", "eval", "--f", str(f), "--point", "0"])
        assert code == 0 and doc["value"] == [1.0, 0.0]

    def test_iszero(self, tmp_path):
        f = tmp_path / "f.json"
        f.write_text(json.dumps([
            {"coeff": [[1, 1, 0, 1]], "exp": [[1, 1, 0, 1], [1, 1, 0, 1]]},
            {"coeff": [[-1, 1, 0, 1]], "exp": [[0, 1, 0, 1], [1, 1, 0, 1]],
             "expconst": [1, 1, 0, 1]}]))
        code, doc = run_json(tmp_path, "o.json",
                             ["expfun", "iszero", "--f", str(f)])
        assert code == 0 and doc["is_zero"] is True


class TestErrors:
    def test_schema_error_envelope(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("not json")
        code, doc = run_json(tmp_path, "o.json",
                             ["borel", "analyze", "--input", str(bad)])
        assert code == 1 and doc["error"]["type"] == "SchemaError"

    def test_computational_error_envelope(self, tmp_path):
        p = tmp_path / "pair.json"
        # two identical lines: shared component
        line = {"monomials": [{"exponents": [0, 1, 0], "coeff": [1, 1]}]}
        p.write_text(json.dumps({"curves": [line, line]}))
        code, doc = run_json(tmp_path, "o.json",
                             ["plane", "intersect", "--input", str(p)])
        assert code == 1 and doc["error"]["type"] == "NonCoprimeError"

    def test_unknown_subcommand_exit2(self):
        with pytest.raises(SystemExit) as exc:
            main(["nosuchgroup"])
        assert exc.value.code == 2


class TestDeterminism:
    def test_repeat_runs_identical(self, tmp_path, curve_file):
        catalogue = [
            ["chern", "invariants", "--a", "1", "--b", "2,2,2"],
            ["chern", "enumerate", "--a", "1", "--bmax", "3"],
            ["nev", "order", "--curve", curve_file, "--radii", "2,4,8,16,32"],
            ["plane", "engine", "--degrees", "2,2,3", "--d0max", "10"],
        ]
        for n, argv in enumerate(catalogue):
            _, a = run_cli(tmp_path, f"a{n}.json", argv)
            _, b = run_cli(tmp_path, f"b{n}.json", argv)
            assert a == b

    def test_subprocess_runs_identical(self):
        cmd = [sys.executable, "-m", "curvecomp.cli", "chern", "enumerate",
               "--a", "1", "--bmax", "5"]
        a = subprocess.run(cmd, capture_output=True, check=True).stdout
        b = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert a and a == b

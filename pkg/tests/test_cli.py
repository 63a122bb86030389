import json

from fewvalues import cli


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_alt7(capsys):
    code, out, _ = run_cli(capsys, "construct", "alt", "--n", "7")
    assert code == 0
    j = json.loads(out)
    assert j["word"] == "[(x1^140)^[x2,x1^105],x1^140]^10"
    assert j["n"] == 7 and j["arity"] == 2
    assert j["M"] == {"2": 2, "3": 1, "5": 1, "7": 1}


def test_construct_text_format(capsys):
    code, out, _ = run_cli(capsys, "--format", "text", "construct", "alt", "--n", "7")
    assert code == 0
    assert out.splitlines()[0] == "[(x1^140)^[x2,x1^105],x1^140]^10"


def test_construct_sl(capsys):
    code, out, _ = run_cli(capsys, "construct", "sl", "--n", "2", "--q", "5")
    assert code == 0
    assert json.loads(out)["word"] == "x1^24"


def test_construct_pcycle(capsys):
    code, out, _ = run_cli(capsys, "construct", "pcycle", "--n", "9", "--p", "5")
    assert code == 0
    j = json.loads(out)
    assert j["p"] == 5 and j["arity"] == 3


def test_verify_sl42(capsys):
    code, out, _ = run_cli(capsys, "verify", "sl", "--n", "4", "--q", "2", "--mode", "exhaustive", "--threads", "1")
    assert code == 0
    j = json.loads(out)
    assert j["pass"] is True
    assert j["classes"]["double_transvection"] > 0


def test_verify_alt7(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "alt", "--n", "7", "--mode", "exhaustive-classes", "--threads", "1"
    )
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_width(capsys):
    code, out, _ = run_cli(capsys, "width", "--k", "3")
    assert code == 0
    j = json.loads(out)
    assert j["n"] == 9 and j["bound"] == 4


def test_parse(capsys):
    code, out, _ = run_cli(capsys, "parse", "[x1,x2]")
    assert code == 0
    j = json.loads(out)
    assert j["word"] == "[x1,x2]"
    assert j["reduced"] == [[1, -1], [2, -1], [1, 1], [2, 1]]


def test_witness_alt(capsys):
    code, out, _ = run_cli(capsys, "witness", "alt", "--n", "9")
    assert code == 0
    assert json.loads(out)["value_class"] == "three_cycle"


def test_witness_sl(capsys):
    code, out, _ = run_cli(capsys, "witness", "sl", "--n", "5", "--q", "2")
    assert code == 0
    assert json.loads(out)["value_class"] == "transvection"


def test_usage_errors(capsys):
    assert run_cli(capsys, "construct", "alt", "--n", "6")[0] == 2
    assert run_cli(capsys, "verify", "alt", "--n", "13", "--mode", "exhaustive-classes")[0] == 2
    assert run_cli(capsys, "verify", "sl", "--n", "3")[0] == 2  # missing --q
    assert run_cli(capsys, "parse", "x0")[0] == 2
    assert run_cli(capsys, "construct", "nosuch", "--n", "3")[0] == 2
    assert run_cli(capsys, "verify", "sl", "--n", "3", "--q", "3", "--gl")[0] == 2


def test_verification_failure_exit_code(capsys, monkeypatch):
    # force a failing report through a corrupted verifier (fixture)
    import fewvalues.cli as cli_mod

    real = cli_mod.verify_image_alt

    def corrupted(n, **kw):
        report = real(n, **kw)
        report.violations.append(
            {"assignment": ["()", "()"], "value": "(1 2)(3 4)", "value_class": "other"}
        )
        return report

    monkeypatch.setattr(cli_mod, "verify_image_alt", corrupted)
    code, out, _ = run_cli(capsys, "verify", "alt", "--n", "7", "--mode", "sample", "--samples", "50")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_witness_budget_exhausted_exit_code(capsys):
    code, _, err = run_cli(capsys, "witness", "sl", "--n", "4", "--q", "5", "--samples", "2000")
    assert code == 1
    assert "no witness" in err


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "--out", str(path), "width", "--k", "1")
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["bound"] == 2


def test_determinism_byte_identical(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "alt", "--n", "8", "--mode", "sample", "--samples", "500", "--threads", "1")
    code2, out2, _ = run_cli(capsys, "verify", "alt", "--n", "8", "--mode", "sample", "--samples", "500", "--threads", "1")
    j1, j2 = json.loads(out1), json.loads(out2)
    j1.pop("elapsed_ms"), j2.pop("elapsed_ms")
    assert j1 == j2

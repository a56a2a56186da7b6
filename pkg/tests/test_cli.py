import json

import pytest

from mirrorkit.cli import main
from mirrorkit.diffop import diffop_from_text
from mirrorkit.mirror import theta4_operator
from mirrorkit.series import series_from_text, series_to_text, pow_rational, variable
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def terms(out):
    return {e: v for e, v in json.loads(out)["terms"]}


def test_expand_json(capsys):
    code, out, _ = run(capsys, "expand", "yukawa", "--order", "10", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["variable"] == "q" and d["order"] == 10
    assert terms(out)[3] == "702464/1"


def test_expand_small_order(capsys):
    code, out, _ = run(capsys, "expand", "y0", "--order", "4", "--format", "json")
    assert code == 0
    assert [v for _, v in json.loads(out)["terms"]] == ["1/1", "16/1", "1296/1", "160000/1"]


@pytest.mark.parametrize("target", ["nome", "mirror", "delta", "j2", "theta2", "theta3", "theta4",
                                    "pfq:1/2,1/2;1;16", "pfq:1/2;;4", "eta:1^24,2^-24", "formfactor:1,2",
                                    "hadamard-power:3"])
def test_expand_targets(capsys, target):
    code, out, _ = run(capsys, "expand", target, "--order", "8", "--format", "json")
    assert code == 0 and json.loads(out)["terms"]


def test_expand_text_round_trip(capsys, tmp_path):
    path = tmp_path / "nome.txt"
    assert main(["expand", "nome", "--order", "12", "--out", str(path)]) == 0
    f = series_from_text(path.read_text())
    assert f.coefficient_list(1, 4) == [1, 64, 7072]
    assert series_to_text(f) == path.read_text()


def test_usage_errors(capsys):
    assert run(capsys, "expand", "bogus")[0] == 2
    assert run(capsys, "expand", "y0", "--order", "0")[0] == 2
    assert run(capsys, "verify", "--all", "--order", "4")[0] == 2
    assert run(capsys, "verify", "--id", "no-such-identity")[0] == 2
    assert run(capsys, "qs", "--precision", "32")[0] == 2
    code, _, err = run(capsys, "expand", "eta:1^x")
    assert code == 2 and "error" in err
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2


def test_io_error(capsys, tmp_path):
    assert run(capsys, "guess", str(tmp_path / "missing.txt"))[0] == 3
    assert run(capsys, "expand", "nome", "--out", str(tmp_path / "no" / "dir.txt"))[0] == 3


def test_verify_list_and_id(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and "ramanujan-eta" in out.split()
    code, out, _ = run(capsys, "verify", "--id", "ramanujan-eta", "--id", "x02-parametrization")
    assert code == 0
    reports = json.loads(out)
    assert [r["id"] for r in reports] == ["ramanujan-eta", "x02-parametrization"]
    assert all(r["status"] == "PASS" for r in reports)


def test_verify_text_format(capsys):
    code, out, _ = run(capsys, "verify", "--id", "c6-relation-spotcheck", "--format", "text")
    assert code == 0 and out.startswith("DIAGNOSTIC")


def test_verify_gating_failure(capsys, tmp_path):
    ode = tmp_path / "ode.txt"
    ode.write_text("mpoly x u0\n1/1 0 1\n-1/1 1 0\n")
    code, out, _ = run(capsys, "verify", "--id", "nome-nonlinear-ode", "--ode-file", str(ode))
    assert code == 1
    r = json.loads(out)[0]
    assert r["status"] == "FAIL" and r["first_failing_exponent"] is not None


def test_mirror_command(capsys, tmp_path):
    from mirrorkit.diffop import diffop_to_text
    opfile = tmp_path / "op.txt"
    opfile.write_text(diffop_to_text(theta4_operator()))
    code, out, _ = run(capsys, "mirror", "--operator-file", str(opfile), "--order", "8", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert set(d) == {"nome", "mirror", "yukawa"}
    assert d["mirror"]["terms"][1] == [2, "-64/1"]


def test_guess(capsys, tmp_path):
    x = variable("x", 30)
    path = tmp_path / "s.txt"
    path.write_text(series_to_text(pow_rational(1 - 4 * x, Fraction(-1, 2))))
    code, out, _ = run(capsys, "guess", str(path), "--max-order", "2", "--max-degree", "2")
    assert code == 0
    op = diffop_from_text(out)
    assert op.order == 1
    noise = tmp_path / "n.txt"
    noise.write_text(series_to_text(sum(((k * 7919) % 13 - 6) * x ** k for k in range(1, 30)) + 1))
    code, out, _ = run(capsys, "guess", str(noise), "--max-order", "2", "--max-degree", "2")
    assert code == 0 and out.startswith("none")


def test_qs(capsys):
    code, out, _ = run(capsys, "qs", "--terms", "4000", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert abs(float(d["q_s"]) - 0.0062794754) < 1e-9
    assert float(d["error_bound"]) < 1e-8

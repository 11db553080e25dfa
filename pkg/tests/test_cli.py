import json
import subprocess
import sys

import pytest

from cubnull.cli import main
from cubnull.lang.loader import stdlib_root

LIB = stdlib_root()


def run(*args):
    p = subprocess.run([sys.executable, "-m", "cubnull", *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def test_check_file_ok(capsys):
    assert main(["check", str(LIB / "trunc.ct")]) == 0
    assert capsys.readouterr().out.startswith("ok:")


def test_check_failure_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.ct"
    bad.write_text('@label "x"\ndef x : Nat = tt\n')
    assert main(["check", str(bad)]) == 1
    assert "bad.ct:2:" in capsys.readouterr().out


def test_check_json_records(tmp_path, capsys):
    bad = tmp_path / "bad.ct"
    bad.write_text('@label "x"\ndef x : Nat = tt\n')
    assert main(["check", "--json", str(bad)]) == 1
    recs = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    err, summary = recs[0], recs[-1]
    assert (err["line"], err["expected"], err["actual"]) == (2, "Nat", "Unit")
    assert summary["summary"]["ok"] is False


def test_missing_label_is_lint_error_in_stdlib(tmp_path, monkeypatch, capsys):
    f = tmp_path / "nolabel.ct"
    f.write_text("def x : Nat = 0\n")
    assert main(["check", str(f)]) == 0      # user files are not linted
    monkeypatch.setenv("CUBNULL_STDLIB", str(tmp_path))
    assert main(["check", str(f)]) == 1
    assert "no @label" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [["check", "/no/such/file.ct"], ["oracle", "nope"],
                                  ["normalize", str(LIB / "trunc.ct"), "noSuchName"], []])
def test_usage_errors_exit_2(argv):
    assert main(argv) == 2


def test_normalize_sq_at_zero(capsys):
    assert main(["normalize", str(LIB / "trunc.ct"), "sqAt0Test"]) == 0
    assert capsys.readouterr().out.strip() == "inc {Nat} 1"


def test_normalize_mp_value(capsys):
    assert main(["normalize", str(LIB / "mp.ct"), "mpLeastTestValue"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_oracle_cof_completeness_dim3_json():
    code, out, _ = run("oracle", "cof-completeness", "--dim", "3", "--json")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs and all(r.get("ok", True) for r in recs)


def test_oracle_text(capsys):
    assert main(["oracle", "box", "--dim", "2"]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_lemmas_map(capsys):
    assert main(["lemmas", "--json", str(LIB)]) == 0
    m = json.loads(capsys.readouterr().out)
    assert m["loc.ct:locBContr"].startswith("Cor")
    assert m["null.ct:nullPi"].startswith("Prop")
    assert m["ct.ct:CT"].startswith("Def")


def test_stdlib_root_env_override(tmp_path, monkeypatch):
    (tmp_path / "prelude.ct").write_text('@label "aux: stub"\ndef one : Nat = 1\n')
    user = tmp_path / "user" / "u.ct"
    user.parent.mkdir()
    user.write_text('import prelude\n@label "aux: uses stub"\ndef two : Nat = suc one\n')
    monkeypatch.setenv("CUBNULL_STDLIB", str(tmp_path))
    assert main(["check", str(user)]) == 0

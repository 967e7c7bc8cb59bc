import json
import shutil
import subprocess
import sys

import pytest

from conftest import DATA
from nicehf import cli, floer
from nicehf.diagram import load, serialize

BAD = """genus 1
alpha 1 : c1 c2
beta 1 : c2 c1
sign c1 : +
sign c2 : -
basepoint w1 : c1 ++
"""


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_validate_ok(capsys):
    code, rep = run_json(capsys, "validate", str(DATA / "trefoil_nice.hd"))
    assert code == 0
    assert rep["schema"] == cli.SCHEMA
    assert rep["nice"] is True
    assert rep["stats"]["crossings"] == 9
    assert len(rep["digest"]) == 64


def test_invalid_input_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.hd"
    p.write_text(BAD)
    code, out, err = run(capsys, "validate", str(p))
    assert code == 2
    assert "Euler" in err
    code, out, err = run(capsys, "validate", str(tmp_path / "missing.hd"))
    assert code == 2


def test_strict_refuses_non_nice(capsys):
    code, rep = run_json(capsys, "hf", "--strict", str(DATA / "trefoil_origin.hd"))
    assert code == 2
    assert "not nice" in rep["error"]


def test_internal_error_exit_3(monkeypatch, capsys):
    def boom(*a, **k):
        raise floer.FloerError("differential does not square to zero")

    monkeypatch.setattr(floer, "differential", boom)
    code, rep = run_json(capsys, "hf", str(DATA / "s3_genus1.hd"))
    assert code == 3
    assert rep["error"].startswith("FloerError")


def test_info(capsys):
    code, rep = run_json(capsys, "info", str(DATA / "lens_3_1.hd"))
    assert code == 0
    assert rep["admissible"] is True
    assert rep["generators"] == 3


def test_hf_nices_first(capsys):
    code, rep = run_json(capsys, "hf", "--oracle", str(DATA / "trefoil_origin.hd"))
    assert code == 0
    assert rep["moves"] == 2
    assert rep["total_rank"] == 1
    assert rep["oracle"].startswith("agrees")
    assert any("not nice" in n for n in rep["notices"])


def test_hfk_trefoil(capsys):
    code, rep = run_json(capsys, "hfk", str(DATA / "trefoil_nice.hd"))
    assert code == 0
    assert rep["total_rank"] == 3
    assert sorted(r["alexander"] for r in rep["ranks"]) == [-1, 0, 1]
    for row in rep["ranks"]:
        assert set(row) == {"class", "maslov", "alexander", "rank"}


def test_oracle_guard_reported(capsys):
    code, rep = run_json(capsys, "hf", "--oracle", "--max-regions", "4", str(DATA / "trefoil_nice.hd"))
    assert code == 0
    assert rep["oracle"].startswith("skipped")


def test_nice_writes_outputs(tmp_path, capsys):
    src = tmp_path / "t.hd"
    shutil.copy(DATA / "trefoil_origin.hd", src)
    code, rep = run_json(capsys, "nice", str(src))
    assert code == 0
    out = tmp_path / "t.nice.hd"
    assert serialize(load(out)) == serialize(load(DATA / "trefoil_nice.hd"))
    assert (tmp_path / "t.nice.moves").read_text().count("\n") == rep["moves"] == 2
    code, rep2 = run_json(capsys, "validate", str(out))
    assert rep2["nice"] is True


def test_matrix_output(tmp_path, capsys):
    m = tmp_path / "d.txt"
    code, rep = run_json(capsys, "hf", "--matrix", str(m), str(DATA / "s3_cancelling.hd"))
    rows = [ln for ln in m.read_text().splitlines() if not ln.startswith("#")]
    assert code == 0 and len(rows) == rep["disks"] == 2


def test_text_output(capsys):
    code, out, _ = run(capsys, "hf", str(DATA / "lens_3_1.hd"))
    assert code == 0
    assert "total rank: 3" in out
    assert "class  maslov  alexander  rank" in out


def test_deterministic_across_processes():
    def once():
        res = subprocess.run(
            [sys.executable, "-m", "nicehf.cli", "hf", "--json", str(DATA / "trefoil_origin.hd")],
            capture_output=True, text=True, check=True,
        )
        rep = json.loads(res.stdout)
        rep.pop("timings")
        return rep

    assert once() == once()


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["hf"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2

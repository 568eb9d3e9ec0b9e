import json
import subprocess
import sys

import pytest

from covstat.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, run
from conftest import FIXTURES


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_word_reduce(capsys):
    code, out, _ = call(capsys, "word", "reduce", "a^6")
    data = json.loads(out)
    assert code == EXIT_OK
    assert (data["root"], data["q"], data["d_of_q"]) == ("a", 6, 4)


def test_word_conj(capsys):
    code, out, _ = call(capsys, "word", "conj", "aba^-2b^-1c", "cd^-1c^-1a^-1dc")
    assert json.loads(out)["conjugate"] is True


def test_bad_word_is_domain_error(capsys):
    code, _, err = call(capsys, "word", "reduce", "axb")
    assert code == EXIT_DOMAIN
    assert json.loads(err)["error"] == "WordSyntaxError"


def test_usage_errors(capsys):
    assert call(capsys, "nonsense")[0] == EXIT_USAGE
    assert call(capsys, "oracle", "count")[0] == EXIT_USAGE
    assert call(capsys, "word", "conj", "a")[0] == EXIT_USAGE
    assert call(capsys, "--M", "0", "zeta", "3", "2")[0] == EXIT_DOMAIN


def test_core_build_and_verify(capsys, tmp_path):
    path = tmp_path / "core.json"
    code, out, _ = call(capsys, "core", "build", "aba^-2b^-1c", "--out", str(path))
    data = json.loads(out)
    assert (data["vertices"], data["edges"], data["octagons"]) == (12, 14, 2)
    code, out, _ = call(capsys, "core", "verify", str(path))
    assert json.loads(out)["ok"] is True


def test_tiled_commands(capsys):
    f = str(FIXTURES / "bare_relator_cycle.json")
    code, out, _ = call(capsys, "tiled", "stats", f)
    data = json.loads(out)
    assert data["BR"] is False and data["max_defect"] == 8
    code, out, _ = call(capsys, "--format", "dot", "tiled", "export", f)
    assert out.startswith("digraph")
    code, out, _ = call(capsys, "tiled", "validate", str(FIXTURES / "octagon_disc.json"))
    assert json.loads(out)["valid"] is True


def test_missing_file(capsys):
    assert call(capsys, "tiled", "stats", "/nonexistent.json")[0] == EXIT_DOMAIN


def test_resolve_writes_manifest(capsys, tmp_path):
    code, out, _ = call(capsys, "resolve", str(FIXTURES / "core_ab.json"), "--out", str(tmp_path))
    assert json.loads(out)["size"] == 7
    assert len(json.loads((tmp_path / "manifest.json").read_text())) == 7
    assert (tmp_path / "element_0006.json").exists()


def test_zeta(capsys):
    code, out, _ = call(capsys, "zeta", "3", "2")
    assert json.loads(out)["zeta"] == "9/4"
    code, out, _ = call(capsys, "zeta-poly", "2", "5")
    assert json.loads(out)["coefficients"] == ["1", "0", "1", "2", "11"]


def test_expect_fix(capsys):
    code, out, _ = call(capsys, "expect", "fix", "a", "--n", "3..4", "--mode", "rational")
    vals = json.loads(out)["values"]
    assert vals["3"]["exact"] == "10/9" and vals["4"]["exact"] == "97/89"
    code, out, _ = call(capsys, "expect", "fix", "a^2", "--series", "2")
    data = json.loads(out)
    assert data["series"]["coefficients"]["0"] == "2"
    assert data["report"]["a_-1"] == "0" or data["report"]["a_-1"] == 0


def test_expect_emb_series(capsys):
    code, out, _ = call(capsys, "expect", "emb", str(FIXTURES / "core_a.json"), "--series", "3")
    coeffs = json.loads(out)["series"]["coefficients"]
    assert coeffs["0"] == "1" and coeffs["-2"] == "1"


def test_oracle(capsys):
    code, out, _ = call(capsys, "oracle", "count", "3")
    data = json.loads(out)
    assert data["count"] == 486 and data["hurwitz"] == "486"
    assert call(capsys, "oracle", "count", "5")[0] == EXIT_DOMAIN
    code, out, _ = call(capsys, "oracle", "sample", "a", "6", "200", "--seed", "4")
    assert json.loads(out)["samples"] == 200


def test_table_format(capsys):
    code, out, _ = call(capsys, "--format", "table", "word", "root", "abab")
    assert "q: 2" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "covstat", "oracle", "count", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 16

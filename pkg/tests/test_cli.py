"""CLI plumbing: parsing, exit codes, and deterministic output."""

import json

import pytest

from pathcat.cli import main, parse_cf
from pathcat.cf_order import CFStream
from pathcat.errors import PathcatError


def test_parse_cf():
    assert parse_cf("1;(2)") == CFStream((1,), (2,))
    assert parse_cf("0;2,1,(2)") == CFStream((0, 2, 1), (2,))
    assert parse_cf("(1)") == CFStream((), (1,))
    with pytest.raises(PathcatError):
        parse_cf("1;2,3")  # no period


def test_kseq_output(capsys):
    assert main(["kseq", "--sigma", "1;(2)", "--k1", "0"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("k  : 0, 1, 0, 2, 0, 2")


def test_usage_errors_exit_two(capsys):
    assert main(["kseq"]) == 2  # neither --sigma nor --k
    assert main(["kseq", "--sigma", "1;(2)", "--k", "1,(1)"]) == 2
    assert main(["bratteli", "--k", "1,(1)", "--levels", "5000"]) == 2


def test_cycles_builtin(capsys):
    assert main(["cycles", "--builtin", "example2"]) == 0
    out = capsys.readouterr().out
    assert "(a1,b1): generalized cycle, no entrance" in out


def test_cycles_file_roundtrip(tmp_path, capsys):
    from pathcat.finite_cat import category_json, example2
    f = tmp_path / "cat.json"
    f.write_text(category_json(example2()))
    assert main(["cycles", "--file", str(f)]) == 0
    assert "generalized cycle" in capsys.readouterr().out


def test_bratteli_json_shape(capsys):
    assert main(["bratteli", "--k", "1,(1)", "--levels", "6",
                 "--format", "json"]) == 0
    out = capsys.readouterr().out
    payload = json.loads(out[:out.rindex("}") + 1])
    assert payload["levels"][0] == [3, 2]


def test_verify_passes(capsys):
    assert main(["verify", "--k", "0,(1)", "--levels", "6"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out


def test_measure_json(capsys):
    assert main(["measure", "--k", "1,(1)", "--levels", "3",
                 "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["a"] == {"x": 1, "y": 0}

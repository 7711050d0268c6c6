import io
import json

import pytest

from coxsort.cli import parse_word, run, UsageError


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_word():
    assert parse_word("1,0", 2) == (1, 0)
    assert parse_word("s1s0", 2) == (1, 0)
    assert parse_word("", 2) == () and parse_word("e", 2) == () and parse_word("1", 2) == ()
    assert parse_word("1,", 2) == (1,) and parse_word("s1", 2) == (1,)
    with pytest.raises(UsageError):
        parse_word("3", 2)


def test_count():
    code, out, _ = call("count", "--group", "B2", "--coxeter", "0,1")
    data = json.loads(out)
    assert code == 0 and data["catalan"] == 6 and data["narayana"] == [1, 4, 1]


def test_sortable_check():
    code, out, _ = call("sortable", "check", "1,0", "--group", "B2", "--coxeter", "0,1")
    assert code == 0 and json.loads(out)["sortable"] is False


def test_sortable_list_csv():
    code, out, _ = call("sortable", "list", "--group", "B2", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "element,sorting_word,descents" and len(lines) == 7


def test_nc_round_trip():
    _, out, _ = call("nc", "map", "--group", "A3", "--coxeter", "1,0,2")
    for row in json.loads(out):
        _, back, _ = call("nc", "inverse", row["nc"], "--group", "A3", "--coxeter", "1,0,2")
        assert json.loads(back)[0]["element"] == row["element"]


def test_cluster_commands():
    _, out, _ = call("cluster", "list", "--group", "B2")
    assert len(json.loads(out)) == 6
    _, out, _ = call("cluster", "map", "s0s1", "--group", "B2")
    assert json.loads(out)[0]["cluster"] == ["s0", "s0s1s0"]


def test_orient():
    _, out, _ = call("orient", "s0", "s1", "--group", "B2", "--coxeter", "0,1")
    assert json.loads(out)["edge"] == ["s0", "s1"]


def test_verify_exit_codes():
    code, out, _ = call("verify", "--group", "A3", "--mode", "exhaustive")
    assert code == 0
    assert all(ch["status"] in ("pass", "skip") for ch in json.loads(out)["checks"])


def test_degrees():
    _, out, _ = call("degrees", "--group", "H3")
    data = json.loads(out)
    assert data["h"] == 10 and data["catalan"] == 32


def test_deterministic_output():
    args = ("verify", "--group", "B3", "--mode", "sampled", "--samples", "30", "--seed", "11")
    assert call(*args)[1] == call(*args)[1]


def test_error_codes():
    assert call("bogus")[0] == 1
    assert call("count", "--group", "B2", "--coxeter", "0,0")[0] == 1
    assert call("count", "--group", "[[1,0],[0,1]]")[0] == 2
    assert call("nc", "inverse", "1,0", "--group", "B2")[0] == 2


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "coxsort", "count", "--group", "A2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["catalan"] == 5

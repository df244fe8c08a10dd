import json

import pytest

from kralcove import cli
from kralcove.cli import cache_key, job_from_args, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_cache(monkeypatch):
    monkeypatch.delenv(cli.CACHE_ENV, raising=False)


@pytest.mark.parametrize("argv,count", [
    (["enum", "perm", "--group", "gl", "--n", "2", "--mu", "1,0"], 3),
    (["enum", "adm", "--group", "gl", "--n", "3", "--mu", "0,0,0"], 1),
    (["enum", "adm", "--group", "gl", "--n", "4", "--mu", "1,0,0,0"], 15),
    (["enum", "perm", "--group", "gsp", "--g", "2", "--mu", "1,1,0,0", "--I", "0,2"], None),
])
def test_enum_counts(capsys, argv, count):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    obj = json.loads(out)
    assert obj["count"] == len(obj["faces"])
    if count is not None:
        assert obj["count"] == count


def test_enum_is_deterministic(capsys):
    argv = ["enum", "adm", "--n", "3", "--mu", "2,1,0", "--I", "0,1"]
    outs = {run(capsys, *argv)[1] for _ in range(2)}
    assert len(outs) == 1


@pytest.mark.parametrize("argv,code", [
    (["check", "eq", "--group", "gl", "--n", "3", "--mu", "2,1,0"], 0),
    (["check", "surj", "--group", "gsp", "--g", "2", "--mu", "1,1,0,0", "--I", "0,2", "--J", "0"], 0),
    (["check", "surj", "--n", "3", "--mu", "2,1,0", "--J", "1"], 0),
    (["check", "intersect", "--group", "gsp", "--g", "2", "--mu", "2,2,0,0"], 0),
])
def test_checks_pass(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


@pytest.mark.parametrize("argv", [
    ["enum", "perm", "--n", "3", "--mu", "0,1,0"],
    ["enum", "perm", "--n", "3", "--mu", "1,0"],
    ["enum", "perm", "--mu", "1,0"],
    ["enum", "perm", "--group", "gsp", "--g", "2", "--mu", "2,1,0,0"],
    ["enum", "perm", "--group", "gsp", "--g", "2", "--mu", "1,1,0,0", "--I", "0,1"],
    ["enum", "perm", "--n", "3", "--mu", "1,0,0", "--I", ""],
    ["check", "surj", "--n", "3", "--mu", "1,0,0"],
    ["check", "surj", "--n", "3", "--mu", "1,0,0", "--I", "0", "--J", "1"],
    ["check", "intersect", "--n", "3", "--mu", "1,0,0"],
    ["enum", "bogus"],
    ["verify-witness"],
    ["verify-witness", "--bundled", "nope"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_cache_round_trip_and_transparency(capsys, monkeypatch, tmp_path):
    argv = ["enum", "perm", "--n", "3", "--mu", "2,1,0", "--I", "0,2"]
    plain = run(capsys, *argv)[1]
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    first = run(capsys, *argv)[1]
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    second = run(capsys, *argv)[1]
    assert plain == first == second


def test_unreadable_cache_is_recomputed(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    argv = ["enum", "adm", "--n", "2", "--mu", "1,0"]
    good = run(capsys, *argv)[1]
    for f in tmp_path.glob("*.json"):
        f.write_text("{not json")
    assert run(capsys, *argv)[1] == good


def test_corrupted_cache_gives_counterexample(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    argv = ["check", "eq", "--n", "3", "--mu", "2,1,0"]
    assert run(capsys, *argv)[0] == 0
    args = cli.build_parser().parse_args(argv)
    path = tmp_path / f"{cache_key(job_from_args(args), 'perm')}.json"
    obj = json.loads(path.read_text())
    dropped = obj["faces"].pop()
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, *argv)
    assert code == 1
    report = json.loads(out)
    assert report["equal"] is False
    assert report["only_in_adm"] == [dropped]


def test_dot_output(capsys):
    code, out, _ = run(capsys, "enum", "adm", "--n", "3", "--mu", "1,0,0", "--format", "dot")
    assert code == 0
    assert out.startswith('digraph "adm_GL_1_0_0" {')
    assert out.count("->") == 9
    assert out.count("[label=") == 7


def test_dot_parahoric_is_a_chain(capsys):
    code, out, _ = run(capsys, "enum", "adm", "--n", "3", "--mu", "1,1,0", "--I", "0", "--format", "dot")
    assert code == 0 and out.count("->") == 2


def test_dot_limit(capsys, monkeypatch):
    monkeypatch.setattr(cli, "DOT_LIMIT", 3)
    assert run(capsys, "enum", "adm", "--n", "3", "--mu", "1,0,0", "--format", "dot")[0] == 2


def test_text_and_output_file(capsys, tmp_path):
    target = tmp_path / "out.txt"
    code, out, _ = run(capsys, "enum", "perm", "--n", "2", "--mu", "1,0", "--format", "text",
                       "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_text().splitlines() == ["0:0,1 | 1:1,1", "0:1,0 | 1:1,1", "0:1,0 | 1:2,0"]


@pytest.mark.parametrize("name", ["m62", "gsp-g2-e2"])
def test_bundled_witnesses(capsys, name):
    code, out, _ = run(capsys, "verify-witness", "--bundled", name)
    assert code == 0 and json.loads(out)["passed"]


def test_corrupted_witness_file(capsys, tmp_path):
    obj = json.loads(cli._bundled_text("m62"))
    obj["matrices"][0][2][0] = [0, 0, 1]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify-witness", str(path))
    assert code == 1
    failed = [c["check"] for c in json.loads(out)["checks"] if not c["passed"]]
    assert "det_condition" in failed


def test_unparseable_witness_file(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("[1, 2")
    assert run(capsys, "verify-witness", str(path))[0] == 2
    assert run(capsys, "verify-witness", str(tmp_path / "missing.json"))[0] == 2


def test_version(capsys):
    assert run(capsys, "--version")[0] == 0

import json
import subprocess
import sys
from pathlib import Path

import pytest

from fzforce.cli import EXIT_UNDEFINED, EXIT_USAGE, EXIT_VERIFY, main
from fzforce.digraph import directed_cycle, parse_digraph, parse_dot, read_digraph, weak_cycle

FIXTURES = sorted((Path(__file__).parent / "fixtures").glob("*.txt"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def record(text):
    rec = {}
    for line in text.splitlines():
        key, _, value = line.partition(": ")
        rec[key] = value
    return rec


@pytest.fixture
def gen(tmp_path, capsys):
    def _gen(*params):
        path = tmp_path / ("_".join(params).replace(":", "-") + ".txt")
        assert main(["gen", *params, "--out", str(path)]) == 0
        capsys.readouterr()
        return str(path)
    return _gen


def test_gen_to_stdout(capsys):
    code, out, _ = run(capsys, "gen", "cycle", "5")
    assert code == 0 and parse_digraph(out) == directed_cycle(5)


def test_gen_debruijn_has_loops_flag(capsys):
    code, out, _ = run(capsys, "gen", "debruijn", "2", "3")
    assert out.splitlines()[:2] == ["n 8", "loops"]
    assert parse_digraph(out).n == 8


def test_gen_constructive_cycle(capsys):
    _, out, _ = run(capsys, "gen", "thm412", "10", "6")
    d = parse_digraph(out)
    assert d == weak_cycle("FDDBDDDDDD")


def test_gen_every_family(capsys):
    cases = [
        ("cycle", "4"), ("path", "3"), ("weakpath", "FBD"), ("weakcycle", "DFB"), ("star", "3"),
        ("star", "2", "FB"), ("complete", "3"), ("empty", "2"), ("debruijn", "2", "2"), ("kautz", "2", "2"),
        ("outjoin", "cycle:3", "empty:1"), ("linegraph", "complete:3"), ("union", "cycle:2", "path:2"),
        ("thm412", "5", "2"),
    ]
    for case in cases:
        code, out, err = run(capsys, "gen", *case)
        assert code == 0, (case, err)
        parse_digraph(out)


def test_gen_errors(capsys):
    assert run(capsys, "gen", "cycle")[0] == EXIT_USAGE
    assert run(capsys, "gen", "cycle", "x")[0] == EXIT_USAGE
    assert run(capsys, "gen", "cycle", "1")[0] == EXIT_USAGE
    assert run(capsys, "gen", "nosuch")[0] == EXIT_USAGE
    code, _, err = run(capsys, "gen", "thm412", "5", "9")
    assert code == EXIT_USAGE and "error" in err


def test_usage_errors_exit_1(capsys):
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "compute", "Q", "x")[0] == EXIT_USAGE
    assert run(capsys, "--help")[0] == 0


def test_compute_f_cycle(capsys, gen):
    code, out, _ = run(capsys, "compute", "F", gen("cycle", "5"))
    rec = record(out)
    assert code == 0
    assert rec["value"] == "0" and rec["method"] == "closed-form"
    assert set(rec) >= {"n", "metric", "value", "witness", "method", "elapsed"}


def test_compute_f_exact_outjoin(capsys, gen):
    f = gen("outjoin", "complete:5", "empty:2")
    _, out, _ = run(capsys, "compute", "F", "--exact", "--json", f)
    rec = json.loads(out)
    assert rec["value"] == 5 and rec["method"] == "exact" and len(rec["witness"]) == 5
    _, out, _ = run(capsys, "compute", "Z", "--json", f)
    assert json.loads(out)["value"] == 6


def test_compute_z_empty(capsys, gen):
    _, out, _ = run(capsys, "compute", "Z", "--json", gen("empty", "4"))
    assert json.loads(out)["value"] == 4


def test_compute_undefined(capsys):
    loop = str(Path(__file__).parent / "fixtures" / "loop_single.txt")
    for flag in ("--exact", "--auto"):
        code, out, _ = run(capsys, "compute", "F", flag, "--json", loop)
        rec = json.loads(out)
        assert code == EXIT_UNDEFINED
        assert rec["value"] is None and rec["reason"] == "Z=0 under loop rule"


def test_compute_closure_and_mincrit(capsys, gen):
    f = gen("cycle", "4")
    code, out, _ = run(capsys, "compute", "closure", f, "--set", "v0", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["complete"] and rec["value"] == 4
    assert rec["trace"][0] == {"round": 1, "forcer": 0, "forced": 1}
    _, out, _ = run(capsys, "compute", "mincrit", f, "--json")
    assert json.loads(out)["witness"] == [0, 1, 2, 3]
    assert run(capsys, "compute", "closure", f, "--set", "9")[0] == EXIT_USAGE


def test_compute_bound(capsys, gen):
    code, _, err = run(capsys, "compute", "Z", "--bound", "3", gen("cycle", "5"))
    assert code == EXIT_USAGE and "bound" in err


def test_classify(capsys, gen):
    _, out, _ = run(capsys, "classify", gen("cycle", "9"))
    assert record(out)["class"] == "DirectedCycle"
    _, out, _ = run(capsys, "classify", "--json", "--oriented", gen("outjoin", "cycle:3", "empty:1"))
    assert json.loads(out)["class"] == "TriangleOutjoinVertex"


def test_enumerate(capsys, gen):
    f = gen("path", "7")
    _, out, _ = run(capsys, "enumerate", "maximal-fzfs", f, "--json")
    sets = json.loads(out)["sets"]
    assert any(len(s) == 2 for s in sets) and [2, 5] in sets
    _, out, _ = run(capsys, "enumerate", "minimal-zfs", f, "--json")
    assert [1, 2] in json.loads(out)["sets"]
    assert run(capsys, "enumerate", "minimal-zfs", f, "--bound", "5")[0] == EXIT_USAGE


def test_verify_census4(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "census4", "--figures", str(tmp_path))
    rec = record(out)
    assert code == 0
    assert rec["summary"] == "4096 digraphs, 0 mismatches"
    assert (tmp_path / "census4_counts.png").exists()


def test_verify_failure_exit_code(capsys, monkeypatch):
    from fzforce import verify

    def broken():
        rep = verify.SuiteReport("broken")
        rep.record(False, directed_cycle(3), "forced failure")
        return rep

    monkeypatch.setitem(verify.SUITES, "census3", broken)
    code, out, _ = run(capsys, "verify", "census3")
    rec = record(out)
    assert code == EXIT_VERIFY
    assert rec["counterexample"] == "n 3; 0 1; 1 2; 2 0"


def test_round_trip_gen_parse_dot_parse(capsys, gen, tmp_path):
    for params in (("debruijn", "2", "3"), ("weakcycle", "DFBF"), ("kautz", "2", "2"), ("empty", "3")):
        path = gen(*params)
        original = read_digraph(path)
        dot = tmp_path / "x.dot"
        assert main(["dot", path, "--out", str(dot)]) == 0
        back = parse_dot(dot.read_text())
        assert back.arcs() == original.arcs() and back.n == original.n
        _, out, _ = run(capsys, "compute", "Z", "--json", str(dot))
        _, out2, _ = run(capsys, "compute", "Z", "--json", path)
        assert json.loads(out)["value"] == json.loads(out2)["value"]


def test_draw(capsys, gen, tmp_path):
    code, out, _ = run(capsys, "draw", gen("cycle", "5"), "--out", str(tmp_path / "c.png"), "--highlight", "0")
    assert code == 0 and (tmp_path / "c.png").exists()


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_auto_and_exact_agree_on_fixtures(capsys, path):
    c1, auto, _ = run(capsys, "compute", "F", "--auto", "--json", str(path))
    c2, exact, _ = run(capsys, "compute", "F", "--exact", "--json", str(path))
    assert c1 == c2
    assert json.loads(auto)["value"] == json.loads(exact)["value"]


def test_console_script_module_entry():
    proc = subprocess.run([sys.executable, "-m", "fzforce.cli", "gen", "cycle", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("n 3")

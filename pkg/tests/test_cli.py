import json
import subprocess
import sys

import pytest

from homextremal.cli import main
from homextremal.graph6 import encode
from homextremal.graphs import TargetGraph, complete_bipartite, turan
from homextremal.targets import dump_target, parse_target


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("HOMEXTREMAL_CACHE_DIR", str(d))
    return d


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_k4(capsys, cache_dir):
    code, out, _ = run(capsys, "count", "--graph", "C~", "--target", "named:K4")
    assert code == 0 and out == "24\n"
    assert (cache_dir / "hom-cache.jsonl").exists()


def test_count_copies_and_qcol(capsys, cache_dir):
    g6 = encode(turan(3, 6)).decode()
    code, out, _ = run(capsys, "count", "--graph", g6, "--target", "named:1000000000000000xK3")
    assert code == 0 and out == "6000000000000000\n"
    code, out, _ = run(capsys, "count-qcol", "--graph", "C~", "--q", "5")
    assert out == "120\n"


def test_graph_file(tmp_path, capsys, cache_dir):
    f = tmp_path / "gs.g6"
    f.write_text(">>graph6<<C~\nBw\n")
    code, out, _ = run(capsys, "count", "--graph", str(f), "--target", "named:K3")
    assert code == 0 and out.split() == ["0", "6"]


def test_cache_on_off_identical(capsys, cache_dir):
    argv = ["scan-extremal", "--n", "6", "--min-degree", "2", "--target", "named:K3"]
    _, a, _ = run(capsys, *argv, "--no-cache")
    _, b, _ = run(capsys, *argv)
    _, c, _ = run(capsys, *argv)  # warm cache
    assert a == b == c


def test_target_json_round_trip(tmp_path, capsys, cache_dir):
    h = TargetGraph.from_parts(3, [0], [(0, 1), (1, 2)])
    text = dump_target(h)
    assert parse_target(text) == h
    f = tmp_path / "h.json"
    f.write_text(text)
    assert parse_target(str(f)) == h
    g6 = encode(complete_bipartite(2, 3)).decode()
    _, a, _ = run(capsys, "count", "--graph", g6, "--target", text)
    _, b, _ = run(capsys, "count", "--graph", g6, "--target", str(f))
    assert a == b


@pytest.mark.parametrize("argv", [
    ["count", "--graph", "C~", "--target", "named:Q7"],
    ["count", "--graph", "C~", "--target", "{not json"],
    ["count", "--graph", "!!", "--target", "named:K3"],
    ["count", "--graph", "C~", "--target", "named:2x2xK3"],
])
def test_usage_errors(capsys, cache_dir, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(cache_dir):
    with pytest.raises(SystemExit) as exc:
        main(["count"])
    assert exc.value.code == 2


def test_refusals(capsys, cache_dir):
    assert run(capsys, "enumerate", "--n", "10")[0] == 3
    assert run(capsys, "enumerate", "--n", "5", "--enum-cap", "4")[0] == 3
    assert run(capsys, "s-value", "--delta", "9", "--target", "named:K9", "--budget", "100")[0] == 3


def test_enumerate_output(capsys, cache_dir, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--n", "5")
    assert code == 0 and len(out.splitlines()) == 34
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--min-degree", "3")
    assert out == "C~\n"


def test_cache_integrity_failure(capsys, cache_dir):
    cache_dir.mkdir()
    f = cache_dir / "hom-cache.jsonl"
    f.write_text('{"count": "1", "g": "A_", "h": "x"}\n{"count": "2", "g": "A_", "h": "x"}\n')
    assert run(capsys, "count", "--graph", "C~", "--target", "named:K4")[0] == 4
    f.write_text("garbage\n")
    assert run(capsys, "count", "--graph", "C~", "--target", "named:K4")[0] == 4


def test_verify_exit_codes(capsys, cache_dir, tmp_path):
    assert run(capsys, "verify", "path-lemma", "--max-target-vertices", "2", "--r-max", "6")[0] == 0
    code = run(capsys, "verify", "path-lemma", "--max-target-vertices", "1",
               "--force-include", "named:Kloop2")[0]
    assert code == 1
    rep = tmp_path / "k.json"
    code = run(capsys, "verify", "conjecture", "--find-min-k", "--k-max", "600",
               "--report", str(rep))[0]
    assert code == 1 and json.loads(rep.read_text())["minimal_violating_k"] == "563"
    code, out, _ = run(capsys, "verify", "lemma42", "--n-min", "4", "--csv")
    assert code == 0 and out.startswith("lemma,pass")
    assert run(capsys, "k0", "--t", "4", "--alpha", "1")[1] == "138085\n"


def test_module_entry_point(cache_dir):
    r = subprocess.run([sys.executable, "-m", "homextremal", "count", "--graph", "C~",
                        "--target", "named:Kloop2", "--no-cache"],
                       capture_output=True, text=True, check=True)
    assert r.stdout == "16\n"

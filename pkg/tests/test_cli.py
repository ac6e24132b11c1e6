import json
import subprocess
import sys

import pytest

from lmap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def tri_file(tmp_path):
    p = tmp_path / "tri.json"
    p.write_text(json.dumps({"vertices": [[0, 0], [0, 4], [4, 0]]}))
    return str(p)


def test_lmaps_json(capsys, tri_file):
    code, out, _ = run(capsys, "lmaps", tri_file)
    assert code == 0
    data = json.loads(out)
    assert len(data["lmaps"]) == 3
    assert data["map_index"] == 0
    for q in data["lmaps"]:
        assert q["area"] == pytest.approx(4)
        assert q["flags"]["local_max_probe"] == "Passed"


def test_json_round_trip(capsys, tri_file, tmp_path):
    _, out, _ = run(capsys, "lmaps", tri_file)
    again = tmp_path / "again.json"
    again.write_text(out)
    _, out2, _ = run(capsys, "lmaps", str(again))
    assert out2 == out


def test_output_file(capsys, tri_file, tmp_path):
    dest = tmp_path / "map.json"
    code, out, _ = run(capsys, "map", tri_file, "-o", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["map"]["area"] == pytest.approx(4)


def test_svg_deterministic(capsys):
    _, a, _ = run(capsys, "lmaps", "regular:5", "--format", "svg")
    _, b, _ = run(capsys, "lmaps", "regular:5", "--format", "svg")
    assert a == b
    assert a.startswith("<?xml") and a.rstrip().endswith("</svg>")
    assert a.count("<polygon") == 6


def test_text_format(capsys, tri_file):
    code, out, _ = run(capsys, "lmaps", tri_file, "--format", "text")
    assert code == 0 and out.startswith("3 LMAPs in a 3-gon")
    assert out.count("MAP") == 2


def test_heilbronn4(capsys, tri_file):
    _, out, _ = run(capsys, "heilbronn4", tri_file)
    assert json.loads(out)["value"] == pytest.approx(8 / 3)


def test_oracle(capsys, tri_file):
    _, out, _ = run(capsys, "oracle", tri_file, "--samples", "60")
    data = json.loads(out)
    assert data["best_area"] <= 4 + 1e-9
    assert data["samples_per_boundary"] == 60


def test_gen(capsys):
    _, a, _ = run(capsys, "gen", "random:8", "--seed", "4")
    _, b, _ = run(capsys, "gen", "random:8", "--seed", "4")
    assert a == b and len(json.loads(a)["vertices"]) == 8


def test_missing_seed(capsys):
    code, _, err = run(capsys, "gen", "random:8")
    assert code == 2 and err.startswith("MissingSeed")


def test_parallel_edges(capsys, tmp_path):
    p = tmp_path / "sq.json"
    p.write_text(json.dumps({"vertices": [[0, 0], [0, 1], [1, 1], [1, 0]]}))
    code, _, err = run(capsys, "lmaps", str(p))
    assert code == 2 and err.startswith("ParallelEdges")


def test_bad_input(capsys, tmp_path):
    code, _, err = run(capsys, "lmaps", str(tmp_path / "missing.json"))
    assert code == 2 and err.startswith("UnreadableInput")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "lmaps", str(bad))
    assert code == 2 and err.startswith("InvalidJson")


def test_not_convex(capsys, tmp_path):
    p = tmp_path / "spike.json"
    p.write_text(json.dumps({"vertices": [[0, 0], [0, 4], [1, 1], [4, 0]]}))
    code, _, err = run(capsys, "lmaps", str(p))
    assert code == 2 and err.startswith("NotConvex")


def test_selftest_pentagon(capsys):
    code, out, _ = run(capsys, "selftest", "regular:5")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 10 and all(l.startswith("PASS") for l in lines)


def test_selftest_random(capsys):
    code, _, _ = run(capsys, "selftest", "random:12", "--seed", "7")
    assert code == 0


def test_selftest_catches_fault(capsys):
    code, out, err = run(capsys, "selftest", "regular:5", "--inject-fault")
    assert code == 1
    assert "FAIL anchoring" in out
    assert err.strip() == "selftest failed: anchoring"


def test_module_entry(tri_file):
    r = subprocess.run([sys.executable, "-m", "lmap", "map", tri_file, "--format", "text"],
                       capture_output=True, text=True, check=True)
    assert r.stdout.startswith("MAP area 4")

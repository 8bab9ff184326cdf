import json
import subprocess
import sys

import pytest

from factoperad import cli, corrupt
from factoperad import factsys as fs
from factoperad import serialize as ser
from factoperad.cat import BraidedObject
from factoperad.linalg import QQ

FLIP = {"field": "Q", "rows": [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]}


def write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    return {
        "flip": write(tmp_path / "flip.json", FLIP),
        "nonyb": write(tmp_path / "nonyb.json", ser.matrix_to_json(corrupt.non_yang_baxter(QQ))),
        "rect": write(tmp_path / "rect.json", {"rows": [[1, 0], [0, 1], [1, 1]]}),
        "dir": tmp_path,
    }


def test_yb_check(capsys, files):
    code, out, _ = run(capsys, "yb-check", files["flip"])
    assert code == 0 and json.loads(out)["status"] == "ok"
    code, out, _ = run(capsys, "yb-check", files["nonyb"])
    rep = json.loads(out)
    assert code == 1 and rep["status"] == "violation" and len(rep["details"][0]["entry"]) == 2
    code, _, err = run(capsys, "yb-check", files["rect"])
    assert code == 2 and "square" in err
    code, out, _ = run(capsys, "yb-check", files["flip"], "--field", "Fp:5")
    assert code == 0 and json.loads(out)["field"] == "Fp:5"


def test_usage_errors(capsys, files, tmp_path):
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "yb-check", tmp_path / "missing.json")[0] == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert run(capsys, "yb-check", tmp_path / "junk.json")[0] == 2
    assert run(capsys, "yb-check", files["flip"], "--field", "Fp:4")[0] == 2


def test_build_verify_canonical(capsys, files):
    sysf = files["dir"] / "sys.json"
    code, out, _ = run(capsys, "build", files["flip"], "--depth", 3, "-o", sysf)
    assert code == 0 and json.loads(out)["output"] == str(sysf)
    code, out, _ = run(capsys, "verify", sysf, "--depth-cap", 3)
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "ok" and rep["details"] == []
    assert "timing_ms" not in rep


def test_build_rejects_non_yb(capsys, files):
    code, out, _ = run(capsys, "build", files["nonyb"], "--depth", 2)
    assert code == 1 and json.loads(out)["status"] == "violation"


def test_build_with_gauge(capsys, files):
    d = files["dir"]
    g = [write(d / f"g{k}.json", {"rows": [[2 if i == j else 0 for j in range(2 ** k)] for i in range(2 ** k)]}) for k in (1, 2)]
    code, out, _ = run(capsys, "build", files["flip"], "--depth", 2, "--gauge", *g)
    assert code == 0
    S = ser.system_from_json(json.loads(out))
    assert fs.verify_factorization(S).ok
    code, _, _ = run(capsys, "build", files["flip"], "--depth", 3, "--gauge", *g)
    assert code == 2


def test_build_rejects_bad_vertical_datum(capsys, tmp_path):
    nonsym = {"rows": [[1, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]}
    obj = write(tmp_path / "ns.json", nonsym)
    g1 = write(tmp_path / "g1.json", [[1, 0], [0, 1]])
    g2 = write(tmp_path / "g2.json", [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0], [0, 0, 0, 4]])
    code, out, _ = run(capsys, "build", obj, "--depth", 2, "--gauge", g1, g2)
    rep = json.loads(out)
    assert code == 1 and rep["details"][0]["axiom"] == "b"


def test_verify_corrupted_file_names_axiom_a(capsys, tmp_path):
    S = corrupt.break_composition(fs.from_object(BraidedObject.flip(QQ, 2), 3))
    path = write(tmp_path / "bad.json", ser.system_to_json(S))
    code, out, _ = run(capsys, "verify", path)
    rep = json.loads(out)
    assert code == 1 and rep["status"] == "violation"
    assert [v["axiom"] for v in rep["details"]] == ["a"]
    v = rep["details"][0]
    assert {"axiom", "degree", "embedding", "braid", "entry", "lhs", "rhs"} <= set(v)


def test_verify_depth_cap_too_large(capsys, files):
    sysf = files["dir"] / "s.json"
    run(capsys, "build", files["flip"], "--depth", 1, "-o", sysf)
    assert run(capsys, "verify", sysf, "--depth-cap", 2)[0] == 2


def test_tower_assemble_byte_identical(capsys, files):
    d = files["dir"]
    run(capsys, "build", files["flip"], "--depth", 3, "-o", d / "sys.json")
    assert run(capsys, "tower", d / "sys.json", "--height", 3, "-o", d / "tower.json")[0] == 0
    assert run(capsys, "assemble", d / "tower.json", "-o", d / "back.json")[0] == 0
    assert (d / "sys.json").read_bytes() == (d / "back.json").read_bytes()


def test_twisted_tower_assembles(capsys, files):
    d = files["dir"]
    run(capsys, "build", files["flip"], "--depth", 2, "-o", d / "sys.json")
    assert run(capsys, "tower", d / "sys.json", "--twist", 4, "-o", d / "tw.json")[0] == 0
    code, out, _ = run(capsys, "assemble", d / "tw.json")
    assert code == 0
    assert fs.verify_factorization(ser.system_from_json(json.loads(out))).ok


def test_assemble_rejects_broken_tower(capsys, files):
    d = files["dir"]
    run(capsys, "build", files["flip"], "--depth", 3, "-o", d / "sys.json")
    run(capsys, "tower", d / "sys.json", "-o", d / "t.json")
    data = json.loads((d / "t.json").read_text())
    data["transitions"]["1,2"][1] = [["2", "0"], ["0", "2"]]
    write(d / "t.json", data)
    code, out, _ = run(capsys, "assemble", d / "t.json")
    assert code == 1 and json.loads(out)["details"][0]["kind"] == "cocycle"


def test_straighten_degenerate_and_perturbed(capsys, tmp_path):
    path = write(tmp_path / "e.json", {"squares": [{"a": "1/4", "x": "0", "y": "1/2"}, {"a": "1/4", "x": "0", "y": "0"}]})
    code, out, _ = run(capsys, "straighten", path)
    rep = json.loads(out)
    assert code == 1 and rep["details"][0]["error"] == "DegenerateMotion"
    first = run(capsys, "straighten", path, "--perturb", "1/1000")
    second = run(capsys, "straighten", path, "--perturb", "1/1000")
    assert first[0] == 0 and first[1] == second[1]
    assert json.loads(first[1])["word"] == [1]
    assert run(capsys, "straighten", path, "--perturb", "abc")[0] == 2


def test_compose(capsys, tmp_path):
    outer = write(tmp_path / "o.json", {"squares": [{"a": "1/2", "x": "1/4", "y": "1/4"}]})
    inner = write(tmp_path / "i.json", {"squares": [{"a": "1/2", "x": "0", "y": "0"}]})
    code, out, _ = run(capsys, "compose", outer, inner)
    assert code == 0 and json.loads(out) == {"squares": [{"a": "1/4", "x": "1/4", "y": "1/4"}]}
    assert run(capsys, "compose", outer)[0] == 2
    bad = write(tmp_path / "b.json", {"squares": [["1/2", 0, 0], ["1/2", "1/2", "1/2"]]})
    assert run(capsys, "compose", bad, inner, inner)[0] == 2


def test_braid_matrix(capsys, files, tmp_path):
    w = write(tmp_path / "w.json", [1])
    code, out, _ = run(capsys, "braid-matrix", files["flip"], w, "--n", 2, "--koszul", "off")
    assert code == 0 and json.loads(out)["rows"] == [[str(x) for x in r] for r in FLIP["rows"]]
    code, out, _ = run(capsys, "braid-matrix", files["flip"], w, "--n", 2)
    assert json.loads(out)["rows"][1][2] == "-1"
    assert run(capsys, "braid-matrix", files["flip"], w)[0] == 2
    b = write(tmp_path / "b.json", {"n": 3, "word": [1, 2]})
    assert run(capsys, "braid-matrix", files["flip"], b, "--n", 2)[0] == 2


def test_timing_flag(capsys, files):
    code, out, _ = run(capsys, "yb-check", files["flip"], "--timing")
    assert "timing_ms" in json.loads(out)


def test_internal_error_exit_code(capsys, files, monkeypatch):
    def boom(*a, **k):
        raise RuntimeError("boom")
    monkeypatch.setattr(cli, "check_yang_baxter", boom)
    assert run(capsys, "yb-check", files["flip"])[0] == 3


def test_reports_deterministic(capsys, files):
    d = files["dir"]
    run(capsys, "build", files["flip"], "--depth", 2, "-o", d / "s.json")
    a = run(capsys, "verify", d / "s.json", "--seed", 5)
    b = run(capsys, "verify", d / "s.json", "--seed", 5)
    assert a == b and json.loads(a[1])["seed"] == 5


def test_console_script(files):
    proc = subprocess.run([sys.executable, "-m", "factoperad.cli", "yb-check", files["flip"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["status"] == "ok"

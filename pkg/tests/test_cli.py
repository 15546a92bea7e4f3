import json
import math

import pytest

from chebmeas.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_closed_form(capsys):
    code, d = run_json(capsys, "closed-form", "sigma", "--n", "1", "--y", "2")
    assert code == 0 and d["value"] == pytest.approx(math.pi, abs=1e-15)
    assert d["params"] == {"n": 1, "y": 2.0}
    assert d["manifest"]["command"] == "closed-form"
    code, d = run_json(capsys, "closed-form", "delta", "--m", "2", "--h", "1")
    assert d["value"] == pytest.approx(math.pi)
    code, d = run_json(capsys, "closed-form", "eps-arc", "--m", "2", "--alpha", "90", "--deg")
    assert d["value"] == pytest.approx(1.0)


def test_closed_form_domain_error(capsys):
    code, _, err = run(capsys, "closed-form", "sigma", "--n", "1", "--y", "0.5")
    assert code == 2 and "y >= 1" in err
    code, _, err = run(capsys, "closed-form", "sigma", "--n", "1")
    assert code == 2 and "--y" in err


def test_construct_and_measure(capsys, tmp_path):
    poly = tmp_path / "f.json"
    code, d = run_json(capsys, "construct", "fnk", "--n", "1", "--y", "2", "--emit-poly", str(poly))
    assert code == 0 and d["poly"]["a"] == pytest.approx([-2.0, 2.0])
    assert str(poly) in d["manifest"]["outputs"]
    code, d = run_json(capsys, "measure", "--poly", str(poly), "--level", "1")
    assert code == 0
    assert d["segment_count"] == 1 and d["touch_count"] == 1
    assert d["level_set"]["measure"] == pytest.approx(math.pi, abs=1e-9)


def test_construct_arc(capsys):
    code, d = run_json(capsys, "construct", "arc", "--m", "2", "--alpha", "1.5707963")
    assert d["poly"]["kind"] == "circle"
    assert d["metadata"]["coefficients"]["real"] == pytest.approx([1, -1, 1], abs=1e-6)
    code, _, _ = run(capsys, "construct", "fnk", "--n", "2", "--y", "1")
    assert code == 2


def test_measure_constant_and_missing(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"kind": "trig", "n": 0, "a": [1.0], "b": [0.0]}))
    code, d = run_json(capsys, "measure", "--poly", str(p), "--level", "1")
    assert code == 0 and d["level_set"]["measure"] == 0.0
    code, _, _ = run(capsys, "measure", "--poly", str(tmp_path / "nope.json"))
    assert code == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "measure", "--poly", str(bad))[0] == 1
    assert run(capsys, "measure", "--poly", str(p), "--level", "0")[0] == 2


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "--quantity", "sigma", "--n", "2", "--y-from", "1.01",
                       "--y-to", "10", "--steps", "100")
    lines = out.strip().split("\n")
    assert code == 0 and lines[0] == "y,value" and len(lines) == 101
    code, out, _ = run(capsys, "scan", "--quantity", "babenko-ratio", "--n", "1", "--from", "1.001",
                       "--to", "50", "--steps", "20")
    rows = [list(map(float, r.split(","))) for r in out.strip().split("\n")[1:]]
    assert out.startswith("y,mu,sigma,ratio\n")
    assert all(r[3] < math.sqrt(2) for r in rows)
    assert run(capsys, "scan", "--quantity", "sigma", "--n", "1", "--from", "1", "--to", "2",
               "--steps", "0")[0] == 2


def test_oracle_commands(capsys):
    code, d = run_json(capsys, "oracle", "min-measure", "--m", "2", "--h", "1", "--starts", "4",
                       "--seed", "7")
    assert code == 0 and d["result"]["value"] == pytest.approx(math.pi, abs=1e-2)
    assert d["manifest"]["seed"] == 7
    code, d = run_json(capsys, "oracle", "minimax", "--n", "1", "--set=-60,60", "--deg")
    assert code == 0 and d["value"] == pytest.approx(0.25, abs=1e-6) and d["certified"]
    code, out, _ = run(capsys, "oracle", "babenko", "--n", "2", "--y-from", "1.5", "--y-to", "3",
                       "--steps", "4", "--out", "csv")
    assert out.startswith("y,mu,sigma,ratio\n") and len(out.strip().split("\n")) == 5
    code, _, _ = run(capsys, "oracle", "min-measure", "--m", "3", "--h", "1", "--max-evals", "20")
    assert code == 3
    code, _, _ = run(capsys, "oracle", "minimax", "--n", "1", "--set", "a,b")
    assert code == 2


def test_verify_commands(capsys):
    for check in ("convexity", "cubes"):
        code, d = run_json(capsys, "verify", check, "--m", "3", "--samples", "50")
        assert code == 0 and d["checked"] == 50 and d["violations"] == []
        assert "max_error" in d
    code, d = run_json(capsys, "verify", "decomposition", "--m", "3", "--h", "1", "--samples", "20")
    assert code == 0
    code, d = run_json(capsys, "verify", "equivalence", "--m", "2", "--h", "1", "--samples", "10")
    assert code == 0
    code, d = run_json(capsys, "verify", "structure", "--m", "2", "--h", "1")
    assert code == 0


def test_json_roundtrip_and_determinism(capsys, tmp_path):
    out = tmp_path / "r.json"
    argv = ["oracle", "min-measure", "--m", "2", "--h", "0.7", "--starts", "3", "--seed", "5"]
    main(argv + ["--output", str(out)])
    first = json.loads(out.read_text())
    main(argv + ["--output", str(out)])
    second = json.loads(out.read_text())
    assert json.dumps(first["result"]) == json.dumps(second["result"])
    assert json.loads(json.dumps(first)) == first
    assert first["manifest"]["params"]["seed"] == 5

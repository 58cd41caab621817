import json

import pytest

from rootmonodromy.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_invariants_from_file(tmp_path, capsys):
    f = tmp_path / "a.json"
    f.write_text("[[0,0],[2,4],[5,2]]")
    code, out, _ = call(capsys, "invariants", "--support", str(f))
    assert code == 0
    assert {k: out[k] for k in ("N", "d", "theta", "sharp")} == {"N": 5, "d": 1, "theta": 2, "sharp": True}


def test_reported_support_round_trips(capsys):
    _, first, _ = call(capsys, "invariants", "--support", "[[1,1],[3,5],[6,3]]")
    _, again, _ = call(capsys, "invariants", "--support", json.dumps(first["support"]))
    assert first == again


def test_predict_line(capsys):
    code, out, _ = call(capsys, "predict", "--support", "[[0,0],[1,2]]")
    assert code == 0 and out["galois_order"] == 1 and out["braid"] == "t^2"


def test_trinomial(capsys):
    code, out, _ = call(capsys, "trinomial", "--support", "[[0,0],[2,4],[5,2]]")
    assert code == 0 and out["delta"] == 16 and out["loops"]["l0"] == "t^2"
    assert sum(out["fiber_histogram"].values()) == 16


def test_verify_is_deterministic(capsys):
    code, out, _ = call(capsys, "verify", "--support", "[[0,0],[1,1],[2,1]]", "--seed", "1")
    assert code == 0 and out["match"] is True
    _, again, _ = call(capsys, "verify", "--support", "[[0,0],[1,1],[2,1]]", "--seed", "1")
    assert out == again


def test_verify_non_trinomial_uses_seed(capsys):
    args = ["verify", "--support", "[[0,0],[1,2],[3,1],[3,0]]", "--seed", "4"]
    code, out, _ = call(capsys, *args)
    assert code == 0 and out["match"] is True
    assert call(capsys, *args)[1] == out


def test_reducible(capsys):
    code, out, _ = call(capsys, "reducible", "--a1", "[[0,0],[2,0],[0,2],[2,2]]", "--a2", "[[0,0],[0,2]]",
                        "--verify", "--seed", "1")
    assert code == 0
    assert (out["n"], out["h"], out["N"], out["S"], out["kappa"], out["sharp"]) == (2, 2, 4, [2, 2], 2, False)
    assert out["verified"] is True and out["kernel_matches_enumeration"] is True


def test_specialize(capsys):
    code, out, _ = call(capsys, "specialize", "--support", "[[0,0,0],[1,1,1],[2,2,3]]")
    assert code == 0 and out["invariants"]["theta"] == 1


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["predict", "--support", "[]"],
    ["predict", "--support", "not json"],
    ["verify", "--support", "[[0,0],[1,1],[2,1]]", "--eps", "-1"],
    ["verify", "--support", "[[0,0],[1,1],[2,1]]", "--eps", "2"],
    ["reducible", "--a1", "[[0,0],[1,0],[0,1]]", "--a2", "[[0,0],[1,0],[0,1]]"],
    ["reducible", "--a1", "[[0,0],[1,0]]", "--a2", "[[0,0],[0,1]]", "--enumerate-bound", "0"],
])
def test_validation_errors_exit_2(argv, capsys):
    code, out, err = call(capsys, *argv)
    assert code == 2 and out is None and err


def test_numeric_failure_exits_3(capsys, monkeypatch):
    from rootmonodromy import galois
    from rootmonodromy.numeric import TrackingError

    def boom(*a, **k):
        raise TrackingError("tracking failure: refine")
    monkeypatch.setattr(galois, "verify", boom)
    code, out, err = call(capsys, "verify", "--support", "[[0,0],[1,2],[3,1],[3,0]]")
    assert code == 3 and "refine" in err

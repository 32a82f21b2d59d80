import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from bvorder import BVFunction
from bvorder.cli import main

FIX = Path(__file__).parent / "fixtures"
E1 = str(FIX / "e1.json")

E1_NORMS = (
    '{"bv_norm": 2.0, "certificates": {"cor15": {"breakpoints": [0.0, 0.5, 1.0], "interval": [0.0, 1.0], '
    '"mode": "linear", "space": {"dim": 2, "kind": "lattice"}, "values": [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]}, '
    '"cor16": {"breakpoints": [0.0, 0.5, 1.0], "interval": [0.0, 1.0], "mode": "linear", '
    '"space": {"dim": 2, "kind": "lattice"}, "values": [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]}}, '
    '"cor15": 2.0, "cor16": 2.0, "sup_norm": 1.0}\n'
)


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_norms_golden():
    code, out, _ = run("norms", E1)
    assert code == 0
    assert out == E1_NORMS


def test_norms_values():
    _, out, _ = run("norms", str(FIX / "ramp.json"))
    res = json.loads(out)
    assert [res[k] for k in ("sup_norm", "bv_norm", "cor15", "cor16")] == [2.0, 2.0, 2.0, 2.0]
    _, out, _ = run("norms", str(FIX / "zero.json"))
    res = json.loads(out)
    assert [res[k] for k in ("sup_norm", "bv_norm", "cor15", "cor16")] == [0.0, 0.0, 0.0, 0.0]


def test_variation():
    code, out, _ = run("variation", E1)
    res = json.loads(out)
    assert code == 0
    assert res["total_variation"] == [2.0, 2.0]
    assert res["grid_variation"] == [2.0, 2.0]
    assert res["variation_function"]["values"] == [[0, 0], [1, 1], [2, 2]]
    _, out, _ = run("variation", E1, "--from", "0", "--to", "0.25")
    assert json.loads(out)["total_variation"] == [0.5, 0.5]
    _, out, _ = run("variation", str(FIX / "constant.json"))
    res = json.loads(out)
    assert res["total_variation"] == [0.0, 0.0] and res["is_constant"] is True


def test_variation_sym_note():
    code, out, _ = run("variation", str(FIX / "sym2.json"))
    res = json.loads(out)
    assert code == 0
    assert res["note"] == "supremum_not_computed"
    assert "total_variation" not in res and len(res["grid_variation"]) == 2


def test_jordan():
    code, out, _ = run("jordan", E1)
    res = json.loads(out)
    assert code == 0
    assert res["v_plus"]["values"][-1] == [1.0, 1.0]
    assert res["v_minus"]["values"][-1] == [1.0, 1.0]
    assert res["reconstruction_error"] == 0.0
    _, out, _ = run("jordan", str(FIX / "ramp.json"))
    assert all(v == [0.0, 0.0] for v in json.loads(out)["v_minus"]["values"])


def test_output_round_trips():
    _, out, _ = run("jordan", E1)
    res = json.loads(out)
    for key in ("v_plus", "v_minus"):
        f = BVFunction.from_json(res[key])
        assert BVFunction.from_json(json.loads(json.dumps(f.to_json()))) == f


def test_stdin():
    code, out, _ = run("norms", "-", stdin=(FIX / "e1.json").read_text())
    assert code == 0 and out == E1_NORMS


@pytest.mark.parametrize(
    "argv, stdin, code",
    [
        (("variation", E1, "--from", "0.6", "--to", "0.4"), "", 3),
        (("variation", E1, "--from", "-1"), "", 3),
        (("norms", "-"), "{not json", 2),
        (("norms", "-"), '{"space": {"kind": "lattice", "dim": 2}}', 2),
        (("norms", "/nonexistent/file.json"), "", 2),
        (("jordan", str(FIX / "sym2.json")), "", 4),
        (("norms", str(FIX / "sym2.json")), "", 4),
        (("check", "--trials", "0"), "", 5),
        (("check", "--dims", "x"), "", 5),
        (("witness", "--kind", "nope"), "", 5),
        (("witness", "--kind", "triangle", "--budget", "0"), "", 5),
        (("bogus",), "", 5),
        ((), "", 5),
    ],
)
def test_exit_codes(argv, stdin, code):
    got, out, err = run(*argv, stdin=stdin)
    assert got == code
    assert err and not out


def test_check_stream(tmp_path):
    trace = tmp_path / "trace.json"
    code, out, _ = run("check", "--seed", "42", "--trials", "10", "--trace", str(trace))
    assert code == 0
    lines = [json.loads(l) for l in out.splitlines()]
    assert all(l["failed"] == 0 for l in lines)
    assert set(json.loads(trace.read_text())) == {l["check_id"] for l in lines}
    _, again, _ = run("check", "--seed", "42", "--trials", "10")
    assert again == out


def test_witness():
    code, out, _ = run("witness", "--kind", "triangle", "--budget", "10000")
    res = json.loads(out)
    assert code == 0 and res["found"] is True
    assert len(res["witness"]["a"]) == 2 and len(res["witness"]["b"]) == 2
    code, out, _ = run("witness", "--kind", "triangle", "--budget", "1", "--seed", "3")
    assert code == 1 and json.loads(out)["found"] is False
    code, out, _ = run("witness", "--kind", "triangle", "--budget", "500", "--space", "lattice")
    assert code == 1 and json.loads(out)["found"] is False


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "bvorder", "norms", E1], capture_output=True, text=True, check=False
    )
    assert p.returncode == 0 and p.stdout == E1_NORMS

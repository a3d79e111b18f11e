import json
import subprocess
import sys

import pytest

from gcospec import __version__
from gcospec.cli import dumps, main
from gcospec.control import reconstructibility_certificate
from gcospec.cospec import compare
from gcospec.graph6 import decode_graph6
from gcospec.miner import load_records
from gcospec.ortho import construct_block_q, construct_q
from gcospec.graph import RootedGraph

K14 = "D?{"
C4K1 = "DBW"
P3 = "Bg"
P4 = "Ch"
K4 = "C~"

MATRIX = [
    (["charpoly", "A_"], 0),
    (["charpoly", "B?"], 0),
    (["charpoly", "zz"], 2),
    (["cospec", K14, C4K1, "--level", "plain"], 0),
    (["cospec", K14, C4K1], 1),
    (["cospec", P3, P3, "--level", "generalized"], 0),
    (["cospec", P3, P3, "--level", "rooted", "--root-a", "0", "--root-b", "2"], 0),
    (["cospec", P3, P3, "--level", "rooted", "--root-a", "0", "--root-b", "1"], 1),
    (["cospec", P3, P3, "--level", "rooted"], 2),
    (["cospec", P3, P3, "--level", "rooted", "--root-a", "0", "--root-b", "7"], 2),
    (["construct-q", P3, P3, "--b", "100", "--c", "001"], 0),
    (["construct-q", P3, P3, "--b", "100", "--c", "010"], 1),
    (["construct-q", P4, P4, "--root-a", "0", "--root-b", "3"], 0),
    (["construct-q", P3, P3, "--root-a", "0", "--root-b", "1"], 1),
    (["construct-q", K14, C4K1], 1),
    (["construct-q", P3, P3, "--b", "10"], 2),
    (["classify", P3], 0),
    (["classify", K4], 0),
    (["reconstruct-check", P4], 0),
    (["reconstruct-check", K4], 1),
    (["reconstruct-check", "A_"], 2),
    (["mine", "--n", "5", "--level", "cospectral"], 0),
    (["mine", "--n", "9", "--level", "cospectral"], 2),
    (["bogus"], 2),
]


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,expected", MATRIX, ids=[" ".join(a) for a, _ in MATRIX])
def test_exit_contract(capsys, argv, expected):
    code, out, err = run(capsys, argv)
    assert code == expected
    if argv[0] != "bogus":
        env = json.loads(out)
        assert env["version"] == __version__ and env["command"] == argv[0]
        if expected == 2:
            assert "error" in env["result"] and err


def test_charpoly_values(capsys):
    _, out, _ = run(capsys, ["charpoly", "A_"])
    assert json.loads(out)["result"]["coeffs"] == [-1, 0, 1]
    _, out, _ = run(capsys, ["charpoly", K14])
    assert json.loads(out)["result"]["coeffs"] == [0, 0, 0, -4, 0, 1]


def test_results_match_module_serialization(capsys):
    _, out, _ = run(capsys, ["cospec", K14, C4K1])
    assert dumps(json.loads(out)["result"]) == dumps(compare(decode_graph6(K14), decode_graph6(C4K1)).to_dict())
    _, out, _ = run(capsys, ["reconstruct-check", P4])
    assert dumps(json.loads(out)["result"]) == dumps(reconstructibility_certificate(decode_graph6(P4)).to_dict())
    _, out, _ = run(capsys, ["construct-q", P3, P3, "--b", "100", "--c", "001"])
    p3 = decode_graph6(P3)
    assert dumps(json.loads(out)["result"]) == dumps(construct_q(p3, p3, (1, 0, 0), (0, 0, 1)).to_dict())
    _, out, _ = run(capsys, ["construct-q", P4, P4, "--root-a", "0", "--root-b", "3"])
    p4 = decode_graph6(P4)
    assert dumps(json.loads(out)["result"]) == dumps(construct_block_q(RootedGraph(p4, 0), RootedGraph(p4, 3)).to_dict())


def test_deterministic_bytes(capsys):
    outs = {run(capsys, ["mine", "--n", "6", "--level", "cospectral"])[1] for _ in range(2)}
    assert len(outs) == 1


def test_classify_output(capsys):
    _, out, _ = run(capsys, ["classify", P3])
    r = json.loads(out)["result"]
    assert r["class"] == "almost_controllable" and r["rank"] == 2
    assert r["q0"]["xi"] == [1, 0, -1] and r["q0"]["symmetry_class"] == "Hs"
    _, out, _ = run(capsys, ["classify", K4])
    assert json.loads(out)["result"]["q0"] is None


def test_tolerance_env(capsys, monkeypatch):
    monkeypatch.setenv("COSPEC_TOL", "1e-3")
    _, out, _ = run(capsys, ["construct-q", P3, P3, "--b", "100", "--c", "001"])
    env = json.loads(out)
    assert env["inputs"]["tol"] == 1e-3 and float(env["result"]["tol"]) == 1e-3
    _, out, _ = run(capsys, ["construct-q", P3, P3, "--b", "100", "--c", "001", "--tol", "1e-9"])
    assert json.loads(out)["inputs"]["tol"] == 1e-9
    monkeypatch.setenv("COSPEC_TOL", "tiny")
    code, _, err = run(capsys, ["construct-q", P3, P3])
    assert code == 2 and "COSPEC_TOL" in err


def test_mine_out(capsys, tmp_path):
    p = tmp_path / "m.jsonl"
    code, out, _ = run(capsys, ["mine", "--n", "5", "--level", "cospectral", "--out", str(p)])
    assert code == 0
    recs = load_records(p)
    assert json.loads(out)["result"]["count"] == len(recs) == 1


def test_mine_catalog(capsys, data_dir):
    code, out, _ = run(capsys, ["mine", "--level", "cospectral", "--catalog", str(data_dir / "random_1000.g6"), "--n", "5"])
    assert code == 0 and json.loads(out)["inputs"]["catalog"].endswith("random_1000.g6")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gcospec", "charpoly", "A_"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["coeffs"] == [-1, 0, 1]

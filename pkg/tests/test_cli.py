import json
import os
import subprocess
import sys

import pytest

from tdlc.cli import main, parse_caps
from tdlc.errors import InputError

DATA = os.path.join(os.path.dirname(__file__), "data")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def data(name):
    return os.path.join(DATA, name)


def test_homology(capsys):
    assert run(capsys, "homology", data("c4.json")) == (0, "H0=Z, H1=Z\n", "")
    code, out, _ = run(capsys, "homology", data("rp2.json"), "--ring", "z")
    assert (code, out) == (0, "H0=Z, H1=Z/2, H2=0\n")
    code, out, _ = run(capsys, "homology", data("rp2.json"), "--ring", "q")
    assert out == "H0=Q, H1=0, H2=0\n"


def test_rips(capsys, tmp_path):
    target = tmp_path / "k.json"
    code, out, _ = run(capsys, "rips", "tree:3", "-r", 2, "-d", 1, "-o", target)
    assert code == 0
    assert "ball: 10 vertices, 9 edges" in out
    assert "reduced homology over Q: ~H0=0, ~H1=0" in out
    assert json.loads(target.read_text())


def test_bad_input_exit_codes(capsys):
    code, out, err = run(capsys, "rips", "bad-germ:x", "-r", 2, "-d", 1)
    assert code == 2 and out == "" and err
    assert run(capsys, "homology", data("missing.json"))[0] == 2
    assert run(capsys, "rips", "tree:3", "-r", 2, "-d", 1, "--caps", "vertices=x")[0] == 2


def test_caps_exit_code_and_position(capsys):
    code, _, err = run(capsys, "rips", "grid:2", "-r", 6, "-d", 1, "--caps", "vertices=20")
    assert code == 3 and err
    code, _, _ = run(capsys, "--caps", "vertices=20", "rips", "grid:2", "-r", 6, "-d", 1)
    assert code == 3


def test_parse_caps():
    assert parse_caps("vertices=5,simplices=7") == {"vertices": 5, "simplices": 7}
    assert parse_caps("") == {}
    for bad in ("edges=3", "vertices", "vertices=0"):
        with pytest.raises(InputError):
            parse_caps(bad)


def test_brown_scan(capsys, tmp_path):
    code, out, _ = run(capsys, "brown-scan", "grid:2", "--radii", "4,6", "--scales", "1,2")
    assert code == 0 and out.splitlines()[0] == "k,r,d,r2,d2,betti_inner,trivial"
    target = tmp_path / "scan.csv"
    code, summary, _ = run(capsys, "brown-scan", "grid:2", "--radii", "4,6", "--scales", "1,2", "-o", target)
    assert target.read_text() == out
    assert summary.startswith("k=1: dies by")


def test_deflate_and_cd_report(capsys):
    code, out, _ = run(capsys, "deflate", data("tree_orbits.json"))
    assert (code, out) == (0, "orbits per dimension: 2,1\ndH0=Q, dH1=0\n")
    code, out, _ = run(capsys, "deflate", data("torus2_orbits.json"))
    assert out.splitlines()[-1] == "dH0=Q, dH1=Q^2, dH2=Q"
    code, out, _ = run(capsys, "cd-report", data("torus3_orbits.json"))
    assert "cd_Q upper bound (dim X): 3" in out and "top degree with dH != 0: 3" in out


def test_perm(capsys):
    code, out, _ = run(capsys, "perm", "transfer", data("s3.json"), "--U", "G", "--V", "A3")
    assert code == 0 and out.startswith("group: order 6, degree 3") and "1/2*" in out
    code, out, _ = run(capsys, "perm", "mackey", data("s3.json"), "--U", "A3", "--V", "C2")
    assert out.splitlines()[-1] == "sum of indices = 3"
    code, out, _ = run(capsys, "perm", "coinvariants", data("d4.json"), "--N", "Z", "--U", "1")
    assert "collapsed dimension |G:UN| = 4" in out
    code, out, _ = run(capsys, "perm", "summand", data("s3.json"), "--H", "A3", "--U", "1")
    assert "proj o incl = id: True" in out and "H-equivariant: True" in out
    code, out, _ = run(capsys, "perm", "bar-homology", data("s3.json"), "--k", 1)
    assert out.splitlines()[1:] == ["H0(G;Q) dim = 1", "H1(G;Q) dim = 0"]
    code, out, _ = run(capsys, "perm", "theta", data("s3.json"), "--U", "G", "--module", "trivial")
    assert out.splitlines()[-1] == "theta = [1]"
    assert run(capsys, "perm", "transfer", data("s3.json"), "--x", "9,9")[0] == 2


def test_infer(capsys):
    code, out, _ = run(capsys, "infer", data("lhs.dsl"))
    assert code == 0
    assert "query G FP 2 over Q: true" in out and "chain: [R6]" in out
    code, out, _ = run(capsys, "infer", data("clash.dsl"))
    assert code == 1 and "true by:" in out and "false by:" in out
    code, out, _ = run(capsys, "infer", data("lhs.dsl"), "--json")
    assert json.loads(out)["queries"][0]["answer"] == "true"
    code, _, err = run(capsys, "infer", data("c4.json"))
    assert code == 2 and err


def test_wreath(capsys):
    code, out, _ = run(capsys, "wreath", data("wreath.json"))
    assert code == 0 and "vertices: 8" in out and "degrees: 2" in out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tdlc.cli", "homology", data("c4.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "H0=Z, H1=Z\n"

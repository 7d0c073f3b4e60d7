import json
import subprocess
import sys

import pytest

from toricarr.arrangement import dumps
from fixtures import B3E, NOT_SS


def run(*args, stdin=""):
    proc = subprocess.run(
        [sys.executable, "-m", "toricarr", *args], input=stdin, capture_output=True, text=True, check=False
    )
    return proc.returncode, proc.stdout, proc.stderr


def ok(*args, stdin=""):
    code, out, err = run(*args, stdin=stdin)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture(scope="module")
def b3_essential():
    code, out, _ = run("braid", "3", "--essential")
    assert code == 0
    return out


def test_braid():
    data = ok("braid", "3")
    assert data["rank"] == 3 and len(data["hypersurfaces"]) == 3
    assert ok("braid", "4", "--essential")["rank"] == 3


def test_charpoly(b3_essential):
    assert ok("charpoly", stdin=b3_essential) == [2, -3, 1]


def test_lift_poincare(b3_essential):
    lifted = ok("lift", "--matrix", "2,1;0,-4", stdin=b3_essential)
    assert len(lifted["hypersurfaces"]) == 4
    assert ok("poincare", stdin=json.dumps(lifted)) == [1, 6, 21]


def test_pcover(tmp_path):
    path = tmp_path / "b3.json"
    path.write_text(dumps(B3E))
    assert ok("pcover", str(path), "-p", "2") == "none"
    assert ok("pcover", str(path), "-p", "3") == [[3, 0], [-2, 1]]


def test_layers_and_poset():
    layers = ok("layers", stdin=dumps(B3E))
    assert len(layers) == 5 and layers[0] == {"gamma": [], "psi": [], "dim": 2}
    poset = ok("poset", stdin=dumps(B3E))
    assert poset["dims"] == [2, 1, 1, 1, 0]
    assert poset["mobius"] == [1, -1, -1, -1, 2]
    assert sorted(map(tuple, poset["covers"])) == [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]


def test_ss():
    cert = ok("ss", "--strict", stdin=dumps(B3E))
    assert cert["strict"] and cert["chain"][-1] == [0, 1, 2, 3, 4]
    assert ok("ss", stdin=dumps(NOT_SS)) == "none"


def test_report():
    data = ok("report", "--primes", "2,3", "--search-depth", "3", stdin=dumps(B3E))
    assert [v["status"] for v in data["verdicts"]] == ["NonBlochKato", "NonBlochKato"]
    assert data["exceptional_primes"] == [2]
    assert data["search_depth_used"] == 3


def test_domain_errors():
    code, out, err = run("charpoly", stdin='{"rank": 2, "hypersurfaces": [{"character": [0, 0]}]}')
    assert code == 1 and out == "" and "zero character" in err
    code, _, err = run("charpoly", stdin="{")
    assert code == 1 and "malformed JSON" in err
    code, _, err = run("charpoly", "/nonexistent/file.json")
    assert code == 1 and "cannot read" in err
    code, _, _ = run("lift", "--matrix", "1,0,0;0,1,0;0,0,1", stdin=dumps(B3E))
    assert code == 1
    code, _, _ = run("pcover", "-p", "4", stdin=dumps(B3E))
    assert code == 1
    code, _, _ = run("braid", "1")
    assert code == 1


def test_usage_errors():
    assert run()[0] == 2
    assert run("lift", stdin=dumps(B3E))[0] == 2
    assert run("lift", "--matrix", "x", stdin=dumps(B3E))[0] == 2
    assert run("report", "--primes", "two")[0] == 2
    assert run("frobnicate")[0] == 2

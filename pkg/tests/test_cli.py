import json
import subprocess
import sys

import pytest

from curvecomp.cli import main
from curvecomp.oracle.membership import sa_membership


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_plane_circle(tmp_path, capsys):
    f = _write(tmp_path, "c.txt", "x1^2 + x2^2 - 1\n")
    out = tmp_path / "r.json"
    assert main(["plane", f, "--json", str(out)]) == 0
    assert "1 component" in capsys.readouterr().out
    res = json.loads(out.read_text())
    assert res["mode"] == "plane" and res["count"] == 1
    comp = res["components"][0]
    assert sa_membership(comp, (0, 1)) and not sa_membership(comp, (0, 0))


def test_space_twisted_cubic_echoes_seed(tmp_path, capsys):
    f = _write(tmp_path, "t.txt", "x2 - x1^2\nx3 - x1^3\n")
    assert main(["space", f, "--epsilon", "1/100", "--seed", "7", "--json", "-", "--oracle"]) == 0
    text = capsys.readouterr().out
    res = json.loads(text[text.index("{"):])
    assert res["count"] == 1 and res["seed"] == 7 and res["oracle"]["agrees"]
    assert sa_membership(res["components"][0], (2, 4, 8), 3)


def test_mode_inferred_from_variables(tmp_path, capsys):
    f = _write(tmp_path, "t.txt", "x1^2 + x2^2 - 1\nx3^2 - 1\n")
    assert main([f]) == 0
    res = json.loads(capsys.readouterr().out)   # without --json the result goes to stdout
    assert res["mode"] == "space" and res["count"] == 2


@pytest.mark.parametrize("text, code", [
    ("x1^2 + * x2\n", 2),
    ("x1^2 + x2^2 + x3^2 - 1\n", 4),
])
def test_plane_errors(tmp_path, capsys, text, code):
    f = _write(tmp_path, "bad.txt", text)
    out = tmp_path / "r.json"
    dot = tmp_path / "g.dot"
    assert main(["plane", f, "--json", str(out), "--dot", str(dot)]) == code
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert "error" in err
    assert not out.exists() and not dot.exists()


def test_bad_usage(tmp_path, capsys):
    f = _write(tmp_path, "c.txt", "x1^2 + x2^2 - 1\n")
    assert main(["plane", f, "--epsilon", "2"]) == 2
    assert main(["plane", str(tmp_path / "missing.txt")]) == 2
    assert main(["space", f]) == 4   # one equation does not cut out a space curve


def test_dimension_error_in_space(tmp_path):
    f = _write(tmp_path, "d.txt", "x3 - x1\n2*x3 - 2*x1\n")
    assert main(["space", f]) == 4


def test_deterministic_output(tmp_path):
    f = _write(tmp_path, "v.txt", "x1^2 + x2^2 + x3^2 - 4\n(x1 - 1)^2 + x2^2 - 1\n")
    outs = []
    for k in range(2):
        p = tmp_path / f"r{k}.json"
        assert main(["space", f, "--seed", "3", "--json", str(p)]) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_graph_artifacts(tmp_path):
    f = _write(tmp_path, "n.txt", "(x1^2 + x2^2 - 1)*(x1^2 + x2^2 - 4)\n")
    dot, svg = tmp_path / "g.dot", tmp_path / "g.svg"
    assert main(["plane", f, "--dot", str(dot), "--svg", str(svg)]) == 0
    assert dot.read_text().lstrip().startswith(("graph", "strict graph"))
    assert "<svg" in svg.read_text()


def test_fixed_matrix_option(tmp_path):
    f = _write(tmp_path, "t.txt", "x2 - x1^2\nx3 - x1^3\n")
    out = tmp_path / "r.json"
    code = main(["space", f, "--matrix-a1", "[[1,0,0],[0,1,0],[0,0,1]]", "--json", str(out)])
    assert code == 3 and not out.exists()


def test_module_entry_point(tmp_path):
    f = _write(tmp_path, "c.txt", "x1^2 + x2^2 - 1\n")
    r = subprocess.run([sys.executable, "-m", "curvecomp", "plane", f], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["count"] == 1

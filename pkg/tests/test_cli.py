import cmath
import json
import re
from fractions import Fraction

import pytest

from toricpoisson.cli import main, parse_complex
from toricpoisson.polys import gq


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def check_map(rep):
    return {c["name"]: c for c in rep["checks"]}


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return p


# analyze


def test_analyze_minimal(capsys):
    code, rep = report(capsys, "analyze", "--weights", "6,10,15")
    assert code == 0
    assert rep["schema"] == 1 and rep["command"] == "analyze"
    assert rep["results"]["minimal"] is True
    assert rep["results"]["d"] == ["5", "3", "2"]
    assert len(rep["results"]["generators"]) == 9


def test_analyze_not_minimal(capsys):
    code, rep = report(capsys, "analyze", "--weights", "2,3,5")
    assert code == 1
    assert rep["results"]["minimal"] is False


@pytest.mark.parametrize("w", ["4,6", "1,-2", "x", "5"])
def test_analyze_bad_weights(capsys, w):
    code, out, err = run(capsys, "analyze", "--weights", w)
    assert code == 2 and err.startswith("error:")
    if w == "4,6":
        assert "gcd" in err


# faces


def test_faces_k3(capsys):
    code, rep = report(capsys, "faces", "--weights", "6,10,15")
    assert code == 0
    assert rep["results"]["counts"] == ["1", "9", "18", "15", "6", "1"]


def test_faces_k2(capsys):
    code, rep = report(capsys, "faces", "--weights", "2,3")
    assert code == 0 and rep["results"]["counts"] == ["1", "4", "4", "1"]


def test_faces_dot(capsys):
    code, out, _ = run(capsys, "faces", "--weights", "2,2,1", "--dot")
    assert code == 0
    assert out.startswith("graph ")
    nodes = re.findall(r"^\s*(v_\d+_\d+);$", out, re.M)
    edges = re.findall(r"^\s*v_\d+_\d+ -- v_\d+_\d+;$", out, re.M)
    assert len(nodes) == 9 and len(edges) == 18


def test_faces_rejects_non_minimal(capsys):
    code, _, err = run(capsys, "faces", "--weights", "2,3,5")
    assert code == 2 and "minimal" in err


# fk


def test_fk_example_column(capsys):
    code, rep = report(capsys, "fk", "--weights", "6,10,15", "--kernel")
    assert code == 0
    res = rep["results"]
    col = res["columns"].index("e_1_3")
    assert [row[col] for row in res["matrix"]] == ["-1", "-1", "5", "3", "2"]
    assert res["kernel_rank"] == str(9 - 6 + 1)
    assert all(c["pass"] for c in rep["checks"])


def test_fk_kernel_k2(capsys):
    code, rep = report(capsys, "fk", "--weights", "2,3", "--kernel")
    res = rep["results"]
    assert code == 0 and len(res["kernel"][0]) == 1
    vec = dict(zip(res["columns"], (int(r[0]) for r in res["kernel"])))
    if vec["e_1_2"] < 0:
        vec = {a: -b for a, b in vec.items()}
    assert vec == {"e_1_2": 1, "e_2_1": 1, "e_1_1": -3, "e_2_2": -2}


# bracket


def test_bracket_uniform_delta_jacobi(capsys, tmp_path):
    eps = write(tmp_path, "e.json", [["1", "2", "3/2"], ["2", "0", "1"], ["3/2", "1", "-1"]])
    delta = write(tmp_path, "d.json", [[5, 1, 1], [1, 3, 1], [1, 1, 2]])
    code, rep = report(
        capsys, "bracket", "--weights", "6,10,15", "--kind", "epsilon_delta",
        "--epsilon", eps, "--delta", delta, "--check", "jacobi",
    )
    assert code == 0 and all(c["pass"] for c in rep["checks"])


def test_bracket_face_relate(capsys):
    code, rep = report(capsys, "bracket", "--weights", "2,2,1", "--kind", "face", "--h", "1,2", "--check", "relate")
    assert code == 0 and all(c["pass"] for c in rep["checks"])


def test_bracket_violating_witness(capsys, tmp_path):
    eps = write(tmp_path, "e.json", [["1"] * 3] * 3)
    delta = write(tmp_path, "d.json", [[0, 0, 1], [0, 0, 0], [1, 0, 0]])
    code, rep = report(
        capsys, "bracket", "--weights", "2,2,1", "--kind", "epsilon_delta",
        "--epsilon", eps, "--delta", delta, "--check", "jacobi",
    )
    assert code == 1
    c = check_map(rep)["corollary1"]
    assert c["pass"] is False and c["witness"] == ["1", "2", "3"]


@pytest.mark.parametrize("check", ["jacobi", "reality", "relate", "invariance"])
def test_bracket_face_checks(capsys, check):
    code, rep = report(capsys, "bracket", "--weights", "6,10,15", "--kind", "face", "--h", "", "--check", check)
    assert code == 0, rep["checks"]


def test_bracket_intertwine(capsys, tmp_path):
    eps = write(tmp_path, "e.json", [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])
    code, rep = report(
        capsys, "bracket", "--weights", "2,2,1", "--kind", "face", "--h", "1,2",
        "--epsilon", eps, "--check", "intertwine",
    )
    assert code == 0 and all(c["pass"] for c in rep["checks"])


def test_bracket_invalid_spec_names_condition(capsys, tmp_path):
    eps = write(tmp_path, "e.json", [["1", "1", "1"]] * 3)
    code, _, err = run(capsys, "bracket", "--weights", "2,2,1", "--kind", "epsilon", "--epsilon", eps, "--check", "jacobi")
    assert code == 2 and "d_1 != d_3" in err


@pytest.mark.parametrize(
    "payload",
    [[["1", "2"], ["2", "1"]], [["a"] * 3] * 3, "not json"],
)
def test_bracket_bad_matrix(capsys, tmp_path, payload):
    p = tmp_path / "e.json"
    p.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    code, _, err = run(capsys, "bracket", "--weights", "2,2,1", "--kind", "epsilon", "--epsilon", p, "--check", "jacobi")
    assert code == 2 and err.startswith("error:")


# orbit


def test_orbit_same(capsys):
    t = cmath.exp(1j * cmath.pi / 5)
    w = ",".join(f"{c.real:.17f}{c.imag:+.17f}i" for c in (t ** 2, t ** 3))
    code, rep = report(capsys, "orbit", "--weights", "2,3", "--z", "1,1", "--w", w)
    assert code == 0 and rep["results"]["same_orbit"] is True


def test_orbit_different(capsys):
    code, rep = report(capsys, "orbit", "--weights", "2,3", "--z", "1,0", "--w", "0,1")
    assert code == 0 and rep["results"]["same_orbit"] is False


def test_orbit_reconstruct(capsys, tmp_path):
    hp = write(tmp_path, "u.json", {"1,1": "4", "2,2": "1", "1,2": "8i"})
    code, rep = report(capsys, "orbit", "--weights", "2,3", "--reconstruct", hp)
    assert code == 0
    assert abs(float(rep["results"]["moduli"][0]) - 2) < 1e-12


def test_orbit_reconstruct_violation(capsys, tmp_path):
    hp = write(tmp_path, "u.json", {"1,1": "4", "2,2": "1", "1,2": "9i"})
    code, _, err = run(capsys, "orbit", "--weights", "2,3", "--reconstruct", hp)
    assert code == 2 and "modulus" in err


@pytest.mark.parametrize("z", ["1+,2", "1,2,3", "abc,1", "1;2"])
def test_orbit_bad_literals(capsys, z):
    code, _, err = run(capsys, "orbit", "--weights", "2,3", "--z", z, "--w", "1,1")
    assert code == 2 and err.startswith("error:")


# parsing and determinism


@pytest.mark.parametrize(
    "text,value",
    [
        ("8i", gq(0, 8)),
        ("-i", gq(0, -1)),
        ("2-3/4i", gq(2, Fraction(-3, 4))),
        ("1/2", gq(Fraction(1, 2))),
        ("0.25+i", gq(Fraction(1, 4), 1)),
    ],
)
def test_parse_complex_exact(text, value):
    assert parse_complex(text) == value


def test_parse_complex_float():
    v = parse_complex("1e-3+2i")
    assert isinstance(v, complex) and v == complex(0.001, 2)


def test_deterministic_output(capsys):
    a = run(capsys, "fk", "--weights", "6,10,15,30", "--kernel")
    b = run(capsys, "fk", "--weights", "6,10,15,30", "--kernel")
    assert a == b


def test_integers_round_trip(capsys):
    """Integers travel as decimal strings and come back exactly."""
    code, rep = report(capsys, "fk", "--weights", "6,10,15,30", "--kernel")
    assert code == 0
    res = rep["results"]
    for key in ("matrix", "kernel", "kernel_hnf"):
        for row in res[key]:
            assert all(isinstance(x, str) and str(int(x)) == x for x in row)
    assert json.loads(json.dumps(rep)) == rep

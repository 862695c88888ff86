import json
import os
import tempfile
import numpy as np

from rhocompat.cli import main
from rhocompat.certificates import icosahedron_family, standard_basis_family
from rhocompat.benchmarks import planted_mixture
from rhocompat.utils import format_csv, read_matrix_csv, read_sample_csv


def _write(path, text):
    with open(path, "w") as f:
        f.write(text)
    return path


def _read(path):
    with open(path) as f:
        return f.read()


def _run(*args):
    code = main([str(a) for a in args])
    print(" ".join(str(a) for a in args), "->", code)
    return code


def test_m12_validate():

    with tempfile.TemporaryDirectory() as tmp:
        m = os.path.join(tmp, "m12.csv")
        out = os.path.join(tmp, "report.json")
        assert _run("m12", "--output", m) == 0
        assert read_matrix_csv(m).shape == (12, 12)

        assert _run("validate", m, "--output", out) == 0
        rep = json.loads(_read(out))
        assert rep["valid"]
        assert rep["rank"] == 4

        m15 = os.path.join(tmp, "m15.csv")
        assert _run("m12", "--dim", 15, "--output", m15) == 0
        assert read_matrix_csv(m15).shape == (15, 15)
        assert _run("m12", "--dim", 11) == 1


def test_validate():

    with tempfile.TemporaryDirectory() as tmp:
        eye = _write(os.path.join(tmp, "identity.csv"), format_csv(np.eye(4)))
        bad = _write(os.path.join(tmp, "nonpsd.csv"), "1,2\n2,1\n")
        out = os.path.join(tmp, "report.json")

        assert _run("validate", eye, "--output", out) == 0
        assert json.loads(_read(out))["rank"] == 4

        assert _run("validate", bad, "--output", out) == 2
        rep = json.loads(_read(out))
        assert not rep["valid"]
        assert rep["errors"][0]["type"] == "NotPSDError"

        assert _run("validate", os.path.join(tmp, "missing.csv")) == 1
        garbage = _write(os.path.join(tmp, "garbage.csv"), "1,a\n")
        assert _run("validate", garbage) == 1


def test_usage_errors():

    assert _run("frobnicate") == 1
    assert _run("certify") == 1
    assert _run("certify", "--m12", "--seed", -1) == 1


def test_certify():

    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "cert.json")
        assert _run("certify", "--m12", "--output", out) == 0
        rep = json.loads(_read(out))
        print(rep)
        assert rep["seed"] == 0
        assert rep["violated"]
        assert abs(rep["c2"] - 3.0) < 1e-9
        assert abs(rep["c4"] - 1.5) < 1e-9
        assert abs(rep["implied_m2"] - 4.0) < 1e-9
        assert abs(rep["implied_m4"] - 14.4) < 1e-9
        assert abs(rep["margin"] - 1.6) < 1e-8

        ico = _write(
            os.path.join(tmp, "icosahedron.csv"), format_csv(icosahedron_family().vectors)
        )
        assert _run("certify", ico, "--output", out) == 3
        rep = json.loads(_read(out))
        assert not rep["violated"]
        assert rep["applicable"]

        e123 = _write(
            os.path.join(tmp, "e123.csv"), format_csv(standard_basis_family(3).vectors)
        )
        assert _run("certify", e123, "--output", out) == 3
        rep = json.loads(_read(out))
        assert not rep["applicable"]
        assert rep["error"]["type"] == "NotAFrameError"
        assert rep["error"]["degree"] == 4

        m15 = os.path.join(tmp, "m15.csv")
        assert _run("m12", "--dim", 15, "--output", m15) == 0
        idx = ",".join(str(i) for i in range(12))
        assert _run("certify", "--matrix", m15, "--indices", idx, "--output", out) == 0
        assert json.loads(_read(out))["violated"]


def test_sample_estimate():

    with tempfile.TemporaryDirectory() as tmp:
        model = _write(
            os.path.join(tmp, "model.json"),
            json.dumps(dict(type="sphere", a=np.eye(3).tolist())),
        )
        s1 = os.path.join(tmp, "s1.csv")
        s2 = os.path.join(tmp, "s2.csv")
        assert _run("sample", model, "-n", 2000, "--seed", 5, "--output", s1) == 0
        assert _run("sample", model, "-n", 2000, "--seed", 5, "--output", s2) == 0
        assert _read(s1) == _read(s2)

        values, header = read_sample_csv(s1)
        assert values.shape == (2000, 3)
        assert header == ["x0", "x1", "x2"]

        assert _run("sample", model, "-n", 2000, "--seed", 5, "--workers", 3, "--output", s2) == 0
        assert read_sample_csv(s2)[0].shape == (2000, 3)

        r = os.path.join(tmp, "r.csv")
        assert _run("estimate", s1, "--output", r) == 0
        est = read_matrix_csv(r)
        assert est.shape == (3, 3)
        assert np.array_equal(np.diag(est), np.ones(3))

        assert _run("sample", model, "-n", 10, "--unit-variance", "--output", s2) == 0
        assert np.max(np.abs(read_sample_csv(s2)[0])) > 0


def test_roundtrip():

    with tempfile.TemporaryDirectory() as tmp:
        eye = _write(os.path.join(tmp, "identity.csv"), format_csv(np.eye(3)))
        out = os.path.join(tmp, "rt.json")
        assert _run("roundtrip", eye, "--output", out) == 0
        rep = json.loads(_read(out))
        print(rep)
        assert rep["converged"]
        assert rep["max_deviation"] <= 0.02

        r, __ = planted_mixture(6, (0.3, 0.7), rng=12)
        planted = _write(os.path.join(tmp, "planted.csv"), format_csv(r))
        assert _run("roundtrip", planted, "--output", out) == 0
        rep = json.loads(_read(out))
        print(rep)
        assert rep["converged"]
        assert rep["max_deviation"] <= 0.02

        m = os.path.join(tmp, "m12.csv")
        assert _run("m12", "--output", m) == 0
        args = ("--max-iters", 5, "--restarts", 2, "--tol", 1e-3, "--output", out)
        assert _run("roundtrip", m, *args) == 0
        rep = json.loads(_read(out))
        assert not rep["converged"]
        assert rep["max_deviation"] is None


def test_decompose_determinism():

    with tempfile.TemporaryDirectory() as tmp:
        r, __ = planted_mixture(5, (0.5, 0.5), rng=13)
        planted = _write(os.path.join(tmp, "planted.csv"), format_csv(r))
        o1 = os.path.join(tmp, "d1.json")
        o2 = os.path.join(tmp, "d2.json")
        args = ("--max-iters", 4, "--restarts", 3, "--seed", 99)
        assert _run("decompose", planted, *args, "--output", o1) == 0
        assert _run("decompose", planted, *args, "--output", o2) == 0
        assert _read(o1) == _read(o2)
        rep = json.loads(_read(o1))
        assert rep["seed"] == 99
        for k in ("weights", "atoms", "residual", "iterations", "converged", "residual_trace"):
            assert k in rep


def test_assess_model():

    with tempfile.TemporaryDirectory() as tmp:
        m = os.path.join(tmp, "m12.csv")
        out = os.path.join(tmp, "out.json")
        assert _run("m12", "--output", m) == 0
        assert _run("assess", m, "--output", out) == 0
        assert json.loads(_read(out))["verdict"] == "incompatible"

        eye = _write(os.path.join(tmp, "identity.csv"), format_csv(np.eye(3)))
        assert _run("model", eye, "--output", out) == 0
        assert json.loads(_read(out))["type"] == "sphere"

        two = _write(os.path.join(tmp, "two.csv"), "1,0.5\n0.5,1\n")
        assert _run("model", two, "--gaussian", "--output", out) == 0
        mod = json.loads(_read(out))
        assert mod["type"] == "gaussian"
        assert abs(mod["param"][0][1] - 0.517638) < 1e-6

        assert _run("model", two, "--naive") == 1


if __name__ == "__main__":
    test_m12_validate()
    test_validate()
    test_usage_errors()
    test_certify()
    test_sample_estimate()
    test_roundtrip()
    test_decompose_determinism()
    test_assess_model()

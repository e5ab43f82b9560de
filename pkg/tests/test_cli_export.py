import csv
import io
import json

import numpy as np
import pytest

from biharmonic_tanno import export
from biharmonic_tanno.cli import main
from biharmonic_tanno.errors import AntipodalPoint
from biharmonic_tanno.generators import hopf_cylinder, legendre_biharmonic_curve
from biharmonic_tanno.sasakian import TannoStructure


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_curve_json_is_byte_identical(capsys):
    code1, out1, _ = run(capsys, "curve", "--a", "0.5", "--samples", "7")
    code2, out2, _ = run(capsys, "curve", "--a", "0.5", "--samples", "7")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["meta"]["c"] == pytest.approx(5.0)
    assert len(doc["samples"]) == 7


def test_curve_csv(capsys):
    code, out, _ = run(capsys, "curve", "--a", "0.5", "--samples", "3", "--format", "csv", "--out", "-")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["s", "p1", "p2", "p3", "p4", "dp1", "dp2", "dp3", "dp4"]
    assert len(rows) == 4
    st = TannoStructure(0.5)
    sol = np.array([st.B, st.A]) / (st.A + st.B)
    first = np.array(rows[1][1:5], dtype=float)
    np.testing.assert_allclose(first, [np.sqrt(sol[0]), np.sqrt(sol[1]), 0, 0], atol=1e-15)
    for r in rows[1:]:
        assert abs(np.linalg.norm(np.array(r[1:5], dtype=float)) - 1) <= 1e-14


def test_curve_out_of_range(capsys):
    code, _, err = run(capsys, "curve", "--a", "1.5")
    assert code != 0
    assert "OutOfRange" in err


def test_invalid_frame_exit(capsys):
    code, _, err = run(capsys, "curve", "--frame", "1", "0", "0", "0", "0", "0", "1", "0")
    assert code == 2 and "InvalidFrame" in err


def test_cylinder_grid_and_json(capsys):
    st = TannoStructure(0.5)
    patch = hopf_cylinder(st)
    uv, pts = export.cylinder_grid(patch, 32)
    assert pts.reshape(-1, 4).shape == (1024, 4)
    assert export.on_sphere(pts)
    for i, j in ((0, -1), (-1, 0), (-1, -1)):
        assert np.max(np.abs(pts[i, j] - pts[0, 0])) <= 1e-10
    code, out, _ = run(capsys, "cylinder", "--grid", "4")
    doc = json.loads(out)
    assert code == 0 and doc["grid"] == 4 and len(doc["samples"]) == 16


def test_curve_samples_match_generator():
    st = TannoStructure(0.25)
    c = legendre_biharmonic_curve(st)
    s, p, dp = export.curve_samples(c, 9, length=3.0, start=-1.0)
    np.testing.assert_allclose(s, np.linspace(-1, 2, 9))
    np.testing.assert_allclose(p, c(s), atol=0)
    np.testing.assert_allclose(dp, c.derivative(s, 1), atol=0)
    with pytest.raises(ValueError):
        export.curve_samples(c, 1)


def test_cylinder_grid_spans_period_cell():
    from biharmonic_tanno.generators import lattice

    st = TannoStructure(0.25)
    uv, pts = export.cylinder_grid(hopf_cylinder(st), 9)
    lat = lattice(st)
    np.testing.assert_allclose(uv[-1, 0], lat.w1, atol=1e-15)
    np.testing.assert_allclose(uv[0, -1], lat.w2, atol=1e-15)
    np.testing.assert_allclose(pts, hopf_cylinder(st)(uv[..., 0], uv[..., 1]), atol=0)


def test_cylinder_csv_header(capsys):
    code, out, _ = run(capsys, "cylinder", "--grid", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["i", "j", "u", "v", "p1", "p2", "p3", "p4"]
    assert len(rows) == 10


def test_obj_mesh(capsys, tmp_path):
    path = tmp_path / "torus.obj"
    code, _, _ = run(capsys, "cylinder", "--grid", "32", "--format", "obj", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    verts = [ln for ln in lines if ln.startswith("v ")]
    faces = [ln for ln in lines if ln.startswith("f ")]
    assert len(verts) == 1024 and len(faces) == 2 * 31 * 31
    assert lines.index(faces[0]) > lines.index(verts[-1])
    idx = np.array([ln.split()[1:] for ln in faces], dtype=int)
    assert idx.min() == 1 and idx.max() == 1024


def test_grid_faces_small():
    np.testing.assert_array_equal(export.grid_faces(2), [[1, 3, 4], [1, 4, 2]])


def test_stereographic_repole():
    pts = np.array([[1.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 1.0, 0]])
    with pytest.raises(AntipodalPoint):
        export.stereographic(pts, pole=[1.0, 0, 0, 0])
    xyz, used = export.project_with_repole(pts, pole=[1.0, 0, 0, 0])
    assert np.all(np.isfinite(xyz))
    assert np.max(pts @ used) < 1


def test_geodesic_command(capsys):
    code, out, _ = run(capsys, "geodesic", "--a", "0.5", "--c1", "0.6", "--c2", "0.8", "--samples", "5")
    doc = json.loads(out)
    assert code == 0
    assert doc["meta"]["predicted_tension"] == pytest.approx(abs(0.8 * (1.6 - 1.2)))
    code, _, err = run(capsys, "geodesic", "--c1", "0.6", "--c2", "0.6")
    assert code == 2 and "InvalidDirection" in err


def test_geodesic_c1_zero_matches_curve(capsys):
    code, out, _ = run(capsys, "geodesic", "--a", "0.75", "--samples", "4", "--format", "csv")
    rows = np.array([r for r in csv.reader(io.StringIO(out))][1:], dtype=float)
    np.testing.assert_allclose(rows[:, 1:5], legendre_biharmonic_curve(TannoStructure(0.75))(rows[:, 0]), atol=1e-15)


def test_cv_command(capsys):
    code, out, _ = run(capsys, "cv", "--l", "2", "--m", "4")
    doc = json.loads(out)
    assert code == 0
    assert doc["config"] == {"command": "cv", "l": 2.0, "m": 4.0}
    assert doc["runtime_ms"] is None
    assert "variants_vanishing" in doc["values"]
    code, _, err = run(capsys, "cv", "--l", "4", "--m", "1")
    assert code == 2 and "OutOfRange" in err


def test_verify_command(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--a", "0.5", "--samples", "10", "--grid", "5", "--json", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["pass"] is True
    assert all(c["paper_label"] for c in doc["checks"])
    assert len(out.splitlines()) == len(doc["checks"]) + 1


def test_verify_failure_exit(capsys):
    code, _, _ = run(capsys, "verify", "--samples", "10", "--grid", "5", "--tol-oracle", "1e-14")
    assert code == 1


def test_verify_degenerate(capsys):
    code, out, _ = run(capsys, "verify", "--a", "0.999", "--samples", "10", "--grid", "5")
    assert code == 0
    assert "IllConditioned" in out


def test_bad_flag_values(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["curve", "--samples", "1"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_unwritable_output(capsys, tmp_path):
    code, _, err = run(capsys, "curve", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 2 and err.startswith("error:")

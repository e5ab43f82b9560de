"""Sample and mesh export for curves and Hopf cylinders (JSON, CSV, OBJ)."""

from __future__ import annotations

import csv
import io

import numpy as np

from .ambient import DEFAULT_POLE, StereoChart, inner
from .errors import AntipodalPoint
from .generators import HopfCylinderPatch, LegendreFrame, lattice
from .report import dumps
from .sasakian import TannoStructure

_REPOLE_CANDIDATES = np.concatenate([np.eye(4), -np.eye(4)])


def meta(struct: TannoStructure, frame: LegendreFrame, **extra) -> dict:
    out = {"a": struct.a, "c": struct.c, "A": struct.A, "B": struct.B, "frame": [*frame.e1, *frame.e3]}
    out.update(extra)
    return out


def curve_samples(curve, n: int, length: float = 2 * np.pi, start: float = 0.0):
    """(s, p, dp) at ``n`` equally spaced parameters of [start, start + length]."""
    if n < 2:
        raise ValueError("need at least 2 samples")
    s = np.linspace(start, start + length, n)
    return s, curve.derivative(s, 0), curve.derivative(s, 1)


def curve_json(meta_: dict, s, p, dp) -> str:
    rows = [{"s": float(t), "p": list(map(float, x)), "dp": list(map(float, d))} for t, x, d in zip(s, p, dp)]
    return dumps({"meta": meta_, "samples": rows})


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def curve_csv(s, p, dp) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["s", "p1", "p2", "p3", "p4", "dp1", "dp2", "dp3", "dp4"])
    for t, x, d in zip(s, p, dp):
        w.writerow([_fmt(t), *map(_fmt, x), *map(_fmt, d)])
    return buf.getvalue()


def cylinder_grid(patch: HopfCylinderPatch, n: int):
    """
    ``n x n`` samples over one fundamental domain of the period lattice,
    corners included, so opposite edges repeat the same points.

    Returns parameters of shape (n, n, 2) and points of shape (n, n, 4).
    """
    if n < 2:
        raise ValueError("need at least 2 grid points per side")
    lat = lattice(patch.struct)
    t = np.linspace(0.0, 1.0, n)
    I, J = np.meshgrid(t, t, indexing="ij")
    uv = I[..., None] * lat.w1 + J[..., None] * lat.w2
    return uv, patch(uv[..., 0], uv[..., 1])


def cylinder_json(meta_: dict, uv, pts) -> str:
    n = uv.shape[0]
    rows = [{"i": i, "j": j, "u": float(uv[i, j, 0]), "v": float(uv[i, j, 1]), "p": list(map(float, pts[i, j]))}
            for i in range(n) for j in range(n)]
    return dumps({"meta": meta_, "grid": n, "samples": rows})


def cylinder_csv(uv, pts) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "u", "v", "p1", "p2", "p3", "p4"])
    n = uv.shape[0]
    for i in range(n):
        for j in range(n):
            w.writerow([i, j, _fmt(uv[i, j, 0]), _fmt(uv[i, j, 1]), *map(_fmt, pts[i, j])])
    return buf.getvalue()


def stereographic(points, pole=DEFAULT_POLE) -> np.ndarray:
    """Projection of sphere points from ``pole`` into R^3 (``pole`` itself is excluded)."""
    chart = StereoChart(-np.asarray(pole, dtype=float))
    return chart.to_chart(points)


def project_with_repole(points, pole=DEFAULT_POLE):
    """Stereographic projection; on AntipodalPoint retry once from the coordinate pole farthest from the data."""
    try:
        return stereographic(points, pole), np.asarray(pole, dtype=float)
    except AntipodalPoint:
        closest = np.max(np.asarray(points).reshape(-1, 4) @ _REPOLE_CANDIDATES.T, axis=0)
        new = _REPOLE_CANDIDATES[int(np.argmin(closest))]
        return stereographic(points, new), new


def grid_faces(n: int) -> np.ndarray:
    """Triangles (1-based vertex indices) of an ``n x n`` row-major grid."""
    idx = np.arange(n * n).reshape(n, n) + 1
    a, b = idx[:-1, :-1].ravel(), idx[1:, :-1].ravel()
    c, d = idx[1:, 1:].ravel(), idx[:-1, 1:].ravel()
    # two triangles per quad, kept adjacent
    return np.stack([np.stack([a, b, c], 1), np.stack([a, c, d], 1)], 1).reshape(-1, 3)


def mesh_obj(pts, pole=DEFAULT_POLE, comment: str | None = None) -> str:
    n = pts.shape[0]
    xyz, used = project_with_repole(pts.reshape(-1, 4), pole)
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append("# projected from pole " + " ".join(_fmt(x) for x in used))
    lines += [f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in xyz]
    lines += [f"f {i} {j} {k}" for i, j, k in grid_faces(n)]
    return "\n".join(lines) + "\n"


def on_sphere(points, tol: float = 1e-12) -> bool:
    return bool(np.all(np.abs(inner(points, points) - 1.0) <= tol))

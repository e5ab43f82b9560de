"""
Re-derivation of the coefficient Gram matrix.

The general solution of the fourth-order curve equation is

    gamma(s) = cos(A s) c1 + sin(A s) c2 + cos(B s) c3 + sin(B s) c4,

so every derivative of gamma at a point is a fixed linear combination of
the unknown vectors c_i, and every inner-product constraint between
derivatives is linear in the Gram entries c_ij = <c_i, c_j>. The systems
below are assembled from those derivative combinations, not typed in, and
solved by pivoted QR.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .ambient import j_apply
from .curves import ClosedFormCurve
from .errors import IllConditioned, InconsistentSolution
from .generators import HopfCylinderPatch, LegendreFrame
from .sasakian import TannoStructure

UNKNOWNS = ("c11", "c12", "c13", "c14", "c22", "c23", "c24", "c33", "c34", "c44")
_INDEX = {(int(n[1]) - 1, int(n[2]) - 1): k for k, n in enumerate(UNKNOWNS)}
SUBSYSTEM_ROWS = ("<g,g'>", "<g',g''>", "<g'',g'''>", "<g,g'''>")
SUBSYSTEM_COLS = ("c12", "c23", "c14", "c34")
MAX_CONDITION = 1e10
DEGENERACY_MARGIN = 1e-3


@dataclass
class GramSystem:
    struct: TannoStructure
    matrix: np.ndarray
    rhs: np.ndarray
    labels: tuple[str, ...]
    descriptions: tuple[str, ...] = ()
    unknowns: tuple[str, ...] = UNKNOWNS

    def row(self, label: str) -> tuple[np.ndarray, float]:
        i = self.labels.index(label)
        return self.matrix[i], float(self.rhs[i])

    def submatrix(self, rows=SUBSYSTEM_ROWS, cols=SUBSYSTEM_COLS) -> np.ndarray:
        ri = [self.labels.index(r) for r in rows]
        ci = [self.unknowns.index(c) for c in cols]
        return self.matrix[np.ix_(ri, ci)]

    def subsystem_determinant(self) -> float:
        return float(np.linalg.det(self.submatrix()))

    def expected_subsystem_determinant(self) -> float:
        A, B = self.struct.A, self.struct.B
        return -(A**2) * B**2 * (A**2 - B**2) ** 4


@dataclass
class GramSolution:
    """
    Solved Gram matrix. ``residual`` is measured on rows scaled to unit
    max-coefficient (the rows span many orders of magnitude for small a);
    ``raw_residual`` is the unscaled one.
    """

    struct: TannoStructure
    gram: np.ndarray
    residual: float
    condition: float
    values: dict = field(default_factory=dict)
    raw_residual: float = 0.0

    @property
    def norms(self) -> np.ndarray:
        return np.sqrt(np.clip(np.diag(self.gram), 0.0, None))

    def expected(self) -> np.ndarray:
        A, B = self.struct.A, self.struct.B
        return np.diag([B, B, A, A]) / (A + B)


def _pair_row(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Row of coefficients on the c_ij unknowns for <sum u_i c_i, sum w_j c_j>."""
    row = np.zeros(len(UNKNOWNS))
    for i in range(4):
        for j in range(4):
            row[_INDEX[(min(i, j), max(i, j))]] += u[i] * w[j]
    return row


def _curve_coeffs(struct: TannoStructure, k: int, s: float = 0.0) -> np.ndarray:
    """k-th derivative of gamma at s as coefficients on (c1, c2, c3, c4)."""
    out = np.empty(4)
    for idx, w in ((0, struct.A), (2, struct.B)):
        ph = w * s + k * np.pi / 2
        out[idx] = w**k * np.cos(ph)
        out[idx + 1] = w**k * np.sin(ph)
    return _snap(out)


def _patch_coeffs(struct: TannoStructure, m: int, n: int, u: float, v: float) -> np.ndarray:
    """d^m_u d^n_v x at (u, v) as coefficients on (c1, c2, c3, c4)."""
    out = np.empty(4)
    for idx, (wu, wv) in ((0, (struct.A, 1 / struct.a)), (2, (struct.B, -1 / struct.a))):
        ph = wu * u + wv * v + (m + n) * np.pi / 2
        out[idx] = wu**m * wv**n * np.cos(ph)
        out[idx + 1] = wu**m * wv**n * np.sin(ph)
    return _snap(out)


def _snap(c: np.ndarray) -> np.ndarray:
    # trig values at multiples of pi/2 come out as ~1e-16 instead of 0
    scale = np.max(np.abs(c))
    c = c.copy()
    c[np.abs(c) < 1e-14 * max(scale, 1.0)] = 0.0
    return c


def build_curve_system(struct: TannoStructure) -> GramSystem:
    """Ten inner-product constraints on gamma, gamma', gamma'', gamma''' at s = 0."""
    a = struct.a
    # (derivative orders, right-hand side, presentation sign)
    table = (
        ((0, 0), 1.0, 1),
        ((1, 1), 1 / a, 1),
        ((0, 1), 0.0, 1),
        ((1, 2), 0.0, -1),
        ((2, 2), (5 - 4 * a) / a**2, 1),
        ((0, 2), -1 / a, -1),
        ((1, 3), -(5 - 4 * a) / a**2, -1),
        ((2, 3), 0.0, 1),
        ((0, 3), 0.0, -1),
        ((3, 3), (16 * a**2 - 44 * a + 29) / a**3, 1),
    )
    names = ["g", "g'", "g''", "g'''"]
    rows, rhs, labels, desc = [], [], [], []
    for (i, j), value, sign in table:
        rows.append(sign * _pair_row(_curve_coeffs(struct, i), _curve_coeffs(struct, j)))
        rhs.append(sign * value)
        labels.append(f"<{names[i]},{names[j]}>")
        desc.append(f"<{names[i]},{names[j]}>(0) = {value:.17g}")
    return GramSystem(struct, np.array(rows), np.array(rhs), tuple(labels), tuple(desc))


def build_cylinder_system(struct: TannoStructure) -> GramSystem:
    """Eight constraints at (u, v) = (0, 0) and two at (0, a pi / 2)."""
    a = struct.a
    X, XU, XV, XUV = (0, 0), (1, 0), (0, 1), (1, 1)
    p0, p1 = (0.0, 0.0), (0.0, a * np.pi / 2)
    # (first partial, second partial, point, rhs, row scale)
    table = (
        (X, X, p0, 1.0, 1.0),
        (X, XU, p0, 0.0, 1.0),
        (X, XV, p0, 0.0, -a),
        (XU, XV, p0, 0.0, -a),
        (XU, XU, p0, 1 / a, 1.0),
        (XV, XV, p0, 1 / a**2, a**2),
        (XV, XUV, p0, 0.0, a**2),
        (XU, XUV, p0, 0.0, a),
        (XU, XU, p1, 1 / a, 1.0),
        (XU, XV, p1, 0.0, -a),
    )
    names = {X: "x", XU: "x_u", XV: "x_v", XUV: "x_uv"}
    rows, rhs, labels, desc = [], [], [], []
    for d1, d2, (u, v), value, scale in table:
        r = _pair_row(_patch_coeffs(struct, *d1, u, v), _patch_coeffs(struct, *d2, u, v))
        rows.append(scale * r)
        rhs.append(scale * value)
        labels.append(f"<{names[d1]},{names[d2]}>" + ("" if (u, v) == p0 else "(0,a pi/2)"))
        desc.append(f"<{names[d1]},{names[d2]}>({u:.6g},{v:.6g}) = {value:.17g}")
    return GramSystem(struct, np.array(rows), np.array(rhs), tuple(labels), tuple(desc))


def solve_gram(system: GramSystem) -> GramSolution:
    """Solve the Gram system by QR with column pivoting, refusing ill-conditioned cases."""
    # inclusive, with slack for 1 - 0.999 rounding above 1e-3
    if 1.0 - system.struct.a <= DEGENERACY_MARGIN * (1 + 1e-9):
        raise IllConditioned(f"a = {system.struct.a} is within {DEGENERACY_MARGIN} of 1 where A and B merge")
    m = system.matrix
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise IllConditioned(f"condition number {cond:.3e} exceeds {MAX_CONDITION:.0e}")
    # equilibrate rows and columns; the curve system mixes A^k and B^k up to k = 6
    rs = 1.0 / np.max(np.abs(m), axis=1)
    ms = m * rs[:, None]
    cs = 1.0 / np.max(np.abs(ms), axis=0)
    ms = ms * cs[None, :]
    q, r, piv = scipy.linalg.qr(ms, pivoting=True)

    def _solve(b):
        z = scipy.linalg.solve_triangular(r, q.T @ b)
        out = np.empty_like(z)
        out[piv] = z
        return out * cs

    b = system.rhs * rs
    x = _solve(b)
    x = x + _solve(b - (m @ x) * rs)  # one step of iterative refinement
    gram = np.empty((4, 4))
    for (i, j), k in _INDEX.items():
        gram[i, j] = gram[j, i] = x[k]
    raw = m @ x - system.rhs
    return GramSolution(system.struct, gram, float(np.max(np.abs(raw * rs))), float(cond),
                        values=dict(zip(system.unknowns, map(float, x))),
                        raw_residual=float(np.max(np.abs(raw))))


def _frame_from_solution(solution: GramSolution, tol: float):
    g = solution.gram
    off = np.abs(g - np.diag(np.diag(g)))
    if off.max() > tol:
        raise InconsistentSolution(f"coefficient vectors not orthogonal (max |c_ij| = {off.max():.3e})")
    if np.any(np.diag(g) <= 0):
        raise InconsistentSolution("non-positive squared norm")
    if abs(g[0, 0] - g[1, 1]) > tol or abs(g[2, 2] - g[3, 3]) > tol:
        raise InconsistentSolution("paired coefficient vectors must have equal norms")
    return solution.norms


def reconstruct_curve(solution: GramSolution, frame: LegendreFrame | None = None, branch: int = 1,
                      tol: float = 1e-10) -> ClosedFormCurve:
    """
    Curve sum cos/sin(A s) |c_i| e_i + cos/sin(B s) |c_i| e_i with the unit
    vectors forced by the Legendre condition: e2 = -branch J e1,
    e4 = branch J e3.
    """
    frame = frame or LegendreFrame.standard()
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    n = _frame_from_solution(solution, tol)
    e1, e3 = frame.e1, frame.e3
    e2, e4 = -branch * j_apply(e1), branch * j_apply(e3)
    s = solution.struct
    return ClosedFormCurve([s.A, s.B], [0.0, 0.0], [n[0] * e1, n[2] * e3], [n[1] * e2, n[3] * e4],
                           name="reconstructed curve")


def reconstruct_patch(solution: GramSolution, frame: LegendreFrame | None = None,
                      tol: float = 1e-10) -> HopfCylinderPatch:
    """Hopf cylinder assembled from the solved coefficient norms, e2 = -J e1, e4 = J e3."""
    frame = frame or LegendreFrame.standard()
    n = _frame_from_solution(solution, tol)
    coeffs = np.array([n[0] * frame.e1, n[1] * frame.e2, n[2] * frame.e3, n[3] * frame.e4])
    return HopfCylinderPatch(solution.struct, coeffs, frame)

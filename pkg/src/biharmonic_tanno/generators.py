"""
Explicit biharmonic objects in (S^3, g).

Curves are returned as :class:`~biharmonic_tanno.curves.ClosedFormCurve`
values, Hopf cylinders as :class:`HopfCylinderPatch`. All of them are
written in terms of an orthonormal pair ``e1, e3`` with ``e3`` orthogonal
to ``J e1``; the remaining basis vectors are ``e2 = -J e1``, ``e4 = J e3``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ambient import inner, j_apply
from .curves import ClosedFormCurve
from .errors import InvalidDirection, InvalidFrame
from .sasakian import TannoStructure

FRAME_TOL = 1e-12


@dataclass(frozen=True)
class LegendreFrame:
    e1: np.ndarray
    e3: np.ndarray

    def __post_init__(self):
        e1 = np.asarray(self.e1, dtype=float)
        e3 = np.asarray(self.e3, dtype=float)
        if e1.shape != (4,) or e3.shape != (4,):
            raise InvalidFrame("frame vectors must have 4 components")
        errs = {
            "|e1| = 1": abs(inner(e1, e1) - 1.0),
            "|e3| = 1": abs(inner(e3, e3) - 1.0),
            "<e1, e3> = 0": abs(inner(e1, e3)),
            "<e3, J e1> = 0": abs(inner(e3, j_apply(e1))),
        }
        bad = [k for k, v in errs.items() if v > FRAME_TOL]
        if bad:
            raise InvalidFrame("frame violates " + ", ".join(bad))
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e3", e3)

    @classmethod
    def standard(cls) -> "LegendreFrame":
        return cls(np.array([1.0, 0, 0, 0]), np.array([0, 1.0, 0, 0]))

    @property
    def e2(self) -> np.ndarray:
        return -j_apply(self.e1)

    @property
    def e4(self) -> np.ndarray:
        return j_apply(self.e3)

    def basis(self) -> np.ndarray:
        return np.array([self.e1, self.e2, self.e3, self.e4])


def legendre_helix(struct: TannoStructure, frame: LegendreFrame, alpha: float) -> ClosedFormCurve:
    """
    Legendre curve of g-unit speed and constant curvature
    ``sqrt(alpha^2 + beta^2 - 2/a)`` where ``beta = 1/(a alpha)``.

    ``alpha = A`` gives the proper-biharmonic curve; other values give
    non-biharmonic helices for negative controls.
    """
    beta = 1.0 / (struct.a * alpha)
    r1 = np.sqrt(beta / (alpha + beta))
    r2 = np.sqrt(alpha / (alpha + beta))
    e1, e3 = frame.e1, frame.e3
    return ClosedFormCurve(
        frequencies=[alpha, beta],
        phases=[0.0, 0.0],
        cos_vectors=[r1 * e1, r2 * e3],
        sin_vectors=[-r1 * j_apply(e1), r2 * j_apply(e3)],
        name=f"legendre helix alpha={alpha:.6g}",
    )


def helix_alpha_for_curvature(struct: TannoStructure, kappa2: float) -> float:
    """Frequency of the Legendre helix whose squared curvature is ``kappa2`` (smaller root)."""
    total = 2.0 / struct.a + kappa2
    prod = 1.0 / struct.a**2
    return float(np.sqrt((total - np.sqrt(total**2 - 4.0 * prod)) / 2.0))


def legendre_biharmonic_curve(struct: TannoStructure, frame: LegendreFrame | None = None) -> ClosedFormCurve:
    """The proper-biharmonic Legendre curve through ``r1 e1 + r2 e3``."""
    frame = frame or LegendreFrame.standard()
    e1, e3 = frame.e1, frame.e3
    r1, r2 = struct.r1, struct.r2
    return ClosedFormCurve(
        frequencies=[struct.A, struct.B],
        phases=[0.0, 0.0],
        cos_vectors=[r1 * e1, r2 * e3],
        sin_vectors=[-r1 * j_apply(e1), r2 * j_apply(e3)],
        name=f"biharmonic legendre a={struct.a:.6g}",
    )


def trig_curve(frequencies, cos_vectors, sin_vectors, name="curve") -> ClosedFormCurve:
    return ClosedFormCurve(frequencies, np.zeros(len(frequencies)), cos_vectors, sin_vectors, name=name)


def reeb_orbit(struct: TannoStructure, p) -> ClosedFormCurve:
    """Integral curve of xi through ``p``; a g-unit-speed geodesic."""
    p = np.asarray(p, dtype=float)
    return ClosedFormCurve([1.0 / struct.a], [0.0], [p], [-j_apply(p)], name="reeb orbit")


def ode_residual(struct: TannoStructure, curve, s) -> np.ndarray:
    """a^2 gamma'''' + a(6 - 4a) gamma'' + gamma."""
    a = struct.a
    return a**2 * curve.derivative(s, 4) + a * (6 - 4 * a) * curve.derivative(s, 2) + curve.derivative(s, 0)


def round_tension(struct: TannoStructure, curve, s) -> np.ndarray:
    """Tension a gamma'' + gamma of the curve's inclusion into (S^3, g0)."""
    return struct.a * curve.derivative(s, 2) + curve.derivative(s, 0)


def round_bitension(struct: TannoStructure, curve, s) -> np.ndarray:
    a = struct.a
    return a**2 * curve.derivative(s, 4) + 2 * a * curve.derivative(s, 2) + (4 * a - 3) * curve.derivative(s, 0)


def tension_relation_residual(struct: TannoStructure, curve, s) -> np.ndarray:
    """Round-sphere bitension plus 4(1 - a) times round-sphere tension."""
    return round_bitension(struct, curve, s) + 4 * (1 - struct.a) * round_tension(struct, curve, s)


def curve_constraints(struct: TannoStructure, curve, s) -> dict[str, tuple[float, float]]:
    """
    The ten inner-product constraints between gamma and its first three
    derivatives: name -> (value, expected).
    """
    a = struct.a
    d = [curve.derivative(s, k) for k in range(4)]
    expected = {
        (0, 0): 1.0, (1, 1): 1 / a, (0, 1): 0.0, (1, 2): 0.0, (2, 2): (5 - 4 * a) / a**2,
        (0, 2): -1 / a, (1, 3): -(5 - 4 * a) / a**2, (2, 3): 0.0, (0, 3): 0.0,
        (3, 3): (16 * a**2 - 44 * a + 29) / a**3,
    }
    names = ["g", "g'", "g''", "g'''"]
    return {f"<{names[i]},{names[j]}>": (float(inner(d[i], d[j])), v) for (i, j), v in expected.items()}


# -- Hopf cylinders -------------------------------------------------------------


@dataclass(frozen=True)
class HopfCylinderPatch:
    """
    x(u, v) = cos(A u + v/a) c1 + sin(A u + v/a) c2
            + cos(B u - v/a) c3 + sin(B u - v/a) c4.
    """

    struct: TannoStructure
    coefficients: np.ndarray  # rows c1..c4
    frame: LegendreFrame | None = None

    def partial(self, u, v, m: int = 0, n: int = 0) -> np.ndarray:
        """d^m/du^m d^n/dv^n x at (u, v)."""
        s = self.struct
        c = self.coefficients
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        out = 0.0
        for (wu, wv), cc, sc in (((s.A, 1 / s.a), c[0], c[1]), ((s.B, -1 / s.a), c[2], c[3])):
            theta = wu * u + wv * v
            k = m + n
            scale = wu**m * wv**n
            shift = k * np.pi / 2
            out = out + scale * (np.multiply.outer(np.cos(theta + shift), cc) + np.multiply.outer(np.sin(theta + shift), sc))
        return out

    def __call__(self, u, v) -> np.ndarray:
        return self.partial(u, v)

    def ruling(self, v0: float) -> ClosedFormCurve:
        """u -> x(u, v0)."""
        return self.line(0.0, v0, 1.0, 0.0)

    def line(self, u0: float, v0: float, du: float, dv: float) -> ClosedFormCurve:
        """t -> x(u0 + du t, v0 + dv t) as a closed-form curve."""
        s = self.struct
        c = self.coefficients
        return ClosedFormCurve(
            frequencies=[s.A * du + dv / s.a, s.B * du - dv / s.a],
            phases=[s.A * u0 + v0 / s.a, s.B * u0 - v0 / s.a],
            cos_vectors=[c[0], c[2]],
            sin_vectors=[c[1], c[3]],
            name="cylinder line",
        )


def hopf_cylinder(struct: TannoStructure, frame: LegendreFrame | None = None) -> HopfCylinderPatch:
    frame = frame or LegendreFrame.standard()
    r1, r2 = struct.r1, struct.r2
    coeffs = np.array([r1 * frame.e1, r1 * frame.e2, r2 * frame.e3, r2 * frame.e4])
    return HopfCylinderPatch(struct, coeffs, frame)


def hopf_cylinder_opposite(struct: TannoStructure, frame: LegendreFrame | None = None):
    """The patch obtained for the negative base-curve curvature, as an evaluator (u, v) -> R^4."""
    frame = frame or LegendreFrame.standard()
    r1, r2, A, B, a = struct.r1, struct.r2, struct.A, struct.B, struct.a
    e1, e3 = frame.e1, frame.e3
    je1, je3 = j_apply(e1), j_apply(e3)

    def x1(u, v):
        t1 = A * np.asarray(u) - np.asarray(v) / a
        t2 = B * np.asarray(u) + np.asarray(v) / a
        o = np.multiply.outer
        return r1 * (o(np.cos(t1), e1) + o(np.sin(t1), je1)) + r2 * (o(np.cos(t2), e3) - o(np.sin(t2), je3))

    return x1


def cylinder_pde_residuals(struct: TannoStructure, patch: HopfCylinderPatch, u, v):
    """(a^2 x_uuuu + a(6-4a) x_uu + x,  a x_uuv - sqrt(c-1) x_u + x_v)."""
    a = struct.a
    first = a**2 * patch.partial(u, v, 4, 0) + a * (6 - 4 * a) * patch.partial(u, v, 2, 0) + patch.partial(u, v)
    second = a * patch.partial(u, v, 2, 1) - struct.kappa * patch.partial(u, v, 1, 0) + patch.partial(u, v, 0, 1)
    return first, second


def cylinder_geodesic(patch: HopfCylinderPatch, c1: float, c2: float, u0: float = 0.0, v0: float = 0.0,
                      tol: float = 1e-12) -> ClosedFormCurve:
    """
    Geodesic of the flat cylinder through x(u0, v0) with unit direction
    ``c1 xi + c2 x_u``, i.e. t -> x(u0 + c2 t, v0 + c1 t).
    """
    if abs(c1**2 + c2**2 - 1.0) > tol:
        raise InvalidDirection(f"c1^2 + c2^2 = {c1**2 + c2**2!r} != 1")
    curve = patch.line(u0, v0, c2, c1)
    return curve


def proposition_tau(struct: TannoStructure, c1: float, c2: float) -> tuple[float, float]:
    """Predicted g-norms of tension and bitension of a cylinder geodesic."""
    k = struct.kappa
    return abs(c2 * (c2 * k - 2 * c1)), abs(2 * c1 * c2**2 * (c2 * k - 2 * c1) * k)


def rotated_frame(frame: LegendreFrame, struct: TannoStructure, v0: float) -> LegendreFrame:
    """Frame in which the ruling u -> x(u, v0) takes the form of the base curve."""
    th = v0 / struct.a
    f1 = np.cos(th) * frame.e1 + np.sin(th) * frame.e2
    f3 = np.cos(th) * frame.e3 - np.sin(th) * frame.e4
    return LegendreFrame(f1, f3)


def rotated_basis(frame: LegendreFrame, struct: TannoStructure, v0: float) -> np.ndarray:
    """All four rotated vectors f1..f4."""
    th = v0 / struct.a
    e1, e2, e3, e4 = frame.basis()
    return np.array([
        np.cos(th) * e1 + np.sin(th) * e2,
        -np.sin(th) * e1 + np.cos(th) * e2,
        np.cos(th) * e3 - np.sin(th) * e4,
        np.sin(th) * e3 + np.cos(th) * e4,
    ])


@dataclass(frozen=True)
class LatticeTorus:
    w1: np.ndarray
    w2: np.ndarray

    def __post_init__(self):
        if abs(np.linalg.det(np.array([self.w1, self.w2]))) < 1e-14:
            raise ValueError("lattice vectors are linearly dependent")

    def phases(self, struct: TannoStructure) -> np.ndarray:
        """Phase increments (A du + dv/a, B du - dv/a) along w1 and w2 (rows)."""
        m = np.array([[struct.A, 1 / struct.a], [struct.B, -1 / struct.a]])
        return np.array([m @ self.w1, m @ self.w2])


def lattice(struct: TannoStructure) -> LatticeTorus:
    A, B = struct.A, struct.B
    return LatticeTorus(
        np.array([2 * np.pi / (A + B), 2 * np.pi / (A * (A + B))]),
        np.array([2 * np.pi / (A + B), -2 * np.pi / (B * (A + B))]),
    )

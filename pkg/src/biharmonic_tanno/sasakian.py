"""
Sasakian structures on S^3.

The standard structure is ``xi0 = -Jz``, ``eta0 = <., xi0>``, ``phi0 = s o J``
with ``s`` the tangent projection. :class:`TannoStructure` holds its
D-homothetic deformation with parameter ``a``::

    eta = a eta0,  xi = xi0 / a,  phi = phi0,  g = a g0 + a(a - 1) eta0 (x) eta0

which is a Sasakian space form of phi-sectional curvature c = 4/a - 3.

Tensor methods on :class:`TannoStructure` act on raw arrays (base point
``z`` first) and broadcast over leading axes. The module-level functions
wrap them for :class:`TangentVector` values and check base points.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ambient import inner, j_apply, tangent_project
from .errors import BaseMismatch, OutOfRange

TANGENCY_TOL = 1e-10


@dataclass(frozen=True)
class TannoStructure:
    """Deformation parameter ``a`` in (0, 1) with derived constants c, A, B."""

    a: float
    c: float = field(init=False)
    A: float = field(init=False)
    B: float = field(init=False)

    def __post_init__(self):
        a = float(self.a)
        if not (0.0 < a < 1.0):
            raise OutOfRange(f"deformation parameter must lie in (0, 1), got {a}")
        root = np.sqrt((a - 1.0) * (a - 2.0))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", 4.0 / a - 3.0)
        object.__setattr__(self, "A", float(np.sqrt((3.0 - 2.0 * a - 2.0 * root) / a)))
        object.__setattr__(self, "B", float(np.sqrt((3.0 - 2.0 * a + 2.0 * root) / a)))

    @property
    def kappa(self) -> float:
        """Curvature sqrt(c - 1) of the biharmonic helices."""
        return float(np.sqrt(self.c - 1.0))

    @property
    def r1(self) -> float:
        return float(np.sqrt(self.B / (self.A + self.B)))

    @property
    def r2(self) -> float:
        return float(np.sqrt(self.A / (self.A + self.B)))

    # -- pointwise tensors on arrays -------------------------------------

    def xi(self, z) -> np.ndarray:
        return -j_apply(z) / self.a

    def eta0(self, z, v) -> np.ndarray:
        return inner(v, -j_apply(z))

    def eta(self, z, v) -> np.ndarray:
        return self.a * self.eta0(z, v)

    def phi(self, z, v) -> np.ndarray:
        return tangent_project(z, j_apply(v))

    def metric(self, z, v, w) -> np.ndarray:
        a = self.a
        return a * inner(v, w) + a * (a - 1.0) * self.eta0(z, v) * self.eta0(z, w)

    def metric_matrix(self, z) -> np.ndarray:
        """Ambient 4x4 bilinear form whose restriction to T_z S^3 is g."""
        n = -j_apply(z)
        a = self.a
        return a * np.eye(4) + a * (a - 1.0) * np.outer(n, n)

    def norm(self, z, v) -> np.ndarray:
        return np.sqrt(self.metric(z, v, v))

    def curvature(self, z, X, Y, Z) -> np.ndarray:
        """R(X, Y)Z of the Sasakian space form M(c) with this structure."""
        g, eta, phi = self.metric, self.eta, self.phi
        xi = self.xi(z)
        c = self.c
        ex, ey, ez = eta(z, X), eta(z, Y), eta(z, Z)
        s = lambda f: np.asarray(f)[..., None]
        first = s(g(z, Z, Y)) * X - s(g(z, Z, X)) * Y
        second = (s(ez * ex) * Y - s(ez * ey) * X
                  + s(g(z, Z, X) * ey) * xi - s(g(z, Z, Y) * ex) * xi
                  + s(g(z, Z, phi(z, Y))) * phi(z, X)
                  - s(g(z, Z, phi(z, X))) * phi(z, Y)
                  + 2.0 * s(g(z, X, phi(z, Y))) * phi(z, Z))
        return (c + 3.0) / 4.0 * first + (c - 1.0) / 4.0 * second

    # -- closed-form Levi-Civita connection of g ---------------------------

    def connection_correction(self, z, X, Y) -> np.ndarray:
        """
        Difference tensor nabla_X Y - nabla0_X Y between the Levi-Civita
        connections of g and of the round metric g0.
        """
        s = lambda f: np.asarray(f)[..., None]
        return -(self.a - 1.0) * (s(self.eta0(z, Y)) * self.phi(z, X) + s(self.eta0(z, X)) * self.phi(z, Y))


def tanno_constants(a: float) -> TannoStructure:
    return TannoStructure(a)


@dataclass(frozen=True)
class TangentVector:
    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        base = np.asarray(self.base, dtype=float)
        d = np.asarray(self.direction, dtype=float)
        if abs(inner(base, d)) > TANGENCY_TOL * max(1.0, float(np.linalg.norm(d))):
            raise ValueError("direction is not tangent to the sphere at base")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "direction", d)


def _same_base(*vectors: TangentVector) -> np.ndarray:
    base = vectors[0].base
    for v in vectors[1:]:
        if not np.allclose(v.base, base, rtol=0, atol=1e-14):
            raise BaseMismatch("tangent vectors are attached to different points")
    return base


def xi(struct: TannoStructure, z) -> TangentVector:
    z = np.asarray(z, dtype=float)
    return TangentVector(z, struct.xi(z))


def eta(struct: TannoStructure, v: TangentVector) -> float:
    return float(struct.eta(v.base, v.direction))


def phi(struct: TannoStructure, v: TangentVector) -> TangentVector:
    return TangentVector(v.base, struct.phi(v.base, v.direction))


def metric_g(struct: TannoStructure, v: TangentVector, w: TangentVector) -> float:
    z = _same_base(v, w)
    return float(struct.metric(z, v.direction, w.direction))


def curvature_tensor(struct: TannoStructure, X: TangentVector, Y: TangentVector, Z: TangentVector) -> TangentVector:
    z = _same_base(X, Y, Z)
    return TangentVector(z, struct.curvature(z, X.direction, Y.direction, Z.direction))

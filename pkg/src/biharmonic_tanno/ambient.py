"""
Euclidean 4-space
=================

Vectors of R^4 are plain numpy arrays whose last axis has length 4, ordered
``(x1, x2, y1, y2)`` so that the complex structure reads

    J(x1, x2, y1, y2) = (-y1, -y2, x1, x2).

Everything that needs J goes through :func:`j_apply`. The module also holds
the stereographic chart used by the numerical connection oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AntipodalPoint, OutOfRange

SPHERE_TOL = 1e-12
DEFAULT_POLE = np.array([-1.0, 0.0, 0.0, 0.0])
# re-center the chart once a point gets this close to the excluded point
RECENTER_THRESHOLD = -0.9
ANTIPODE_MARGIN = 1e-6


def vec4(*components) -> np.ndarray:
    v = np.asarray(components[0] if len(components) == 1 else components, dtype=float)
    if v.shape[-1] != 4:
        raise ValueError(f"expected 4 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite vector components")
    return v


def inner(v, w) -> np.ndarray:
    """Standard inner product over the last axis."""
    return np.sum(np.asarray(v) * np.asarray(w), axis=-1)


def norm(v) -> np.ndarray:
    return np.sqrt(inner(v, v))


def j_apply(v) -> np.ndarray:
    """Apply the standard complex structure J of C^2 = R^4."""
    v = np.asarray(v, dtype=float)
    return np.stack([-v[..., 2], -v[..., 3], v[..., 0], v[..., 1]], axis=-1)


def tangent_project(z, v) -> np.ndarray:
    """Orthogonal projection of ``v`` onto the tangent space of S^3 at ``z``."""
    z = np.asarray(z, dtype=float)
    v = np.asarray(v, dtype=float)
    return v - inner(v, z)[..., None] * z


def sphere_point(p, tol: float = SPHERE_TOL) -> np.ndarray:
    """Validate that ``p`` lies on the unit sphere and return it as an array."""
    p = vec4(p)
    if np.any(np.abs(inner(p, p) - 1.0) > tol):
        raise OutOfRange(f"point is not on the unit sphere: |p|^2 - 1 = {inner(p, p) - 1.0}")
    return p


def random_sphere_points(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.standard_normal((n, 4))
    return x / norm(x)[:, None]


def random_tangent(rng: np.random.Generator, z) -> np.ndarray:
    return tangent_project(z, rng.standard_normal(np.shape(z)))


def _complement_basis(pole: np.ndarray) -> np.ndarray:
    # columns: orthonormal basis of pole^perp
    m = np.column_stack([pole, np.eye(4)])
    q, _ = np.linalg.qr(m)
    basis = q[:, 1:4]
    # QR may flip the sign of the first column; the complement is unaffected
    return basis


@dataclass(frozen=True)
class StereoChart:
    """
    Stereographic chart of S^3 centered at ``pole``.

    The chart sends ``pole`` to the origin of R^3 and is undefined at
    ``-pole``. Coordinates are taken with respect to an orthonormal basis of
    the orthogonal complement of ``pole``.
    """

    pole: np.ndarray = field(default_factory=lambda: DEFAULT_POLE.copy())
    basis: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pole = sphere_point(self.pole, tol=1e-10)
        pole = pole / norm(pole)
        object.__setattr__(self, "pole", pole)
        object.__setattr__(self, "basis", _complement_basis(pole))

    @classmethod
    def for_point(cls, p, pole=DEFAULT_POLE, threshold: float = RECENTER_THRESHOLD) -> "StereoChart":
        """Default chart, re-centered at ``p`` when ``p`` nears the excluded point."""
        p = np.asarray(p, dtype=float)
        if inner(p, pole) < threshold:
            return cls(p / norm(p))
        return cls(np.asarray(pole, dtype=float))

    def _check(self, p):
        t = inner(p, self.pole)
        if np.any(t <= -1.0 + ANTIPODE_MARGIN):
            raise AntipodalPoint(f"point too close to the chart's excluded point (<p, pole> = {np.min(t)})")
        return t

    def to_chart(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        t = self._check(p)
        return (p @ self.basis) / (1.0 + t)[..., None]

    def from_chart(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        r2 = inner(y, y)
        num = (1.0 - r2)[..., None] * self.pole + 2.0 * (y @ self.basis.T)
        return num / (1.0 + r2)[..., None]

    def jacobian(self, y) -> np.ndarray:
        """
        Analytic Jacobian of :meth:`from_chart` at chart point ``y``.

        Returns a (4, 3) matrix whose columns are the coordinate vector
        fields pushed into R^4 (batched as (..., 4, 3) for stacked ``y``).
        """
        y = np.asarray(y, dtype=float)
        d = 1.0 + inner(y, y)
        p = self.from_chart(y)
        out = 2.0 * self.basis - 2.0 * (self.pole + p)[..., :, None] * y[..., None, :]
        return out / d[..., None, None]

    def push_vector(self, p, v) -> np.ndarray:
        """Chart components of the tangent vector ``v`` at sphere point ``p``."""
        p = np.asarray(p, dtype=float)
        v = np.asarray(v, dtype=float)
        t = self._check(p)
        bp = p @ self.basis
        bv = v @ self.basis
        return bv / (1.0 + t)[..., None] - (bp * (inner(v, self.pole) / (1.0 + t) ** 2)[..., None])

    def roundtrip(self, p) -> np.ndarray:
        return self.from_chart(self.to_chart(p))


def chart_roundtrip(chart: StereoChart, p) -> np.ndarray:
    """``from_chart(to_chart(p))``; raises :class:`AntipodalPoint` at the chart boundary."""
    return chart.roundtrip(sphere_point(p))

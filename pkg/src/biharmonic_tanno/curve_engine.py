"""
Frenet data, tension and bitension of curves in (S^3, g).

Curvature convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
and the rough Laplacian on fields along a curve is -nabla_T nabla_T, so for a
unit-speed curve

    tension   = nabla_T T
    bitension = nabla_T^3 T - R(T, nabla_T T) T.

Two connection routes are offered. ``"analytic"`` evaluates everything on
Taylor jets of the curve with the exact connection; ``"oracle"`` nests the
chart finite-difference oracle three times. They share nothing but the
curvature formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .connections import Oracle, covariant_jet, eta0_jet, metric_jet, speed2_jet
from .curves import ArcLengthCurve
from .errors import DegenerateCurve, NotLegendre, NotUnitSpeed
from .jets import Jet
from .sasakian import TannoStructure

REGULARITY_TOL = 1e-8
UNIT_SPEED_TOL = 1e-6
LEGENDRE_TOL = 1e-6
HELIX_CONSTANT_TOL = 1e-6

GEODESIC = "geodesic/minimal"
PROPER = "proper-biharmonic"
NEITHER = "neither"


@dataclass
class FrenetData:
    speed: float
    tangent: np.ndarray
    curvature: float
    normal: np.ndarray | None


@dataclass
class BiharmonicReport:
    classification: str
    criterion: str
    samples: np.ndarray
    tension_norms: np.ndarray
    bitension_norms: np.ndarray
    curvatures: np.ndarray
    curvature_target: float
    consistent: bool
    notes: list[str] = field(default_factory=list)


def _route(connection) -> str:
    if connection in (None, "analytic"):
        return "analytic"
    if connection == "oracle" or isinstance(connection, Oracle):
        return "oracle"
    raise ValueError(f"unknown connection route {connection!r}")


def _oracle(struct, connection) -> Oracle:
    return connection if isinstance(connection, Oracle) else Oracle(struct)


def speed(struct: TannoStructure, curve, s: float) -> float:
    z = curve.jet(s, 1)
    return float(np.sqrt(metric_jet(struct, z, z.d(), z.d()).value))


def _check_unit_speed(struct, curve, s, tol=UNIT_SPEED_TOL):
    v = speed(struct, curve, s)
    if abs(v - 1.0) > tol:
        raise NotUnitSpeed(f"g-speed {v:.12g} at s = {s} is not 1")


def frenet(struct: TannoStructure, curve, s: float, connection="analytic") -> FrenetData:
    """Speed, unit tangent and geodesic curvature of ``curve`` at ``s``."""
    route = _route(connection)
    z = curve.jet(s, 2)
    v = float(np.sqrt(metric_jet(struct, z, z.d(), z.d()).value))
    if v < REGULARITY_TOL:
        raise DegenerateCurve(f"speed {v} below {REGULARITY_TOL}")
    p = z.value
    tangent = z.derivative(1) / v
    if route == "analytic":
        # nabla_{gamma'} gamma' = v^2 nabla_T T + (dv/ds) T; keep the part normal to T
        acc = covariant_jet(struct, z, z.d()).value
    else:
        acc = _oracle(struct, connection).covariant(_tangent_field(curve), curve, s)
    acc_n = acc - struct.metric(p, acc, tangent) * tangent
    kvec = acc_n / v**2
    kappa = float(np.sqrt(max(struct.metric(p, kvec, kvec), 0.0)))
    normal = kvec / kappa if kappa > REGULARITY_TOL else None
    return FrenetData(v, tangent, kappa, normal)


def _tangent_field(curve):
    if hasattr(curve, "derivative"):
        return lambda t: curve.derivative(t, 1)
    return lambda t: curve.jet(float(t), 1).derivative(1)


def tension(struct: TannoStructure, curve, s: float, connection="analytic") -> np.ndarray:
    """Tension field nabla_T T of a g-unit-speed curve."""
    _check_unit_speed(struct, curve, s)
    if _route(connection) == "analytic":
        z = curve.jet(s, 2)
        return covariant_jet(struct, z, z.d()).value
    return _oracle(struct, connection).covariant(_tangent_field(curve), curve, s)


def covariant_derivatives(struct: TannoStructure, curve, s, n: int = 3, connection="analytic"):
    """
    [T, nabla_T T, ..., nabla_T^n T] at ``s`` for a g-unit-speed curve.

    ``s`` may be an array, in which case every entry has a leading sample axis.
    """
    if _route(connection) == "analytic":
        if np.ndim(s):
            per = [covariant_derivatives(struct, curve, float(t), n) for t in np.asarray(s)]
            return [np.array(col) for col in zip(*per)]
        z = curve.jet(s, n + 1)
        v = z.d()
        out = [v.value]
        for _ in range(n):
            v = covariant_jet(struct, z, v)
            out.append(v.value)
        return out
    oracle = _oracle(struct, connection)
    fields = [_tangent_field(curve)]
    for _ in range(n):
        prev = fields[-1]
        fields.append(lambda t, prev=prev: oracle.covariant(prev, curve, t))
    return [np.asarray(f(s)) for f in fields]


def bitension(struct: TannoStructure, curve, s: float, connection="analytic") -> np.ndarray:
    """Bitension field of a g-unit-speed curve."""
    _check_unit_speed(struct, curve, s)
    T, tau, _, third = covariant_derivatives(struct, curve, s, 3, connection)
    p = curve(s)
    return third - struct.curvature(p, T, tau, T)


@dataclass
class TensionProfile:
    samples: np.ndarray
    tension_norms: np.ndarray
    bitension_norms: np.ndarray
    curvatures: np.ndarray


def tension_profile(struct: TannoStructure, curve, samples, connection="analytic") -> TensionProfile:
    """g-norms of tension and bitension and the curvature at every sample, in one batch."""
    samples = np.atleast_1d(np.asarray(samples, dtype=float))
    for t in samples:
        _check_unit_speed(struct, curve, t)
    T, tau, _, third = covariant_derivatives(struct, curve, samples, 3, connection)
    p = np.array([curve(t) for t in samples])
    bi = third - struct.curvature(p, T, tau, T)
    tau_n = tau - struct.metric(p, tau, T)[:, None] * T
    return TensionProfile(samples, struct.norm(p, tau), struct.norm(p, bi), struct.norm(p, tau_n))


def reparametrize(struct: TannoStructure, curve, t0: float = 0.0):
    """Curve reparametrized by g-arc length from ``t0`` (returned unchanged if already unit speed)."""
    samples = np.linspace(t0, t0 + 2 * np.pi, 9)
    speeds = np.array([speed(struct, curve, t) for t in samples])
    if np.all(np.abs(speeds - 1.0) <= 1e-12):
        return curve
    if np.ptp(speeds) <= 1e-12 * speeds.mean() and hasattr(curve, "rescaled"):
        return curve.rescaled(1.0 / speeds.mean())
    return ArcLengthCurve(curve, speed2_jet(struct), t0=t0)


def legendre_defect(struct: TannoStructure, curve, s: float) -> float:
    """|eta(T)| at ``s``."""
    z = curve.jet(s, 1)
    v = speed(struct, curve, s)
    return abs(float(struct.a * eta0_jet(z, z.d()).value)) / v


def classify(struct: TannoStructure, curve, connection="analytic", samples=None,
             tol_kappa: float = 1e-6, tol_bitension: float | None = None) -> BiharmonicReport:
    """
    Classify a Legendre curve by the helix criterion: geodesic when the
    curvature vanishes, proper-biharmonic when the curvature is constant
    with square c - 1, neither otherwise. The bitension is evaluated
    directly as a cross-check and its agreement is recorded in
    ``consistent``.
    """
    route = _route(connection)
    if tol_bitension is None:
        tol_bitension = 1e-8 if route == "analytic" else 1e-3
    if samples is None:
        samples = np.linspace(0.0, 2 * np.pi, 24, endpoint=False)
    samples = np.asarray(samples, dtype=float)
    curve = reparametrize(struct, curve, float(samples[0]) if samples.size else 0.0)

    defects = np.array([legendre_defect(struct, curve, s) for s in samples])
    if defects.max(initial=0.0) > LEGENDRE_TOL:
        raise NotLegendre(f"max |eta(T)| = {defects.max():.3e}")

    prof = tension_profile(struct, curve, samples, connection)
    kappas, taus, bis = prof.curvatures, prof.tension_norms, prof.bitension_norms

    target = struct.c - 1.0
    notes = []
    kappa_tol = tol_kappa if route == "analytic" else 1e-4
    if kappas.max() <= kappa_tol:
        cls = GEODESIC
        criterion = "curvature vanishes"
    elif np.ptp(kappas) <= kappa_tol and abs(kappas.mean() ** 2 - target) <= kappa_tol * max(1.0, target):
        cls = PROPER
        criterion = "helix with curvature^2 = c - 1"
    else:
        cls = NEITHER
        if np.ptp(kappas) > kappa_tol:
            criterion = "curvature not constant"
        else:
            criterion = f"helix with curvature^2 = {kappas.mean() ** 2:.6g} != c - 1 = {target:.6g}"

    biharmonic = bis.max() <= tol_bitension
    consistent = biharmonic == (cls in (GEODESIC, PROPER))
    if not consistent:
        notes.append(f"bitension max {bis.max():.3e} disagrees with the helix criterion")
    return BiharmonicReport(cls, criterion, samples, taus, bis, kappas, target, consistent, notes)

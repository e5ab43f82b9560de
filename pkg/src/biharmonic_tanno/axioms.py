"""
Pointwise checks of the contact metric and Sasakian axioms for (phi, xi, eta, g).

The algebraic identities are evaluated directly. The covariant identity
(nabla_X phi) Y = g(X, Y) xi - eta(Y) X goes through the finite-difference
oracle, and d eta is differentiated numerically in a stereographic chart.
"""

from __future__ import annotations

import numpy as np

from .ambient import random_sphere_points, random_tangent
from .connections import Oracle, central_difference
from .report import VerificationReport
from .sasakian import TannoStructure

ALGEBRAIC_TOL = 1e-12
CURVATURE_TOL = 1e-10
SASAKI_TOL = 1e-5
DETA_TOL = 1e-6


def _horizontal_unit(struct: TannoStructure, z, v):
    """Unit (in g) projection of ``v`` onto ker eta at ``z``."""
    h = v - struct.eta(z, v)[..., None] * struct.xi(z)
    return h / struct.norm(z, h)[..., None]


def contact_residuals(struct: TannoStructure, z, X, Y) -> dict[str, float]:
    """Max residual of each algebraic contact metric identity over the batch."""
    s = struct
    xi = s.xi(z)
    phi2 = s.phi(z, s.phi(z, X))
    eX, eY = s.eta(z, X), s.eta(z, Y)
    res = {
        "phi^2 = -I + eta (x) xi": np.abs(phi2 + X - eX[:, None] * xi),
        "eta(xi) = 1": np.abs(s.eta(z, xi) - 1.0),
        "phi xi = 0": np.abs(s.phi(z, xi)),
        "eta o phi = 0": np.abs(s.eta(z, s.phi(z, X))),
        "g(xi, xi) = 1": np.abs(s.metric(z, xi, xi) - 1.0),
        "g(X, xi) = eta(X)": np.abs(s.metric(z, X, xi) - eX),
        "g(phiX, phiY) = g(X,Y) - eta(X)eta(Y)": np.abs(
            s.metric(z, s.phi(z, X), s.phi(z, Y)) - s.metric(z, X, Y) + eX * eY),
        "g(X, phiY) = -g(phiX, Y)": np.abs(s.metric(z, X, s.phi(z, Y)) + s.metric(z, s.phi(z, X), Y)),
    }
    return {k: float(np.max(v)) for k, v in res.items()}


def curvature_residuals(struct: TannoStructure, z, X, Y, Z, W) -> dict[str, float]:
    s = struct
    R = s.curvature
    H = _horizontal_unit(s, z, X)
    xi = s.xi(z)
    pH = s.phi(z, H)
    res = {
        "phi-sectional curvature = c": np.abs(s.metric(z, R(z, H, pH, pH), H) - s.c),
        "K(X, xi) = 1": np.abs(s.metric(z, R(z, H, xi, xi), H) - 1.0),
        "R(X,Y)Z = -R(Y,X)Z": np.abs(R(z, X, Y, Z) + R(z, Y, X, Z)),
        "g(R(X,Y)Z,W) = -g(R(X,Y)W,Z)": np.abs(s.metric(z, R(z, X, Y, Z), W) + s.metric(z, R(z, X, Y, W), Z)),
        "g(R(X,Y)Z,W) = g(R(Z,W)X,Y)": np.abs(s.metric(z, R(z, X, Y, Z), W) - s.metric(z, R(z, Z, W, X), Y)),
        "first Bianchi": np.abs(R(z, X, Y, Z) + R(z, Y, Z, X) + R(z, Z, X, Y)),
    }
    return {k: float(np.max(v)) for k, v in res.items()}


def _coordinate_field(chart, j):
    return lambda q: chart.jacobian(chart.to_chart(q))[:, j]


def sasakian_residual(struct: TannoStructure, oracle: Oracle, p, X) -> float:
    """
    Max over chart coordinate fields Y of
    |nabla_X (phi Y) - phi(nabla_X Y) - g(X, Y) xi + eta(Y) X|.
    """
    chart = oracle.chart_for(p)
    worst = 0.0
    for j in range(3):
        Y = _coordinate_field(chart, j)
        phiY = lambda q, Y=Y: struct.phi(q, Y(q))
        lhs = oracle.covariant_at(p, X, phiY, chart) - struct.phi(p, oracle.covariant_at(p, X, Y, chart))
        y = Y(p)
        rhs = struct.metric(p, X, y) * struct.xi(p) - struct.eta(p, y) * X
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def deta_samples(struct: TannoStructure, oracle: Oracle, p) -> tuple[np.ndarray, np.ndarray]:
    """
    d eta(d_i, d_j) = d_i eta_j - d_j eta_i and g(d_i, phi d_j) for i < j in
    the chart around ``p``; returns the two length-3 vectors.
    """
    chart = oracle.chart_for(p)
    y0 = chart.to_chart(p)

    def eta_comps(y):
        q = chart.from_chart(y)
        return struct.eta(q, np.swapaxes(chart.jacobian(y), -1, -2))

    grad = np.array([central_difference(eta_comps, y0, oracle.metric_step, oracle.metric_accuracy,
                                        direction=np.eye(3)[i]) for i in range(3)])
    jac = chart.jacobian(y0)
    pairs = ((0, 1), (0, 2), (1, 2))
    deta = np.array([grad[i, j] - grad[j, i] for i, j in pairs])
    gphi = np.array([struct.metric(p, jac[:, i], struct.phi(p, jac[:, j])) for i, j in pairs])
    return deta, gphi


def axiom_report(struct: TannoStructure, sample_points=None, oracle: Oracle | None = None,
                 rng: np.random.Generator | None = None, oracle_points: int = 8) -> VerificationReport:
    """
    Residuals of the contact metric, Sasakian and curvature identities.

    Parameters
    ----------
    sample_points : array (n, 4), optional
        Sphere points for the algebraic checks; 100 random points by default.
    oracle : Oracle, optional
        Connection oracle for the covariant identity and d eta.
    oracle_points : int
        How many of the sample points go through the (slower) oracle checks.
    """
    rng = rng or np.random.default_rng(0)
    oracle = oracle or Oracle(struct)
    z = random_sphere_points(rng, 100) if sample_points is None else np.asarray(sample_points, dtype=float)
    X, Y, Z, W = (random_tangent(rng, z) for _ in range(4))

    report = VerificationReport(config={"a": struct.a, "points": int(len(z))})
    for name, r in contact_residuals(struct, z, X, Y).items():
        report.add(name, "contact metric axioms", r, ALGEBRAIC_TOL)
    for name, r in curvature_residuals(struct, z, X, Y, Z, W).items():
        report.add(name, "space form curvature", r, CURVATURE_TOL)

    pts = z[:oracle_points]
    sas = max(sasakian_residual(struct, oracle, p, x) for p, x in zip(pts, X[:oracle_points]))
    report.add("(nabla_X phi)Y = g(X,Y)xi - eta(Y)X", "Sasakian identity", sas, SASAKI_TOL)

    d, g = zip(*(deta_samples(struct, oracle, p) for p in pts))
    d, g = np.concatenate(d), np.concatenate(g)
    lam = float(d @ g / (g @ g))
    fit = float(np.max(np.abs(d - lam * g)))
    report.values["deta_lambda"] = lam
    report.add("d eta = lambda g(., phi .) with uniform lambda", "d eta convention", fit, DETA_TOL,
               note=f"fitted lambda = {lam:.12g}")
    return report

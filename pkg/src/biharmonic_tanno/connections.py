"""
Connections along curves.

Three Levi-Civita connections appear: the flat one of R^4, the round one
of (S^3, g0) obtained by projecting flat derivatives (Gauss formula), and
the one of the deformed metric g. The last is evaluated in two independent
ways:

* ``deformed_covariant`` -- a chart oracle. Metric components are pulled
  back through a stereographic chart, Christoffel symbols come from finite
  differences of those components, and field derivatives along the curve
  from finite differences in the curve parameter. Nothing about g beyond
  its definition is assumed.
* ``covariant_jet`` -- exact evaluation on Taylor jets using the closed-form
  difference tensor between the connections of g and g0.
"""

from __future__ import annotations

from contextvars import ContextVar
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .ambient import DEFAULT_POLE, RECENTER_THRESHOLD, StereoChart, inner, j_apply, tangent_project
from .errors import DomainBoundary, SingularMetric
from .jets import Jet
from .sasakian import TannoStructure

# 4th-order stencils: with 2nd-order differences at h = 1e-5 the roundoff in the
# Christoffel symbols, amplified by three nested derivatives along a curve,
# exceeds 1e-3 in the bitension at a = 0.1
METRIC_STEP = 1e-3
METRIC_ACCURACY = 4
FIELD_STEP = 1e-3
FIELD_ACCURACY = 4
MAX_METRIC_CONDITION = 1e8

# central-difference stencils for the first derivative, keyed by accuracy
# order: offsets -K..-1, 1..K and the weights of the positive half (the
# negative half is antisymmetric, so constants cancel exactly)
_STENCILS = {
    2: (np.array([-1.0, 1.0]), np.array([0.5])),
    4: (np.array([-2.0, -1.0, 1.0, 2.0]), np.array([8.0, -1.0]) / 12.0),
    6: (np.array([-3.0, -2.0, -1.0, 1.0, 2.0, 3.0]), np.array([45.0, -9.0, 1.0]) / 60.0),
}


def _combine(values, accuracy: int, axis: int) -> np.ndarray:
    """Stencil sum over ``axis`` of samples taken at the offsets of ``_STENCILS[accuracy]``."""
    _, wpos = _STENCILS[accuracy]
    k = len(wpos)
    v = np.moveaxis(np.asarray(values), axis, 0)
    diff = v[k:] - v[:k][::-1]
    return np.tensordot(wpos, diff, axes=(0, 0))


def central_difference(f: Callable, x, h: float, accuracy: int = 4, direction=None):
    """
    First derivative of ``f`` at ``x`` by a central stencil.

    With ``direction`` given, differentiates t -> f(x + t * direction) at
    t = 0 (``x`` may then be an array).
    """
    offsets, _ = _STENCILS[accuracy]
    if direction is None:
        vals = [np.asarray(f(x + o * h)) for o in offsets]
    else:
        direction = np.asarray(direction, dtype=float)
        vals = [np.asarray(f(x + o * h * direction)) for o in offsets]
    return _combine(np.array(vals), accuracy, 0) / h


# -- fields along curves ------------------------------------------------------


class ClosedFormField:
    """Vector field along a curve with an analytic derivative."""

    def __init__(self, value: Callable, derivative: Callable):
        self.value = value
        self.derivative = derivative

    def __call__(self, s):
        return self.value(s)


class JetField(ClosedFormField):
    """
    Field along ``curve`` defined by a map on curve jets.

    ``rule`` takes the jet of the curve and returns the jet of the field;
    it may consume ``depth`` derivatives of the curve.
    """

    def __init__(self, curve, rule: Callable[[Jet], Jet], depth: int = 1):
        self.curve = curve
        self.rule = rule
        self.depth = depth
        super().__init__(self._value, self._derivative)

    def _value(self, s):
        return self.rule(self.curve.jet(s, self.depth)).value

    def _derivative(self, s):
        return self.rule(self.curve.jet(s, self.depth + 1)).d().value


@dataclass
class SampledField:
    """Field sampled on the uniform grid ``s0 + k h``, k = 0..n-1."""

    s0: float
    h: float
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.h <= 0:
            raise ValueError("grid step must be positive")
        if len(self.values) < 5:
            raise ValueError("need at least 5 samples for central differences")

    @property
    def grid(self) -> np.ndarray:
        return self.s0 + self.h * np.arange(len(self.values))

    def __call__(self, s):
        k = (s - self.s0) / self.h
        i = int(round(k))
        if abs(k - i) > 1e-9 or not 0 <= i < len(self.values):
            raise DomainBoundary(f"s = {s} is not a grid point")
        return self.values[i]

    def derivative(self, s):
        k = (s - self.s0) / self.h
        i = int(round(k))
        if abs(k - i) > 1e-9:
            raise DomainBoundary(f"s = {s} is not a grid point")
        if i < 2 or i > len(self.values) - 3:
            raise DomainBoundary(f"s = {s} is within 2h of the sampled domain's end")
        return (self.values[i + 1] - self.values[i - 1]) / (2.0 * self.h)


def flat_derivative(field, s: float) -> np.ndarray:
    """Componentwise d/ds of a field along a curve (connection of R^4)."""
    if hasattr(field, "derivative"):
        return np.asarray(field.derivative(s), dtype=float)
    return central_difference(field, s, FIELD_STEP)


def sphere_covariant(field, curve, s: float) -> np.ndarray:
    """Covariant derivative along ``curve`` for the round metric g0."""
    return tangent_project(curve(s), flat_derivative(field, s))


# -- chart oracle for the deformed metric ---------------------------------------


def christoffel_symbols(metric_fn: Callable, y, h: float = METRIC_STEP, accuracy: int = METRIC_ACCURACY,
                        batched: bool = False) -> np.ndarray:
    """
    Christoffel symbols ``G[k, i, j]`` of the metric ``metric_fn(y)`` (an
    n x n matrix in coordinates ``y``), with first derivatives of the
    components taken by central differences.

    With ``batched=True`` the metric function must accept a stack of points
    of shape (m, n) and return (m, n, n); all stencil points are then
    evaluated in one call, and ``y`` itself may be a stack of points
    (result shape (m, n, n, n)).
    """
    y = np.asarray(y, dtype=float)
    single = y.ndim == 1
    ys = np.atleast_2d(y)
    m, n = ys.shape
    offsets, _ = _STENCILS[accuracy]
    shifts = (offsets[:, None, None] * h * np.eye(n)[None, :, :]).reshape(-1, n)
    pts = np.concatenate([ys[:, None, :], ys[:, None, :] + shifts[None, :, :]], axis=1)  # (m, 1 + K n, n)
    if batched:
        mats = metric_fn(pts.reshape(-1, n)).reshape(m, -1, n, n)
    else:
        mats = np.array([metric_fn(q) for q in pts.reshape(-1, n)]).reshape(m, -1, n, n)
    gm = mats[:, 0]
    cond = np.linalg.cond(gm)
    if not np.all(np.isfinite(cond)) or np.any(cond > MAX_METRIC_CONDITION):
        raise SingularMetric(f"metric condition number {np.max(cond):.3e} exceeds {MAX_METRIC_CONDITION:.0e}")
    # dg[:, l, i, j] = d_l g_ij
    dg = _combine(mats[:, 1:].reshape(m, len(offsets), n, n, n), accuracy, 1) / h
    ginv = np.linalg.inv(gm)
    # lower[:, l, i, j] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    lower = 0.5 * (np.transpose(dg, (0, 3, 1, 2)) + np.transpose(dg, (0, 3, 2, 1)) - dg)
    out = np.einsum("mkl,mlij->mkij", ginv, lower)
    return out[0] if single else out


def chart_metric(struct: TannoStructure, chart: StereoChart, y) -> np.ndarray:
    """Components g_ij of the deformed metric in the chart (batched over leading axes of ``y``)."""
    jac = chart.jacobian(y)
    p = chart.from_chart(y)
    n = np.einsum("...ak,...a->...k", jac, -j_apply(p))  # eta0 of each coordinate field
    a = struct.a
    return a * np.einsum("...ai,...aj->...ij", jac, jac) + a * (a - 1.0) * n[..., :, None] * n[..., None, :]


def christoffel(struct: TannoStructure, chart: StereoChart, y, h: float = METRIC_STEP,
                accuracy: int = METRIC_ACCURACY) -> np.ndarray:
    """Christoffel symbols of g at chart point ``y``; shape (3, 3, 3), index order [k, i, j]."""
    return christoffel_symbols(lambda q: chart_metric(struct, chart, q), y, h, accuracy, batched=True)


_ATLAS_CENTERS = np.concatenate([np.eye(4), -np.eye(4)])


_PINNED_CHART: ContextVar[StereoChart | None] = ContextVar("pinned_chart", default=None)


class Oracle:
    """
    Finite-difference Levi-Civita connection of the deformed metric.

    Step sizes and stencil accuracy are attributes so that their effect can
    be studied; defaults are the ones used throughout the package.

    ``charts`` selects how a chart is picked for an evaluation point:

    ``"atlas"``
        eight charts centered at +-e_i; each point uses the one whose center
        is nearest, so <p, center> >= 1/2 and chart distortion stays bounded.
    ``"recenter"``
        the default chart, replaced by one centered at the point once the
        point gets within the threshold of the excluded point.
    ``"fixed"``
        the default chart everywhere.

    Fields that are themselves covariant derivatives (as in the bitension)
    are evaluated in the chart of the outer stencil. Otherwise stencil
    points straddling a chart boundary would mix the truncation errors of
    two charts, which the outer difference amplifies by 1/h.
    """

    def __init__(self, struct: TannoStructure, metric_step: float = METRIC_STEP,
                 field_step: float = FIELD_STEP, metric_accuracy: int = METRIC_ACCURACY,
                 field_accuracy: int = FIELD_ACCURACY, charts: str = "atlas"):
        if charts not in ("atlas", "recenter", "fixed"):
            raise ValueError(f"unknown chart policy {charts!r}")
        self.struct = struct
        self.metric_step = metric_step
        self.field_step = field_step
        self.metric_accuracy = metric_accuracy
        self.field_accuracy = field_accuracy
        self.charts = charts
        self._atlas = [StereoChart(c) for c in _ATLAS_CENTERS] if charts == "atlas" else None

    def _chart_index(self, p) -> np.ndarray:
        return np.argmax(np.asarray(p) @ _ATLAS_CENTERS.T, axis=-1)

    def chart_for(self, p) -> StereoChart:
        if self.charts == "atlas":
            return self._atlas[int(self._chart_index(p))]
        if self.charts == "recenter":
            return StereoChart.for_point(p)
        return StereoChart()

    def christoffel(self, chart: StereoChart, y) -> np.ndarray:
        return christoffel(self.struct, chart, y, self.metric_step, self.metric_accuracy)

    def covariant(self, field: Callable, curve, s, chart: StereoChart | None = None) -> np.ndarray:
        """
        nabla_{gamma'} V at ``s`` for a tangent field ``V`` along ``curve``.

        ``s`` may be an array. Points are grouped by the chart the policy
        assigns them (or all use ``chart`` when given). ``field`` is called
        with arrays of parameters when it supports that.
        """
        ss = np.atleast_1d(np.asarray(s, dtype=float))
        chart = chart or _PINNED_CHART.get()
        if chart is None:
            p = _points(curve, ss, 0)
            if self.charts == "atlas":
                idx = self._chart_index(p)
            elif self.charts == "recenter":
                idx = np.where(inner(p, DEFAULT_POLE) < RECENTER_THRESHOLD, np.arange(len(ss)), -1)
            else:
                idx = np.full(len(ss), -1)
            out = np.empty((len(ss), 4))
            for k in np.unique(idx):
                sel = idx == k
                out[sel] = self._covariant(field, curve, ss[sel], self.chart_for(p[sel][0]))
        else:
            out = self._covariant(field, curve, ss, chart)
        return out[0] if np.ndim(s) == 0 else out

    def _covariant(self, field, curve, ss, chart):
        m = ss.shape[0]
        p = _points(curve, ss, 0)
        offsets, _ = _STENCILS[self.field_accuracy]
        ts = (ss[:, None] + offsets[None, :] * self.field_step).ravel()
        both = np.concatenate([ss, ts])
        token = _PINNED_CHART.set(chart)
        try:
            values = _eval_field(field, both)
        finally:
            _PINNED_CHART.reset(token)
        comps_all = chart.push_vector(_points(curve, both, 0), values)
        v0 = comps_all[:m]
        dv = _combine(comps_all[m:].reshape(m, len(offsets), -1), self.field_accuracy, 1) / self.field_step
        y = chart.to_chart(p)
        ydot = chart.push_vector(p, _points(curve, ss, 1))
        gamma = self.christoffel(chart, y)
        cov = dv + np.einsum("mkij,mi,mj->mk", gamma, ydot, v0)
        return np.einsum("mak,mk->ma", chart.jacobian(y), cov)

    def covariant_at(self, p, X, field: Callable, chart: StereoChart | None = None) -> np.ndarray:
        """
        nabla_X V at sphere point ``p`` where ``field(q)`` gives V at nearby
        sphere points ``q``; derivatives are taken along the chart line
        through ``p`` in the direction of ``X``.
        """
        chart = chart or self.chart_for(p)
        y = chart.to_chart(p)
        xc = chart.push_vector(p, X)
        comps = lambda q: chart.push_vector(chart.from_chart(q), field(chart.from_chart(q)))
        dv = central_difference(comps, y, self.metric_step, self.metric_accuracy, direction=xc)
        gamma = self.christoffel(chart, y)
        return chart.jacobian(y) @ (dv + np.einsum("kij,i,j->k", gamma, xc, comps(y)))


def _points(curve, ts: np.ndarray, k: int) -> np.ndarray:
    if hasattr(curve, "derivative"):
        return curve.derivative(ts, k)
    return np.array([curve.jet(float(t), k).derivative(k) for t in ts])


def _eval_field(field: Callable, ts: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(field(ts), dtype=float)
        if out.shape == ts.shape + (4,):
            return out
    except (TypeError, ValueError):
        pass
    return np.array([field(float(t)) for t in ts])


def deformed_covariant(struct: TannoStructure, chart: StereoChart | None, field: Callable, curve, s: float,
                       oracle: Oracle | None = None) -> np.ndarray:
    """Oracle covariant derivative of ``field`` along ``curve`` for the deformed metric."""
    oracle = oracle or Oracle(struct)
    return oracle.covariant(field, curve, s, chart)


# -- exact route on jets -----------------------------------------------------------


def project_jet(z: Jet, v: Jet) -> Jet:
    return v - z * v.dot(z)


def eta0_jet(z: Jet, v: Jet) -> Jet:
    return v.dot(z.apply(j_apply)) * -1.0


def phi_jet(z: Jet, v: Jet) -> Jet:
    return project_jet(z, v.apply(j_apply))


def sphere_covariant_jet(z: Jet, v: Jet) -> Jet:
    """Round-metric covariant derivative of the field jet ``v`` along the curve jet ``z``."""
    return project_jet(z, v.d())


def covariant_jet(struct: TannoStructure, z: Jet, v: Jet) -> Jet:
    """Deformed-metric covariant derivative of ``v`` along the curve jet ``z`` (any speed)."""
    t = z.d()
    corr = (phi_jet(z, t) * eta0_jet(z, v) + phi_jet(z, v) * eta0_jet(z, t)) * (-(struct.a - 1.0))
    return sphere_covariant_jet(z, v) + corr


def metric_jet(struct: TannoStructure, z: Jet, v: Jet, w: Jet) -> Jet:
    a = struct.a
    return v.dot(w) * a + eta0_jet(z, v) * eta0_jet(z, w) * (a * (a - 1.0))


def speed2_jet(struct: TannoStructure) -> Callable[[Jet], Jet]:
    """Squared g-speed as a function of the curve jet (for arc-length reparametrization)."""
    return lambda z: metric_jet(struct, z, z.d(), z.d())

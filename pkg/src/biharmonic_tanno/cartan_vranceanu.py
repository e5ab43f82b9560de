"""
Cartan-Vranceanu spaces (R^3, ds^2_{l,m}).

    ds^2 = (dx^2 + dy^2) / F^2 + eta^2,   F = 1 + m (x^2 + y^2),
    eta  = dz + (l/2) (y dx - x dy) / F.

The quoted family of Legendre curves is a circle of radius ``alpha``
traversed with frequency ``beta`` while z grows linearly. Its residuals are
reported as evaluated, together with a small search over sign and
placement variants of the formula; nothing here asserts that they vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .connections import christoffel_symbols
from .curves import ClosedFormCurve
from .errors import OutOfRange
from .report import VerificationReport

RESIDUAL_ZERO = 1e-10


@dataclass(frozen=True)
class CVParams:
    l: float
    m: float
    c1: float = 0.0
    c2: float = 0.0
    alpha: float = field(init=False)
    beta: float = field(init=False)

    def __post_init__(self):
        l, m = float(self.l), float(self.m)
        if l == 0.0 or 4 * m - l**2 <= 0.0:
            raise OutOfRange(f"need l != 0 and 4m - l^2 > 0, got l={l}, m={m}")
        alpha2 = (6 * m - l**2 + np.sqrt(32 * m**2 - 12 * m * l**2 + l**4)) / (2 * m**2)
        alpha = float(np.sqrt(alpha2))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", float((1 + m * alpha2) / alpha))

    @property
    def alpha2(self) -> float:
        return self.alpha**2


def contact_form(params: CVParams, p) -> np.ndarray:
    """Components (eta_x, eta_y, eta_z) of the contact form at ``p``."""
    x, y, _ = np.asarray(p, dtype=float)
    f = 1 + params.m * (x**2 + y**2)
    return np.array([params.l / 2 * y / f, -params.l / 2 * x / f, 1.0])


def metric(params: CVParams, p) -> np.ndarray:
    x, y, _ = np.asarray(p, dtype=float)
    f = 1 + params.m * (x**2 + y**2)
    e = contact_form(params, p)
    return np.diag([1 / f**2, 1 / f**2, 0.0]) + np.outer(e, e)


def cv_curve(params: CVParams, slope: float | None = None, swapped: bool = False) -> ClosedFormCurve:
    """
    x = alpha sin(beta s + c1), y = -alpha cos(beta s + c1), z = slope s + c2.

    ``slope`` defaults to l/2; ``swapped`` exchanges the roles of sine and
    cosine (x = alpha cos, y = -alpha sin).
    """
    al, be = params.alpha, params.beta
    slope = params.l / 2 if slope is None else slope
    if swapped:
        cos_v, sin_v = [al, 0.0, 0.0], [0.0, -al, 0.0]
    else:
        cos_v, sin_v = [0.0, -al, 0.0], [al, 0.0, 0.0]
    return ClosedFormCurve([be], [params.c1], [cos_v], [sin_v], offset=[0.0, 0.0, params.c2],
                           drift=[0.0, 0.0, slope], name="cartan-vranceanu curve")


def _residuals(params: CVParams, curve: ClosedFormCurve, s: float) -> tuple[float, float]:
    p, v = curve(s), curve.derivative(s, 1)
    unit = abs(v @ metric(params, p) @ v - 1.0)
    leg = abs(contact_form(params, p) @ v)
    return unit, leg


def geodesic_curvature(params: CVParams, curve: ClosedFormCurve, s: float, h: float = 1e-4) -> float:
    """Curvature of ``curve`` at ``s`` in ds^2_{l,m}, through finite-difference Christoffel symbols."""
    p, v, acc = curve(s), curve.derivative(s, 1), curve.derivative(s, 2)
    g = metric(params, p)
    gamma = christoffel_symbols(lambda q: metric(params, q), p, h, accuracy=4)
    d = acc + np.einsum("kij,i,j->k", gamma, v, v)
    sp2 = v @ g @ v
    dn = d - (d @ g @ v) / sp2 * v
    return float(np.sqrt(max(dn @ g @ dn, 0.0)) / sp2)


VARIANTS = (
    ("as given: z' = l/2", lambda p: p.l / 2, False),
    ("z' = -l/2", lambda p: -p.l / 2, False),
    ("z' = l alpha / 2", lambda p: p.l * p.alpha / 2, False),
    ("z' = -l alpha / 2", lambda p: -p.l * p.alpha / 2, False),
    ("z' = l / (2 alpha)", lambda p: p.l / (2 * p.alpha), False),
    ("swapped sin/cos, z' = l/2", lambda p: p.l / 2, True),
    ("swapped sin/cos, z' = -l/2", lambda p: -p.l / 2, True),
    ("swapped sin/cos, z' = -l alpha / 2", lambda p: -p.l * p.alpha / 2, True),
)


def cartan_vranceanu(params: CVParams, samples=None):
    """
    Metric evaluator, contact form evaluator, the curve as given and a
    report of its residuals plus the variant search. All report entries
    are informational (``asserted=False``).
    """
    if samples is None:
        samples = np.linspace(0.0, 2 * np.pi, 16, endpoint=False)
    curve = cv_curve(params)
    report = VerificationReport(config={"l": params.l, "m": params.m, "c1": params.c1, "c2": params.c2})
    report.values.update(alpha2=params.alpha2, alpha=params.alpha, beta=params.beta)

    label = "cartan-vranceanu"
    radius = max(abs(curve(s)[0] ** 2 + curve(s)[1] ** 2 - params.alpha2) for s in samples)
    report.add("cv circle radius^2 = alpha^2", label, radius, RESIDUAL_ZERO, asserted=False)
    unit = max(_residuals(params, curve, s)[0] for s in samples)
    leg = max(_residuals(params, curve, s)[1] for s in samples)
    report.add("cv unit speed |ds^2(g',g') - 1|", label, unit, RESIDUAL_ZERO, asserted=False)
    report.add("cv Legendre |eta(g')|", label, leg, RESIDUAL_ZERO, asserted=False,
               note=f"closed form (l/2)(1 - alpha) = {params.l / 2 * (1 - params.alpha):.17g}")

    found = []
    for name, slope, swapped in VARIANTS:
        var = cv_curve(params, slope(params), swapped)
        u = max(_residuals(params, var, s)[0] for s in samples)
        e = max(_residuals(params, var, s)[1] for s in samples)
        ok = u <= RESIDUAL_ZERO and e <= RESIDUAL_ZERO
        report.values[f"variant[{name}]"] = {"unit_speed": u, "legendre": e, "vanishes": ok}
        if ok:
            found.append(name)
    report.values["variants_vanishing"] = found

    if params.l == 2 and params.m > 1:
        c = 4 * params.m - 3
        report.values["c"] = c
        for name, slope, swapped in VARIANTS:
            if name == VARIANTS[0][0] or name in found:
                var = cv_curve(params, slope(params), swapped)
                k2 = np.mean([geodesic_curvature(params, var, s) ** 2 for s in samples[:4]])
                report.add(f"cv helix criterion kappa^2 - (c-1) [{name}]", label, abs(k2 - (c - 1)), 1e-6,
                           asserted=False, note=f"kappa^2 = {k2:.12g}, c - 1 = {c - 1:.12g}")

    metric_fn = lambda p: metric(params, p)
    form_fn = lambda p: contact_form(params, p)
    return metric_fn, form_fn, curve, report

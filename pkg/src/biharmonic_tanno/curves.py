"""
Closed-form curves with exact derivatives.

Every explicit curve in this package is a finite trigonometric sum plus an
affine part,

    gamma(s) = offset + s * drift
               + sum_k cos(w_k s + p_k) C_k + sin(w_k s + p_k) S_k,

so derivatives of every order are available analytically. Curves expose
``jet(s, order)`` returning a :class:`~biharmonic_tanno.jets.Jet`, which is
the only interface the curve engine relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from .jets import Jet


@dataclass(frozen=True)
class ClosedFormCurve:
    frequencies: np.ndarray
    phases: np.ndarray
    cos_vectors: np.ndarray
    sin_vectors: np.ndarray
    offset: np.ndarray | None = None
    drift: np.ndarray | None = None
    domain: tuple[float, float] = (-np.inf, np.inf)
    name: str = field(default="curve", compare=False)

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.frequencies, dtype=float))
        object.__setattr__(self, "frequencies", w)
        object.__setattr__(self, "phases", np.broadcast_to(np.asarray(self.phases, dtype=float), w.shape).copy())
        cv = np.atleast_2d(np.asarray(self.cos_vectors, dtype=float))
        sv = np.atleast_2d(np.asarray(self.sin_vectors, dtype=float))
        if cv.shape != sv.shape or cv.shape[0] != w.shape[0]:
            raise ValueError("one cosine and one sine vector per frequency")
        object.__setattr__(self, "cos_vectors", cv)
        object.__setattr__(self, "sin_vectors", sv)
        dim = cv.shape[1]
        object.__setattr__(self, "offset", np.zeros(dim) if self.offset is None else np.asarray(self.offset, float))
        object.__setattr__(self, "drift", np.zeros(dim) if self.drift is None else np.asarray(self.drift, float))

    @property
    def dim(self) -> int:
        return self.cos_vectors.shape[1]

    def derivative(self, s, n: int = 0) -> np.ndarray:
        """n-th derivative at ``s`` (scalar or 1-d array of parameters)."""
        s = np.asarray(s, dtype=float)
        theta = np.multiply.outer(s, self.frequencies) + self.phases
        scale = self.frequencies ** n
        # d^n/ds^n cos(x) = cos(x + n pi/2), likewise for sin
        shift = n * np.pi / 2
        c = np.cos(theta + shift) * scale
        sn = np.sin(theta + shift) * scale
        out = c @ self.cos_vectors + sn @ self.sin_vectors
        if n == 0:
            out = out + self.offset + np.multiply.outer(s, self.drift)
        elif n == 1:
            out = out + self.drift
        return out

    def __call__(self, s) -> np.ndarray:
        return self.derivative(s, 0)

    def jet(self, s: float, order: int) -> Jet:
        return Jet.from_derivatives([self.derivative(s, k) for k in range(order + 1)])

    def reversed(self) -> "ClosedFormCurve":
        """The curve s -> gamma(-s)."""
        return ClosedFormCurve(-self.frequencies, self.phases, self.cos_vectors, self.sin_vectors,
                               self.offset, -self.drift, (-self.domain[1], -self.domain[0]),
                               name=self.name + " reversed")

    def rescaled(self, factor: float) -> "ClosedFormCurve":
        """The curve s -> gamma(factor * s)."""
        return ClosedFormCurve(self.frequencies * factor, self.phases, self.cos_vectors, self.sin_vectors,
                               self.offset, self.drift * factor, name=self.name)


class ArcLengthCurve:
    """
    Arc-length reparametrization of a curve with respect to a metric.

    ``speed_jet(gamma_jet)`` must return the scalar jet of the squared speed
    of a curve given its jet. Parameter values are inverted numerically from
    the arc-length integral, and derivatives follow from composing jets.
    """

    def __init__(self, curve, speed2_jet, t0: float = 0.0, rtol: float = 1e-12):
        self.curve = curve
        self.speed2_jet = speed2_jet
        self.t0 = t0
        self.rtol = rtol

    def speed(self, t: float) -> float:
        return float(np.sqrt(self.speed2_jet(self.curve.jet(t, 1)).value))

    def arc_length(self, t: float) -> float:
        val, _ = integrate.quad(self.speed, self.t0, t, epsabs=1e-13, epsrel=self.rtol, limit=200)
        return val

    def parameter(self, s: float) -> float:
        """Original parameter t with arc length ``s`` measured from ``t0``."""
        if s == 0.0:
            return self.t0
        v0 = self.speed(self.t0)
        guess = self.t0 + s / v0
        f = lambda t: self.arc_length(t) - s
        lo, hi = guess - abs(guess - self.t0) - 1.0, guess + abs(guess - self.t0) + 1.0
        while f(lo) > 0:
            lo -= 2 * (hi - lo)
        while f(hi) < 0:
            hi += 2 * (hi - lo)
        return optimize.brentq(f, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)

    def jet(self, s: float, order: int) -> Jet:
        t = self.parameter(s)
        g = self.curve.jet(t, order + 1)
        inv_speed = self.speed2_jet(g).sqrt().reciprocal()  # jet in t - t(s), order `order`
        # Picard iteration for tau' = 1/speed(t0 + tau), tau(0) = 0
        tau = Jet(np.zeros(order + 1))
        for _ in range(order + 1):
            tau = inv_speed.compose(tau).integrate(0.0).truncate(order)
        return g.truncate(order).compose(tau)

    def __call__(self, s):
        return self.jet(float(s), 0).value

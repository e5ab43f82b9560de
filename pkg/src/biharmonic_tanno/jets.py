"""
Truncated Taylor jets.

A :class:`Jet` of order n stores the Taylor coefficients ``f^(k)(s0) / k!``
for k = 0..n of a scalar- or vector-valued function of one variable. Sums,
products, inner products, linear maps, reciprocals, square roots and
composition are exact up to the truncation order, which lets covariant
derivatives along closed-form curves be evaluated to machine precision
without hand-expanding them.
"""

from __future__ import annotations

from math import factorial

import numpy as np


class Jet:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = np.asarray(coeffs, dtype=float)

    @classmethod
    def from_derivatives(cls, derivs) -> "Jet":
        derivs = np.asarray(derivs, dtype=float)
        fact = np.array([factorial(k) for k in range(len(derivs))], dtype=float)
        return cls(derivs / fact.reshape((-1,) + (1,) * (derivs.ndim - 1)))

    @classmethod
    def constant(cls, value, order: int) -> "Jet":
        value = np.asarray(value, dtype=float)
        c = np.zeros((order + 1,) + value.shape)
        c[0] = value
        return cls(c)

    @classmethod
    def variable(cls, s0: float, order: int) -> "Jet":
        c = np.zeros(order + 1)
        c[0] = s0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def value(self) -> np.ndarray:
        return self.coeffs[0]

    def derivatives(self) -> np.ndarray:
        fact = np.array([factorial(k) for k in range(self.order + 1)], dtype=float)
        return self.coeffs * fact.reshape((-1,) + (1,) * (self.coeffs.ndim - 1))

    def derivative(self, k: int = 0) -> np.ndarray:
        return self.coeffs[k] * factorial(k)

    def truncate(self, order: int) -> "Jet":
        return Jet(self.coeffs[: order + 1])

    def d(self) -> "Jet":
        """Derivative with respect to the jet variable; order drops by one."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1, dtype=float)
        return Jet(self.coeffs[1:] * k.reshape((-1,) + (1,) * (self.coeffs.ndim - 1)))

    def integrate(self, c0=0.0) -> "Jet":
        k = np.arange(1, self.order + 2, dtype=float)
        c = np.concatenate([np.asarray(c0, dtype=float)[None] * np.ones_like(self.coeffs[:1]),
                            self.coeffs / k.reshape((-1,) + (1,) * (self.coeffs.ndim - 1))])
        return Jet(c)

    def _pair(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            return self.coeffs[: n + 1], other.coeffs[: n + 1]
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            c = self.coeffs.copy()
            c[0] = c[0] + other
            return Jet(c)
        return Jet(pair[0] + pair[1])

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return Jet(self.coeffs * other)
        a, b = pair
        # scalar jets broadcast against vector jets
        if a.ndim < b.ndim:
            a = a.reshape(a.shape + (1,) * (b.ndim - a.ndim))
        elif b.ndim < a.ndim:
            b = b.reshape(b.shape + (1,) * (a.ndim - b.ndim))
        n = a.shape[0]
        out = np.zeros((n,) + np.broadcast_shapes(a.shape[1:], b.shape[1:]))
        for k in range(n):
            out[k] = np.sum(a[: k + 1] * b[k::-1], axis=0)
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet(self.coeffs / other)

    def dot(self, other: "Jet") -> "Jet":
        """Pointwise Euclidean inner product over the last axis."""
        a, b = self._pair(other)
        n = a.shape[0]
        out = np.zeros(n)
        for k in range(n):
            out[k] = np.sum(a[: k + 1] * b[k::-1])
        return Jet(out)

    def apply(self, linear) -> "Jet":
        """Apply a linear map (callable acting on the last axis) coefficientwise."""
        return Jet(linear(self.coeffs))

    def reciprocal(self) -> "Jet":
        a = self.coeffs
        if a.ndim != 1:
            raise ValueError("reciprocal needs a scalar jet")
        out = np.zeros_like(a)
        out[0] = 1.0 / a[0]
        for k in range(1, len(a)):
            out[k] = -np.dot(a[1 : k + 1], out[k - 1 :: -1]) / a[0]
        return Jet(out)

    def sqrt(self) -> "Jet":
        a = self.coeffs
        if a.ndim != 1:
            raise ValueError("sqrt needs a scalar jet")
        out = np.zeros_like(a)
        out[0] = np.sqrt(a[0])
        for k in range(1, len(a)):
            out[k] = (a[k] - np.dot(out[1:k], out[k - 1 : 0 : -1])) / (2.0 * out[0])
        return Jet(out)

    def compose(self, inner_jet: "Jet") -> "Jet":
        """
        Compose ``self`` (a jet in the displacement t - t0) with a scalar jet
        ``inner_jet`` giving that displacement; ``inner_jet.value`` must be 0.
        """
        n = min(self.order, inner_jet.order)
        tau = Jet(inner_jet.coeffs[: n + 1].copy())
        tau.coeffs[0] = 0.0
        out = Jet.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            out = out * tau + self.coeffs[k]
        return out

    def __repr__(self):
        return f"Jet(order={self.order}, shape={self.coeffs.shape[1:]})"

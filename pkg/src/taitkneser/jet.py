"""Truncated Taylor arithmetic.

A :class:`Jet` stores normalized Taylor coefficients ``f^(k)(t0) / k!`` for
``k = 0..m-1``.  Coefficient arrays carry an optional trailing batch shape, so
one jet can describe a function at many base points at once; every operation
is elementwise over the batch.

Operations between jets of different length truncate to the shorter one, so
the number of coefficients always equals the number that are exact.
"""

from __future__ import annotations

from math import factorial

import numpy as np

from .errors import DomainError

DEFAULT_ORDER = 4


def _coeffs_of(x, m, shape):
    if isinstance(x, Jet):
        return x.c[:m]
    out = np.zeros((m,) + shape)
    out[0] = x
    return out


class Jet:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)

    @classmethod
    def variable(cls, t0, order=DEFAULT_ORDER):
        """Jet of the identity function at ``t0`` (seed ``(t0; 1, 0, ...)``)."""
        t0 = np.asarray(t0, dtype=float)
        c = np.zeros((order + 1,) + t0.shape)
        c[0] = t0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value, order=DEFAULT_ORDER, shape=()):
        c = np.zeros((order + 1,) + tuple(shape))
        c[0] = value
        return cls(c)

    @property
    def order(self):
        return self.c.shape[0] - 1

    @property
    def shape(self):
        return self.c.shape[1:]

    @property
    def value(self):
        v = self.c[0]
        return float(v) if v.ndim == 0 else v

    @property
    def derivs(self):
        """Derivatives of order ``1..order`` stacked along the first axis."""
        scale = np.array([factorial(k) for k in range(1, self.c.shape[0])], dtype=float)
        return self.c[1:] * scale.reshape((-1,) + (1,) * (self.c.ndim - 1))

    def derivative(self, k=1):
        """Value of the ``k``-th derivative."""
        if k > self.order:
            raise ValueError(f"jet of order {self.order} has no derivative of order {k}")
        v = self.c[k] * factorial(k)
        return float(v) if v.ndim == 0 else v

    def diff(self):
        """Jet of the derivative; loses one order."""
        if self.order < 1:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.c.shape[0], dtype=float)
        return Jet(self.c[1:] * k.reshape((-1,) + (1,) * (self.c.ndim - 1)))

    def truncate(self, order):
        return Jet(self.c[: order + 1])

    def __getitem__(self, idx):
        # batch indexing
        if not isinstance(idx, tuple):
            idx = (idx,)
        return Jet(self.c[(slice(None),) + idx])

    def __repr__(self):
        return f"Jet(value={self.c[0]!r}, derivs={self.derivs!r})"

    # arithmetic ---------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, Jet):
            m = min(self.c.shape[0], other.c.shape[0])
            shape = np.broadcast_shapes(self.shape, other.shape)
            a = np.broadcast_to(self.c[:m], (m,) + shape)
            b = np.broadcast_to(other.c[:m], (m,) + shape)
            return a, b
        m = self.c.shape[0]
        return self.c, _coeffs_of(other, m, self.shape)

    def __neg__(self):
        return Jet(-self.c)

    def __pos__(self):
        return self

    def __add__(self, other):
        a, b = self._pair(other)
        return Jet(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        return Jet(a - b)

    def __rsub__(self, other):
        a, b = self._pair(other)
        return Jet(b - a)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c * other)
        a, b = self._pair(other)
        return Jet(_mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            if np.any(np.asarray(other) == 0):
                raise DomainError("division by zero")
            return Jet(self.c / other)
        a, b = self._pair(other)
        return Jet(_div(a, b))

    def __rtruediv__(self, other):
        a, b = self._pair(other)
        return Jet(_div(b, a))

    def __pow__(self, exponent):
        return power(self, exponent)


def _mul(a, b):
    m = a.shape[0]
    out = np.empty(np.broadcast_shapes(a.shape, b.shape))
    for k in range(m):
        s = a[0] * b[k]
        for j in range(1, k + 1):
            s = s + a[j] * b[k - j]
        out[k] = s
    return out


def _div(a, b):
    if np.any(b[0] == 0):
        raise DomainError("division by zero")
    m = a.shape[0]
    out = np.empty(np.broadcast_shapes(a.shape, b.shape))
    for k in range(m):
        s = a[k]
        for j in range(1, k + 1):
            s = s - b[j] * out[k - j]
        out[k] = s / b[0]
    return out


def _integer_power(x, n):
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


def power(x: Jet, exponent: float) -> Jet:
    """``x ** exponent`` for a constant real exponent.

    Integer exponents use repeated multiplication and are defined at zero
    base (for nonnegative powers); other exponents require a positive base.
    """
    exponent = float(exponent)
    if exponent.is_integer():
        n = int(exponent)
        if n == 0:
            return Jet.constant(1.0, x.order, x.shape)
        pos = _integer_power(x, abs(n))
        return pos if n > 0 else 1.0 / pos
    a = x.c
    if np.any(a[0] <= 0):
        raise DomainError(f"non-integer power {exponent!r} of a nonpositive base")
    m = a.shape[0]
    out = np.empty_like(a)
    out[0] = a[0] ** exponent
    for k in range(1, m):
        s = np.zeros_like(a[0])
        for j in range(1, k + 1):
            s = s + (exponent * j - (k - j)) * a[j] * out[k - j]
        out[k] = s / (k * a[0])
    return Jet(out)


def sqrt(x: Jet) -> Jet:
    if np.any(x.c[0] <= 0):
        raise DomainError("sqrt of a nonpositive value")
    return power(x, 0.5)


def exp(x: Jet) -> Jet:
    a = x.c
    m = a.shape[0]
    out = np.empty_like(a)
    out[0] = np.exp(a[0])
    for k in range(1, m):
        s = np.zeros_like(a[0])
        for j in range(1, k + 1):
            s = s + j * a[j] * out[k - j]
        out[k] = s / k
    return Jet(out)


def log(x: Jet) -> Jet:
    a = x.c
    if np.any(a[0] <= 0):
        raise DomainError("log of a nonpositive value")
    m = a.shape[0]
    out = np.empty_like(a)
    out[0] = np.log(a[0])
    for k in range(1, m):
        s = np.zeros_like(a[0])
        for j in range(1, k):
            s = s + j * out[j] * a[k - j]
        out[k] = (a[k] - s / k) / a[0]
    return Jet(out)


def sincos(x: Jet) -> tuple[Jet, Jet]:
    a = x.c
    m = a.shape[0]
    s = np.empty_like(a)
    c = np.empty_like(a)
    s[0] = np.sin(a[0])
    c[0] = np.cos(a[0])
    for k in range(1, m):
        ss = np.zeros_like(a[0])
        cc = np.zeros_like(a[0])
        for j in range(1, k + 1):
            ss = ss + j * a[j] * c[k - j]
            cc = cc + j * a[j] * s[k - j]
        s[k] = ss / k
        c[k] = -cc / k
    return Jet(s), Jet(c)


def sin(x: Jet) -> Jet:
    return sincos(x)[0]


def cos(x: Jet) -> Jet:
    return sincos(x)[1]


def tan(x: Jet) -> Jet:
    s, c = sincos(x)
    if np.any(np.abs(c.c[0]) < 1e-300):
        raise DomainError("tan at an odd multiple of pi/2")
    return s / c


def atan(x: Jet) -> Jet:
    a = x.c
    m = a.shape[0]
    out = np.empty_like(a)
    out[0] = np.arctan(a[0])
    if m > 1:
        # integrate f' / (1 + f^2)
        g = x.diff() / (1.0 + x.truncate(m - 2) * x.truncate(m - 2))
        for k in range(1, m):
            out[k] = g.c[k - 1] / k
    return Jet(out)

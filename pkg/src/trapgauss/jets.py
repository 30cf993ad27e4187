"""Truncated bivariate Taylor arithmetic (jets).

A :class:`Jet` of degree ``d`` at base point ``(u0, v0)`` stores the
normalized Taylor coefficients ``c[a, b] = d^a_u d^b_v f / (a! b!)`` for all
``a + b <= d``.  Products are truncated Cauchy products, so derivatives up to
order ``d`` propagate exactly (up to rounding) through any composition of the
supported operations.

The elementary functions in this module accept jets, plain floats and numpy
arrays; non-jet inputs are forwarded to numpy.

>>> u = Jet.variable(1.0, 2.0, "u")
>>> v = Jet.variable(1.0, 2.0, "v")
>>> (u * v).deriv(1, 1)
1.0
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import DegreeExhausted, DivisionNearZero, DomainError

DEFAULT_DEGREE = 3
DIV_TOL = 1e-14


@lru_cache(maxsize=None)
def _layout(degree):
    """Monomial order, index map and product/partial tables for ``degree``."""
    monomials = [(a, t - a) for t in range(degree + 1) for a in range(t, -1, -1)]
    index = {m: k for k, m in enumerate(monomials)}
    I, J, K = [], [], []
    for i, (a1, b1) in enumerate(monomials):
        for j, (a2, b2) in enumerate(monomials):
            if a1 + a2 + b1 + b2 <= degree:
                I.append(i)
                J.append(j)
                K.append(index[(a1 + a2, b1 + b2)])
    return monomials, index, np.array(I), np.array(J), np.array(K)


@lru_cache(maxsize=None)
def _partial_table(degree, direction):
    """Source indices and factors mapping a degree-d jet to its partial."""
    src_mon, src_idx, *_ = _layout(degree)
    dst_mon, *_ = _layout(degree - 1)
    src, fac = [], []
    for a, b in dst_mon:
        if direction == "u":
            src.append(src_idx[(a + 1, b)])
            fac.append(a + 1)
        else:
            src.append(src_idx[(a, b + 1)])
            fac.append(b + 1)
    return np.array(src), np.array(fac, dtype=float)


class Jet:
    """Bivariate truncated Taylor expansion."""

    __slots__ = ("coeffs", "degree", "base")
    __array_priority__ = 1000

    def __init__(self, coeffs, degree=DEFAULT_DEGREE, base=(0.0, 0.0)):
        coeffs = np.asarray(coeffs, dtype=float)
        n = (degree + 1) * (degree + 2) // 2
        if coeffs.shape != (n,):
            raise ValueError(f"degree {degree} jet needs {n} coefficients, got {coeffs.shape}")
        self.coeffs = coeffs
        self.degree = degree
        self.base = (float(base[0]), float(base[1]))

    # -- construction -------------------------------------------------

    @classmethod
    def constant(cls, value, base=(0.0, 0.0), degree=DEFAULT_DEGREE):
        c = np.zeros((degree + 1) * (degree + 2) // 2)
        c[0] = value
        return cls(c, degree, base)

    @classmethod
    def variable(cls, u, v, which, degree=DEFAULT_DEGREE):
        """Jet of the coordinate function ``which`` ("u" or "v") at ``(u, v)``."""
        c = np.zeros((degree + 1) * (degree + 2) // 2)
        if which == "u":
            c[0] = u
            if degree >= 1:
                c[1] = 1.0
        elif which == "v":
            c[0] = v
            if degree >= 1:
                c[2] = 1.0
        else:
            raise ValueError(f"unknown variable {which!r}")
        return cls(c, degree, (u, v))

    @classmethod
    def from_derivatives(cls, derivs, base=(0.0, 0.0), degree=DEFAULT_DEGREE):
        """Build from a mapping ``(a, b) -> d^a_u d^b_v f``; missing entries are 0."""
        monomials, *_ = _layout(degree)
        c = np.array(
            [derivs.get((a, b), 0.0) / (math.factorial(a) * math.factorial(b)) for a, b in monomials]
        )
        return cls(c, degree, base)

    # -- access -------------------------------------------------------

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def coeff(self, a, b) -> float:
        if a + b > self.degree:
            raise DegreeExhausted(f"({a},{b}) exceeds degree {self.degree}")
        return float(self.coeffs[_layout(self.degree)[1][(a, b)]])

    def deriv(self, a, b) -> float:
        """The partial derivative ``d^a_u d^b_v`` at the base point."""
        return self.coeff(a, b) * math.factorial(a) * math.factorial(b)

    def truncate(self, degree) -> Jet:
        if degree > self.degree:
            raise ValueError("cannot raise the degree of a jet")
        n = (degree + 1) * (degree + 2) // 2
        return Jet(self.coeffs[:n].copy(), degree, self.base)

    def is_constant(self) -> bool:
        return not np.any(self.coeffs[1:])

    def __repr__(self):
        return f"Jet(degree={self.degree}, base={self.base}, coeffs={self.coeffs.tolist()})"

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        """Return (a, b) coefficient arrays at a common degree, and that degree."""
        if isinstance(other, Jet):
            if other.base != self.base:
                raise ValueError(f"jets at different base points {self.base} and {other.base}")
            d = min(self.degree, other.degree)
            n = (d + 1) * (d + 2) // 2
            return self.coeffs[:n], other.coeffs[:n], d
        c = np.zeros_like(self.coeffs)
        c[0] = float(other)
        return self.coeffs, c, self.degree

    def __add__(self, other):
        a, b, d = self._coerce(other)
        return Jet(a + b, d, self.base)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, d = self._coerce(other)
        return Jet(a - b, d, self.base)

    def __rsub__(self, other):
        a, b, d = self._coerce(other)
        return Jet(b - a, d, self.base)

    def __neg__(self):
        return Jet(-self.coeffs, self.degree, self.base)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.coeffs * float(other), self.degree, self.base)
        a, b, d = self._coerce(other)
        _, _, I, J, K = _layout(d)
        out = np.bincount(K, weights=a[I] * b[J], minlength=a.size)
        return Jet(out, d, self.base)

    __rmul__ = __mul__

    def reciprocal(self):
        b0 = self.coeffs[0]
        if b0 == 0.0 or abs(b0) <= DIV_TOL * np.max(np.abs(self.coeffs)):
            raise DivisionNearZero(f"division by a jet with value {b0!r}")
        return _compose(self, _reciprocal_derivs(b0, self.degree))

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            if other == 0:
                raise DivisionNearZero("division by zero")
            return Jet(self.coeffs / float(other), self.degree, self.base)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * float(other)

    def __pow__(self, p):
        return power(self, p)

    def __rpow__(self, base):
        return exp(log(Jet.constant(base, self.base, self.degree)) * self)


def _compose(a: Jet, derivs) -> Jet:
    """Taylor composition ``f(a)`` from ``derivs[k] = f^(k)(a.value)``."""
    t = a.coeffs.copy()
    t[0] = 0.0
    _, _, I, J, K = _layout(a.degree)
    n = t.size
    out = np.zeros(n)
    out[0] = derivs[0]
    tk = np.zeros(n)
    tk[0] = 1.0
    for k in range(1, a.degree + 1):
        tk = np.bincount(K, weights=tk[I] * t[J], minlength=n)
        out += derivs[k] / math.factorial(k) * tk
    return Jet(out, a.degree, a.base)


def _reciprocal_derivs(x, degree):
    return [(-1) ** k * math.factorial(k) / x ** (k + 1) for k in range(degree + 1)]


def _scalar_domain_check(name, x, ok):
    if np.ndim(x) == 0 and not ok(float(x)):
        raise DomainError(f"{name} undefined at {float(x)!r}")


def sin(x):
    if not isinstance(x, Jet):
        return np.sin(x)
    x0 = x.value
    return _compose(x, [math.sin(x0 + k * math.pi / 2) for k in range(x.degree + 1)])


def cos(x):
    if not isinstance(x, Jet):
        return np.cos(x)
    x0 = x.value
    return _compose(x, [math.cos(x0 + k * math.pi / 2) for k in range(x.degree + 1)])


def sinh(x):
    if not isinstance(x, Jet):
        return np.sinh(x)
    s, c = math.sinh(x.value), math.cosh(x.value)
    return _compose(x, [s if k % 2 == 0 else c for k in range(x.degree + 1)])


def cosh(x):
    if not isinstance(x, Jet):
        return np.cosh(x)
    s, c = math.sinh(x.value), math.cosh(x.value)
    return _compose(x, [c if k % 2 == 0 else s for k in range(x.degree + 1)])


def exp(x):
    if not isinstance(x, Jet):
        return np.exp(x)
    e = math.exp(x.value)
    return _compose(x, [e] * (x.degree + 1))


def log(x):
    """Natural logarithm; the domain is the positive reals."""
    if not isinstance(x, Jet):
        _scalar_domain_check("ln", x, lambda t: t > 0)
        return np.log(x)
    x0 = x.value
    if not x0 > 0:
        raise DomainError(f"ln undefined at {x0!r}")
    derivs = [math.log(x0)] + [
        (-1) ** (k - 1) * math.factorial(k - 1) / x0**k for k in range(1, x.degree + 1)
    ]
    return _compose(x, derivs)


ln = log


def sqrt(x):
    if not isinstance(x, Jet):
        _scalar_domain_check("sqrt", x, lambda t: t >= 0)
        return np.sqrt(x)
    x0 = x.value
    if not x0 > 0:
        raise DomainError(f"sqrt of a jet needs a positive value, got {x0!r}")
    derivs, c = [], 1.0
    for k in range(x.degree + 1):
        derivs.append(c * x0 ** (0.5 - k))
        c *= 0.5 - k
    return _compose(x, derivs)


def power(x, p):
    """``x ** p``: repeated products for integer ``p``, ``exp(p ln x)`` otherwise."""
    if isinstance(p, Jet):
        if not p.is_constant():
            return exp(p * log(x))
        p = p.value
    if not isinstance(x, Jet):
        if float(p).is_integer():
            return np.power(x, int(p)) if int(p) >= 0 else 1.0 / np.power(x, -int(p))
        _scalar_domain_check("pow", x, lambda t: t > 0)
        return np.power(x, p)
    if float(p).is_integer():
        n = int(p)
        result = Jet.constant(1.0, x.base, x.degree)
        sq, m = x, abs(n)
        while m:
            if m & 1:
                result = result * sq
            m >>= 1
            if m:
                sq = sq * sq
        return result if n >= 0 else result.reciprocal()
    return exp(log(x) * float(p))


def partial(a: Jet, direction: str) -> Jet:
    """Jet of ``d a / d direction`` with degree lowered by one."""
    if a.degree < 1:
        raise DegreeExhausted("cannot differentiate a degree-0 jet")
    if direction not in ("u", "v"):
        raise ValueError(f"unknown direction {direction!r}")
    src, fac = _partial_table(a.degree, direction)
    return Jet(a.coeffs[src] * fac, a.degree - 1, a.base)


def exact_sum(jets):
    """Sum jets coefficient-wise with exact (fsum) rounding.

    Used for indefinite inner products, where large space-like and time-like
    contributions cancel.
    """
    jets = list(jets)
    d = min(j.degree for j in jets)
    n = (d + 1) * (d + 2) // 2
    stack = np.array([j.coeffs[:n] for j in jets])
    return Jet(np.array([math.fsum(col) for col in stack.T]), d, jets[0].base)

"""Truncated Taylor jets of a scalar function of one variable.

A :class:`Jet` stores raw derivatives ``d[k] = f^(k)(s0)`` for
``k = 0..order``.  Arithmetic follows the Leibniz rule; binary operations on
jets of different order truncate to the smaller order.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Sequence

from .errors import DivisionByZeroJet, DomainErrorJet, NotAdmissible

DEFAULT_ORDER = 6
_DIV_EPS = 1e-300


@lru_cache(maxsize=None)
def _binom_row(n: int) -> tuple:
    return tuple(math.comb(n, k) for k in range(n + 1))


class Jet:
    __slots__ = ("d",)

    def __init__(self, d: Sequence[float]):
        d = [float(v) for v in d]
        if not d:
            raise ValueError("a jet needs at least its value")
        self.d = d

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c: float, order: int = DEFAULT_ORDER) -> "Jet":
        return cls([c] + [0.0] * order)

    @classmethod
    def variable(cls, s0: float, order: int = DEFAULT_ORDER) -> "Jet":
        if order == 0:
            return cls([s0])
        return cls([s0, 1.0] + [0.0] * (order - 1))

    @classmethod
    def from_taylor(cls, coeffs: Sequence[float]) -> "Jet":
        return cls([c * math.factorial(k) for k, c in enumerate(coeffs)])

    # -- basics -----------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.d) - 1

    @property
    def value(self) -> float:
        return self.d[0]

    def taylor(self) -> list:
        return [v / math.factorial(k) for k, v in enumerate(self.d)]

    def truncate(self, order: int) -> "Jet":
        return Jet(self.d[: order + 1])

    def derivative(self) -> "Jet":
        if self.order < 1:
            raise ValueError("cannot differentiate an order-0 jet")
        return Jet(self.d[1:])

    def __repr__(self):
        return f"Jet({self.d!r})"

    def __float__(self):
        return self.d[0]

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.d == other.d
        return NotImplemented

    __hash__ = None

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, float)):
            return Jet.constant(float(other), self.order)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(len(self.d), len(other.d))
        return Jet([self.d[k] + other.d[k] for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(len(self.d), len(other.d))
        return Jet([self.d[k] - other.d[k] for k in range(n)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Jet([-v for v in self.d])

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Jet([v * other for v in self.d])
        if not isinstance(other, Jet):
            return NotImplemented
        a, b = self.d, other.d
        n = min(len(a), len(b))
        out = []
        for k in range(n):
            row = _binom_row(k)
            acc = 0.0
            for j in range(k + 1):
                acc += row[j] * a[j] * b[k - j]
            out.append(acc)
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            if abs(other) <= _DIV_EPS:
                raise DivisionByZeroJet("division by zero scalar")
            return Jet([v / other for v in self.d])
        if not isinstance(other, Jet):
            return NotImplemented
        return jet_div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return jet_div(other, self)

    def __pow__(self, p):
        if isinstance(p, int) or (isinstance(p, float) and p.is_integer()):
            return pow_int(self, int(p))
        return pow_real(self, float(p))


# -- functional API ------------------------------------------------------------

def jet_add(a: Jet, b: Jet) -> Jet:
    return a + b


def jet_sub(a: Jet, b: Jet) -> Jet:
    return a - b


def jet_mul(a: Jet, b: Jet) -> Jet:
    return a * b


def jet_div(a: Jet, b: Jet) -> Jet:
    if abs(b.d[0]) <= _DIV_EPS:
        raise DivisionByZeroJet(f"division by a jet with value {b.d[0]!r}")
    n = min(len(a.d), len(b.d))
    q = []
    b0 = b.d[0]
    for k in range(n):
        row = _binom_row(k)
        acc = a.d[k]
        for j in range(1, k + 1):
            acc -= row[j] * b.d[j] * q[k - j]
        q.append(acc / b0)
    return Jet(q)


def _chain_pair(a: Jet, f0: float, g0: float, sign: float):
    """Derivatives of (F, G) = (f(a), g(a)) with F' = a' G, G' = sign * a' F.

    Covers sin/cos (sign=-1) and sinh/cosh (sign=+1).
    """
    n = len(a.d)
    F, G = [f0], [g0]
    for k in range(1, n):
        row = _binom_row(k - 1)
        fk = gk = 0.0
        for j in range(k):
            fk += row[j] * a.d[j + 1] * G[k - 1 - j]
            gk += row[j] * a.d[j + 1] * F[k - 1 - j]
        F.append(fk)
        G.append(sign * gk)
    return Jet(F), Jet(G)


def sin(a: Jet) -> Jet:
    return _chain_pair(a, math.sin(a.d[0]), math.cos(a.d[0]), -1.0)[0]


def cos(a: Jet) -> Jet:
    return _chain_pair(a, math.cos(a.d[0]), -math.sin(a.d[0]), -1.0)[0]


def sinh(a: Jet) -> Jet:
    return _chain_pair(a, math.sinh(a.d[0]), math.cosh(a.d[0]), 1.0)[0]


def cosh(a: Jet) -> Jet:
    return _chain_pair(a, math.cosh(a.d[0]), math.sinh(a.d[0]), 1.0)[0]


def exp(a: Jet) -> Jet:
    n = len(a.d)
    e = [math.exp(a.d[0])]
    for k in range(1, n):
        row = _binom_row(k - 1)
        e.append(sum(row[j] * a.d[j + 1] * e[k - 1 - j] for j in range(k)))
    return Jet(e)


def ln(a: Jet) -> Jet:
    if not a.d[0] > 0.0:
        raise DomainErrorJet(f"ln of non-positive value {a.d[0]!r}")
    if a.order == 0:
        return Jet([math.log(a.d[0])])
    dl = jet_div(a.derivative(), a.truncate(a.order - 1))
    return Jet([math.log(a.d[0])] + dl.d)


def sqrt(a: Jet) -> Jet:
    if not a.d[0] > 0.0:
        raise DomainErrorJet(f"sqrt of non-positive value {a.d[0]!r}")
    r0 = math.sqrt(a.d[0])
    r = [r0]
    for k in range(1, len(a.d)):
        row = _binom_row(k)
        acc = a.d[k]
        for j in range(1, k):
            acc -= row[j] * r[j] * r[k - j]
        r.append(acc / (2.0 * r0))
    return Jet(r)


def pow_int(a: Jet, n: int) -> Jet:
    if n < 0:
        return jet_div(Jet.constant(1.0, a.order), pow_int(a, -n))
    result = Jet.constant(1.0, a.order)
    base = a
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def pow_real(a: Jet, p: float) -> Jet:
    if not a.d[0] > 0.0:
        raise DomainErrorJet(f"real power of non-positive value {a.d[0]!r}")
    return exp(ln(a) * p)


ELEMENTARY: dict[str, Callable[[Jet], Jet]] = {
    "sin": sin,
    "cos": cos,
    "sinh": sinh,
    "cosh": cosh,
    "exp": exp,
    "ln": ln,
    "sqrt": sqrt,
}


def jet_elementary(f: str, a: Jet, p: float | None = None) -> Jet:
    if f == "pow_int":
        return pow_int(a, int(p))
    if f == "pow_real":
        return pow_real(a, float(p))
    try:
        return ELEMENTARY[f](a)
    except KeyError:
        raise ValueError(f"unknown elementary function {f!r}") from None


# -- composition and reversion -------------------------------------------------

def _series_mul(a, b, n):
    out = [0.0] * n
    for i, ai in enumerate(a[:n]):
        if ai == 0.0:
            continue
        for j in range(n - i):
            out[i + j] += ai * b[j]
    return out


def _series_compose(outer, inner, n):
    """Taylor coefficients of outer(inner(u)) where inner has zero constant term."""
    out = [0.0] * n
    power = [1.0] + [0.0] * (n - 1)
    for k, c in enumerate(outer[:n]):
        if k > 0:
            power = _series_mul(power, inner, n)
        if c != 0.0:
            for i in range(n):
                out[i] += c * power[i]
    return out


def compose(f: Jet, g: Jet) -> Jet:
    """Jet of ``f(g(s))`` given the jet of ``f`` at ``g(s0)`` and of ``g`` at ``s0``."""
    n = min(len(f.d), len(g.d))
    inner = g.taylor()[:n]
    inner[0] = 0.0
    return Jet.from_taylor(_series_compose(f.taylor(), inner, n))


def series_revert(x: Jet, t0: float = 0.0, tol: float = 1e-8) -> Jet:
    """Jet of the inverse function ``t(s)`` at ``s0 = x.d[0]``.

    ``x`` is the jet of ``x(t)`` at ``t0``; jets do not record their expansion
    point, so ``t0`` is passed separately and becomes the value of the result.
    """
    if abs(x.d[1] if x.order >= 1 else 0.0) < tol:
        raise NotAdmissible(f"x'(t0) = {x.d[1] if x.order >= 1 else 0.0!r} is below {tol:g}")
    n = len(x.d)
    a = x.taylor()
    a[0] = 0.0
    da = [(k + 1) * a[k + 1] for k in range(n - 1)] + [0.0]
    # Newton on truncated series: delta <- delta - (X(delta) - u) / X'(delta)
    delta = [0.0] * n
    delta[1] = 1.0 / a[1]
    u = [0.0] * n
    u[1] = 1.0
    for _ in range(n):
        residual = [p - q for p, q in zip(_series_compose(a, delta, n), u)]
        slope = _series_compose(da, delta, n)
        step = jet_div(Jet.from_taylor(residual), Jet.from_taylor(slope)).taylor()
        delta = [p - q for p, q in zip(delta, step)]
        delta[0] = 0.0
    delta[0] = t0
    return Jet.from_taylor(delta)


# -- finite differences ---------------------------------------------------------

def _central_stencil(order: int):
    """Second-order central-difference weights for ``f^(order)`` on offsets."""
    import numpy as np

    half = (order + 1) // 2
    offsets = np.arange(-half, half + 1, dtype=float)
    m = len(offsets)
    vander = np.vander(offsets, m, increasing=True).T
    rhs = np.zeros(m)
    rhs[order] = math.factorial(order)
    return offsets, np.linalg.solve(vander, rhs)


def _fd_once(f, s, order, h):
    if order == 0:
        return f(s)
    offsets, weights = _central_stencil(order)
    # differencing against f(s) keeps constants exact (weights sum to zero)
    f0 = f(s)
    return float(sum(wt * (f(s + o * h) - f0) for o, wt in zip(offsets, weights))) / h ** order


def fd_derivatives(f: Callable[[float], float], s: float, order: int, h: float = 1e-2) -> list:
    """Derivatives ``f(s), f'(s), ..., f^(order)(s)`` by central differences
    with one Richardson step (combining steps ``h`` and ``h/2``).

    Stencils use at most ``+-(order+1)/2`` multiples of ``h``.
    """
    if order > 5:
        raise ValueError("fd_derivatives supports order <= 5")
    if not 1e-4 <= h <= 1e-1:
        raise ValueError("step h must lie in [1e-4, 1e-1]")
    out = [float(f(s))]
    for k in range(1, order + 1):
        coarse = _fd_once(f, s, k, h)
        fine = _fd_once(f, s, k, h / 2)
        out.append((4.0 * fine - coarse) / 3.0)
    return out

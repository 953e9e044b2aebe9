"""Solve the Frenet system for prescribed curvatures.

The isotropic parts of ``T, N, B1, B2`` and of the position are integrated
with fixed-step RK4; the first components are structural (``T.x = 1``,
the others 0, ``x = x0 + (s - s0)``) and never touched by the integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import legendre as L

from . import dsl
from .algebra import PGVector, det4
from .errors import (
    InconsistentSignature,
    InsufficientSamples,
    InvalidSpecification,
    StepTooLarge,
)
from .frenet import SignTriple
from .jets import Jet

GRAM_LIMIT = 1e-6
DEFAULT_STEP = 1e-3

CurvatureLike = Union[float, int, str, dsl.Expr, Callable[[float], float]]


def _as_function(f: CurvatureLike, param: str = "s") -> Callable[[float], float]:
    if isinstance(f, (int, float)):
        v = float(f)
        return lambda s: v
    if isinstance(f, str):
        f = dsl.parse_expr(f, param)
    if isinstance(f, dsl.AST_TYPES):
        expr = f
        return lambda s: dsl.eval_float(expr, s)
    if callable(f):
        return f
    raise TypeError(f"cannot use {f!r} as a curvature function")


@dataclass
class CurvatureSpec:
    kappa: CurvatureLike
    tau: CurvatureLike
    sigma: CurvatureLike
    signs: SignTriple
    domain: tuple = (0.0, 1.0)
    step: float = DEFAULT_STEP

    def __post_init__(self):
        s0, s1 = map(float, self.domain)
        if not s1 > s0:
            raise InvalidSpecification(f"empty domain [{s0}, {s1}]")
        if not (self.step > 0 and self.step <= (s1 - s0) / 10 * (1 + 1e-12)):
            raise InvalidSpecification(
                f"step {self.step} must be positive and at most a tenth of the domain length")
        self.domain = (s0, s1)
        self.k_fn = _as_function(self.kappa)
        self.t_fn = _as_function(self.tau)
        self.s_fn = _as_function(self.sigma)

    def describe(self) -> dict:
        def show(v):
            if isinstance(v, dsl.AST_TYPES):
                return dsl.to_text(v)
            if isinstance(v, (int, float, str)):
                return v
            return getattr(v, "__name__", "function")
        return {
            "kappa": show(self.kappa), "tau": show(self.tau), "sigma": show(self.sigma),
            "signs": list(self.signs.eps), "domain": list(self.domain), "step": self.step,
        }


def canonical_initial_frame(signs, tangent: Sequence[float] = (0.0, 0.0, 0.0)):
    """Coordinate-axis frame realizing ``diag(1, eps1, eps2, eps3)``.

    The vector with sign -1 takes the ``y`` axis and the other two take
    ``z`` and ``w`` in order; the last of them is flipped if needed so that
    ``det[T, N, B1, B2] = +1``.  ``tangent`` sets the isotropic part of
    ``T``, which is free initial data (it pairs to zero with every
    isotropic vector).
    """
    eps = signs.eps if isinstance(signs, SignTriple) else tuple(signs)
    if sorted(eps) != [-1, 1, 1]:
        raise InconsistentSignature(
            f"signs {eps}: the isotropic slice has exactly one timelike direction")
    axes = {}
    free = [2, 3]
    for i, e in enumerate(eps):
        axes[i] = 1 if e == -1 else free.pop(0)
    vecs = []
    for i in range(3):
        v = [0.0, 0.0, 0.0, 0.0]
        v[axes[i]] = 1.0
        vecs.append(v)
    T = [1.0, *map(float, tangent)]
    if det4([T, *vecs]) < 0:
        last = max(i for i in range(3) if eps[i] == 1)
        vecs[last][axes[last]] = -1.0
    return tuple(PGVector(*v) for v in [T, *vecs])


@dataclass
class FramePath:
    s: np.ndarray
    positions: np.ndarray     # (n, 4)
    T: np.ndarray
    N: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    gram_residual: np.ndarray
    signs: SignTriple
    spec: Optional[CurvatureSpec] = field(default=None, repr=False)

    def __len__(self):
        return len(self.s)

    def point(self, i) -> PGVector:
        return PGVector(*self.positions[i])

    def frame(self, i):
        return tuple(PGVector(*a[i]) for a in (self.T, self.N, self.B1, self.B2))

    @property
    def max_gram_residual(self) -> float:
        return float(np.max(self.gram_residual))


def _gram_residual(N, B1, B2, eps) -> float:
    g = np.diag([-1.0, 1.0, 1.0])
    F = np.array([N, B1, B2])
    return float(np.max(np.abs(F @ g @ F.T - np.diag(eps))))


def _reorthonormalize(N, B1, B2, eps):
    g = np.diag([-1.0, 1.0, 1.0])
    out = []
    for v, e in zip((N, B1, B2), eps):
        for u, eu in zip(out, eps):
            v = v - (v @ g @ u) * eu * u
        v = v / math.sqrt(abs(v @ g @ v))
        out.append(v)
    return out


def integrate_frenet(spec: CurvatureSpec, frame0=None, point0=None,
                     reorthonormalize: bool = False,
                     gram_limit: float = GRAM_LIMIT) -> FramePath:
    signs = spec.signs
    e1, e2, e3 = signs.eps
    if frame0 is None:
        frame0 = canonical_initial_frame(signs)
    if point0 is None:
        point0 = PGVector(0.0, 0.0, 0.0, 0.0)
    T0, N0, B10, B20 = (np.array(list(v), dtype=float) for v in frame0)
    if T0[0] != 1.0 or N0[0] != 0.0 or B10[0] != 0.0 or B20[0] != 0.0:
        raise InvalidSpecification("initial frame needs T.x = 1 and isotropic N, B1, B2")
    r0 = _gram_residual(N0[1:], B10[1:], B20[1:], signs.eps)
    if r0 > 1e-12:
        raise InvalidSpecification(f"initial frame Gram residual {r0:.3g} exceeds 1e-12")

    s0, s1 = spec.domain
    n = max(1, int(math.ceil((s1 - s0) / spec.step - 1e-9)))
    h = (s1 - s0) / n
    grid = s0 + h * np.arange(n + 1)
    grid[-1] = s1

    def curv(s):
        return spec.k_fn(s), spec.t_fn(s), spec.s_fn(s)

    def rhs(s, y):
        k, t, sg = curv(s)
        T, N, B1, B2 = y[0:3], y[3:6], y[6:9], y[9:12]
        return np.concatenate([
            k * N,
            t * B1,
            -e1 * e2 * t * N + e3 * sg * B2,
            -e2 * sg * B1,
            T,
        ])

    y = np.concatenate([T0[1:], N0[1:], B10[1:], B20[1:], np.array(list(point0), dtype=float)[1:]])
    states = np.empty((n + 1, 15))
    gram = np.empty(n + 1)
    states[0] = y
    gram[0] = r0
    for i in range(n):
        s = grid[i]
        if i == 0:
            _check_positive(curv(s), s)
        k1 = rhs(s, y)
        k2 = rhs(s + h / 2, y + h / 2 * k1)
        k3 = rhs(s + h / 2, y + h / 2 * k2)
        k4 = rhs(s + h, y + h * k3)
        _check_positive(curv(s + h), s + h)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        res = _gram_residual(y[3:6], y[6:9], y[9:12], signs.eps)
        if res > gram_limit:
            raise StepTooLarge(f"Gram residual {res:.3g} at s={s + h:g}; use a smaller step than {h:g}")
        if reorthonormalize:
            N, B1, B2 = _reorthonormalize(y[3:6], y[6:9], y[9:12], signs.eps)
            y = np.concatenate([y[0:3], N, B1, B2, y[12:15]])
        states[i + 1] = y
        gram[i + 1] = res

    m = n + 1
    ones, zeros = np.ones((m, 1)), np.zeros((m, 1))
    xs = (point0[0] + (grid - s0)).reshape(m, 1)
    return FramePath(
        s=grid,
        positions=np.hstack([xs, states[:, 12:15]]),
        T=np.hstack([ones, states[:, 0:3]]),
        N=np.hstack([zeros, states[:, 3:6]]),
        B1=np.hstack([zeros, states[:, 6:9]]),
        B2=np.hstack([zeros, states[:, 9:12]]),
        gram_residual=gram,
        signs=signs,
        spec=spec,
    )


def _check_positive(kts, s):
    k, t, _ = kts
    # isolated zeros are tolerated: the ODE stays well posed and the
    # apparatus of the result reports the degeneracy at that point
    if not (k >= 0 and t >= 0 and math.isfinite(k) and math.isfinite(t)):
        raise InvalidSpecification(f"kappa and tau must be non-negative; got ({k:g}, {t:g}) at s={s:g}")


# -- tabulated curves ---------------------------------------------------------

MIN_SAMPLES = 7
POINT_DEGREE, POINT_HALF_WINDOW = 11, 0.18
HERMITE_DEGREE, HERMITE_HALF_WINDOW = 15, 0.3


class TabulatedCurve:
    """Curve known through samples on an increasing grid.

    Derivatives come from a local least-squares Legendre fit over the
    samples within ``half_window`` of the query point (the window slides
    inward near the ends).  When tangent samples are given they enter the
    fit alongside the positions, which buys roughly one extra order of
    accuracy in the highest derivatives.  The parameter is the grid
    variable; for integrator output that is arclength.
    """

    def __init__(self, t, points, tangents=None, degree: Optional[int] = None,
                 half_window: Optional[float] = None, label: str = "", param: str = "s"):
        t = np.asarray(t, dtype=float)
        points = np.asarray(points, dtype=float)
        if t.ndim != 1 or points.shape != (len(t), 4):
            raise InvalidSpecification("tabulated curve needs n parameter values and n x 4 points")
        if len(t) < MIN_SAMPLES:
            raise InsufficientSamples(f"{len(t)} samples; at least {MIN_SAMPLES} needed")
        if np.any(np.diff(t) <= 0):
            raise InvalidSpecification("tabulated parameter values must increase")
        if tangents is not None:
            tangents = np.asarray(tangents, dtype=float)
            if tangents.shape != points.shape:
                raise InvalidSpecification("tangent samples must match the point samples")
        hermite = tangents is not None
        if degree is None:
            degree = HERMITE_DEGREE if hermite else POINT_DEGREE
        if half_window is None:
            half_window = HERMITE_HALF_WINDOW if hermite else POINT_HALF_WINDOW
        self.t = t
        self.points = points
        self.tangents = tangents
        self.degree = min(degree, len(t) - 1)
        self.half_window = half_window
        self.label = label
        self.param = param
        self.domain = (float(t[0]), float(t[-1]))

    def _window(self, t0):
        a, b = self.domain
        hw = min(self.half_window, (b - a) / 2)
        lo, hi = t0 - hw, t0 + hw
        if lo < a:
            lo, hi = a, a + 2 * hw
        if hi > b:
            lo, hi = b - 2 * hw, b
        i = np.searchsorted(self.t, lo - 1e-12, side="left")
        j = np.searchsorted(self.t, hi + 1e-12, side="right")
        if j - i < self.degree + 1:
            c = int(np.searchsorted(self.t, t0))
            half = (self.degree + 2) // 2
            i = max(0, min(c - half, len(self.t) - self.degree - 1))
            j = i + self.degree + 1
        return i, j

    def _fits(self, t0):
        i, j = self._window(t0)
        ts = self.t[i:j]
        a, b = ts[0], ts[-1]
        half = (b - a) / 2
        u = (ts - (a + b) / 2) / half
        V = L.legvander(u, self.degree)
        if self.tangents is not None:
            # d/dt of each basis polynomial, scaled back by half so rows are comparable
            D = np.column_stack([L.legval(u, L.legder(np.eye(self.degree + 1)[k]))
                                 for k in range(self.degree + 1)])
            A = np.vstack([V, D])
        else:
            A = V
        out = []
        for k in range(4):
            rhs = self.points[i:j, k]
            if self.tangents is not None:
                rhs = np.concatenate([rhs, half * self.tangents[i:j, k]])
            coef, *_ = np.linalg.lstsq(A, rhs, rcond=None)
            out.append(L.Legendre(coef, domain=[a, b]))
        return out

    def coordinate_jets(self, t0: float, order: int = 6):
        a, b = self.domain
        if not (a - 1e-12 <= t0 <= b + 1e-12):
            raise InvalidSpecification(f"{t0} outside tabulated range [{a}, {b}]")
        out = []
        for p in self._fits(t0):
            d = [float(p(t0))]
            q = p
            for _ in range(order):
                q = q.deriv()
                d.append(float(q(t0)))
            out.append(Jet(d))
        return tuple(out)

    def evaluate(self, t: float):
        return tuple(float(p(t)) for p in self._fits(t))


def sample_to_curvedef(path: FramePath, degree: Optional[int] = None,
                       half_window: Optional[float] = None) -> TabulatedCurve:
    if len(path) < MIN_SAMPLES:
        raise InsufficientSamples(f"{len(path)} samples; at least {MIN_SAMPLES} needed")
    return TabulatedCurve(path.s, path.positions, path.T, degree, half_window, label="integrated")

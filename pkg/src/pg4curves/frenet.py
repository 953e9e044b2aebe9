"""Frenet-Serret apparatus of admissible curves.

Everything is computed on jets, so each frame vector and curvature comes
with its derivatives at the sample point.  Signs ``eps1, eps2, eps3`` are
read off the self-products of ``N, B1, B2``; they are never assumed.

With the definitions ``N = T'/kappa``, ``B1 = N'/tau``, ``sigma = <B1', B2>``
the frame satisfies::

    T'  = kappa N
    N'  = tau B1
    B1' = -eps1 eps2 tau N + eps3 sigma B2
    B2' = -eps2 sigma B1

which is what this module calls the runtime-sign template.  The printed
matrix (``PAPER_TEMPLATE``) differs in three entries unless
``eps1 = eps2 = +1``; both are reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import jets as J
from .algebra import NON_ISOTROPIC_ROW, PGVector, cofactor_cross, det4
from .errors import (
    DegenerateFirstCurvature,
    DegenerateThirdCurvature,
    DegenerateTorsion,
    LightlikeFrameVector,
    NotAdmissible,
)
from .jets import Jet

TOL_KAPPA = 1e-8
TOL_TAU = 1e-8
TOL_SIGMA = 1e-8
TOL_UNIT = 1e-8


# -- jet-vector helpers --------------------------------------------------------

def _iso_dot(u, v) -> Jet:
    return -u[1] * v[1] + u[2] * v[2] + u[3] * v[3]


def _deriv(v):
    return tuple(c.derivative() for c in v)


def _scale(v, k):
    return tuple(c * k for c in v)


def _div(v, k):
    return tuple(c / k for c in v)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _value(v) -> PGVector:
    return PGVector(*(c.d[0] + 0.0 for c in v))


def _dvalue(v) -> PGVector:
    """Value of the first derivative of a jet vector."""
    return PGVector(*(c.d[1] for c in v))


def _sign(x: float) -> int:
    return 1 if x > 0 else -1


# -- types -------------------------------------------------------------------

@dataclass(frozen=True)
class SignTriple:
    eps1: int
    eps2: int
    eps3: int
    mu: int = 1

    def __post_init__(self):
        for v in (self.eps1, self.eps2, self.eps3, self.mu):
            if v not in (1, -1):
                raise ValueError(f"signs must be +1 or -1, got {self!r}")

    @property
    def eps(self):
        return (self.eps1, self.eps2, self.eps3)


@dataclass
class AdmissibleCurveJets:
    s: float
    x: Jet
    y: Jet
    z: Jet
    w: Jet
    t: Optional[float] = None
    source: object = field(default=None, repr=False)

    @property
    def alpha(self):
        return (self.x, self.y, self.z, self.w)

    @property
    def order(self) -> int:
        return min(j.order for j in self.alpha)


@dataclass
class FrameJets:
    alpha: tuple
    T: tuple
    N: tuple
    B1: tuple
    B2: tuple
    kappa: Jet
    tau: Jet
    sigma: Jet


@dataclass
class FrenetApparatus:
    s: float
    T: PGVector
    N: PGVector
    B1: PGVector
    B2: PGVector
    kappa: float
    tau: float
    sigma: float
    signs: SignTriple
    paper_sign_consistency: dict
    jets: FrameJets = field(repr=False)

    @property
    def frame(self):
        return (self.T, self.N, self.B1, self.B2)

    def gram(self) -> np.ndarray:
        from .algebra import dot
        f = self.frame
        return np.array([[dot(a, b) for b in f] for a in f])

    def gram_residual(self) -> float:
        target = np.diag([1.0, *self.signs.eps])
        return float(np.max(np.abs(self.gram() - target)))


# -- arclength ------------------------------------------------------------------

def reparametrize_by_arclength(c, t0: float, order: int = J.DEFAULT_ORDER,
                               tol: float = 1e-8) -> AdmissibleCurveJets:
    """Jets of ``(s, y(s), z(s), w(s))`` at ``s = x(t0)``.

    ``c`` is anything with ``coordinate_jets(t0, order)`` (a parsed curve or a
    tabulated one).
    """
    if order < 5:
        raise ValueError("jet order must be at least 5")
    xj, yj, zj, wj = c.coordinate_jets(t0, order)
    if xj.order < 1 or abs(xj.d[1]) < tol:
        raise NotAdmissible(f"x'({t0:g}) = {xj.d[1] if xj.order else 0.0:.3g}; the curve is not admissible there")
    s0 = xj.d[0]
    if xj.d[1] == 1.0 and all(v == 0.0 for v in xj.d[2:]):
        ys, zs, ws = yj, zj, wj
    else:
        tj = J.series_revert(xj, t0, tol)
        ys, zs, ws = (J.compose(j, tj) for j in (yj, zj, wj))
    return AdmissibleCurveJets(s0, Jet.variable(s0, order), ys, zs, ws, t=t0, source=c)


# -- apparatus -------------------------------------------------------------------

def _unit(v, tol_len, tol_unit, degenerate, what):
    """Normalize an isotropic jet vector; returns (unit, length, sign)."""
    q = _iso_dot(v, v)
    e2 = v[1].d[0] ** 2 + v[2].d[0] ** 2 + v[3].d[0] ** 2
    if math.sqrt(e2) < tol_len:
        raise degenerate(f"{what} vanishes (|.| = {math.sqrt(e2):.3g})")
    if abs(q.d[0]) <= tol_unit * e2:
        raise LightlikeFrameVector(f"{what} is lightlike (<v,v> = {q.d[0]:.3g})")
    sign = _sign(q.d[0])
    length = J.sqrt(q * sign)
    if length.d[0] < tol_len:
        raise degenerate(f"{what} length {length.d[0]:.3g} below tolerance")
    return _div(v, length), length, sign


def frame_jets(c: AdmissibleCurveJets, tol_kappa=TOL_KAPPA, tol_tau=TOL_TAU,
               tol_unit=TOL_UNIT):
    alpha = c.alpha
    T = _deriv(alpha)
    N, kappa, eps1 = _unit(_deriv(T), tol_kappa, tol_unit, DegenerateFirstCurvature, "T'")
    B1, tau, eps2 = _unit(_deriv(N), tol_tau, tol_unit, DegenerateTorsion, "N'")
    X = tuple(cofactor_cross(T, N, B1, NON_ISOTROPIC_ROW))
    eps3 = _sign(_iso_dot(X, X).d[0])
    mu = _sign(det4([_value(T), _value(N), _value(B1), _value(X)]))
    B2 = _scale(X, mu)
    sigma = _iso_dot(_deriv(B1), B2)
    signs = SignTriple(eps1, eps2, eps3, mu)
    return FrameJets(alpha, T, N, B1, B2, kappa, tau, sigma), signs


def frenet_apparatus(c, tol_kappa=TOL_KAPPA, tol_tau=TOL_TAU,
                     tol_unit=TOL_UNIT) -> FrenetApparatus:
    if isinstance(c, FrenetApparatus):
        return c
    fj, signs = frame_jets(c, tol_kappa, tol_tau, tol_unit)
    e1, e2, e3 = signs.eps
    consistency = {
        "eps2_equals_minus_eps1": e2 == -e1,
        "eps3_rule": e3 == (1 if (e1 == -1 or e2 == -1) else -1),
    }
    return FrenetApparatus(
        s=c.s, T=_value(fj.T), N=_value(fj.N), B1=_value(fj.B1), B2=_value(fj.B2),
        kappa=fj.kappa.d[0], tau=fj.tau.d[0], sigma=fj.sigma.d[0],
        signs=signs, paper_sign_consistency=consistency, jets=fj,
    )


def apparatus_at(curve, t: float, order: int = J.DEFAULT_ORDER, **tols) -> FrenetApparatus:
    """Apparatus of ``curve`` at parameter value ``t``."""
    return frenet_apparatus(reparametrize_by_arclength(curve, t, order), **tols)


# -- Frenet matrix --------------------------------------------------------------

def runtime_template(kappa, tau, sigma, signs: SignTriple) -> np.ndarray:
    e1, e2, e3 = signs.eps
    return np.array([
        [0.0, kappa, 0.0, 0.0],
        [0.0, 0.0, tau, 0.0],
        [0.0, -e1 * e2 * tau, 0.0, e3 * sigma],
        [0.0, 0.0, -e2 * sigma, 0.0],
    ])


def paper_template(kappa, tau, sigma, signs: SignTriple) -> np.ndarray:
    e1, e2, e3 = signs.eps
    return np.array([
        [0.0, e1 * kappa, 0.0, 0.0],
        [0.0, 0.0, e2 * tau, 0.0],
        [0.0, -e2 * tau, 0.0, e3 * sigma],
        [0.0, 0.0, -e2 * sigma, 0.0],
    ])


@dataclass
class FrenetMatrix:
    A: np.ndarray
    paper_template: np.ndarray
    runtime_template: np.ndarray
    pattern_residual: float
    runtime_residual: float
    skew_residual: float


def frenet_matrix(c) -> FrenetMatrix:
    app = frenet_apparatus(c)
    fj = app.jets
    frame = (fj.T, fj.N, fj.B1, fj.B2)
    values = [_value(v) for v in frame]
    A = np.zeros((4, 4))
    for i, v in enumerate(frame):
        dv = _dvalue(v)
        A[i, 0] = dv.x
        for j in range(1, 4):
            vj = values[j]
            num = -dv.y * vj.y + dv.z * vj.z + dv.w * vj.w
            den = -vj.y * vj.y + vj.z * vj.z + vj.w * vj.w
            A[i, j] = num / den
    eps = (1, *app.signs.eps)
    skew = 0.0
    for i in range(1, 4):
        for j in range(1, 4):
            skew = max(skew, abs(eps[j] * A[i, j] + eps[i] * A[j, i]))
    pt = paper_template(app.kappa, app.tau, app.sigma, app.signs)
    rt = runtime_template(app.kappa, app.tau, app.sigma, app.signs)
    return FrenetMatrix(A, pt, rt, float(np.max(np.abs(A - pt))),
                        float(np.max(np.abs(A - rt))), float(skew))


# -- position decomposition -------------------------------------------------------

@dataclass
class PositionDecomposition:
    s: float
    mu: tuple            # (mu1, mu2, mu3, mu4)
    dmu: tuple           # their first derivatives
    residuals: tuple     # (r_a, r_b, r_c, r_d) with runtime signs
    residuals_paper: tuple
    reconstruction_error: float
    mu_jets: tuple = field(repr=False, default=())

    @property
    def max_residual(self) -> float:
        return max(abs(r) for r in self.residuals)


def decomposition_jets(fj: FrameJets, signs: SignTriple):
    e1, e2, e3 = signs.eps
    alpha = fj.alpha
    mu1 = alpha[0] * fj.T[0]
    R = tuple(a - mu1 * t for a, t in zip(alpha, fj.T))
    mu2 = _iso_dot(R, fj.N) * e1
    mu3 = _iso_dot(R, fj.B1) * e2
    mu4 = _iso_dot(R, fj.B2) * e3
    return mu1, mu2, mu3, mu4


def decompose_position(c) -> PositionDecomposition:
    app = frenet_apparatus(c)
    fj, signs = app.jets, app.signs
    e1, e2, e3 = signs.eps
    mus = decomposition_jets(fj, signs)
    m = tuple(j.d[0] for j in mus)
    dm = tuple(j.d[1] for j in mus)
    k, t, sg = app.kappa, app.tau, app.sigma
    runtime = (
        dm[0] - 1.0,
        m[0] * k + dm[1] - e1 * e2 * t * m[2],
        m[1] * t + dm[2] - e2 * sg * m[3],
        e3 * sg * m[2] + dm[3],
    )
    paper = (
        dm[0] - 1.0,
        m[0] * e1 * k + dm[1] - m[2] * e2 * t,
        m[1] * e2 * t + dm[2] - m[3] * e2 * sg,
        m[2] * e3 * sg + dm[3],
    )
    alpha = _value(fj.alpha)
    rebuilt = app.T * m[0] + app.N * m[1] + app.B1 * m[2] + app.B2 * m[3]
    err = max(abs(a - b) for a, b in zip(alpha, rebuilt))
    return PositionDecomposition(app.s, m, dm, runtime, paper, err, mus)


# -- fourth-order identity ----------------------------------------------------------

def _require_sigma(sigma: Jet, tol=TOL_SIGMA):
    if abs(sigma.d[0]) < tol:
        raise DegenerateThirdCurvature(f"third curvature {sigma.d[0]:.3g} vanishes")


def fourth_order_residual(c, convention: str = "runtime_signs") -> PGVector:
    """Residual of the fourth-order vector ODE linking ``T'`` and the curvatures.

    ``runtime_signs`` eliminates ``N, B1, B2`` through the runtime template,
    so the residual is an identity; ``paper_literal`` evaluates the printed
    expression with the computed signs.
    """
    app = frenet_apparatus(c)
    fj = app.jets
    e1, e2, e3 = app.signs.eps
    kappa, tau, sigma = fj.kappa, fj.tau, fj.sigma
    if abs(tau.d[0]) < TOL_TAU:
        raise DegenerateTorsion(f"torsion {tau.d[0]:.3g} vanishes")
    _require_sigma(sigma)
    Tp = _deriv(fj.T)
    if convention == "runtime_signs":
        N = _div(Tp, kappa)
        B1 = _div(_deriv(N), tau)
        B2 = _div(_add(_deriv(B1), _scale(N, tau * (e1 * e2))), sigma * e3)
        res = _add(_deriv(B2), _scale(B1, sigma * e2))
    elif convention == "paper_literal":
        P = _div(Tp, kappa * e1)
        dP = _deriv(P)
        Q = _div(dP, tau * e2)
        inner = _add(_deriv(Q), _scale(P, tau * e2))
        outer = _div(inner, sigma * e2)
        res = _add(_deriv(outer), _scale(dP, sigma / tau))
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return _value(res)


# -- finite-difference oracle --------------------------------------------------------

def fd_curve_jets(curve, t0: float, h: float = 1e-2, order: int = 5) -> AdmissibleCurveJets:
    """Arclength jets built from finite-difference derivatives of the sampled
    coordinates.  Independent of expression-level jet propagation."""
    comps = []
    for i in range(4):
        comps.append(Jet(J.fd_derivatives(lambda t, i=i: curve.evaluate(t)[i], t0, order, h)))

    class _Sampled:
        def coordinate_jets(self, t, k):
            return tuple(comps)

    return reparametrize_by_arclength(_Sampled(), t0, order)

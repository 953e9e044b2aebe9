"""Classification, theorem audits and synthesis recipes for special curves.

Flags use runtime signs; audits report the runtime form next to the
printed form of each identity wherever the two differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import dsl
from . import jets as J
from .algebra import PGVector
from .errors import (
    ApparatusFailure,
    DegenerateThirdCurvature,
    DegenerateTorsion,
    DomainContainsSingularity,
    GeometryError,
    IllConditionedFit,
    InvalidSpecification,
    NotApplicable,
    PreconditionViolation,
)
from .frenet import (
    TOL_SIGMA,
    AdmissibleCurveJets,
    FrenetApparatus,
    PositionDecomposition,
    SignTriple,
    _add,
    _deriv,
    _scale,
    _value,
    decompose_position,
    frenet_apparatus,
    reparametrize_by_arclength,
)

DEFAULT_GRID = 101
DEFAULT_TOL = 1e-6
MAX_FAILURE_FRACTION = 0.10


# -- sampling -------------------------------------------------------------------

@dataclass
class Sample:
    t: float
    jets: AdmissibleCurveJets
    app: FrenetApparatus
    dec: PositionDecomposition

    @property
    def s(self):
        return self.app.s


@dataclass
class CurveSamples:
    samples: list
    failures: list          # (t, error class name, message)
    grid: int
    domain: tuple

    @property
    def failure_fraction(self) -> float:
        return len(self.failures) / self.grid

    def array(self, fn) -> np.ndarray:
        return np.array([fn(p) for p in self.samples], dtype=float)

    def describe(self) -> dict:
        return {
            "points": self.grid,
            "domain": [float(self.domain[0]), float(self.domain[1])],
            "failures": [{"t": t, "error": name, "message": msg} for t, name, msg in self.failures],
        }


def sample_curve(curve, grid: int = DEFAULT_GRID, order: int = J.DEFAULT_ORDER,
                 **tols) -> CurveSamples:
    a, b = curve.domain
    samples, failures = [], []
    for t in np.linspace(a, b, grid):
        t = float(t)
        try:
            cj = reparametrize_by_arclength(curve, t, order)
            app = frenet_apparatus(cj, **tols)
            samples.append(Sample(t, cj, app, decompose_position(app)))
        except GeometryError as exc:
            failures.append((t, type(exc).__name__, str(exc)))
    return CurveSamples(samples, failures, grid, (a, b))


def _require_samples(cs: CurveSamples):
    if cs.failure_fraction > MAX_FAILURE_FRACTION or not cs.samples:
        first = cs.failures[0] if cs.failures else (None, "", "")
        raise ApparatusFailure(
            f"apparatus failed at {len(cs.failures)} of {cs.grid} grid points"
            f" (first: {first[1]} {first[2]})")


def relative_variation(values) -> float:
    v = np.asarray(values, dtype=float)
    return float((v.max() - v.min()) / max(1.0, abs(v.mean())))


def d_squared(dec: PositionDecomposition, signs: SignTriple) -> float:
    m1, m2, m3, m4 = dec.mu
    e1, e2, e3 = signs.eps
    return m1 * m1 + e1 * m2 * m2 + e2 * m3 * m3 + e3 * m4 * m4


def _scale_of(cs: CurveSamples) -> float:
    return max(1.0, max(math.sqrt(abs(d_squared(p.dec, p.app.signs))) for p in cs.samples))


def _sigma_vanishes(cs: CurveSamples) -> bool:
    return any(abs(p.app.sigma) < TOL_SIGMA for p in cs.samples)


# -- classification ----------------------------------------------------------------

@dataclass
class FlagEntry:
    flag: bool
    residual: Optional[float]
    fitted_constants: dict = field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict:
        return {"flag": self.flag, "residual": self.residual,
                "fitted_constants": dict(self.fitted_constants), "note": self.note}


FLAG_NAMES = ("rectifying", "osculating_type1", "osculating_type2", "normal",
              "w_curve", "slant_helix", "three_type_slant_helix", "spherical")


@dataclass
class ClassificationReport:
    flags: dict
    grid: dict
    tol: float
    scale: float
    signs: Optional[SignTriple] = None

    def __getitem__(self, name) -> FlagEntry:
        return self.flags[name]

    def to_dict(self) -> dict:
        return {
            "flags": {k: self.flags[k].to_dict() for k in FLAG_NAMES},
            "grid": self.grid,
            "tol": self.tol,
            "scale": self.scale,
            "signs": list(self.signs.eps) if self.signs else None,
        }


def _flag(residual, tol, constants=None, note="") -> FlagEntry:
    return FlagEntry(bool(residual <= tol), float(residual), constants or {}, note)


def _not_applicable(note) -> FlagEntry:
    return FlagEntry(False, None, {}, "not applicable: " + note)


def _ratio_jet(num, den):
    return num / den


def classify_curve(curve, grid: int = DEFAULT_GRID, tol: float = DEFAULT_TOL,
                   samples: Optional[CurveSamples] = None) -> ClassificationReport:
    cs = samples or sample_curve(curve, grid)
    _require_samples(cs)
    scale = _scale_of(cs)
    s = cs.array(lambda p: p.s)
    mu = np.array([p.dec.mu for p in cs.samples])
    kap = cs.array(lambda p: p.app.kappa)
    tau = cs.array(lambda p: p.app.tau)
    sig = cs.array(lambda p: p.app.sigma)
    flags = {}

    c_star = float(np.mean(mu[:, 0] - s))
    flags["rectifying"] = _flag(np.max(np.abs(mu[:, 1])) / scale, tol, {"c_star": c_star})
    flags["osculating_type1"] = _flag(np.max(np.abs(mu[:, 2])) / scale, tol,
                                      {"c13": c_star, "c14": float(np.mean(mu[:, 3]))})
    flags["osculating_type2"] = _flag(np.max(np.abs(mu[:, 3])) / scale, tol, {"c15": c_star})
    flags["normal"] = _flag(np.max(np.abs(mu[:, 0])) / scale, tol)
    flags["w_curve"] = _flag(
        max(relative_variation(kap), relative_variation(tau), relative_variation(sig)), tol,
        {"kappa": float(kap.mean()), "tau": float(tau.mean()), "sigma": float(sig.mean())})

    q = cs.array(lambda p: _ratio_jet(p.app.jets.sigma, p.app.jets.tau).d[1] / p.app.kappa)
    flags["three_type_slant_helix"] = _flag(relative_variation(q), tol, {"a": float(q.mean())})

    if _sigma_vanishes(cs):
        flags["slant_helix"] = _not_applicable("sigma=0")
        flags["spherical"] = _not_applicable("sigma=0")
    else:
        flags["slant_helix"] = _flag(relative_variation(tau / sig), tol,
                                     {"tau_over_sigma": float(np.mean(tau / sig))})
        spheres = [sphere_data(p.app) for p in cs.samples]
        res = max(abs(sp.residual_analytic) for sp in spheres) / scale
        flags["spherical"] = _flag(res, tol, {"radius2": float(np.mean([sp.radius2 for sp in spheres]))})

    signs = cs.samples[0].app.signs
    return ClassificationReport(flags, cs.describe(), tol, scale, signs)


# -- helices --------------------------------------------------------------------------

def _slant_axis_jets(app: FrenetApparatus, runtime: bool = True):
    fj = app.jets
    ratio = fj.tau / fj.sigma
    if runtime:
        ratio = ratio * app.signs.eps2
    return _add(fj.N, _scale(fj.B2, ratio))


def slant_helix_axis(app, tol: float = DEFAULT_TOL) -> PGVector:
    """Fixed direction ``N + eps2 (tau/sigma) B2`` of a slant helix (unnormalized)."""
    app = frenet_apparatus(app)
    if abs(app.sigma) < TOL_SIGMA:
        raise DegenerateThirdCurvature("slant-helix axis needs sigma != 0")
    ratio = app.jets.tau / app.jets.sigma
    if abs(ratio.d[1]) > tol * max(1.0, abs(ratio.d[0])):
        raise PreconditionViolation(
            f"tau/sigma is not constant here ((tau/sigma)' = {ratio.d[1]:.3g})")
    return _value(_slant_axis_jets(app))


def slant_axis_derivative(app, runtime: bool = True) -> PGVector:
    """Derivative of ``N + c (tau/sigma) B2`` along the curve, ``c = eps2``
    for the runtime form and ``c = 1`` for the printed one."""
    app = frenet_apparatus(app)
    if abs(app.sigma) < TOL_SIGMA:
        raise DegenerateThirdCurvature("slant-helix axis needs sigma != 0")
    return _value(_deriv(_slant_axis_jets(app, runtime)))


def _three_type_jets(app: FrenetApparatus, b: float, runtime: bool = True):
    fj = app.jets
    ratio = fj.sigma / fj.tau
    if runtime:
        ratio = ratio * app.signs.eps2
    return _add(_add(_scale(fj.T, b), _scale(fj.N, ratio)), fj.B2)


def three_type_axis_derivative(app, b: float = 0.0, runtime: bool = True) -> PGVector:
    app = frenet_apparatus(app)
    return _value(_deriv(_three_type_jets(app, b, runtime)))


def _euclid(v) -> float:
    return math.sqrt(sum(c * c for c in v))


@dataclass
class ThreeTypeAxis:
    U: list                 # axis vector at each grid point
    a: float
    b: float
    residual: float         # max Euclidean norm of U' (runtime signs)
    residual_paper: float   # same with the printed coefficients
    s: list = field(default_factory=list)


def three_type_axis(curve, grid: int = DEFAULT_GRID,
                    samples: Optional[CurveSamples] = None) -> ThreeTypeAxis:
    """Fit ``a, b`` for the direction ``b T + eps2 (sigma/tau) N + B2``."""
    cs = samples or sample_curve(curve, grid)
    _require_samples(cs)
    kap = cs.array(lambda p: p.app.kappa)
    dq = cs.array(lambda p: (p.app.jets.sigma / p.app.jets.tau).d[1])
    e2 = cs.samples[0].app.signs.eps2
    kk = float(kap @ kap)
    if kk / len(kap) < 1e-20 or kk == 0.0:
        raise IllConditionedFit("first curvature too small to fit the axis constants")
    a = float(kap @ dq) / kk
    b = -e2 * a
    U = [_value(_three_type_jets(p.app, b)) for p in cs.samples]
    res = max(_euclid(three_type_axis_derivative(p.app, b)) for p in cs.samples)
    res_p = max(_euclid(three_type_axis_derivative(p.app, -a, runtime=False)) for p in cs.samples)
    return ThreeTypeAxis(U, a, b, res, res_p, [p.s for p in cs.samples])


# -- binormal nonexistence -------------------------------------------------------------------

@dataclass
class BinormalAudit:
    score: float
    singular_values: list
    nullity: int
    w: tuple                 # least-squares (w1, w2) of the proof's reduction
    w_singular_values: list
    rows: int


def _iso_row(v: PGVector):
    r = np.array([-v.y, v.z, v.w])
    n = np.linalg.norm(r)
    return r / n if n > 0 else r


def binormal_nonexistence_audit(curve, grid: int = DEFAULT_GRID,
                                samples: Optional[CurveSamples] = None,
                                null_tol: float = 1e-8) -> BinormalAudit:
    """How far the binormal lines are from making a constant angle with a
    fixed direction.

    A constant isotropic ``U`` orthogonal to every ``N`` and ``B2`` with
    ``<U, B1>`` constant would be such a direction.  The score is the
    smallest singular value of the stacked constraint rows divided by the
    square root of the row count (rows normalized to unit length).
    """
    cs = samples or sample_curve(curve, grid)
    _require_samples(cs)
    if _sigma_vanishes(cs):
        raise DegenerateThirdCurvature("binormal audit needs sigma != 0")
    rows = []
    b1_0 = _iso_row(cs.samples[0].app.B1)
    for i, p in enumerate(cs.samples):
        rows.append(_iso_row(p.app.N))
        rows.append(_iso_row(p.app.B2))
        if i:
            r = _iso_row(p.app.B1) - b1_0
            n = np.linalg.norm(r)
            if n > 0:
                rows.append(r / n)
    M = np.array(rows)
    sv = np.linalg.svd(M, compute_uv=False)
    score = float(sv[-1] / math.sqrt(len(rows)))
    nullity = int(np.sum(sv <= null_tol * sv[0]))

    # the proof's reduction U = w1 T + w2 B1: U' = 0 gives, per point,
    # w1 kappa - eps1 eps2 tau w2 = 0 (N part) and eps3 sigma w2 = 0 (B2 part)
    A = []
    for p in cs.samples:
        e1, e2, e3 = p.app.signs.eps
        A.append([p.app.kappa, -e1 * e2 * p.app.tau])
        A.append([0.0, e3 * p.app.sigma])
    A = np.array(A)
    w, *_ = np.linalg.lstsq(A, np.zeros(len(A)), rcond=None)
    wsv = np.linalg.svd(A, compute_uv=False)
    return BinormalAudit(score, [float(v) for v in sv], nullity,
                         (float(w[0]), float(w[1])), [float(v) for v in wsv], len(rows))


# -- spheres ---------------------------------------------------------------------------

@dataclass
class SphereData:
    s: float
    center: PGVector
    radius2: float
    residual_analytic: float
    residual_paper: float
    radius2_components: float
    bracket: float = 0.0     # signed quantity whose absolute value is radius2


def sphere_data(c) -> SphereData:
    """Osculating-sphere center, squared radius and the radius ODE residuals."""
    app = frenet_apparatus(c)
    fj = app.jets
    e1, e2, e3 = app.signs.eps
    if abs(fj.tau.d[0]) < 1e-8:
        raise DegenerateTorsion("sphere data need tau != 0")
    if abs(fj.sigma.d[0]) < TOL_SIGMA:
        raise DegenerateThirdCurvature("sphere data need sigma != 0")
    rho = 1.0 / fj.kappa
    A = rho.derivative() / fj.tau
    Bk = fj.tau * rho + A.derivative()
    c4 = Bk / fj.sigma * (e1 * e2)
    center = _add(_add(_add(fj.alpha, _scale(fj.N, rho)), _scale(fj.B1, A * e1)), _scale(fj.B2, c4))
    bracket = rho * rho * e1 + A * A * e2 + Bk * Bk / (fj.sigma * fj.sigma) * e3
    sgn = 1.0 if bracket.d[0] >= 0 else -1.0
    printed = (A * (fj.tau * rho + A.derivative() * e2)) * (2 * e1) \
        + (Bk * Bk / (fj.sigma * fj.sigma)).derivative() * e3
    # frame components of c - alpha weighted by the signs
    comps = (rho.d[0], e1 * A.d[0], c4.d[0])
    radius2_components = abs(e1 * comps[0] ** 2 + e2 * comps[1] ** 2 + e3 * comps[2] ** 2)
    return SphereData(app.s, _value(center), abs(bracket.d[0]), sgn * bracket.d[1],
                      printed.d[0], radius2_components, bracket.d[0])


def sphere_fd_check(curve, t: float, h: float = 2.5e-4) -> tuple:
    """(residual_analytic, finite-difference derivative of radius^2 in arclength).

    The difference is taken on the signed bracket and multiplied by its sign
    at ``t``: identical to differencing ``radius2`` away from sign changes,
    and still meaningful at the kink of the absolute value.
    """
    def bracket(u):
        return sphere_data(frenet_apparatus(reparametrize_by_arclength(curve, u))).bracket
    sp = sphere_data(frenet_apparatus(reparametrize_by_arclength(curve, t)))
    sgn = 1.0 if sp.bracket >= 0 else -1.0
    dxdt = curve.coordinate_jets(t, 1)[0].d[1]
    d = sgn * J.fd_derivatives(bracket, t, 1, h)[1] / dxdt
    return sp.residual_analytic, d


# -- osculating curves ------------------------------------------------------------------

def osculating_checks(curve, grid: int = DEFAULT_GRID, tol: float = DEFAULT_TOL,
                      samples: Optional[CurveSamples] = None) -> dict:
    cs = samples or sample_curve(curve, grid)
    report = classify_curve(curve, grid, tol, samples=cs)
    out = {}
    t1, t2 = report["osculating_type1"].flag, report["osculating_type2"].flag
    if not (t1 or t2):
        raise NotApplicable("curve is neither an osculating curve of type 1 nor of type 2")
    s = cs.array(lambda p: p.s)
    mu = np.array([p.dec.mu for p in cs.samples])
    dmu = np.array([p.dec.dmu for p in cs.samples])
    kap = cs.array(lambda p: p.app.kappa)
    tau = cs.array(lambda p: p.app.tau)
    sig = cs.array(lambda p: p.app.sigma)
    e1, e2, e3 = cs.samples[0].app.signs.eps
    if t1:
        c13 = float(np.mean(mu[:, 0] - s))
        c14 = float(np.mean(mu[:, 3]))
        dq = cs.array(lambda p: (p.app.jets.sigma / p.app.jets.tau).d[1])
        lead = (s + c13) * kap
        rt = np.abs(lead + e2 * c14 * dq)
        pp = np.abs(lead + c14 * sig / tau)
        # relative to the size of the balanced terms, as for the other residuals here
        rel = np.maximum(1.0, np.abs(lead))
        out["type1"] = {
            "c13": c13, "c14": c14,
            "mu4_variation": float(np.max(np.abs(mu[:, 3] - c14))),
            "constraint_runtime": float(np.max(rt / rel)),
            "constraint_runtime_abs": float(np.max(rt)),
            "constraint_paper": float(np.max(pp / rel)),
            "mu2_runtime": float(np.max(np.abs(mu[:, 1] - e2 * c14 * sig / tau))),
            "mu2_paper": float(np.max(np.abs(mu[:, 1] - c14 * sig / tau))),
        }
    if t2:
        info = {"c15": float(np.mean(mu[:, 0] - s))}
        flat = (np.max(np.abs(sig)) <= tol and relative_variation(kap) <= tol
                and relative_variation(tau) <= tol)
        if not flat:
            info["note"] = "not applicable: closed form needs sigma=0 and constant kappa, tau"
        else:
            k0, t0 = float(kap.mean()), float(tau.mean())
            # rho3 = a1 sin(tau s) + a2 cos(tau s) + e1 e2 (kappa/tau)(s + c15)
            lin = e1 * e2 * k0 / t0
            X = np.column_stack([np.sin(t0 * s), np.cos(t0 * s), np.full_like(s, lin)])
            rhs = mu[:, 2] - lin * s
            (a1, a2, c15), *_ = np.linalg.lstsq(X, rhs, rcond=None)
            fit = X @ np.array([a1, a2, c15]) + lin * s
            dfit = a1 * t0 * np.cos(t0 * s) - a2 * t0 * np.sin(t0 * s) + lin
            info.update({
                "a1": float(a1), "a2": float(a2), "c15": float(c15),
                "rho3_fit_residual": float(np.max(np.abs(fit - mu[:, 2]))),
                "mu2_runtime": float(np.max(np.abs(mu[:, 1] + dmu[:, 2] / t0))),
                "mu2_paper": float(np.max(np.abs(mu[:, 1] + e2 * dfit / t0))),
            })
        out["type2"] = info
    return out


# -- rectifying curves ---------------------------------------------------------------------

def rectifying_checks(curve, grid: int = DEFAULT_GRID, tol: float = DEFAULT_TOL,
                      samples: Optional[CurveSamples] = None) -> dict:
    cs = samples or sample_curve(curve, grid)
    report = classify_curve(curve, grid, tol, samples=cs)
    if not report["rectifying"].flag:
        raise NotApplicable("curve is not rectifying")
    if _sigma_vanishes(cs):
        raise DegenerateThirdCurvature("rectifying checks need sigma != 0")
    s = cs.array(lambda p: p.s)
    mu = np.array([p.dec.mu for p in cs.samples])
    dmu = np.array([p.dec.dmu for p in cs.samples])
    c = float(np.mean(mu[:, 0] - s))
    dev3 = dev4 = 0.0
    ident_rt = ident_pp = 0.0
    d2 = np.empty(len(s))
    for i, p in enumerate(cs.samples):
        fj = p.app.jets
        e1, e2, e3 = p.app.signs.eps
        g = (J.Jet.variable(p.s, fj.kappa.order) + c) * fj.kappa / fj.tau
        dev3 = max(dev3, abs(mu[i, 2] - e1 * e2 * g.d[0]))
        dev4 = max(dev4, abs(mu[i, 3] - e1 * g.d[1] / fj.sigma.d[0]))
        d2[i] = d_squared(p.dec, p.app.signs)
        m1, m2, m3, m4 = mu[i]
        dd2 = 2 * (m1 * dmu[i, 0] + e1 * m2 * dmu[i, 1] + e2 * m3 * dmu[i, 2] + e3 * m4 * dmu[i, 3])
        k, t = p.app.kappa, p.app.tau
        ident_rt = max(ident_rt, abs(dd2 - 2 * (m1 - e1 * k * m1 * m2)))
        ident_pp = max(ident_pp, abs(dd2 - 2 * (m1 + m2 * (-m1 * k + (e1 * e2 - 1) * m3 * t))))
    lead, cq, dq = np.polyfit(s, d2, 2)
    fit_res = float(np.max(np.abs(np.polyval([lead, cq, dq], s) - d2)))
    normal_part = d2 - mu[:, 0] ** 2
    return {
        "c": c,
        "mu3_deviation": float(dev3),
        "mu4_deviation": float(dev4),
        "distance_fit": {"leading": float(lead), "c": float(cq), "d": float(dq),
                         "residual": fit_res},
        "distance_derivative_runtime": float(ident_rt),
        "distance_derivative_paper": float(ident_pp),
        "normal_part_squared": {"min": float(normal_part.min()), "max": float(normal_part.max())},
        "max_abs_mu2": float(np.max(np.abs(mu[:, 1]))),
    }


@dataclass
class RectifyingRecipe:
    kappa: dsl.Expr
    tau: float
    sigma: float
    signs: SignTriple
    interval: tuple
    c: float
    frame0: tuple
    point0: PGVector

    def curvature_spec(self, step: float = 1e-3):
        from .integrator import CurvatureSpec
        return CurvatureSpec(self.kappa, self.tau, self.sigma, self.signs, self.interval, step)

    def integrate(self, step: float = 1e-3, **kw):
        from .integrator import integrate_frenet
        return integrate_frenet(self.curvature_spec(step), self.frame0, self.point0, **kw)


def synthesize_rectifying(signs, interval=(0.0, 1.0), c: float = 2.0) -> RectifyingRecipe:
    """Curvatures and initial data of a rectifying curve.

    With ``tau = sigma = 1`` and ``kappa = f(s)/(s + c)`` where
    ``f'' = -eps2 eps3 f``, ``f(0) = 0``, ``f'(0) = 1``, the position
    components ``mu1 = s + c``, ``mu2 = 0``, ``mu3 = eps1 eps2 f``,
    ``mu4 = eps1 f'`` solve the component system; the initial point is
    placed accordingly.
    """
    from .integrator import canonical_initial_frame
    if not isinstance(signs, SignTriple):
        signs = SignTriple(*signs)
    e1, e2, e3 = signs.eps
    frame0 = canonical_initial_frame(signs)
    a, b = map(float, interval)
    if not b > a:
        raise InvalidSpecification(f"empty interval [{a}, {b}]")
    if (a + c) * (b + c) <= 0:
        raise DomainContainsSingularity(f"s + c vanishes on [{a:g}, {b:g}] for c = {c:g}")
    trig = e2 * e3 == 1
    f, df = (math.sin, math.cos) if trig else (math.sinh, math.cosh)
    if trig:
        k_lo, k_hi = math.floor(a / math.pi) + 1, math.ceil(b / math.pi) - 1
        if k_lo <= k_hi:
            raise DomainContainsSingularity(f"sin vanishes at {k_lo * math.pi:g} inside the interval")
    elif a < 0 < b:
        raise DomainContainsSingularity("sinh vanishes at 0 inside the interval")
    for s in np.linspace(a, b, 201):
        if f(s) / (s + c) < -1e-15:
            raise DomainContainsSingularity(f"first curvature negative at s={s:g}")
    kappa = dsl.Binary("div", dsl.Unary("sin" if trig else "sinh", dsl.Param("s")),
                       dsl.Binary("add", dsl.Param("s"), dsl.Num(float(c))))
    T0, N0, B10, B20 = frame0
    mu3 = e1 * e2 * f(a)
    mu4 = e1 * df(a)
    point0 = T0 * (a + c) + B10 * mu3 + B20 * mu4
    return RectifyingRecipe(kappa, 1.0, 1.0, signs, (a, b), float(c), frame0, point0)


def scaled_rectifying_audit(rho, beta, grid: int = DEFAULT_GRID, tol: float = DEFAULT_TOL,
                            samples: Optional[CurveSamples] = None) -> dict:
    """Evaluate ``rho (rho'/v)' (s^2+cs+d) + (rho'/v + (rho/v)' + rho/v)(s+c**)``
    with ``v = sqrt(rho'^2 + rho^2)`` and constants fitted on ``beta``."""
    if isinstance(rho, str):
        rho = dsl.parse_expr(rho, getattr(beta, "param", "s"))
    cs = samples or sample_curve(beta, grid)
    checks = rectifying_checks(beta, grid, tol, samples=cs)
    fit = checks["distance_fit"]
    c_star = checks["c"]
    profile = []
    for p in cs.samples:
        r = dsl.eval_jet(rho, p.s, 3)
        if r.d[0] <= 0:
            raise PreconditionViolation(f"rho must be positive; rho({p.s:g}) = {r.d[0]:g}")
        dr = r.derivative()
        v = J.sqrt(dr * dr + r * r)
        q1 = dr / v
        q2 = r / v
        val = (r * q1.derivative()).d[0] * (p.s ** 2 + fit["c"] * p.s + fit["d"]) \
            + (q1.d[0] + q2.derivative().d[0] + q2.d[0]) * (p.s + c_star)
        profile.append(float(val))
    return {"max_abs": float(np.max(np.abs(profile))), "profile": profile,
            "s": [p.s for p in cs.samples], "c": fit["c"], "d": fit["d"], "c_star": c_star}


# -- normal curves -------------------------------------------------------------------------

def normal_nonexistence_audit(curve, grid: int = DEFAULT_GRID,
                              samples: Optional[CurveSamples] = None) -> dict:
    """mu1 = <alpha, T> has slope one in s, so it cannot vanish identically."""
    cs = samples or sample_curve(curve, grid)
    _require_samples(cs)
    mu1 = cs.array(lambda p: p.dec.mu[0])
    dmu1 = cs.array(lambda p: p.dec.dmu[0])
    signs = np.sign(mu1[np.abs(mu1) > 1e-12])
    changes = int(np.sum(signs[1:] != signs[:-1])) if len(signs) > 1 else 0
    return {
        "max_abs_mu1": float(np.max(np.abs(mu1))),
        "max_dmu1_deviation": float(np.max(np.abs(dmu1 - 1.0))),
        "sign_changes": changes,
        "normal_possible": False,
    }

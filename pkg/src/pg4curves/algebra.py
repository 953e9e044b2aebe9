"""Metric structure of the pseudo-Galilean 4-space.

The first coordinate ``x`` is the absolute-time direction.  Vectors with
``x != 0`` are non-isotropic and pair through their first components only;
isotropic vectors (``x == 0``) carry the Minkowski form ``-y^2 + z^2 + w^2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Sequence


class CausalClass(enum.Enum):
    NON_ISOTROPIC = "NonIsotropic"
    SPACELIKE_ISOTROPIC = "SpacelikeIsotropic"
    TIMELIKE_ISOTROPIC = "TimelikeIsotropic"
    LIGHTLIKE_ISOTROPIC = "LightlikeIsotropic"
    ZERO = "Zero"


@dataclass(frozen=True)
class PGVector:
    x: float
    y: float
    z: float
    w: float

    def __post_init__(self):
        for c in (self.x, self.y, self.z, self.w):
            if not math.isfinite(c):
                raise ValueError(f"non-finite component in {self!r}")

    def __iter__(self) -> Iterator[float]:
        return iter((self.x, self.y, self.z, self.w))

    def __getitem__(self, i):
        return (self.x, self.y, self.z, self.w)[i]

    def __add__(self, other):
        return PGVector(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return PGVector(*(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return PGVector(-self.x, -self.y, -self.z, -self.w)

    def __mul__(self, k):
        return PGVector(k * self.x, k * self.y, k * self.z, k * self.w)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return PGVector(self.x / k, self.y / k, self.z / k, self.w / k)

    @property
    def is_isotropic(self) -> bool:
        return self.x == 0.0

    def as_tuple(self):
        return (self.x, self.y, self.z, self.w)


# Points share the representation; the distinction is documentary.
PGPoint = PGVector


def minkowski_form(y, z, w):
    """The quadratic form ``-y^2 + z^2 + w^2`` of the isotropic slice."""
    return -y * y + z * z + w * w


def point_distance(p1: PGPoint, p2: PGPoint) -> float:
    dx = p2[0] - p1[0]
    if dx != 0.0:
        return abs(dx)
    return math.sqrt(abs(minkowski_form(p2[1] - p1[1], p2[2] - p1[2], p2[3] - p1[3])))


def point_distance_tol(p1: PGPoint, p2: PGPoint, rtol: float = 1e-12) -> float:
    """Distance for sampled data: first coordinates closer than
    ``rtol * max(1, |x1|, |x2|)`` are treated as equal."""
    dx = p2[0] - p1[0]
    if abs(dx) > rtol * max(1.0, abs(p1[0]), abs(p2[0])):
        return abs(dx)
    return math.sqrt(abs(minkowski_form(p2[1] - p1[1], p2[2] - p1[2], p2[3] - p1[3])))


def dot(u, v) -> float:
    if u[0] != 0.0 or v[0] != 0.0:
        return u[0] * v[0]
    return -u[1] * v[1] + u[2] * v[2] + u[3] * v[3]


def norm(u) -> float:
    return math.sqrt(abs(dot(u, u)))


def classify_vector(u) -> CausalClass:
    if u[0] != 0.0:
        return CausalClass.NON_ISOTROPIC
    q = minkowski_form(u[1], u[2], u[3])
    if q > 0.0:
        return CausalClass.SPACELIKE_ISOTROPIC
    if q < 0.0:
        return CausalClass.TIMELIKE_ISOTROPIC
    if u[1] == 0.0 and u[2] == 0.0 and u[3] == 0.0:
        return CausalClass.ZERO
    return CausalClass.LIGHTLIKE_ISOTROPIC


def classify_vector_tol(u, tol: float = 1e-12) -> CausalClass:
    """Like :func:`classify_vector` but calls the vector lightlike when
    ``|q| <= tol * (y^2 + z^2 + w^2)``."""
    if u[0] != 0.0:
        return CausalClass.NON_ISOTROPIC
    e2 = u[1] * u[1] + u[2] * u[2] + u[3] * u[3]
    if e2 == 0.0:
        return CausalClass.ZERO
    q = minkowski_form(u[1], u[2], u[3])
    if abs(q) <= tol * e2:
        return CausalClass.LIGHTLIKE_ISOTROPIC
    return CausalClass.SPACELIKE_ISOTROPIC if q > 0 else CausalClass.TIMELIKE_ISOTROPIC


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _minor(u, v, w, col):
    keep = [j for j in range(4) if j != col]
    return _det3([u[j] for j in keep], [v[j] for j in keep], [w[j] for j in keep])


# Symbolic first rows of the two determinant forms: coefficients of e1..e4.
NON_ISOTROPIC_ROW = (0, -1, 1, 1)
ISOTROPIC_ROW = (-1, 1, 1, 1)


def cofactor_cross(u, v, w, first_row):
    """Expand ``det[first_row; u; v; w]`` along the symbolic first row.

    Works for any component type supporting ``+ - *`` (floats or jets).
    """
    out = []
    for j, coef in enumerate(first_row):
        if coef == 0:
            out.append(0 * u[0])
            continue
        sign = 1 if j % 2 == 0 else -1
        m = _minor(u, v, w, j)
        out.append(m * (coef * sign))
    return out


def cross3(u, v, w) -> PGVector:
    if u[0] != 0.0 or v[0] != 0.0 or w[0] != 0.0:
        row = NON_ISOTROPIC_ROW
    else:
        row = ISOTROPIC_ROW
    return PGVector(*(float(c) for c in cofactor_cross(u, v, w, row)))


def det4(rows: Sequence) -> float:
    a = [list(map(float, r)) for r in rows]
    if len(a) != 4 or any(len(r) != 4 for r in a):
        raise ValueError("det4 needs a 4x4 matrix")
    total = 0.0
    for j in range(4):
        if a[0][j] == 0.0:
            continue
        sign = 1.0 if j % 2 == 0 else -1.0
        total += sign * a[0][j] * _minor(a[1], a[2], a[3], j)
    return total

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pg4curves.algebra import (
    ISOTROPIC_ROW,
    NON_ISOTROPIC_ROW,
    CausalClass,
    PGPoint,
    PGVector,
    classify_vector,
    classify_vector_tol,
    cross3,
    det4,
    dot,
    norm,
    point_distance,
    point_distance_tol,
)

comp = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
vectors = st.builds(PGVector, comp, comp, comp, comp)
iso_vectors = st.builds(lambda y, z, w: PGVector(0.0, y, z, w), comp, comp, comp)


def cross_oracle(u, v, w, row):
    """Expand det[row; u; v; w] by substituting each basis vector for the symbolic row."""
    with np.errstate(divide="ignore", invalid="ignore"):
        dets = []
        for j in range(4):
            e = np.zeros(4)
            e[j] = 1.0
            dets.append(np.linalg.det(np.array([e, list(u), list(v), list(w)])))
    return np.array([row[j] * dets[j] for j in range(4)])


@pytest.mark.parametrize("p1, p2, expected", [
    ((0, 0, 0, 0), (2, 5, 1, 1), 2.0),
    ((1, 0, 0, 0), (1, 3, 4, 0), math.sqrt(7)),
    ((1, 1, 1, 1), (1, 2, 2, 1), 0.0),
])
def test_point_distance_examples(p1, p2, expected):
    assert point_distance(PGPoint(*p1), PGPoint(*p2)) == pytest.approx(expected, abs=1e-15)


def test_point_distance_tol_uses_isotropic_branch_for_tiny_dx():
    p1, p2 = PGPoint(1.0, 0, 0, 0), PGPoint(1.0 + 1e-14, 3, 4, 0)
    assert point_distance(p1, p2) == pytest.approx(1e-14, rel=1e-2)
    assert point_distance_tol(p1, p2) == pytest.approx(math.sqrt(7))


@pytest.mark.parametrize("u, v, expected", [
    ((1, 2, 3, 4), (2, 0, 0, 0), 2.0),
    ((0, 3, 4, 0), (0, 3, 4, 0), 7.0),
    ((0, 1, 1, 0), (0, 1, 1, 0), 0.0),
])
def test_dot_examples(u, v, expected):
    assert dot(PGVector(*u), PGVector(*v)) == expected


@pytest.mark.parametrize("u, expected", [((3, 9, 9, 9), 3.0), ((0, 5, 3, 0), 4.0), ((0, 0, 0, 0), 0.0)])
def test_norm_examples(u, expected):
    assert norm(PGVector(*u)) == expected


@pytest.mark.parametrize("u, cls", [
    ((1, 0, 0, 0), CausalClass.NON_ISOTROPIC),
    ((0, 2, 1, 1), CausalClass.TIMELIKE_ISOTROPIC),
    ((0, 5, 3, 4), CausalClass.LIGHTLIKE_ISOTROPIC),
    ((0, 0, 1, 0), CausalClass.SPACELIKE_ISOTROPIC),
    ((0, 0, 0, 0), CausalClass.ZERO),
])
def test_classify_examples(u, cls):
    assert classify_vector(PGVector(*u)) is cls


def test_classify_tol_catches_near_lightlike():
    u = PGVector(0.0, 1.0, 1.0 + 1e-15, 0.0)
    assert classify_vector_tol(u, 1e-12) is CausalClass.LIGHTLIKE_ISOTROPIC


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        PGVector(0.0, math.nan, 0.0, 0.0)


def test_cross3_first_branch_example():
    r = cross3(PGVector(1, 0, 0, 0), PGVector(0, 1, 0, 0), PGVector(0, 0, 1, 0))
    assert r.as_tuple() == (0.0, 0.0, 0.0, -1.0)


def test_cross3_second_branch_matches_oracle():
    u, v, w = PGVector(0, 1, 0, 0), PGVector(0, 0, 1, 0), PGVector(0, 0, 0, 1)
    expected = cross_oracle(u, v, w, ISOTROPIC_ROW)
    assert np.allclose(cross3(u, v, w).as_tuple(), expected, atol=1e-15)
    assert cross3(u, v, w).as_tuple() == (-1.0, 0.0, 0.0, 0.0)


def test_det4_examples():
    eye = [PGVector(*row) for row in np.eye(4)]
    assert det4(eye) == 1.0
    assert det4([eye[0], eye[1], eye[1], eye[3]]) == 0.0


@settings(max_examples=200, deadline=None)
@given(vectors, vectors, vectors)
def test_cross3_matches_cofactor_oracle(u, v, w):
    row = NON_ISOTROPIC_ROW if (u.x or v.x or w.x) else ISOTROPIC_ROW
    expected = cross_oracle(u, v, w, row)
    got = np.array(cross3(u, v, w).as_tuple())
    assert np.allclose(got, expected, rtol=1e-9, atol=1e-9 * (1 + np.abs(expected).max()))


@settings(max_examples=200, deadline=None)
@given(iso_vectors, vectors, vectors, vectors)
def test_dot_with_cross_is_determinant(a, u, v, w):
    u = PGVector(1.0 + abs(u.x), u.y, u.z, u.w)  # force the first branch
    lhs = dot(a, cross3(u, v, w))
    rhs = det4([a, u, v, w])
    scale = 1 + max(abs(c) for c in (*a, *u, *v, *w)) ** 4
    assert abs(lhs - rhs) <= 1e-12 * scale


@given(vectors, vectors, vectors)
def test_cross3_alternating(u, v, w):
    a = np.array(cross3(u, v, w).as_tuple())
    b = np.array(cross3(v, u, w).as_tuple())
    assert np.allclose(a, -b, rtol=1e-12, atol=1e-9)
    assert not any(cross3(u, v, v))


@given(vectors)
def test_norm_squared_is_abs_self_product(u):
    assert norm(u) ** 2 == pytest.approx(abs(dot(u, u)), rel=1e-12, abs=1e-300)


@given(comp, comp, comp)
def test_unit_first_component_is_non_isotropic(y, z, w):
    assert classify_vector(PGVector(1.0, y, z, w)) is CausalClass.NON_ISOTROPIC

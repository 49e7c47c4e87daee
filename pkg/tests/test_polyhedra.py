import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gkzbfun import exact
from gkzbfun.errors import ValidationError
from gkzbfun.linform import ParamLinForm
from gkzbfun.polyhedra import (
    all_faces,
    cone_facets,
    euler_operator,
    face_functional,
    homogeneity,
    in_cone,
    is_normal,
    is_pointed,
    is_visible,
    parallelepiped_points,
    positive_grading,
)

from helpers import A1, A2, I2, LINE, TWISTED, brute_in_cone, random_pointed


def test_facets_fixture2():
    fs = cone_facets(A2)
    assert [f.columns for f in fs] == [(0,), (2,)]
    assert [f.functional for f in fs] == [(1, 1), (-1, 3)]


def test_facets_are_supporting():
    rng = random.Random(3)
    for _ in range(10):
        A = random_pointed(rng, 3, 5)
        for f in cone_facets(A):
            vals = [exact.dot(f.functional, a) for a in exact.columns(A)]
            assert all(v >= 0 for v in vals)
            zero = [exact.column(A, j) for j in f.columns]
            assert exact.rank(exact.from_columns(zero)) == 2


def test_pointed_and_grading():
    assert is_pointed(A1) and is_pointed(I2)
    assert not is_pointed([[1, -1, 0], [0, 0, 1]])
    with pytest.raises(ValidationError):
        positive_grading([[1, -1, 0], [0, 0, 1]])
    w = positive_grading(A2)
    assert all(exact.dot(w, a) > 0 for a in exact.columns(A2))


def test_faces_fixture1():
    faces = all_faces(A1)
    assert [f.columns for f in faces] == [(), (0,), (2,), (0, 1, 2)]


def test_homogeneity():
    assert homogeneity(A1) == (0, 1)
    assert homogeneity([[1, 2]]) is None


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=2))
@settings(max_examples=200, deadline=None)
def test_in_cone_matches_caratheodory(b):
    for A in (A1, A2, I2):
        assert in_cone(A, b) == brute_in_cone(A, b)


def test_in_cone_random_3d():
    rng = random.Random(11)
    for _ in range(5):
        A = random_pointed(rng, 3, 5)
        for _ in range(40):
            b = [rng.randint(-5, 5) for _ in range(3)]
            assert in_cone(A, b) == brute_in_cone(A, b)


def test_visibility():
    Ap = ((-1, 0), (1, 1))
    a2 = (3, 1)
    assert is_visible(Ap, a2, (0, 0))
    assert is_visible(Ap, a2, (0, 2))
    # on the facet L = (1,1) but L(a2) > 0: moves into the cone
    assert not is_visible(Ap, a2, (-2, 2))
    assert not is_visible(Ap, a2, (-1, 3))
    with pytest.raises(ValueError):
        is_visible(Ap, a2, (1, -1))


def test_face_functional_and_euler():
    L = face_functional(A2, (2,), 1)
    assert exact.dot(L, (3, 1)) == 0 and exact.dot(L, (0, 1)) == 1
    coeffs, bL = euler_operator(A2, L, ParamLinForm.symbolic_vector(2))
    assert coeffs == (Fraction(4, 3), 1, 0)
    assert str(bL) == "(-b1 + 3*b2)/3"
    with pytest.raises(ValueError):
        face_functional(A2, (2,), 2)


def test_parallelepiped_counts_equal_det():
    rng = random.Random(5)
    for _ in range(20):
        B = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if exact.det(B) == 0:
            continue
        pts = parallelepiped_points(B)
        assert len(pts) == abs(exact.det(B))


def test_normality():
    assert is_normal(A1)
    assert not is_normal(A2)
    assert is_normal(I2)
    assert is_normal(TWISTED)
    assert is_normal(LINE)
    assert not is_normal([[1, 1, 1], [0, 2, 3]])

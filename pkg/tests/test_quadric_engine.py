import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_orthogonal
from spaceforms.errors import DegenerateQuadric, IsotropicMirror, PointOnQuadric
from spaceforms.projective_core import ProjMap, identity, map_distance, same_point, subspace_from_rows
from spaceforms.quadric_engine import (
    Pencil, QuadricForm, compose_reflections, decompose_reflections, diag_form, eval, line_intersect,
    on_quadric, pencil_member_through, polar, reflect, restricted_form, signature_of, tangent_cone,
)

circle = diag_form(1, 1, -1)
LIE = diag_form(1, 1, 1, -1, -1)


def test_eval():
    assert eval(circle, [1, 0, 1]) == 0
    assert eval(circle, [0, 0, 1]) == -1
    assert eval(circle, [2, 0, 1]) == 3


def test_signature():
    assert LIE.signature == (3, 2, 0)
    assert diag_form(1, 1, 0, -1).signature == (2, 1, 1)
    assert diag_form(1, 1, 1, 1).signature == (4, 0, 0)


def test_polar_of_point():
    line = polar(circle, subspace_from_rows([[2, 0, 1]]))
    assert line.dim == 1
    for y in ([0.5, math.sqrt(3) / 2, 1], [0.5, -math.sqrt(3) / 2, 1]):
        assert line.contains(y)
    with pytest.raises(DegenerateQuadric):
        polar(diag_form(1, 1, 0), subspace_from_rows([[1, 0, 0]]))


def test_polar_of_point_on_quadric_is_tangent():
    x = np.array([0.6, 0.8, 1.0])
    assert polar(circle, subspace_from_rows([x])).contains(x)


def test_orthogonal_subspace_signatures(rng):
    # r = r' + r'' + t' for U and its polar, U non-degenerate
    Q = LIE
    for k in (1, 2, 3):
        U = subspace_from_rows(rng.normal(size=(k, 5)))
        P = polar(Q, U)
        a = signature_of(restricted_form(Q, U.basis))
        b = signature_of(restricted_form(Q, P.basis))
        assert a[0] + b[0] == 3 and a[1] + b[1] == 2


def test_tangent_cone():
    x = [2, 0, 1]
    cone = tangent_cone(circle, x)
    assert abs(eval(cone, [0.5, math.sqrt(3) / 2, 1])) < 1e-12
    assert abs(eval(cone, x)) < 1e-12
    with pytest.raises(PointOnQuadric):
        tangent_cone(circle, [1, 0, 1])


def test_tangent_cone_inside_point_is_definite():
    cone = tangent_cone(diag_form(1, 1, 1, -1), [0, 0, 0, 1])
    s = cone.signature
    assert s[2] == 1 and (s[0] == 0 or s[1] == 0)


def test_line_intersect():
    r = line_intersect(circle, [0, 0, 1], [2, 0, 1])
    assert r.kind == "TwoReal"
    got = sorted(float(p[0] / p[2]) for p in r.points)
    assert np.allclose(got, [-1, 1])
    assert line_intersect(diag_form(1, 1, -1, -1), [1, 0, 1, 0], [0, 1, 0, 1]).kind == "Contained"
    assert line_intersect(circle, [0, 0, 1], [0.1, 0, 1]).kind == "TwoReal"
    assert line_intersect(circle, [1, 0, 1], [1, 1, 1]).kind == "Tangent"
    # the line x + y = 2 passes outside the unit circle
    assert line_intersect(circle, [2, 0, 1], [0, 2, 1]).kind == "TwoComplexConjugate"
    assert line_intersect(diag_form(1, 1, 1), [1, 0, 0], [0, 1, 0]).kind == "TwoComplexConjugate"


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_line_intersect_points_on_quadric(a, b, c, d):
    x, y = np.array([a, b, 1.0]), np.array([c, d, 1.0])
    if np.linalg.norm(x - y) < 1e-2:
        return
    r = line_intersect(circle, x, y)
    if r.kind == "TwoReal":
        for p in r.points:
            assert abs(eval(circle, p)) <= 1e-9 * (p @ p)


def test_reflect():
    m = reflect(diag_form(1, 1, 1, -1), [0, 0, 1, 0])
    assert np.allclose(m.matrix, np.diag([1, 1, -1, 1]))
    q = np.array([0.3, 0.2, 1.0])
    assert same_point(reflect(circle, q)(q), q)
    with pytest.raises(IsotropicMirror):
        reflect(circle, [1, 0, 1])


def test_reflect_swaps_intersections(rng):
    q = np.array([0.2, -0.1, 1.0])
    y = np.array([0.9, 0.7, 0.3])
    a, b = line_intersect(circle, q, y).points
    s = reflect(circle, q)
    assert same_point(s(a), b) and same_point(s(b), a)


def test_decompose_reflections(rng):
    assert decompose_reflections(LIE, identity(5)) == []
    w = np.array([1.0, 2, 0, 0.5, 0])
    ms = decompose_reflections(LIE, reflect(LIE, w))
    assert len(ms) == 1 and same_point(ms[0], w)
    for _ in range(20):
        f = ProjMap(random_orthogonal(LIE.form, rng, 4))
        ms = decompose_reflections(LIE, f)
        assert len(ms) <= 5
        assert map_distance(compose_reflections(LIE, ms), f) < 1e-9


def test_pencil_member_through():
    from spaceforms.nets import NetParams, base_point, cone_form, laguerre_form, ruling_lambda

    p = NetParams(1, "Ellipse", 0.9, 0.4, 0.23, 0.3)
    P = Pencil(laguerre_form(p), cone_form(p))
    s = 0.37
    x, y = base_point(p, 1, 0.2), base_point(p, -1, 0.2 + s)
    M = pencil_member_through(P, x, y)
    lam = ruling_lambda(p, s)
    assert np.allclose(M.form, laguerre_form(p).form + lam * cone_form(p).form, atol=1e-9)
    for t in np.linspace(-2, 2, 5):
        assert abs(eval(M, x + t * y)) < 1e-12
    # a second ruling line of the same family gives the same member
    M2 = pencil_member_through(P, base_point(p, 1, -0.8), base_point(p, -1, -0.8 + s))
    assert np.allclose(M.form, M2.form, atol=1e-9)

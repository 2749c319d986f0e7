import math

import numpy as np
import pytest

from conftest import random_on_quadric, random_orthogonal
from spaceforms.cayley_klein import HYPERBOLIC, OrientedSphere, SpaceForm, ck_distance, metric_distance
from spaceforms.errors import NoIntersection, ProjectingCenter
from spaceforms.moebius_projection import (
    ProjectedSphere, ProjectionContext, decode_elliptic, decode_hyperbolic, decompose_mobius, elliptic_mobius_context,
    encode_elliptic, encode_hyperbolic, hyperbolic_mobius_context, involute, lift_sphere, lifted_distance, project,
    project_sphere, scaling, sphere_angle,
)
from spaceforms.projective_core import ProjMap, identity, map_distance, same_point
from spaceforms.quadric_engine import diag_form, line_intersect, on_quadric

HC = hyperbolic_mobius_context()
EC = elliptic_mobius_context()


def test_involute_and_project():
    x = np.array([0.3, -0.2, 0.7, 1.0])
    assert np.allclose(involute(HC, x), [0.3, -0.2, -0.7, 1.0])
    assert np.allclose(project(HC, x), [0.3, -0.2, 0.0, 1.0])
    y = np.array([0.3, -0.2, 0.0, 1.0])
    assert np.allclose(involute(HC, y), y) and np.allclose(project(HC, y), y)
    assert np.allclose(involute(HC, involute(HC, x)), x)
    assert np.allclose(project(HC, involute(HC, x)), project(HC, x))
    with pytest.raises(ProjectingCenter):
        project(HC, [0, 0, 2, 0])


def test_project_sphere_kinds():
    assert project_sphere(HC, HC.q).kind == "Absolute"
    assert project_sphere(HC, [1.0, 0, 0, 0.5]).kind == "Hyperplane"


def test_project_sphere_radius_one_circle():
    x = np.array([0, 0, math.cosh(1.0), 1.0])
    s = project_sphere(HC, x)
    assert s.kind == "Sphere"
    # intersect x^⊥ with Q on the plane x2 = 0 and measure the radius
    pts = line_intersect(HC.Q, [0, 0, 1 / math.cosh(1.0), 1.0], [1.0, 0, 0, 0]).points
    sf = SpaceForm(HYPERBOLIC)
    for y in pts:
        yt = project(HC, y)
        assert metric_distance(sf, [0, 0, 1], yt[[0, 1, 3]]) == pytest.approx(1.0)


def test_lift_sphere():
    x = np.array([0.2, 0.1, 0.0, 1.0])
    a, b = lift_sphere(HC, ProjectedSphere("Hyperplane", x, 0.0))
    assert np.allclose(a, x) and np.allclose(b, x)
    y = np.array([0.0, 0.0, 0.0, 1.0])
    r = 0.7
    s = project_sphere(HC, [0, 0, math.cosh(r), 1.0])
    lifts = lift_sphere(HC, s)
    assert any(same_point(v, [0, 0, math.cosh(r), 1.0]) for v in lifts)
    assert any(same_point(v, [0, 0, -math.cosh(r), 1.0]) for v in lifts)
    s = project_sphere(EC, [0, 0, 1.0, math.cos(r)])
    assert any(same_point(v, [0, 0, 1.0, -math.cos(r)]) for v in lift_sphere(EC, s))


def test_lifted_distance_identities():
    x = random_on_quadric(HC.Q.form, np.random.default_rng(0))
    assert lifted_distance(HC, x, x) == pytest.approx(1.0)
    # x and its involute project to the same point
    v = 1.0 - HC.Q.bilinear(x, involute(HC, x)) * HC.qq / (HC.Q.bilinear(x, HC.q) * HC.Q.bilinear(involute(HC, x), HC.q))
    assert lifted_distance(HC, x, involute(HC, x)) == pytest.approx(v * v)


@pytest.mark.parametrize("ctx", [HC, EC])
def test_lifted_distance_matches_projection(ctx, rng):
    for _ in range(50):
        x, y = random_on_quadric(ctx.Q.form, rng), random_on_quadric(ctx.Q.form, rng)
        left = lifted_distance(ctx, x, y)
        right = ck_distance(ctx.Qtilde, ctx.coords(project(ctx, x)), ctx.coords(project(ctx, y)))
        assert left == pytest.approx(right, rel=1e-10, abs=1e-10)


def test_sphere_angle():
    x1 = np.array([1.0, 0, 0, 0])
    assert sphere_angle(EC, x1, x1) == pytest.approx(1.0)
    assert sphere_angle(EC, x1, [0, 1.0, 0, 0]) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("ctx", [HC, EC])
def test_sphere_angle_random(ctx, rng):
    done = 0
    while done < 40:
        x1, x2 = rng.normal(size=4), rng.normal(size=4)
        try:
            a = sphere_angle(ctx, x1, x2)
        except NoIntersection:
            continue
        assert a == pytest.approx(ck_distance(ctx.Q, x1, x2), rel=1e-10, abs=1e-10)
        done += 1


def test_scaling():
    x = np.array([0.1, 0.2, 0.3, 1.0])
    assert map_distance(scaling(HC, x, x), identity(4)) < 1e-12
    y = np.array([-0.2, 0.1, 0.5, 1.0])
    f = scaling(HC, x, y)
    assert same_point(f(x), y)


def test_scaling_recovers_laguerre_family():
    from spaceforms.laguerre import laguerre_context, laguerre_scaling

    ctx = laguerre_context(HYPERBOLIC)
    T = laguerre_scaling(ctx, "S", 0.6)
    pc = ProjectionContext(ctx.B, ctx.p)
    assert map_distance(scaling(pc, ctx.p, T(ctx.p)), T) < 1e-12


def test_decompose_mobius(rng):
    Q = HC.Q.form
    fix = ProjMap(np.diag([-1.0, 1, 1, 1]))
    T, Phi = decompose_mobius(HC, fix)
    assert map_distance(T, identity(4)) < 1e-12 and map_distance(Phi, fix) < 1e-12
    x = np.array([0.1, 0.4, 1.5, 1.0])
    T, Phi = decompose_mobius(HC, scaling(HC, HC.q, x))
    assert map_distance(Phi, identity(4)) < 1e-9
    for _ in range(30):
        f = ProjMap(random_orthogonal(Q, rng))
        T, Phi = decompose_mobius(HC, f)
        assert map_distance(T @ Phi, f) < 1e-10
        assert same_point(Phi(HC.q), HC.q)


def test_hyperbolic_codec_round_trip(rng):
    for kind in ("Sphere", "Horosphere", "DistanceSurface", "Hyperplane", "Point"):
        for o in (1, -1):
            c = rng.uniform(-0.5, 0.5, 2)
            if kind in ("Sphere", "Point"):
                y = np.append(c, 1.0)
                y = y / math.sqrt(-(y[0] ** 2 + y[1] ** 2 - 1))
            elif kind == "Horosphere":
                t = rng.uniform(0, 2 * math.pi)
                y = np.array([math.cos(t), math.sin(t), 1.0])
            else:
                y = np.array([1.0, c[0], c[1]])
                y = y / math.sqrt(1 + c[0] ** 2 - c[1] ** 2)
            r = 0.0 if kind in ("Hyperplane", "Point") else rng.uniform(0.2, 2.0)
            s = OrientedSphere(kind, y, r, o if kind != "Hyperplane" else 1)
            d = decode_hyperbolic(encode_hyperbolic(s))
            assert d.kind == kind and d.radius == pytest.approx(r)
            # a pole and its negative with opposite orientation are the same oriented sphere
            assert same_point(encode_hyperbolic(d), encode_hyperbolic(s))


def test_elliptic_codec_round_trip(rng):
    for kind in ("Sphere", "Point", "Hyperplane"):
        y = rng.normal(size=3)
        y = y / np.linalg.norm(y)
        r = rng.uniform(0.1, 1.4) if kind == "Sphere" else 0.0
        d = decode_elliptic(encode_elliptic(OrientedSphere(kind, y, r, 1)))
        assert d.kind == kind and d.radius == pytest.approx(r) and same_point(d.center, y)


def test_encoded_points_on_quadric():
    y = np.array([0.0, 0.0, 1.0])
    assert on_quadric(HC.Q, encode_hyperbolic(OrientedSphere("Point", y, 0.0, 1)))

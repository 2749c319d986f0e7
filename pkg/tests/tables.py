"""Random instances for every row of the sphere correspondence tables, with encode/decode round trips."""

import math

import numpy as np

from spaceforms.cayley_klein import ELLIPTIC, HYPERBOLIC, OrientedSphere, SpaceForm
from spaceforms.laguerre import LaguerreContext, decode_sphere, encode_sphere
from spaceforms.lie_sphere import (
    LieContext, lie_decode_euclidean, lie_decode_spherical, lie_encode_euclidean, lie_encode_spherical,
)
from spaceforms.moebius_projection import decode_elliptic, decode_hyperbolic, encode_elliptic, encode_hyperbolic


def h_point(rng):
    yh = rng.normal(size=2)
    return np.append(yh, math.sqrt(1 + yh @ yh))


def ds_point(rng):
    y3 = rng.normal()
    d = rng.normal(size=2)
    return np.append(d / np.linalg.norm(d) * math.sqrt(1 + y3 * y3), y3)


def ideal_point(rng):
    t = rng.uniform(0, 2 * math.pi)
    return np.array([math.cos(t), math.sin(t), 1.0])


def s_point(rng):
    y = rng.normal(size=3)
    return y / np.linalg.norm(y)


def orientation(rng):
    return int(rng.choice([-1, 1]))


def _oriented_center(s):
    return s.orientation * np.asarray(s.center)


def _sphere_close(a, b, tol, signed=True):
    if a.kind != b.kind or abs(a.radius - b.radius) > tol:
        return False
    if signed:
        return np.allclose(_oriented_center(a), _oriented_center(b), atol=tol)
    return np.allclose(a.center, b.center, atol=tol) or np.allclose(a.center, -np.asarray(b.center), atol=tol)


HC = LaguerreContext(SpaceForm(HYPERBOLIC))
ELC = LaguerreContext(SpaceForm(ELLIPTIC))
LIE = LieContext(2)


def _row(name, make, encode, decode, same):
    def run(rng, tol=1e-9):
        s = make(rng)
        return same(decode(encode(s)), s, tol)
    run.__name__ = name
    return name, run


ROWS = [
    # hyperbolic spheres lifted to Möbius geometry
    _row("moebius-hyp point", lambda r: OrientedSphere("Point", h_point(r), 0.0, orientation(r)),
         encode_hyperbolic, decode_hyperbolic, _sphere_close),
    _row("moebius-hyp hyperplane", lambda r: OrientedSphere("Hyperplane", ds_point(r), 0.0, 1),
         encode_hyperbolic, decode_hyperbolic, lambda a, b, t: _sphere_close(a, b, t, signed=False)),
    _row("moebius-hyp sphere", lambda r: OrientedSphere("Sphere", h_point(r), r.uniform(0.05, 3), orientation(r)),
         encode_hyperbolic, decode_hyperbolic, _sphere_close),
    _row("moebius-hyp distance surface",
         lambda r: OrientedSphere("DistanceSurface", ds_point(r), r.uniform(0.05, 3), orientation(r)),
         encode_hyperbolic, decode_hyperbolic, _sphere_close),
    _row("moebius-hyp horosphere",
         lambda r: OrientedSphere("Horosphere", ideal_point(r), r.uniform(-2, 2), orientation(r)),
         encode_hyperbolic, decode_hyperbolic, _sphere_close),
    # elliptic spheres lifted to Möbius geometry
    _row("moebius-ell point", lambda r: OrientedSphere("Point", s_point(r), 0.0, orientation(r)),
         encode_elliptic, decode_elliptic, _sphere_close),
    _row("moebius-ell hyperplane", lambda r: OrientedSphere("Hyperplane", s_point(r), 0.0, 1),
         encode_elliptic, decode_elliptic, lambda a, b, t: _sphere_close(a, b, t, signed=False)),
    _row("moebius-ell sphere", lambda r: OrientedSphere("Sphere", s_point(r), r.uniform(0.05, 1.5), orientation(r)),
         encode_elliptic, decode_elliptic, _sphere_close),
    # hyperbolic Laguerre geometry
    _row("laguerre-hyp oriented plane", lambda r: OrientedSphere("OrientedPlane", ds_point(r), 0.0, orientation(r)),
         lambda s: encode_sphere(HC, s), lambda x: decode_sphere(HC, x), _sphere_close),
    _row("laguerre-hyp sphere", lambda r: OrientedSphere("Sphere", h_point(r), r.uniform(0.05, 3), orientation(r)),
         lambda s: encode_sphere(HC, s), lambda x: decode_sphere(HC, x), _sphere_close),
    _row("laguerre-hyp horosphere",
         lambda r: OrientedSphere("Horosphere", ideal_point(r), r.uniform(-2, 2), orientation(r)),
         lambda s: encode_sphere(HC, s), lambda x: decode_sphere(HC, x), _sphere_close),
    _row("laguerre-hyp distance surface",
         lambda r: OrientedSphere("DistanceSurface", ds_point(r), r.uniform(0.05, 3), orientation(r)),
         lambda s: encode_sphere(HC, s), lambda x: decode_sphere(HC, x), _sphere_close),
    _row("laguerre-hyp deSitter sphere",
         lambda r: OrientedSphere("DeSitterSphere", ds_point(r), r.uniform(0.05, 1.5), orientation(r)),
         lambda s: encode_sphere(HC, s), lambda x: decode_sphere(HC, x), _sphere_close),
    # elliptic Laguerre geometry
    _row("laguerre-ell oriented plane", lambda r: OrientedSphere("OrientedPlane", s_point(r), 0.0, orientation(r)),
         lambda s: encode_sphere(ELC, s), lambda x: decode_sphere(ELC, x), _sphere_close),
    _row("laguerre-ell sphere", lambda r: OrientedSphere("Sphere", s_point(r), r.uniform(0.05, 1.5), orientation(r)),
         lambda s: encode_sphere(ELC, s), lambda x: decode_sphere(ELC, x), _sphere_close),
]


def _lie_spherical(rng, tol=1e-9):
    c, rad = s_point(rng), rng.uniform(-1.5, 1.5)
    c2, r2 = lie_decode_spherical(LIE, lie_encode_spherical(LIE, c, rad))
    return np.allclose(c2, c, atol=tol) and abs(r2 - rad) < tol


def _lie_point(rng, tol=1e-9):
    x = rng.normal(size=2) * 3
    d = lie_decode_euclidean(LIE, lie_encode_euclidean(LIE, "point", x))
    return d.kind == "point" and np.allclose(d.center_or_normal, x, atol=tol)


def _lie_sphere(rng, tol=1e-9):
    c, rad = rng.normal(size=2) * 3, rng.choice([-1, 1]) * rng.uniform(0.05, 5)
    d = lie_decode_euclidean(LIE, lie_encode_euclidean(LIE, "sphere", c, rad))
    return d.kind == "sphere" and np.allclose(d.center_or_normal, c, atol=tol) and abs(d.value - rad) < tol


def _lie_plane(rng, tol=1e-9):
    t, dist = rng.uniform(0, 2 * math.pi), rng.normal() * 3
    nv = np.array([math.cos(t), math.sin(t)])
    d = lie_decode_euclidean(LIE, lie_encode_euclidean(LIE, "plane", nv, dist))
    return d.kind == "plane" and np.allclose(d.center_or_normal, nv, atol=tol) and abs(d.value - dist) < tol


ROWS += [
    ("lie-spherical oriented sphere", _lie_spherical),
    ("lie-euclidean point", _lie_point),
    ("lie-euclidean oriented sphere", _lie_sphere),
    ("lie-euclidean oriented plane", _lie_plane),
]

EUC = LaguerreContext(SpaceForm("Euclidean"))


def _euc_circle(rng, tol=1e-9):
    s = OrientedSphere("EuclideanCircle", rng.normal(size=2) * 3, rng.uniform(0.05, 5), orientation(rng))
    return _sphere_close(decode_sphere(EUC, encode_sphere(EUC, s)), s, tol)


def _euc_line(rng, tol=1e-9):
    from spaceforms.laguerre import decode_line, encode_line

    t, dist = rng.uniform(0, 2 * math.pi), rng.normal() * 3
    nv = np.array([math.cos(t), math.sin(t)])
    n2, d2 = decode_line(EUC, 2.5 * encode_line(EUC, nv, dist))
    return np.allclose(n2, nv, atol=tol) and abs(d2 - dist) < tol


ROWS += [("laguerre-euc circle", _euc_circle), ("laguerre-euc oriented line", _euc_line)]

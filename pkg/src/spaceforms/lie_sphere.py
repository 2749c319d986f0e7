"""Lie sphere geometry: oriented hyperspheres as points of the Lie quadric."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoRealRepresentative, NotOnQuadric, NotUnit, OnPolarHyperplane, UnknownRow, ZeroRadius
from .projective_core import REL_EPS, ProjMap, as_vec, identity
from .quadric_engine import QuadricForm, line_intersect, on_quadric, reflect, relative_value


class LieContext:
    """L = diag(1, ..., 1, -1, -1) on R^{n+3} with point complex p = e_{n+3}."""

    def __init__(self, n: int = 2, rel_eps: float = REL_EPS):
        self.n = n
        self.rel_eps = rel_eps
        self.L = QuadricForm(np.diag([1.0] * (n + 1) + [-1.0, -1.0]))
        self.p = np.zeros(n + 3)
        self.p[-1] = 1.0
        self.e0 = np.zeros(n + 3)
        self.e0[n], self.e0[n + 1] = -0.5, 0.5
        self.einf = np.zeros(n + 3)
        self.einf[n], self.einf[n + 1] = 0.5, 0.5

    def e0_coefficient(self, x) -> float:
        return -2.0 * self.L.bilinear(x, self.einf)

    def einf_coefficient(self, x) -> float:
        return -2.0 * self.L.bilinear(x, self.e0)


def _unit(c, rel_eps):
    c = as_vec(c)
    if abs(float(np.linalg.norm(c)) - 1.0) > rel_eps * 10:
        raise NotUnit(f"expected a unit vector, got norm {np.linalg.norm(c)}")
    return c


# Spheres of S^n


def lie_encode_spherical(ctx: LieContext, c, r: float) -> np.ndarray:
    c = _unit(c, ctx.rel_eps)
    return np.concatenate([c, [math.cos(r), math.sin(r)]])


def reduce_spherical(c, r: float) -> tuple[np.ndarray, float]:
    """Representative of (c, r) with r in (-π/2, π/2]."""
    c = as_vec(c)
    r = math.remainder(r, 2.0 * math.pi)
    if r > 0.5 * math.pi:
        c, r = -c, r - math.pi
    elif r <= -0.5 * math.pi:
        c, r = -c, r + math.pi
    return c, r


def lie_decode_spherical(ctx: LieContext, x) -> tuple[np.ndarray, float]:
    x = as_vec(x)
    if not on_quadric(ctx.L, x, ctx.rel_eps):
        raise NotOnQuadric("point is not on the Lie quadric")
    n = ctx.n
    c = x[: n + 1]
    k = float(np.linalg.norm(c))
    r = math.atan2(x[n + 2] / k, x[n + 1] / k)
    return reduce_spherical(c / k, r)


# Euclidean space


def lie_encode_point(ctx: LieContext, x) -> np.ndarray:
    x = as_vec(x)
    return np.concatenate([x, [0.0, 0.0, 0.0]]) + ctx.e0 + float(x @ x) * ctx.einf


def lie_encode_sphere(ctx: LieContext, center, r: float) -> np.ndarray:
    s = as_vec(center)
    return np.concatenate([s, [0.0, 0.0, 0.0]]) + ctx.e0 + (float(s @ s) - r * r) * ctx.einf + r * ctx.p


def lie_encode_plane(ctx: LieContext, normal, d: float) -> np.ndarray:
    nv = _unit(normal, ctx.rel_eps)
    return np.concatenate([nv, [0.0, 0.0, 0.0]]) + 2.0 * d * ctx.einf + ctx.p


def lie_encode_euclidean(ctx: LieContext, kind: str, *args) -> np.ndarray:
    if kind == "point":
        return lie_encode_point(ctx, *args)
    if kind == "sphere":
        return lie_encode_sphere(ctx, *args)
    if kind == "plane":
        return lie_encode_plane(ctx, *args)
    raise ValueError(f"unknown Euclidean Lie object {kind!r}")


@dataclass(frozen=True, eq=False)
class EuclideanLieObject:
    kind: str  # point, sphere or plane
    center_or_normal: np.ndarray
    value: float = 0.0  # signed radius or plane offset


def lie_decode_euclidean(ctx: LieContext, x) -> EuclideanLieObject:
    x = as_vec(x)
    n, eps = ctx.n, ctx.rel_eps
    if not on_quadric(ctx.L, x, eps):
        raise NotOnQuadric("point is not on the Lie quadric")
    a = ctx.e0_coefficient(x)
    scale = float(np.max(np.abs(x)))
    if abs(a) <= eps * scale:
        x = x / x[-1]
        return EuclideanLieObject("plane", x[:n].copy(), 0.5 * ctx.einf_coefficient(x))
    x = x / a
    r = x[-1]
    if abs(r) <= eps * float(np.max(np.abs(x))):
        return EuclideanLieObject("point", x[:n].copy(), 0.0)
    return EuclideanLieObject("sphere", x[:n].copy(), float(r))


def stereographic(ctx: LieContext, x) -> np.ndarray:
    """Point of S^n belonging to a Euclidean point, through the Lie encodings."""
    v = lie_encode_point(ctx, x)
    return v[: ctx.n + 1] / v[ctx.n + 1]


# Contact, complexes, distances


def oriented_contact(ctx: LieContext, s1, s2) -> bool:
    s1, s2 = as_vec(s1), as_vec(s2)
    for s in (s1, s2):
        if not on_quadric(ctx.L, s, ctx.rel_eps):
            raise NotOnQuadric("oriented contact needs points of the Lie quadric")
    v = ctx.L.bilinear(s1, s2) / (np.linalg.norm(s1) * np.linalg.norm(s2) * ctx.L.scale)
    return bool(abs(v) < ctx.rel_eps)


@dataclass(frozen=True, eq=False)
class SphereComplex:
    q: np.ndarray
    kind: str
    sigma: ProjMap


def classify_complex(ctx: LieContext, q) -> SphereComplex:
    q = as_vec(q)
    L, p, eps = ctx.L, ctx.p, ctx.rel_eps
    v = relative_value(L, q)
    if v > eps:
        return SphereComplex(q, "Elliptic", reflect(L, q))
    if v < -eps:
        return SphereComplex(q, "Hyperbolic", reflect(L, q))
    # move q onto the light cone along p: <q + a p, q + a p> = 0
    qq, qp = L.bilinear(q, q), L.bilinear(q, p)
    disc = qp * qp + qq
    if disc >= 0 and (qq != 0):
        big = qp + math.copysign(math.sqrt(disc), qp if qp != 0 else 1.0)
        q = q + (-qq / big) * p
    return SphereComplex(q, "Parabolic", identity(L.size))


_SUBGEOMETRIES = {
    ("-", "-"): ("elliptic space", "PO(n+1)", "PO(n+1,1)", "PO(n+1,1)"),
    ("-", "+"): ("hyperbolic space", "PO(n,1)", "PO(n+1,1)", "PO(n,2)"),
    ("+", "-"): ("deSitter space", "PO(n,1)", "PO(n,2)", "PO(n+1,1)"),
    ("-", "0"): ("(dual) Euclidean space", "PO(n,0,1)", "PO(n+1,1)", "PO(n,1,1)"),
    ("+", "0"): ("(dual) Minkowski space", "PO(n-1,1,1)", "PO(n,2)", "PO(n,1,1)"),
}


def classify_subgeometry(p_sig: str, q_sig: str) -> dict:
    key = (str(p_sig), str(q_sig))
    if key not in _SUBGEOMETRIES:
        raise UnknownRow(f"no subgeometry with signs {key}")
    name, iso, mob, lag = _SUBGEOMETRIES[key]
    return {"space_form": name, "isometry_group": iso, "moebius_group": mob, "laguerre_group": lag}


def q_distance(Q: QuadricForm, q, x, y, rel_eps: float = REL_EPS) -> float:
    q, x, y = as_vec(q), as_vec(x), as_vec(y)
    xq, yq = Q.bilinear(x, q), Q.bilinear(y, q)
    nq = np.linalg.norm(Q.form @ q)
    for v, vq in ((x, xq), (y, yq)):
        if abs(vq) <= rel_eps * nq * np.linalg.norm(v):
            raise OnPolarHyperplane("point lies on the polar hyperplane of q")
    return 1.0 - Q.bilinear(x, y) * Q.bilinear(q, q) / (xq * yq)


def inversive_distance(s1, s2) -> float:
    """Signed inversive distance of two oriented spheres given as (center, signed radius)."""
    (c1, r1), (c2, r2) = s1, s2
    if r1 == 0 or r2 == 0:
        raise ZeroRadius("inversive distance needs non-zero radii")
    d = as_vec(c1) - as_vec(c2)
    return (r1 * r1 + r2 * r2 - float(d @ d)) / (2.0 * r1 * r2)


def complex_as_constant_distance(ctx: LieContext, q) -> tuple[np.ndarray, np.ndarray, float]:
    """The sphere q₊ and the constant inversive distance I describing the complex of q."""
    q = as_vec(q)
    L, p = ctx.L, ctx.p
    res = line_intersect(L, p, q, ctx.rel_eps)
    if res.kind != "TwoReal":
        raise NoRealRepresentative(f"the line through p and q is {res.kind}, not of signature (+-)")
    reps = []
    A = np.column_stack([q, p])
    for pt in res.points:
        coef = np.linalg.lstsq(A, pt, rcond=None)[0]
        reps.append(q + coef[1] / coef[0] * p)
    ref = ctx.e0_coefficient(q)
    if abs(ref) <= ctx.rel_eps * float(np.max(np.abs(q))):
        head = q[: ctx.n + 2]
        ref = head[int(np.argmax(np.abs(head)))]
    if reps[0][-1] * ref > 0:
        q_plus, q_minus = reps
    else:
        q_minus, q_plus = reps
    return q_plus, q_minus, float(q[-1] / q_plus[-1])

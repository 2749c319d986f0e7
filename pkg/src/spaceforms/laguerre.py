"""Laguerre geometry over the hyperbolic, elliptic and Euclidean planes.

Points of the Laguerre quadric B are oriented hyperplanes of the base space
p^⊥; planar sections of B are Laguerre spheres.  A point x off B stands for
the section x^⊥ ∩ B, which the polar projection turns into a sphere with
center π_p(x).
"""

from __future__ import annotations

import math

import numpy as np

from .cayley_klein import (
    ELLIPTIC,
    EUCLIDEAN,
    HYPERBOLIC,
    OrientedSphere,
    SpaceForm,
    ck_distance,
    normalize_to_sheet,
)
from .errors import (
    Degenerate,
    EmptySection,
    KindMismatch,
    NoCommonTangent,
    NoIntersection,
    NotOrthogonal,
    ProjectingCenter,
    UnsupportedEuclidean,
    WrongFamily,
)
from .moebius_projection import common_quadric_point
from .projective_core import REL_EPS, ProjMap, Subspace, as_vec, normalize, proportionality_residual, span_of_functionals
from .quadric_engine import QuadricForm, form_scale_factor, on_quadric, reflect, relative_value

HYPERBOLIC_KINDS = ("OrientedPlane", "Sphere", "Horosphere", "DistanceSurface", "DeSitterSphere")
ELLIPTIC_KINDS = ("OrientedPlane", "Sphere")


class LaguerreContext:
    def __init__(self, sf: SpaceForm, rel_eps: float = REL_EPS):
        n = sf.n
        d = [1.0] * n + {HYPERBOLIC: [-1.0, -1.0], ELLIPTIC: [1.0, -1.0], EUCLIDEAN: [0.0, -1.0]}[sf.tag]
        self.sf = sf
        self.n = n
        self.B = QuadricForm(np.diag(d))
        self.p = np.zeros(n + 2)
        self.p[-1] = 1.0
        self.rel_eps = rel_eps

    @property
    def base_form(self) -> QuadricForm:
        """The absolute of the base space p^⊥ in the first n+1 coordinates."""
        return QuadricForm(self.B.form[:-1, :-1])

    def involution(self) -> ProjMap:
        """σ_p: reverses orientation."""
        return reflect(self.B, self.p)


def laguerre_context(tag: str, n: int = 2) -> LaguerreContext:
    return LaguerreContext(SpaceForm(tag, n))


def _is_p(ctx, x) -> bool:
    return proportionality_residual(x, ctx.p) < ctx.rel_eps


def polar_project(ctx: LaguerreContext, x) -> Subspace:
    """x^⊥ ∩ p^⊥, the hyperplane of the base space belonging to x."""
    x = as_vec(x)
    if _is_p(ctx, x):
        raise ProjectingCenter("p has no polar projection")
    return span_of_functionals(np.vstack([ctx.B.form @ x, ctx.B.form @ ctx.p]), ctx.rel_eps)


def project_p(ctx: LaguerreContext, x) -> np.ndarray:
    """π_p(x) in base coordinates (the first n+1 entries)."""
    x = as_vec(x)
    if _is_p(ctx, x):
        raise ProjectingCenter("cannot project p")
    return x[:-1].copy()


def _sign(v: float) -> int:
    return -1 if v < 0 else 1


def decode_sphere(ctx: LaguerreContext, x) -> OrientedSphere:
    x = as_vec(x)
    tag, eps = ctx.sf.tag, ctx.rel_eps
    if tag == EUCLIDEAN:
        return _decode_euclidean(ctx, x)
    if _is_p(ctx, x):
        raise ProjectingCenter("p is the absolute, not a sphere")
    y, t = x[:-1], x[-1]
    base = ctx.base_form
    if tag == ELLIPTIC:
        if relative_value(ctx.B, x) < -eps:
            raise EmptySection("timelike point: the section of the Laguerre quadric is empty")
        s = np.linalg.norm(y)
        y, t = y / s, t / s
        if np.dot(normalize(y), y) < 0:
            y, t = -y, -t
        if on_quadric(ctx.B, x, eps):
            return OrientedSphere("OrientedPlane", y, 0.0, _sign(t))
        return OrientedSphere("Sphere", y, math.asin(min(abs(t), 1.0)), _sign(t))
    # hyperbolic
    yy = relative_value(base, y) if np.any(y) else 0.0
    if on_quadric(ctx.B, x, eps):
        if abs(yy) <= eps:
            raise Degenerate("oriented plane with an ideal pole")
        y2, s = normalize_to_sheet(ctx.sf, y, "deSitter", return_sign=True)
        k = math.sqrt(base.bilinear(y, y))
        return OrientedSphere("OrientedPlane", y2, 0.0, _sign(s * t / k))
    if yy < -eps:
        y2, s = normalize_to_sheet(ctx.sf, y, "hyperbolic", return_sign=True)
        lv = s * t / math.sqrt(-base.bilinear(y, y))
        return OrientedSphere("Sphere", y2, math.asinh(abs(lv)), _sign(lv))
    if abs(yy) <= eps:
        c = 1.0 / y[-1]
        lv = t * c
        return OrientedSphere("Horosphere", y * c, math.log(abs(lv)), _sign(lv))
    y2, s = normalize_to_sheet(ctx.sf, y, "deSitter", return_sign=True)
    lv = s * t / math.sqrt(base.bilinear(y, y))
    if ctx.B.bilinear(x, x) < 0:
        return OrientedSphere("DistanceSurface", y2, math.acosh(max(abs(lv), 1.0)), _sign(lv))
    return OrientedSphere("DeSitterSphere", y2, math.acos(min(abs(lv), 1.0)), _sign(lv))


def encode_sphere(ctx: LaguerreContext, s: OrientedSphere) -> np.ndarray:
    tag = ctx.sf.tag
    if tag == EUCLIDEAN:
        if s.kind != "EuclideanCircle":
            raise KindMismatch(f"{s.kind} is not a Euclidean Laguerre circle")
        c = as_vec(s.center)
        return np.concatenate([c, [-1.0, -s.signed_radius]])
    o = 1.0 if s.orientation >= 0 else -1.0
    r = s.radius
    if tag == ELLIPTIC:
        lift = {"OrientedPlane": 1.0, "Sphere": math.sin(r)}
    else:
        lift = {
            "OrientedPlane": 1.0,
            "Sphere": math.sinh(r),
            "Horosphere": math.exp(r),
            "DistanceSurface": math.cosh(r),
            "DeSitterSphere": math.cos(r),
        }
    if s.kind not in lift:
        raise KindMismatch(f"{s.kind} is not a {tag.lower()} Laguerre sphere")
    return np.concatenate([as_vec(s.center), [o * lift[s.kind]]])


def _decode_euclidean(ctx: LaguerreContext, a) -> OrientedSphere:
    n = ctx.n
    if abs(a[n]) <= ctx.rel_eps * np.max(np.abs(a)):
        raise Degenerate("plane parallel to the cylinder axis: a pencil of parallel lines")
    a = a / -a[n]
    r = -a[n + 1]
    return OrientedSphere("EuclideanCircle", a[:n].copy(), abs(r), _sign(r))


def encode_line(ctx: LaguerreContext, normal, d: float) -> np.ndarray:
    """Euclidean oriented line n·z = d as a point of the Blaschke cylinder."""
    nv = as_vec(normal)
    nv = nv / np.linalg.norm(nv)
    return np.concatenate([nv, [d, 1.0]])


def decode_line(ctx: LaguerreContext, x) -> tuple[np.ndarray, float]:
    x = as_vec(x)
    if not on_quadric(ctx.B, x, ctx.rel_eps) or x[-1] == 0:
        raise Degenerate("not a finite oriented line")
    x = x / x[-1]
    return x[: ctx.n].copy(), float(x[ctx.n])


def tangent_distance(ctx: LaguerreContext, x1, x2) -> float:
    if ctx.sf.tag == EUCLIDEAN:
        raise UnsupportedEuclidean("tangent distance needs a non-degenerate Laguerre quadric")
    x1, x2 = as_vec(x1), as_vec(x2)
    B, p, eps = ctx.B, ctx.p, ctx.rel_eps
    on1, on2 = on_quadric(B, x1, eps), on_quadric(B, x2, eps)
    if on1 and on2:
        v = 1.0 - B.bilinear(x1, x2) * B.bilinear(p, p) / (B.bilinear(x1, p) * B.bilinear(x2, p))
        return v * v
    if on1 or on2:
        raise Degenerate("tangent distance between an oriented plane and a sphere is not defined")
    if proportionality_residual(x1, x2) > eps:
        try:
            common_quadric_point(B, x1, x2, eps)
        except NoIntersection:
            raise NoCommonTangent("the two spheres have no common oriented tangent plane") from None
    return ck_distance(B, x1, x2, eps)


def in_oriented_contact(ctx: LaguerreContext, x1, x2) -> bool:
    """The join of x1 and x2 touches B."""
    B = ctx.B
    x1, x2 = as_vec(x1), as_vec(x2)
    x1, x2 = x1 / np.linalg.norm(x1), x2 / np.linalg.norm(x2)
    a, b, c = B.bilinear(x1, x1), B.bilinear(x2, x2), B.bilinear(x1, x2)
    return abs(c * c - a * b) <= ctx.rel_eps * B.scale ** 2


def laguerre_scaling(ctx: LaguerreContext, family: str, t: float) -> ProjMap:
    n = ctx.n
    m = np.eye(n + 2)
    tag = ctx.sf.tag
    if tag == HYPERBOLIC and family == "S":
        c, s = math.cos(t), math.sin(t)
        m[n:, n:] = [[c, s], [-s, c]]
    elif tag == HYPERBOLIC and family == "C":
        c, s = math.cosh(t), math.sinh(t)
        i, j = n - 1, n + 1
        m[i, i], m[i, j], m[j, i], m[j, j] = c, s, s, c
    elif tag == HYPERBOLIC and family == "H":
        h = 0.5 * t * t
        m[n - 1:, n - 1:] = [[1 + h, h, t], [-h, 1 - h, -t], [t, t, 1]]
    elif tag == ELLIPTIC and family == "EllipticS":
        c, s = math.cosh(t), math.sinh(t)
        m[n:, n:] = [[c, s], [s, c]]
    else:
        raise WrongFamily(f"family {family!r} does not exist in {tag.lower()} Laguerre geometry")
    return ProjMap(m)


def _isometry_fixing_p(ctx: LaguerreContext, y, x) -> np.ndarray:
    """A map of PO(B) fixing p and sending y to x, where <y,p> = <x,p> and <y,y> = <x,x>."""
    B, p, eps = ctx.B, ctx.p, ctx.rel_eps
    pp = B.bilinear(p, p)
    xt = x - B.bilinear(x, p) / pp * p
    yt = y - B.bilinear(y, p) / pp * p
    d = yt - xt
    scale = max(float(xt @ xt), float(yt @ yt))
    if np.linalg.norm(d) <= 1e-12 * math.sqrt(scale):
        return np.eye(B.size)
    if abs(B.bilinear(d, d)) > 1e-6 * scale:
        return reflect(B, d, 0.0).matrix
    s = xt + yt
    if abs(B.bilinear(yt, yt)) > 1e-6 * scale and abs(B.bilinear(s, s)) > 1e-6 * scale:
        return reflect(B, s, 0.0).matrix @ reflect(B, yt, 0.0).matrix
    return np.eye(B.size)


def decompose_laguerre(ctx: LaguerreContext, f: ProjMap) -> tuple[ProjMap, str, float, ProjMap]:
    """f = Phi T_t Psi with Phi, Psi fixing p and T_t a canonical scaling."""
    if ctx.sf.tag == EUCLIDEAN:
        raise UnsupportedEuclidean("decomposition is implemented for the non-degenerate Laguerre quadrics")
    B, p, eps = ctx.B, ctx.p, ctx.rel_eps
    c = form_scale_factor(B, f, eps)
    if c <= 0:
        raise NotOrthogonal("map scales the form by a negative factor")
    g = f.matrix / math.sqrt(c)
    x = g @ p
    default = "EllipticS" if ctx.sf.tag == ELLIPTIC else "S"
    if proportionality_residual(x, p) < eps:
        return ProjMap(np.eye(B.size)), default, 0.0, ProjMap(g)
    px = B.bilinear(p, x)
    if px > 0:
        g, x, px = -g, -x, -px
    n = ctx.n
    if ctx.sf.tag == ELLIPTIC:
        family, t = "EllipticS", math.acosh(max(-px, 1.0))
    else:
        delta = px * px - 1.0
        if delta < -eps:
            family, t = "S", math.acos(min(-px, 1.0))
        elif delta > eps:
            family, t = "C", math.acosh(-px)
        else:
            family = "H"
            xt = x[:-1]
            e = np.zeros(n + 1)
            e[n - 1], e[n] = 1.0, -1.0
            w = xt - (xt @ e) / 2.0 * e
            t = float(xt @ e) / 2.0 if np.linalg.norm(w) <= 1e-9 * np.linalg.norm(xt) else 1.0
    T = laguerre_scaling(ctx, family, t)
    y = T(p)
    Phi = _isometry_fixing_p(ctx, y, x)
    Psi = np.linalg.inv(T.matrix) @ np.linalg.inv(Phi) @ g
    return ProjMap(Phi), family, t, ProjMap(Psi)

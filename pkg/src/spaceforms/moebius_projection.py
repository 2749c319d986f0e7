"""Involution and central projection through a point, and the induced sphere geometry."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cayley_klein import HYPERBOLIC, OrientedSphere, SpaceForm, ck_distance, normalize_to_sheet
from .errors import (
    BranchPoint,
    EmptySection,
    IsotropicMirror,
    NoIntersection,
    NonPositiveDistance,
    NoRealLift,
    ProjectingCenter,
)
from .projective_core import REL_EPS, ProjMap, as_vec, normalize, null_space, proportionality_residual
from .quadric_engine import QuadricForm, form_scale_factor, on_quadric, reflect, signature_of

INF = math.inf


class ProjectionContext:
    """A quadric Q in RP^{n+1} together with a point q off Q."""

    def __init__(self, Q: QuadricForm, q, rel_eps: float = REL_EPS):
        q = as_vec(q)
        if on_quadric(Q, q, rel_eps):
            raise IsotropicMirror("the projecting point must not lie on the quadric")
        self.Q = Q
        self.q = q
        self.rel_eps = rel_eps
        self.qq = Q.bilinear(q, q)
        qq_vec = Q.form @ q
        idx = np.nonzero(np.abs(qq_vec) > rel_eps * np.max(np.abs(qq_vec)))[0]
        if idx.size == 1:
            keep = [i for i in range(Q.size) if i != idx[0]]
            E = np.eye(Q.size)[:, keep]
        else:
            E = null_space(qq_vec[None, :])
        self.E = E
        self.Qtilde = QuadricForm(E.T @ Q.form @ E)

    def coords(self, y) -> np.ndarray:
        """Coordinates of a point of q^⊥ in the basis E."""
        return self.E.T @ as_vec(y)

    def embed(self, c) -> np.ndarray:
        return self.E @ as_vec(c)

    def _is_q(self, x) -> bool:
        return proportionality_residual(x, self.q) < self.rel_eps

    def _off_plane(self, x) -> float:
        """<x,q> relative to |x| |Qq|."""
        x = as_vec(x)
        return self.Q.bilinear(x, self.q) / (np.linalg.norm(x) * np.linalg.norm(self.Q.form @ self.q))


def involute(ctx: ProjectionContext, x) -> np.ndarray:
    x = as_vec(x)
    return x - 2.0 * ctx.Q.bilinear(x, ctx.q) / ctx.qq * ctx.q


def project(ctx: ProjectionContext, x) -> np.ndarray:
    x = as_vec(x)
    if ctx._is_q(x):
        raise ProjectingCenter("cannot project the projecting point")
    return x - ctx.Q.bilinear(x, ctx.q) / ctx.qq * ctx.q


def involution_map(ctx: ProjectionContext) -> ProjMap:
    return reflect(ctx.Q, ctx.q)


@dataclass(frozen=True, eq=False)
class ProjectedSphere:
    kind: str
    center: np.ndarray | None
    mu: float

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "center": None if self.center is None else normalize(self.center).tolist(),
            "mu": "inf" if math.isinf(self.mu) else self.mu,
        }


def section_is_empty(Q: QuadricForm, x, rel_eps: float = REL_EPS) -> bool:
    """True when the hyperplane x^⊥ misses the quadric."""
    W = null_space((Q.form @ as_vec(x))[None, :])
    pos, neg, zero = signature_of(W.T @ Q.form @ W, rel_eps)
    return zero == 0 and (pos == 0 or neg == 0)


def project_sphere(ctx: ProjectionContext, x) -> ProjectedSphere:
    x = as_vec(x)
    Q, q, eps = ctx.Q, ctx.q, ctx.rel_eps
    if ctx._is_q(x):
        return ProjectedSphere("Absolute", None, INF)
    if section_is_empty(Q, x, eps):
        raise EmptySection("the polar hyperplane does not meet the quadric")
    xt = project(ctx, x)
    if on_quadric(Q, x, eps):
        return ProjectedSphere("ConeOfContact", xt, 1.0)
    if abs(ctx._off_plane(x)) <= eps:
        return ProjectedSphere("Hyperplane", xt, 0.0)
    xq = Q.bilinear(x, q)
    delta = xq * xq - Q.bilinear(x, x) * ctx.qq
    scale = (np.linalg.norm(x) * np.linalg.norm(Q.form @ q)) ** 2
    if abs(delta) <= eps * scale:
        c = float(np.max(np.abs(xt)))
        return ProjectedSphere("Horosphere", xt / c, -xq * xq / ctx.qq / (c * c))
    return ProjectedSphere("Sphere", xt, xq * xq / delta)


def lift_sphere(ctx: ProjectionContext, s: ProjectedSphere) -> tuple[np.ndarray, np.ndarray]:
    """The two points of the quadric's sphere set projecting to s."""
    if s.kind == "Absolute":
        return ctx.q.copy(), ctx.q.copy()
    xt = as_vec(s.center)
    xx = ctx.Q.bilinear(xt, xt)
    if s.kind == "Horosphere":
        a2 = -s.mu / ctx.qq
    else:
        a2 = -s.mu * xx / ctx.qq
    ref = float(xt @ xt) / abs(ctx.qq) * ctx.Q.scale
    if a2 < -ctx.rel_eps * ref:
        raise NoRealLift("the sphere has no real points")
    a = math.sqrt(max(a2, 0.0))
    return xt + a * ctx.q, xt - a * ctx.q


def lifted_distance(ctx: ProjectionContext, x, y) -> float:
    x, y = as_vec(x), as_vec(y)
    for v in (x, y):
        if abs(ctx._off_plane(v)) <= ctx.rel_eps:
            raise BranchPoint("point lies on the polar hyperplane of q")
    Q, q = ctx.Q, ctx.q
    v = 1.0 - Q.bilinear(x, y) * ctx.qq / (Q.bilinear(x, q) * Q.bilinear(y, q))
    return v * v


def common_quadric_points(Q: QuadricForm, x1, x2, rel_eps: float = REL_EPS) -> list[np.ndarray]:
    """Points of Q on both polar hyperplanes x1^⊥ and x2^⊥ (one or two candidates)."""
    A = np.vstack([Q.form @ as_vec(x1), Q.form @ as_vec(x2)])
    W = null_space(A, rel_eps)
    G = W.T @ Q.form @ W
    lam, U = np.linalg.eigh(0.5 * (G + G.T))
    cut = rel_eps * max(1.0, float(np.max(np.abs(lam))) if lam.size else 1.0)
    zero = np.nonzero(np.abs(lam) <= cut)[0]
    if zero.size:
        return [W @ U[:, zero[0]]]
    ip, ineg = int(np.argmax(lam)), int(np.argmin(lam))
    if lam[ip] <= 0 or lam[ineg] >= 0:
        raise NoIntersection("the two spheres do not intersect")
    a, b = U[:, ip] / math.sqrt(lam[ip]), U[:, ineg] / math.sqrt(-lam[ineg])
    return [W @ (a + b), W @ (a - b)]


def common_quadric_point(Q: QuadricForm, x1, x2, rel_eps: float = REL_EPS) -> np.ndarray:
    """A point of Q on both polar hyperplanes x1^⊥ and x2^⊥."""
    return common_quadric_points(Q, x1, x2, rel_eps)[0]


def sphere_angle(ctx: ProjectionContext, x1, x2) -> float:
    """Cayley-Klein intersection angle of the projected spheres of x1 and x2.

    The caller picks the lifts; the value agrees with ck_distance(Q, x1, x2)
    exactly when the chosen lifts have a common point on Q.
    """
    x1, x2 = as_vec(x1), as_vec(x2)
    Qt = ctx.Q

    def off_branch(y):
        yt = project(ctx, y)
        return abs(Qt.bilinear(yt, yt)) / (Qt.scale * float(yt @ yt))

    # any common point gives the same angle; the one farthest from the branch locus is best conditioned
    y = max(common_quadric_points(ctx.Q, x1, x2, ctx.rel_eps), key=off_branch)
    yt = project(ctx, y)
    yy = Qt.bilinear(yt, yt)
    if abs(yy) <= ctx.rel_eps * Qt.scale * float(yt @ yt):
        raise BranchPoint("the intersection point lies on the branch locus")
    poles = []
    for x in (x1, x2):
        xt = project(ctx, x)
        poles.append(yy * xt - Qt.bilinear(xt, yt) * yt)
    return ck_distance(ctx.Qtilde, ctx.coords(poles[0]), ctx.coords(poles[1]), ctx.rel_eps)


def scaling(ctx: ProjectionContext, x1, x2) -> ProjMap:
    """The transformation of Q moving x1 to x2 and fixing (x1∧x2)^⊥ pointwise."""
    return scaling_in(ctx.Q, x1, x2, ctx.rel_eps)


def scaling_in(Q: QuadricForm, x1, x2, rel_eps: float = REL_EPS) -> ProjMap:
    x1, x2 = as_vec(x1), as_vec(x2)
    K = ck_distance(Q, x1, x2, rel_eps)
    if K <= rel_eps:
        raise NonPositiveDistance("scalings need points on the same side with <x1,x2> != 0")
    a11, a22, a12 = Q.bilinear(x1, x1), Q.bilinear(x2, x2), Q.bilinear(x1, x2)
    lam = math.sqrt(a11 / a22) * math.copysign(1.0, a12 * a11)
    w = lam * x2
    return reflect(Q, x1 + w, rel_eps) @ reflect(Q, x1, rel_eps)


def decompose_mobius(ctx: ProjectionContext, f: ProjMap) -> tuple[ProjMap, ProjMap]:
    form_scale_factor(ctx.Q, f, ctx.rel_eps)
    T = scaling(ctx, ctx.q, f(ctx.q))
    Phi = T.inverse() @ f
    return T, Phi


# Sphere codecs for the Möbius quadric diag(1, ..., 1, -1) in RP^{n+1}.


def hyperbolic_mobius_context(n: int = 2) -> ProjectionContext:
    Q = QuadricForm(np.diag([1.0] * (n + 1) + [-1.0]))
    q = np.zeros(n + 2)
    q[n] = 1.0
    return ProjectionContext(Q, q)


def elliptic_mobius_context(n: int = 2) -> ProjectionContext:
    Q = QuadricForm(np.diag([1.0] * (n + 1) + [-1.0]))
    q = np.zeros(n + 2)
    q[n + 1] = 1.0
    return ProjectionContext(Q, q)


def _split_h(y, n):
    y = as_vec(y)
    if y.shape[0] != n + 1:
        raise ValueError(f"expected a vector of length {n + 1}")
    return y[:n], y[n]


def encode_hyperbolic(s: OrientedSphere, n: int = 2) -> np.ndarray:
    """Point of the Möbius quadric (or of its sphere set) for a hyperbolic sphere."""
    yh, yl = _split_h(s.center, n)
    o = 1.0 if s.orientation >= 0 else -1.0
    lift = {
        "Point": 1.0,
        "Hyperplane": 0.0,
        "Sphere": math.cosh(s.radius),
        "DistanceSurface": math.sinh(s.radius),
        "Horosphere": math.exp(s.radius),
    }
    if s.kind not in lift:
        raise ValueError(f"unknown hyperbolic sphere kind {s.kind!r}")
    return np.concatenate([yh, [o * lift[s.kind], yl]])


def decode_hyperbolic(x, rel_eps: float = REL_EPS) -> OrientedSphere:
    x = as_vec(x)
    n = x.shape[0] - 2
    ctx = hyperbolic_mobius_context(n)
    sf = SpaceForm(HYPERBOLIC, n)
    Qh = sf.absolute
    c = np.concatenate([x[:n], x[n + 1:]])
    t = x[n]
    nx = float(np.max(np.abs(x)))
    if nx == 0:
        raise ValueError("zero vector")
    cc = Qh.bilinear(c, c) / (float(c @ c) if c @ c > 0 else 1.0)
    if abs(t) <= rel_eps * nx:
        if cc <= rel_eps:
            raise EmptySection("polar hyperplane does not meet the quadric in a hyperbolic plane")
        return OrientedSphere("Hyperplane", normalize_to_sheet(sf, c, "deSitter"), 0.0, 1)
    if on_quadric(ctx.Q, x, rel_eps):
        s = 1.0 if c[-1] > 0 else -1.0
        y = s * c / abs(t)
        return OrientedSphere("Point", y / math.sqrt(-Qh.bilinear(y, y)), 0.0, int(math.copysign(1, s * t)))
    if cc < -rel_eps:
        y, sign = normalize_to_sheet(sf, c, "hyperbolic", return_sign=True)
        k = math.sqrt(-Qh.bilinear(c, c))
        lv = sign * t / k
        if abs(lv) < 1.0 - rel_eps:
            raise EmptySection("sphere lift with |x_{n+1}| < 1 has no real section")
        return OrientedSphere("Sphere", y, math.acosh(max(abs(lv), 1.0)), int(math.copysign(1, lv)))
    if abs(cc) <= rel_eps:
        s = 1.0 / c[-1]
        y = c * s
        lv = t * s
        return OrientedSphere("Horosphere", y, math.log(abs(lv)), int(math.copysign(1, lv)))
    y, sign = normalize_to_sheet(sf, c, "deSitter", return_sign=True)
    k = math.sqrt(Qh.bilinear(c, c))
    lv = sign * t / k
    return OrientedSphere("DistanceSurface", y, math.asinh(abs(lv)), int(math.copysign(1, lv)))


def encode_elliptic(s: OrientedSphere) -> np.ndarray:
    y = as_vec(s.center)
    o = 1.0 if s.orientation >= 0 else -1.0
    lift = {"Point": 1.0, "Hyperplane": 0.0, "Sphere": math.cos(s.radius)}
    if s.kind not in lift:
        raise ValueError(f"unknown elliptic sphere kind {s.kind!r}")
    return np.concatenate([y, [o * lift[s.kind]]])


def decode_elliptic(x, rel_eps: float = REL_EPS) -> OrientedSphere:
    x = as_vec(x)
    y, t = x[:-1], x[-1]
    ny = float(np.linalg.norm(y))
    if ny <= rel_eps * abs(t):
        raise ProjectingCenter("the projecting point is not a sphere")
    y, t = y / ny, t / ny
    c = normalize(y)
    if np.dot(c, y) < 0:
        y, t = -y, -t
    if abs(t) <= rel_eps:
        return OrientedSphere("Hyperplane", y, 0.0, 1)
    o = int(math.copysign(1, t))
    if abs(abs(t) - 1.0) <= rel_eps:
        return OrientedSphere("Point", y, 0.0, o)
    if abs(t) > 1.0:
        raise EmptySection("timelike point: its polar hyperplane misses the quadric")
    return OrientedSphere("Sphere", y, math.acos(abs(t)), o)

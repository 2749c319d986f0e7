"""Quadrics as symmetric bilinear forms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CoincidentPoints,
    DegenerateQuadric,
    DimensionMismatch,
    IsotropicMirror,
    LineOnGenerator,
    NotOrthogonal,
    PointOnQuadric,
)
from .projective_core import REL_EPS, ProjMap, Subspace, as_vec, null_space, proportionality_residual


def signature_of(form, rel_eps: float = REL_EPS) -> tuple[int, int, int]:
    ev = np.linalg.eigvalsh(np.asarray(form, dtype=float))
    if ev.size == 0:
        return (0, 0, 0)
    cut = rel_eps * float(np.max(np.abs(ev)))
    return (int(np.sum(ev > cut)), int(np.sum(ev < -cut)), int(np.sum(np.abs(ev) <= cut)))


@dataclass(frozen=True, eq=False)
class QuadricForm:
    form: np.ndarray
    signature: tuple = field(init=False)

    def __post_init__(self):
        m = np.asarray(self.form, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch("form must be square")
        scale = float(np.max(np.abs(m))) if m.size else 0.0
        if np.max(np.abs(m - m.T), initial=0.0) > REL_EPS * scale:
            raise ValueError("form is not symmetric")
        m = 0.5 * (m + m.T)
        object.__setattr__(self, "form", m)
        object.__setattr__(self, "signature", signature_of(m))

    @property
    def size(self) -> int:
        return self.form.shape[0]

    @property
    def n(self) -> int:
        return self.form.shape[0] - 1

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.form)))

    def bilinear(self, x, y) -> float:
        return float(as_vec(x) @ self.form @ as_vec(y))

    def to_json(self) -> dict:
        return {"n": self.n, "form": self.form.reshape(-1).tolist(), "signature": list(self.signature)}

    @classmethod
    def from_json(cls, d: dict) -> "QuadricForm":
        k = int(d["n"]) + 1
        return cls(np.asarray(d["form"], dtype=float).reshape(k, k))


def diag_form(*entries) -> QuadricForm:
    return QuadricForm(np.diag(np.asarray(entries, dtype=float)))


def _check_dim(Q: QuadricForm, *xs):
    for x in xs:
        if as_vec(x).shape[0] != Q.size:
            raise DimensionMismatch(f"point of length {as_vec(x).shape[0]} for a form of size {Q.size}")


def eval(Q: QuadricForm, x) -> float:  # noqa: A001 - mirrors the operation name
    _check_dim(Q, x)
    x = as_vec(x)
    return float(x @ Q.form @ x)


def relative_value(Q: QuadricForm, x) -> float:
    """<x,x> divided by |Q| |x|^2, the quantity tolerances apply to."""
    x = as_vec(x)
    return eval(Q, x) / (Q.scale * float(x @ x))


def classify(Q: QuadricForm, x, rel_eps: float = REL_EPS) -> str:
    v = relative_value(Q, x)
    if v > rel_eps:
        return "spacelike"
    if v < -rel_eps:
        return "timelike"
    return "lightlike"


def on_quadric(Q: QuadricForm, x, rel_eps: float = REL_EPS) -> bool:
    return abs(relative_value(Q, x)) <= rel_eps


def signature(Q: QuadricForm) -> tuple[int, int, int]:
    return Q.signature


def restricted_form(Q: QuadricForm, basis) -> np.ndarray:
    """Gram matrix of Q on the span of the given rows."""
    b = np.atleast_2d(np.asarray(basis, dtype=float))
    return b @ Q.form @ b.T


def polar(Q: QuadricForm, U: Subspace, rel_eps: float = REL_EPS) -> Subspace:
    if Q.signature[2] > 0:
        raise DegenerateQuadric("polarity needs a non-degenerate quadric")
    ns = null_space(U.basis @ Q.form, rel_eps)
    return Subspace(ns.T.copy())


def polar_plane(Q: QuadricForm, x) -> np.ndarray:
    """Coefficient vector of the polar hyperplane of a point."""
    return Q.form @ as_vec(x)


def tangent_cone(Q: QuadricForm, x, rel_eps: float = REL_EPS) -> QuadricForm:
    x = as_vec(x)
    if on_quadric(Q, x, rel_eps):
        raise PointOnQuadric("the cone of contact needs a point off the quadric")
    qx = Q.form @ x
    return QuadricForm(np.outer(qx, qx) - eval(Q, x) * Q.form)


@dataclass(frozen=True, eq=False)
class LineQuadricResult:
    kind: str
    points: tuple
    discriminant: float
    imaginary: np.ndarray | None = None


def line_intersect(Q: QuadricForm, x, y, rel_eps: float = REL_EPS) -> LineQuadricResult:
    _check_dim(Q, x, y)
    x, y = as_vec(x), as_vec(y)
    if proportionality_residual(x, y) < rel_eps:
        raise CoincidentPoints("the two points span no line")
    x = x / np.linalg.norm(x)
    y = y / np.linalg.norm(y)
    xx, yy, xy = Q.bilinear(x, x), Q.bilinear(y, y), Q.bilinear(x, y)
    scale = Q.scale
    t2 = rel_eps * scale
    delta = xy * xy - xx * yy
    if abs(xx) <= t2 and abs(yy) <= t2 and abs(xy) <= t2:
        return LineQuadricResult("Contained", (x, y), delta)
    if abs(delta) <= rel_eps * scale * scale:
        if abs(yy) >= abs(xx):
            p = yy * x - xy * y
        else:
            p = xx * y - xy * x
        if np.linalg.norm(p) <= rel_eps * scale:
            p = y if abs(yy) < abs(xx) else x
        return LineQuadricResult("Tangent", (p,), delta)
    if delta < 0:
        if abs(yy) >= abs(xx):
            re, im = yy * x - xy * y, math.sqrt(-delta) * y
        else:
            re, im = xx * y - xy * x, math.sqrt(-delta) * x
        return LineQuadricResult("TwoComplexConjugate", (re,), delta, im)
    # Two real points; both roots written so that no cancellation occurs.
    r = math.sqrt(delta)
    if abs(yy) < abs(xx):
        a, b, aa, bb = y, x, yy, xx
    else:
        a, b, aa, bb = x, y, xx, yy
    # points are bb*a + (-ab +- r) b
    s = 1.0 if xy >= 0 else -1.0
    big = -xy - s * r
    p_big = bb * a + big * b
    p_small = big * a + aa * b
    if s > 0:
        plus, minus = p_small, p_big
    else:
        plus, minus = p_big, p_small
    return LineQuadricResult("TwoReal", (plus, minus), delta)


def reflect(Q: QuadricForm, q, rel_eps: float = REL_EPS) -> ProjMap:
    q = as_vec(q)
    if on_quadric(Q, q, rel_eps):
        raise IsotropicMirror("mirror point lies on the quadric")
    qq = eval(Q, q)
    return ProjMap(np.eye(Q.size) - 2.0 * np.outer(q, Q.form @ q) / qq)


def form_scale_factor(Q: QuadricForm, f, rel_eps: float = REL_EPS) -> float:
    """The constant c with f^T Q f = c Q, or NotOrthogonal."""
    m = f.matrix if isinstance(f, ProjMap) else np.asarray(f, dtype=float)
    g = m.T @ Q.form @ m
    i = np.unravel_index(np.argmax(np.abs(Q.form)), Q.form.shape)
    c = g[i] / Q.form[i]
    if np.max(np.abs(g - c * Q.form)) > 1e3 * rel_eps * np.max(np.abs(g)):
        raise NotOrthogonal("map does not preserve the quadric")
    return float(c)


def _orthogonal_basis(Q: QuadricForm, W: np.ndarray) -> np.ndarray:
    """Columns of W recombined into a Q-orthogonal basis."""
    g = W.T @ Q.form @ W
    _, u = np.linalg.eigh(0.5 * (g + g.T))
    return W @ u


def _reflection_matrix(Q: QuadricForm, w: np.ndarray) -> np.ndarray:
    return np.eye(Q.size) - 2.0 * np.outer(w, Q.form @ w) / float(w @ Q.form @ w)


def _peel(Q: QuadricForm, g: np.ndarray) -> list[np.ndarray] | None:
    n1 = Q.size
    scale = Q.scale
    h = g.copy()
    W = np.eye(n1)
    mirrors: list[np.ndarray] = []
    while W.shape[1] > 0:
        B = _orthogonal_basis(Q, W)
        cands = []
        for k in range(B.shape[1]):
            v = B[:, k]
            vv = float(v @ Q.form @ v)
            if abs(vv) <= 1e-6 * scale:
                continue
            w = h @ v - v
            cands.append((v, vv, w, float(w @ Q.form @ w)))
        if not cands:
            return None
        hn = float(np.linalg.norm(h, 2))
        fixed = [c for c in cands if np.linalg.norm(c[2]) <= 1e-8 * hn * np.linalg.norm(c[0])]
        if fixed:
            v = fixed[0][0]
        else:
            v, vv, w, ww = max(cands, key=lambda c: abs(c[3]) / (np.linalg.norm(c[2]) ** 2 * scale))
            if abs(ww) > 1e-8 * scale * (np.linalg.norm(w) ** 2):
                mirrors.append(w)
                h = _reflection_matrix(Q, w) @ h
            else:
                # fall back to two mirrors: gv -> -v -> v
                u = h @ v + v
                mirrors.append(u)
                h = _reflection_matrix(Q, u) @ h
                mirrors.append(v)
                h = _reflection_matrix(Q, v) @ h
        rest = null_space((Q.form @ v)[None, :] @ W) if W.shape[1] > 1 else np.zeros((W.shape[1], 0))
        W = W @ rest
        if W.shape[1]:
            W, _ = np.linalg.qr(W)
    return mirrors


def compose_reflections(Q: QuadricForm, mirrors) -> ProjMap:
    m = np.eye(Q.size)
    for w in mirrors:
        m = m @ _reflection_matrix(Q, as_vec(w))
    return ProjMap(m)


def decompose_reflections(Q: QuadricForm, f: ProjMap, rel_eps: float = REL_EPS) -> list[np.ndarray]:
    """Mirrors m_1..m_k with f = s_{m_1} ... s_{m_k} up to scale, k <= dim of the vector space."""
    if Q.signature[2] > 0:
        raise DegenerateQuadric("reflections need a non-degenerate quadric")
    c = form_scale_factor(Q, f, rel_eps)
    if c <= 0:
        raise NotOrthogonal("map swaps the sides of the quadric")
    g = f.matrix / math.sqrt(c)
    best = None
    for sign in (1.0, -1.0):
        ms = _peel(Q, sign * g)
        if ms is None:
            continue
        if best is None or len(ms) < len(best):
            best = ms
        if len(best) <= Q.size:
            break
    if best is None:
        raise NotOrthogonal("could not factor the map into reflections")
    return [w / np.max(np.abs(w)) for w in best]


@dataclass(frozen=True, eq=False)
class Pencil:
    q1: QuadricForm
    q2: QuadricForm

    def __post_init__(self):
        a = self.q1.form.reshape(-1)
        b = self.q2.form.reshape(-1)
        if proportionality_residual(a, b) < REL_EPS:
            raise ValueError("pencil generators are proportional")

    def member(self, l1: float, l2: float) -> QuadricForm:
        return QuadricForm(l1 * self.q1.form + l2 * self.q2.form)


def pencil_member_through(P: Pencil, x, y, rel_eps: float = REL_EPS) -> QuadricForm:
    x, y = as_vec(x), as_vec(y)
    num = P.q1.bilinear(x, y)
    den = P.q2.bilinear(x, y)
    if abs(den) <= rel_eps * P.q2.scale * np.linalg.norm(x) * np.linalg.norm(y):
        raise LineOnGenerator("the line lies on the second generator")
    t = -num / den
    return QuadricForm(P.q1.form + t * P.q2.form)


def pencil_parameter_through(P: Pencil, x, y, rel_eps: float = REL_EPS) -> float:
    x, y = as_vec(x), as_vec(y)
    den = P.q2.bilinear(x, y)
    if abs(den) <= rel_eps * P.q2.scale * np.linalg.norm(x) * np.linalg.norm(y):
        return math.inf
    return -P.q1.bilinear(x, y) / den

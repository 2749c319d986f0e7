"""Cayley-Klein distance and spheres relative to an absolute quadric."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidCenter, OutsideSpaceForm, PointOnAbsolute, UnsupportedEuclidean, WrongSide
from .projective_core import REL_EPS, as_vec, normalize
from .quadric_engine import QuadricForm, on_quadric, relative_value

INF = math.inf

HYPERBOLIC, ELLIPTIC, EUCLIDEAN = "Hyperbolic", "Elliptic", "Euclidean"


@dataclass(frozen=True)
class SpaceForm:
    tag: str
    n: int = 2

    def __post_init__(self):
        if self.tag not in (HYPERBOLIC, ELLIPTIC, EUCLIDEAN):
            raise ValueError(f"unknown space form {self.tag!r}")

    @property
    def epsilon(self) -> int:
        return {HYPERBOLIC: -1, ELLIPTIC: 1, EUCLIDEAN: 0}[self.tag]

    @property
    def absolute(self) -> QuadricForm:
        d = np.ones(self.n + 1)
        d[-1] = {HYPERBOLIC: -1.0, ELLIPTIC: 1.0, EUCLIDEAN: 0.0}[self.tag]
        return QuadricForm(np.diag(d))

    @classmethod
    def from_epsilon(cls, eps: int, n: int = 2) -> "SpaceForm":
        return cls({-1: HYPERBOLIC, 1: ELLIPTIC, 0: EUCLIDEAN}[int(eps)], n)


@dataclass(frozen=True, eq=False)
class CKSphere:
    center: np.ndarray
    mu: float
    absolute: QuadricForm

    @property
    def form(self) -> QuadricForm:
        return ck_sphere_form(self.center, self.mu, self.absolute)

    def to_json(self) -> dict:
        mu = "inf" if math.isinf(self.mu) else self.mu
        return {"center": normalize(self.center).tolist(), "mu": mu, "absolute": self.absolute.to_json()}


@dataclass(frozen=True, eq=False)
class OrientedSphere:
    """A sphere of some geometry: kind, center or pole, radius and orientation."""

    kind: str
    center: np.ndarray
    radius: float = 0.0
    orientation: int = 1

    @property
    def signed_radius(self) -> float:
        return self.orientation * self.radius


def ck_distance(Q: QuadricForm, x, y, rel_eps: float = REL_EPS) -> float:
    x, y = as_vec(x), as_vec(y)
    if on_quadric(Q, x, rel_eps) or on_quadric(Q, y, rel_eps):
        raise PointOnAbsolute("Cayley-Klein distance is undefined on the absolute")
    xy = Q.bilinear(x, y)
    return xy * xy / (Q.bilinear(x, x) * Q.bilinear(y, y))


def ck_sphere_form(center, mu: float, Q: QuadricForm, rel_eps: float = REL_EPS) -> QuadricForm:
    """Form <x,y>^2 - mu <x,x><y,y> in y.  On a lightlike center mu is read as mu<x,x>."""
    x = as_vec(center)
    if x.shape[0] != Q.size or not np.all(np.isfinite(x)) or np.max(np.abs(x)) == 0:
        raise InvalidCenter("center has the wrong size or is zero")
    if math.isinf(mu):
        return QuadricForm(Q.form.copy())
    qx = Q.form @ x
    if on_quadric(Q, x, rel_eps):
        return QuadricForm(np.outer(qx, qx) - mu * Q.form)
    return QuadricForm(np.outer(qx, qx) - mu * Q.bilinear(x, x) * Q.form)


def polar_ck_sphere(mu: float) -> float:
    if math.isinf(mu):
        return mu
    return 1.0 - mu


def tangent_pole(Q: QuadricForm, center, mu: float, y) -> np.ndarray:
    """Pole of the tangent plane of S_mu(center) at its point y."""
    x, y = as_vec(center), as_vec(y)
    return Q.bilinear(x, y) * x - mu * Q.bilinear(x, x) * y


def _clamped(value: float, lo: float, hi: float, slack: float) -> float:
    if value < lo - slack or value > hi + slack:
        raise OutsideSpaceForm(f"value {value} outside [{lo}, {hi}]")
    return min(max(value, lo), hi)


def metric_distance(sf: SpaceForm, a, b, rel_eps: float = REL_EPS) -> float:
    """Distance of two points, or of a point and a plane given by its pole (hyperbolic)."""
    if sf.tag == EUCLIDEAN:
        raise UnsupportedEuclidean("no Cayley-Klein point metric for the Euclidean absolute")
    Q = sf.absolute
    a, b = as_vec(a), as_vec(b)
    K = ck_distance(Q, a, b, rel_eps)
    slack = rel_eps * max(1.0, abs(K))
    if sf.tag == ELLIPTIC:
        return math.acos(math.sqrt(_clamped(K, 0.0, 1.0, slack)))
    ca, cb = relative_value(Q, a), relative_value(Q, b)
    if ca < 0 and cb < 0:
        return math.acosh(math.sqrt(_clamped(K, 1.0, INF, slack)))
    if (ca < 0) != (cb < 0):
        # point and plane pole: K = -sinh^2 d
        return math.asinh(math.sqrt(-_clamped(K, -INF, 0.0, slack)))
    raise OutsideSpaceForm("both points lie outside hyperbolic space")


def plane_relation(sf: SpaceForm, k, m, rel_eps: float = REL_EPS) -> tuple[str, float]:
    """Angle or distance of two hyperbolic planes given by their poles."""
    if sf.tag != HYPERBOLIC:
        raise UnsupportedEuclidean("plane relation is implemented for hyperbolic space")
    Q = sf.absolute
    k = normalize_to_sheet(sf, k, "deSitter")
    m = normalize_to_sheet(sf, m, "deSitter")
    c = abs(Q.bilinear(k, m))
    if abs(c - 1.0) <= rel_eps:
        return "Parallel", 0.0
    if c < 1.0:
        return "Angle", math.acos(c)
    return "Distance", math.acosh(c)


def normalize_to_sheet(sf: SpaceForm, x, sheet: str | None = None, return_sign: bool = False, rel_eps: float = REL_EPS):
    """Representative on the hyperboloid, the deSitter sheet, or the unit sphere.

    With return_sign the factor sign relative to the input is returned as the
    orientation flag.
    """
    x = as_vec(x)
    Q = sf.absolute
    if sf.tag == ELLIPTIC:
        y = x / np.linalg.norm(x)
        s = 1
        c = normalize(y)
        if np.dot(c, y) < 0:
            y, s = -y, -1
        return (y, s) if return_sign else y
    if sf.tag != HYPERBOLIC:
        raise UnsupportedEuclidean("no sheet normalization for the Euclidean absolute")
    sheet = sheet or "hyperbolic"
    v = Q.bilinear(x, x)
    rel = relative_value(Q, x)
    if sheet == "hyperbolic":
        if rel >= -rel_eps:
            raise WrongSide("point is not inside hyperbolic space")
        y = x / math.sqrt(-v)
        s = 1
        if y[-1] < 0:
            y, s = -y, -1
        return (y, s) if return_sign else y
    if sheet == "deSitter":
        if rel <= rel_eps:
            raise WrongSide("point is not in deSitter space")
        y = x / math.sqrt(v)
        s = 1
        if np.dot(normalize(y), y) < 0:
            y, s = -y, -1
        return (y, s) if return_sign else y
    raise ValueError(f"unknown sheet {sheet!r}")

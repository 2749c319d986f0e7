"""Homogeneous points, subspaces and projective maps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DependentPoints, DimensionMismatch, EmptyIntersection, Singular, ZeroVector

REL_EPS = 1e-9


def tol(*operands, rel_eps: float = REL_EPS) -> float:
    """Absolute tolerance scaled by the largest entry among the operands."""
    scale = 0.0
    for a in operands:
        a = np.asarray(a, dtype=float)
        if a.size:
            scale = max(scale, float(np.max(np.abs(a))))
    return rel_eps * scale


def as_vec(x) -> np.ndarray:
    return np.asarray(x, dtype=float).reshape(-1)


def normalize(x, rel_eps: float = REL_EPS) -> np.ndarray:
    x = as_vec(x)
    m = float(np.max(np.abs(x))) if x.size else 0.0
    if not np.isfinite(m) or m <= np.finfo(float).eps * len(x):
        raise ZeroVector("cannot normalize the zero vector")
    y = x / m
    nz = np.nonzero(np.abs(y) > rel_eps)[0]
    if y[nz[-1]] < 0:
        y = -y
    return y


def same_point(x, y, rel_eps: float = REL_EPS) -> bool:
    x, y = as_vec(x), as_vec(y)
    if x.shape != y.shape:
        raise DimensionMismatch(f"{x.shape} vs {y.shape}")
    return bool(np.max(np.abs(normalize(x) - normalize(y))) < rel_eps)


def proportionality_residual(x, y) -> float:
    """Distance between unit representatives; zero iff both span the same point."""
    x, y = as_vec(x), as_vec(y)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0 or ny == 0:
        raise ZeroVector("zero vector")
    x, y = x / nx, y / ny
    return float(min(np.linalg.norm(x - y), np.linalg.norm(x + y)))


def null_space(a, rel_eps: float = REL_EPS) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel of a, with a relative rank cut."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n)
    _, s, vt = np.linalg.svd(a)
    cut = rel_eps * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cut)) if s.size and s[0] > 0 else 0
    return vt[rank:].T.copy()


@dataclass(frozen=True, eq=False)
class Subspace:
    """Projective subspace stored as an orthonormal spanning basis (rows)."""

    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0] - 1

    @property
    def ambient(self) -> int:
        return self.basis.shape[1]

    def contains(self, x, rel_eps: float = REL_EPS) -> bool:
        x = as_vec(x)
        r = x - self.basis.T @ (self.basis @ x)
        return bool(np.linalg.norm(r) <= rel_eps * np.linalg.norm(x))

    def annihilator(self, rel_eps: float = REL_EPS) -> np.ndarray:
        """Rows spanning the linear functionals vanishing on the subspace."""
        return null_space(self.basis, rel_eps).T

    def same_as(self, other: "Subspace", rel_eps: float = REL_EPS) -> bool:
        if self.dim != other.dim:
            return False
        return all(self.contains(v, rel_eps) for v in other.basis)


def subspace_from_rows(rows, rel_eps: float = REL_EPS) -> Subspace:
    a = np.atleast_2d(np.asarray(rows, dtype=float))
    q, _ = np.linalg.qr(a.T)
    return Subspace(q.T.copy())


def join(points, rel_eps: float = REL_EPS) -> Subspace:
    a = np.atleast_2d(np.array([as_vec(p) for p in points]))
    a = a / np.max(np.abs(a), axis=1, keepdims=True)
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= rel_eps * s[0] or a.shape[0] > a.shape[1]:
        raise DependentPoints("points are linearly dependent")
    return subspace_from_rows(a)


def span_of_functionals(rows, rel_eps: float = REL_EPS) -> Subspace:
    """Subspace cut out by the given linear equations."""
    ns = null_space(rows, rel_eps)
    if ns.shape[1] == 0:
        raise EmptyIntersection("equations have only the trivial solution")
    return Subspace(ns.T.copy())


def meet(a: Subspace, b: Subspace, rel_eps: float = REL_EPS) -> Subspace:
    if a.ambient != b.ambient:
        raise DimensionMismatch("subspaces live in different spaces")
    eqs = np.vstack([a.annihilator(rel_eps), b.annihilator(rel_eps)])
    if eqs.shape[0] == 0:
        return Subspace(a.basis.copy())
    return span_of_functionals(eqs, rel_eps)


def dual_subspace(u: Subspace, rel_eps: float = REL_EPS) -> Subspace:
    return Subspace(u.annihilator(rel_eps))


@dataclass(frozen=True, eq=False)
class ProjMap:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch("projective maps need a square matrix")
        object.__setattr__(self, "matrix", m)

    def __call__(self, x) -> np.ndarray:
        return self.matrix @ as_vec(x)

    def __matmul__(self, other: "ProjMap") -> "ProjMap":
        return ProjMap(self.matrix @ other.matrix)

    def inverse(self) -> "ProjMap":
        return ProjMap(np.linalg.inv(self.matrix))

    def normalized(self) -> np.ndarray:
        return normalize(self.matrix.reshape(-1)).reshape(self.matrix.shape)

    def same_as(self, other: "ProjMap", rel_eps: float = REL_EPS) -> bool:
        return map_distance(self, other) < rel_eps


def identity(n1: int) -> ProjMap:
    return ProjMap(np.eye(n1))


def map_distance(f, g) -> float:
    """Scale-free distance between two matrices regarded as projective maps."""
    a = f.matrix if isinstance(f, ProjMap) else np.asarray(f, dtype=float)
    b = g.matrix if isinstance(g, ProjMap) else np.asarray(g, dtype=float)
    a = a.reshape(-1) / np.linalg.norm(a)
    b = b.reshape(-1) / np.linalg.norm(b)
    return float(min(np.max(np.abs(a - b)), np.max(np.abs(a + b))))


def dualize_map(f: ProjMap, rel_eps: float = REL_EPS) -> ProjMap:
    m = f.matrix
    scale = np.max(np.abs(m))
    if abs(np.linalg.det(m / scale)) <= rel_eps:
        raise Singular("map is not invertible")
    return ProjMap(np.linalg.inv(m).T)

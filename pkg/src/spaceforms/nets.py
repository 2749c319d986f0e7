"""Circumscribed quadrilaterals, incidence theorems and checkerboard incircular nets.

Oriented lines are points of the Laguerre quadric B = diag(1, 1, ε, -1) in
RP³ (or of the Lie quadric in RP⁴).  A quadrilateral of four lines has an
incircle when the four points are coplanar.  Nets tangent to a conic are
generated from the Jacobi parametrization of the base curve B ∩ C.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .cayley_klein import EUCLIDEAN, OrientedSphere, SpaceForm
from .elliptic_fn import EllipticModulus, jacobi_sn_cn_dn
from .errors import (
    Degenerate,
    DegenerateInput,
    HypothesisViolated,
    InsufficientData,
    InvalidParams,
    NotCoplanarNet,
    NotGeneric,
    NotOnBaseCurve,
    TangentPlane,
    WindowEmpty,
)
from .laguerre import LaguerreContext, decode_sphere
from .lie_sphere import LieContext
from .projective_core import as_vec, normalize
from .quadric_engine import QuadricForm, relative_value, restricted_form, signature_of

ELLIPSE, HYPERBOLA = "Ellipse", "Hyperbola"

COPLANAR_TOL = 1e-8

# Quads as index tuples into (l1, l2, l3, l4, m1, m2, m3, m4).
MIQUEL_HYPOTHESES = ((0, 1, 4, 5), (0, 1, 6, 7), (2, 3, 4, 5), (2, 3, 6, 7), (1, 2, 5, 6))
MIQUEL_CONCLUSION = (0, 3, 4, 7)
SUBDIVISION_HYPOTHESES = ((0, 1, 4, 5), (1, 2, 5, 6), (2, 3, 6, 7))
SUBDIVISION_CONCLUSION = (0, 3, 4, 7)


# Coplanarity


def _unit_rows(points) -> np.ndarray:
    a = np.atleast_2d(np.asarray(points, dtype=float))
    norms = np.linalg.norm(a, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise DegenerateInput("zero vector among the points")
    return a / norms


def rank_residual(points, rank: int) -> float:
    """How far the rows are from spanning at most `rank` dimensions (0 = exactly)."""
    s = np.linalg.svd(_unit_rows(points), compute_uv=False)
    if s.size <= rank:
        return 0.0
    return float(s[rank] / s[0])


def coplanarity_residual(points) -> float:
    """Normalized |det| for four points of RP³; singular value ratio otherwise."""
    a = _unit_rows(points)
    if a.shape == (4, 4):
        return float(abs(np.linalg.det(a)))
    return rank_residual(a, 3)


def _plane_through(points) -> np.ndarray:
    return np.linalg.svd(_unit_rows(points))[2][-1]


def circumscribed(points, Q: QuadricForm | None = None, tol: float = COPLANAR_TOL):
    """Coplanarity of four points of the Lie or Laguerre quadric and the signature of their plane.

    Q defaults to the Lie quadric for points of RP⁴.  The signature is None
    when no quadric is known or the points are not coplanar.
    """
    a = _unit_rows(points)
    if a.shape[0] != 4:
        raise DegenerateInput("need four points")
    for tri in itertools.combinations(range(4), 3):
        if rank_residual(a[list(tri)], 2) < tol:
            raise DegenerateInput(f"points {tri} are collinear")
    if Q is None and a.shape[1] == 5:
        Q = LieContext(2).L
    ok = coplanarity_residual(a) < tol
    if not ok or Q is None:
        return bool(ok), None
    basis = np.linalg.svd(a)[2][:3]
    g = restricted_form(Q, basis)
    return True, signature_of(g / np.max(np.abs(g)), tol)


def incircle(ctx: LaguerreContext, points) -> OrientedSphere:
    """The oriented circle touching four oriented lines with coplanar Laguerre points."""
    a = _unit_rows(points)
    if coplanarity_residual(a) >= COPLANAR_TOL:
        raise DegenerateInput("the four lines have no common oriented circle")
    w = _plane_through(a)
    if ctx.sf.tag == EUCLIDEAN:
        try:
            return decode_sphere(ctx, w)
        except Degenerate:
            raise TangentPlane("plane contains a ruling: a pencil of parallel lines") from None
    x = np.linalg.solve(ctx.B.form, w)
    if abs(relative_value(ctx.B, x)) <= ctx.rel_eps:
        raise TangentPlane("plane touches the Laguerre quadric: a contact element")
    return decode_sphere(ctx, x)


def incircle_pole(B: QuadricForm, points, euclidean: bool = False) -> np.ndarray:
    """Pole (or, in the Euclidean case, plane coordinates) of the plane through four points."""
    w = _plane_through(points)
    return w if euclidean else np.linalg.solve(B.form, w)


# Incidence theorems


def _check_generic(a: np.ndarray, tol: float):
    for five in itertools.combinations(range(a.shape[0]), 5):
        if rank_residual(a[list(five)], 3) < tol:
            raise NotGeneric(f"points {five} are coplanar")


def _check_quads(a: np.ndarray, quads, tol: float):
    for q in quads:
        r = coplanarity_residual(a[list(q)])
        if r >= tol:
            raise HypothesisViolated(f"quad {q} is not circumscribed (residual {r:.3g})")


def miquel_check(points, pattern=(MIQUEL_HYPOTHESES, MIQUEL_CONCLUSION), tol: float = COPLANAR_TOL) -> bool:
    """Points ordered (l1, l2, l3, l4, m1, m2, m3, m4); verdict on the concluding quad."""
    a = _unit_rows(points)
    if a.shape[0] != 8:
        raise DegenerateInput("need eight points")
    hyps, concl = pattern
    _check_generic(a, tol)
    _check_quads(a, hyps, tol)
    return bool(coplanarity_residual(a[list(concl)]) < tol)


def laguerre_subdivision_check(points, B: QuadricForm, C: QuadricForm, tol: float = COPLANAR_TOL) -> bool:
    """Eight lines touching the hypercycle B ∩ C, ordered as in miquel_check."""
    a = _unit_rows(points)
    if a.shape[0] != 8:
        raise DegenerateInput("need eight points")
    for x in a:
        if abs(relative_value(B, x)) > tol or abs(relative_value(C, x)) > tol:
            raise NotOnBaseCurve("point is not on the hypercycle base curve")
    _check_generic(a, tol)
    _check_quads(a, SUBDIVISION_HYPOTHESES, tol)
    return bool(coplanarity_residual(a[list(SUBDIVISION_CONCLUSION)]) < tol)


def five_by_five_quads():
    """Checkerboard quads (i, j) with i + j even of a 5 x 5 patch, the last one being (4, 4)."""
    return [(i, j) for i in range(5) for j in range(5) if (i + j) % 2 == 0]


def five_by_five_check(ell, m, tol: float = COPLANAR_TOL) -> bool:
    """Six lines per family with twelve circumscribed checkerboard quads; verdict on the 13th."""
    ell, m = _unit_rows(ell), _unit_rows(m)
    if ell.shape[0] != 6 or m.shape[0] != 6:
        raise DegenerateInput("need six lines in each family")
    quads = five_by_five_quads()
    for i, j in quads[:-1]:
        r = coplanarity_residual([ell[i], ell[i + 1], m[j], m[j + 1]])
        if r >= tol:
            raise HypothesisViolated(f"quad ({i}, {j}) is not circumscribed (residual {r:.3g})")
    i, j = quads[-1]
    return bool(coplanarity_residual([ell[i], ell[i + 1], m[j], m[j + 1]]) < tol)


# Random instances of the incidence theorems


def _second_point(Q: np.ndarray, a, b) -> np.ndarray:
    """The other intersection of the line a + t b with Q, for a on Q."""
    return a - 2.0 * (a @ Q @ b) / (b @ Q @ b) * b


def _random_on(Q: np.ndarray, rows: np.ndarray, rng) -> np.ndarray:
    """A random point of Q inside the span of the given rows."""
    while True:
        a, b = rng.normal(size=rows.shape[0]) @ rows, rng.normal(size=rows.shape[0]) @ rows
        qa, qb, qc = b @ Q @ b, 2.0 * (a @ Q @ b), a @ Q @ a
        disc = qb * qb - 4.0 * qa * qc
        if disc > 0 and qa != 0:
            return a + (-qb + math.sqrt(disc)) / (2.0 * qa) * b


def random_miquel_points(rng, Q: QuadricForm | None = None, tol: float = COPLANAR_TOL, max_tries: int = 100):
    """Eight points (l1..l4, m1..m4) of Q satisfying the five Miquel hypotheses.

    All points lie in a random hyperplane V.  l1, l2, l3, m1 are free; m2, m3, m4
    are second intersections inside the planes (l1 l2 m1), (l2 l3 m2), (l1 l2 m3);
    l4 lies on the line where V meets the planes (l3 m1 m2) and (l3 m3 m4).
    Non-generic or ill-conditioned draws are rejected.  Returns (points, rejected).
    """
    L = (Q or LieContext(2).L).form
    dim = L.shape[0]
    rejected = 0
    for _ in range(max_tries):
        V = rng.normal(size=(dim - 1, dim))
        l1, l2, m1, l3 = (_random_on(L, V, rng) for _ in range(4))
        m2 = _second_point(L, m1, rng.normal(size=3) @ np.array([l1, l2, m1]))
        m3 = _second_point(L, m2, rng.normal(size=3) @ np.array([l2, l3, m2]))
        m4 = _second_point(L, m3, rng.normal(size=3) @ np.array([l1, l2, m3]))
        cut_v = np.linalg.svd(V)[2][dim - 1:]
        f1 = np.linalg.svd(np.array([l3, m1, m2]))[2][3:]
        f2 = np.linalg.svd(np.array([l3, m3, m4]))[2][3:]
        ker = np.linalg.svd(np.vstack([cut_v, f1, f2]))[2][-2:]
        u3 = l3 / np.linalg.norm(l3)
        b = ker[0] if abs(ker[0] @ u3) < abs(ker[1] @ u3) else ker[1]
        l4 = _second_point(L, l3, b)
        pts = np.array([l1, l2, l3, l4, m1, m2, m3, m4])
        try:
            a = _unit_rows(pts)
            _check_generic(a, max(tol, 1e-6))
            _check_quads(a, MIQUEL_HYPOTHESES, tol)
        except (NotGeneric, HypothesisViolated, DegenerateInput):
            rejected += 1
            continue
        return pts, rejected
    raise NotGeneric(f"no generic configuration in {max_tries} draws")


# Parametrized nets


@dataclass(frozen=True)
class NetParams:
    epsilon: int
    conic: str
    alpha: float
    beta: float
    s: float
    s_tilde: float
    u0_l: float = 0.0
    u0_m: float = 0.0
    i_range: tuple = (-4, 4)
    j_range: tuple = (-4, 4)

    def __post_init__(self):
        object.__setattr__(self, "i_range", tuple(int(v) for v in self.i_range))
        object.__setattr__(self, "j_range", tuple(int(v) for v in self.j_range))

    @property
    def space_form(self) -> SpaceForm:
        return SpaceForm.from_epsilon(self.epsilon)

    def to_json(self) -> dict:
        d = asdict(self)
        d["i_range"], d["j_range"] = list(self.i_range), list(self.j_range)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "NetParams":
        return cls(**d)


def validate(p: NetParams):
    eps, a, b = p.epsilon, p.alpha, p.beta
    if eps not in (-1, 0, 1):
        raise InvalidParams(f"epsilon must be -1, 0 or 1, got {eps}")
    if not all(math.isfinite(v) for v in (a, b, p.s, p.s_tilde, p.u0_l, p.u0_m)):
        raise InvalidParams("parameters must be finite")
    if p.i_range[0] > p.i_range[1] or p.j_range[0] > p.j_range[1]:
        raise InvalidParams("empty index range")
    if p.conic == ELLIPSE:
        if not a > b > 0:
            raise InvalidParams("an ellipse needs alpha > beta > 0")
        if not (1 + eps * a * a > 0 and 1 + eps * b * b > 0):
            raise InvalidParams("need 1 + ε α² > 0 and 1 + ε β² > 0")
    elif p.conic == HYPERBOLA:
        if eps == 1:
            raise InvalidParams("hyperbola nets exist for ε = -1 or 0 only")
        if not (a > 0 and b > 0):
            raise InvalidParams("a hyperbola needs alpha, beta > 0")
        if not (1 + eps * a * a > 0 and 1 - eps * b * b > 0):
            raise InvalidParams("need 1 + ε α² > 0 and 1 - ε β² > 0")
    else:
        raise InvalidParams(f"unknown conic {p.conic!r}")
    m = _modulus(p)
    if not 0.0 < m < 1.0:
        raise InvalidParams(f"modulus k² = {m} is outside (0, 1)")


def _modulus(p: NetParams) -> float:
    eps, a2, b2 = p.epsilon, p.alpha ** 2, p.beta ** 2
    if p.conic == ELLIPSE:
        return 1.0 - b2 * (1 + eps * a2) / (a2 * (1 + eps * b2))
    return a2 * (1 - eps * b2) / (a2 + b2)


def base_curve_modulus(p: NetParams) -> float:
    validate(p)
    return _modulus(p)


def laguerre_form(p: NetParams) -> QuadricForm:
    return QuadricForm(np.diag([1.0, 1.0, float(p.epsilon), -1.0]))


def cone_form(p: NetParams) -> QuadricForm:
    a2, b2 = p.alpha ** 2, p.beta ** 2
    if p.conic == ELLIPSE:
        return QuadricForm(np.diag([a2, b2, -1.0, 0.0]))
    return QuadricForm(np.diag([a2, -b2, -1.0, 0.0]))


def _base_point(p: NetParams, m: float, sign: int, u: float) -> np.ndarray:
    sn, cn, dn = jacobi_sn_cn_dn(u, m)
    eps, a, b = p.epsilon, p.alpha, p.beta
    ra = math.sqrt(1 + eps * a * a)
    if p.conic == ELLIPSE:
        return np.array([cn / ra, sn / math.sqrt(1 + eps * b * b), a * dn / ra, float(sign)])
    return np.array([dn / ra, a * sn / math.sqrt(a * a + b * b), a * cn / ra, float(sign)])


def base_point(p: NetParams, sign: int, u: float) -> np.ndarray:
    """v_±(u): the oriented tangent line of the conic at parameter u."""
    if sign not in (1, -1):
        raise InvalidParams("sign must be +1 or -1")
    return _base_point(p, base_curve_modulus(p), sign, u)


def ruling_lambda(p: NetParams, s: float) -> float:
    """Pencil parameter of the hyperboloid B + λC ruled by the lines v₊(u) ∧ v₋(u + s)."""
    m = base_curve_modulus(p)
    sn, cn, _ = jacobi_sn_cn_dn(0.5 * s, m)
    if sn == 0.0 or abs(sn) < 1e-300:
        return math.inf
    cs2, ns2 = (cn / sn) ** 2, 1.0 / (sn * sn)
    if p.conic == ELLIPSE:
        return cs2 / p.beta ** 2 + p.epsilon * ns2
    return -cs2 / p.beta ** 2 - ns2 / p.alpha ** 2


def pencil_form(p: NetParams, lam: float) -> QuadricForm:
    """B + λC, with λ = ∞ standing for the cone C."""
    C = cone_form(p)
    if math.isinf(lam):
        return C
    return QuadricForm(laguerre_form(p).form + lam * C.form)


def periodic_step(p: NetParams, N: int) -> float:
    """s̃ with s + s̃ = 4K/N, which closes the net after N steps."""
    if int(N) != N or N < 1:
        raise InvalidParams(f"N must be a positive integer, got {N}")
    K = EllipticModulus(base_curve_modulus(p)).K
    return 4.0 * K / N - p.s


def with_period(p: NetParams, N: int) -> NetParams:
    d = p.to_json()
    d["s_tilde"] = periodic_step(p, N)
    return NetParams.from_json(d)


@dataclass(eq=False)
class CbicNet:
    params: NetParams
    B: QuadricForm
    C: QuadricForm
    m_param: float
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def step(self) -> float:
        return self.params.s + self.params.s_tilde

    def ell(self, i: int) -> np.ndarray:
        key = ("l", int(i))
        if key not in self._cache:
            p = self.params
            k, odd = divmod(int(i), 2)
            u = p.u0_l + k * self.step
            self._cache[key] = _base_point(p, self.m_param, -1, u + p.s) if odd else _base_point(p, self.m_param, 1, u)
        return self._cache[key]

    def m(self, j: int) -> np.ndarray:
        key = ("m", int(j))
        if key not in self._cache:
            p = self.params
            k, odd = divmod(int(j), 2)
            u = p.u0_m + k * self.step
            self._cache[key] = _base_point(p, self.m_param, 1, u + p.s) if odd else _base_point(p, self.m_param, -1, u)
        return self._cache[key]

    @property
    def i_indices(self) -> range:
        return range(self.params.i_range[0], self.params.i_range[1] + 1)

    @property
    def j_indices(self) -> range:
        return range(self.params.j_range[0], self.params.j_range[1] + 1)

    @property
    def context(self) -> LaguerreContext:
        return LaguerreContext(self.params.space_form)

    def quad(self, i: int, j: int) -> np.ndarray:
        return np.array([self.ell(i), self.ell(i + 1), self.m(j), self.m(j + 1)])

    def checkerboard_quads(self):
        """(i, j) with i + j even and all four lines inside the index ranges."""
        return [(i, j) for i in self.i_indices[:-1] for j in self.j_indices[:-1] if (i + j) % 2 == 0]

    def incircles(self):
        ctx = self.context
        out = []
        for i, j in self.checkerboard_quads():
            try:
                s = incircle(ctx, self.quad(i, j))
            except (TangentPlane, DegenerateInput):
                s = None
            out.append((i, j, s))
        return out

    def residuals(self) -> dict:
        cop = max((coplanarity_residual(self.quad(i, j)) for i, j in self.checkerboard_quads()), default=0.0)
        pts = [self.ell(i) for i in self.i_indices] + [self.m(j) for j in self.j_indices]
        onq = max(max(abs(relative_value(self.B, x)), abs(relative_value(self.C, x))) for x in pts)
        return {"max_coplanarity": cop, "max_on_quadric": onq}

    def to_json(self) -> dict:
        circles = []
        for i, j, s in self.incircles():
            if s is None:
                circles.append({"i": i, "j": j, "kind": "Degenerate", "center": None, "radius": None})
            else:
                circles.append({"i": i, "j": j, "kind": s.kind, "center": as_vec(s.center).tolist(), "radius": s.signed_radius})
        return {
            "params": self.params.to_json(),
            "ell": [normalize(self.ell(i)).tolist() for i in self.i_indices],
            "m": [normalize(self.m(j)).tolist() for j in self.j_indices],
            "incircles": circles,
            "residuals": self.residuals(),
        }


def generate(p: NetParams) -> CbicNet:
    m = base_curve_modulus(p)
    return CbicNet(p, laguerre_form(p), cone_form(p), m)


def first_failing_quad(net: CbicNet, tol: float = COPLANAR_TOL):
    for i, j in net.checkerboard_quads():
        r = coplanarity_residual(net.quad(i, j))
        if r >= tol:
            return i, j, r
    return None


def associated_hyperboloids(net: CbicNet, fit: bool = False) -> tuple[QuadricForm, QuadricForm]:
    """Q carries the lines L_2k = ℓ_2k ∧ ℓ_2k+1 and M_2l; Q̃ carries the odd lines."""
    if not fit:
        p = net.params
        return pencil_form(p, ruling_lambda(p, p.s)), pencil_form(p, ruling_lambda(p, p.s_tilde))
    bad = first_failing_quad(net)
    if bad is not None:
        raise NotCoplanarNet(f"quad {bad[:2]} is not circumscribed")
    ii, jj = list(net.i_indices), list(net.j_indices)
    lines_q, lines_qt = [], []
    for idx, get in ((ii, net.ell), (jj, net.m)):
        for i in idx[:-1]:
            (lines_q if i % 2 == 0 else lines_qt).append((get(i), get(i + 1)))
    return fit_hyperboloid(lines_q), fit_hyperboloid(lines_qt)


def _quadric_row(x) -> np.ndarray:
    x = as_vec(x)
    iu = np.triu_indices(x.shape[0])
    w = np.where(iu[0] == iu[1], 1.0, 2.0)
    return w * np.outer(x, x)[iu]


def fit_hyperboloid(lines, samples: int = 5) -> QuadricForm:
    """Homogeneous least squares for the quadric containing the given lines."""
    if len(lines) < 3:
        raise InsufficientData("need at least three lines")
    rows = []
    for a, b in lines:
        a, b = as_vec(a) / np.linalg.norm(a), as_vec(b) / np.linalg.norm(b)
        for t in np.linspace(0.0, math.pi, samples, endpoint=False):
            rows.append(_quadric_row(math.cos(t) * a + math.sin(t) * b))
    coef = np.linalg.svd(np.array(rows))[2][-1]
    k = as_vec(lines[0][0]).shape[0]
    M = np.zeros((k, k))
    M[np.triu_indices(k)] = coef
    return QuadricForm(M + np.triu(M, 1).T)


def pencil_residual(*forms: QuadricForm) -> float:
    """Relative distance of the vectorized forms from spanning a two-dimensional space."""
    a = np.array([f.form.reshape(-1) / np.linalg.norm(f.form) for f in forms])
    return rank_residual(a, 2)


def line_residual(Q: QuadricForm, a, b, samples: int = 5) -> float:
    a, b = as_vec(a) / np.linalg.norm(a), as_vec(b) / np.linalg.norm(b)
    return max(abs(relative_value(Q, math.cos(t) * a + math.sin(t) * b)) for t in np.linspace(0, math.pi, samples, endpoint=False))


# Octahedral grids


def nu(net: CbicNet, family: int, k: int) -> np.ndarray:
    """The four line families of the A₃ labelling of all incircles."""
    if family == 1:
        return net.ell(2 * k)
    if family == 2:
        return net.ell(-2 * k + 1)
    if family == 3:
        return net.m(-2 * k)
    if family == 4:
        return net.m(2 * k + 1)
    raise ValueError(f"family must be 1..4, got {family}")


@dataclass(eq=False)
class OctahedralGrid:
    net: CbicNet
    window: int
    planes: dict  # (family, k) -> plane coefficients
    points: dict  # a -> c_a
    concurrency: dict  # a -> residual

    @property
    def euclidean(self) -> bool:
        return self.net.params.epsilon == 0

    def max_concurrency(self) -> float:
        return max(self.concurrency.values())

    def covector(self, a) -> np.ndarray:
        """The incircle plane belonging to c_a, as coefficients for the adjugate pencil."""
        c = self.points[tuple(a)]
        return c if self.euclidean else self.net.B.form @ c

    def diagonal_surfaces(self):
        """Groups of lattice points with k_i + k_j fixed, keyed by ((i, j), value)."""
        groups = {}
        for a in self.points:
            for i, j in ((0, 1), (0, 2), (0, 3)):
                groups.setdefault(((i, j), a[i] + a[j]), []).append(a)
        return groups

    def sum_zero_quadruples(self):
        """Quadruples of distinct lattice points a₁ + a₂ + a₃ + a₄ = 0 on a common diagonal surface."""
        out = []
        for (pair, value), members in sorted(self.diagonal_surfaces().items()):
            if value != 0:
                continue
            keys = set(members)
            for a1, a2, a3 in itertools.combinations(sorted(members), 3):
                a4 = tuple(-x - y - z for x, y, z in zip(a1, a2, a3))
                if a4 in keys and a4 > a3:
                    out.append((a1, a2, a3, a4))
        return out

    def fit_dual_pencil(self, indices) -> tuple[float, float]:
        return fit_dual_pencil(self.net.B, self.net.C, [self.covector(a) for a in indices])


def a3_window(window: int):
    if window < 0:
        raise WindowEmpty("window must be non-negative")
    r = range(-window, window + 1)
    return [a + (-sum(a),) for a in itertools.product(r, repeat=3) if abs(sum(a)) <= window]


def octahedral_grid(net: CbicNet, window: int = 2) -> OctahedralGrid:
    """Polar (Euclidean: dual) planes of the four line families and their quadruple points."""
    lattice = a3_window(window)
    B = net.B.form
    euclid = net.params.epsilon == 0
    planes = {}
    for f in range(1, 5):
        for k in range(-window, window + 1):
            v = nu(net, f, k)
            w = v if euclid else B @ v
            planes[(f, k)] = w / np.linalg.norm(w)
    points, conc = {}, {}
    for a in lattice:
        P = np.array([planes[(f + 1, a[f])] for f in range(4)])
        c = np.linalg.svd(P)[2][-1]
        c = c / np.linalg.norm(c)
        points[a] = c
        conc[a] = float(np.max(np.abs(P @ c)))
    return OctahedralGrid(net, window, planes, points, conc)


def _adjugate(M: np.ndarray) -> np.ndarray:
    k = M.shape[0]
    adj = np.empty_like(M)
    for i in range(k):
        for j in range(k):
            minor = np.delete(np.delete(M, j, axis=0), i, axis=1)
            adj[i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return adj


def _adj_scale(B: QuadricForm, C: QuadricForm, lam: float) -> float:
    M = C.form if math.isinf(lam) else B.form + lam * C.form
    return float(np.max(np.abs(_adjugate(M))))


def dual_pencil_value(B: QuadricForm, C: QuadricForm, w, lam: float) -> float:
    """Normalized wᵀ adj(B + λC) w: zero iff the plane w touches the member λ."""
    w = as_vec(w) / np.linalg.norm(w)
    M = C.form if math.isinf(lam) else B.form + lam * C.form
    adj = _adjugate(M)
    scale = float(np.max(np.abs(adj)))
    if scale == 0.0:
        return 0.0
    return float(w @ adj @ w) / scale


_NODES = np.array([-1.5, -0.5, 0.5, 1.5])


def _cubic(adjs, w) -> np.ndarray:
    """Coefficients of λ ↦ wᵀ adj(B + λC) w, highest degree first."""
    w = as_vec(w) / np.linalg.norm(w)
    return np.polyfit(_NODES, [float(w @ a @ w) for a in adjs], 3)


def fit_dual_pencil(B: QuadricForm, C: QuadricForm, covectors) -> tuple[float, float]:
    """Member λ of the dual pencil touched by all given planes, and the worst residual."""
    adjs = [_adjugate(B.form + t * C.form) for t in _NODES]
    cubics = [_cubic(adjs, w) for w in covectors]
    cands = [math.inf]
    for c in cubics:
        for r in np.roots(c):
            if abs(r.imag) <= 1e-7 * max(1.0, abs(r)):
                cands.append(float(r.real))
    best = (math.nan, math.inf)
    for lam in cands:
        scale = _adj_scale(B, C, lam)
        if scale == 0.0:
            continue
        if math.isinf(lam):
            res = max(abs(c[0]) for c in cubics) / scale
        else:
            res = max(abs(np.polyval(c, lam)) for c in cubics) / scale
        if res < best[1]:
            best = (lam, res)
    return best

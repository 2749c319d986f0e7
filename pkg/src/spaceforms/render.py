"""Scene configs, projection to the display models of the plane, and SVG output."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cayley_klein import ELLIPTIC, EUCLIDEAN, HYPERBOLIC, SpaceForm
from .errors import InvalidParams, NotRepresentable
from .nets import CbicNet, NetParams, generate, incircle_pole, with_period
from .projective_core import as_vec, normalize
from .quadric_engine import signature_of

MODELS = ("Klein", "PoincareDisk", "HalfPlane", "SphereOrthographic", "SphereStereographic", "EuclideanPlane")

_ALLOWED = {
    "Klein": (HYPERBOLIC, ELLIPTIC),
    "PoincareDisk": (HYPERBOLIC,),
    "HalfPlane": (HYPERBOLIC,),
    "SphereOrthographic": (HYPERBOLIC, ELLIPTIC),
    "SphereStereographic": (HYPERBOLIC, ELLIPTIC),
    "EuclideanPlane": (EUCLIDEAN,),
}

DEFAULT_PALETTE = {"background": "#ffffff", "boundary": "#000000", "ell": "#1f4e9c", "m": "#b8321a", "circle": "#2a7f3a"}


# Config


@dataclass(frozen=True)
class RenderOptions:
    samples_per_circle: int = 256
    width: int = 600
    height: int = 600
    line_width: float = 1.0
    circle_width: float = 0.8
    boundary_width: float = 1.2
    palette: dict = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    view: tuple | None = None


@dataclass(frozen=True)
class SceneConfig:
    params: NetParams
    model: str
    render: RenderOptions
    seed: int = 0

    @property
    def space_form(self) -> SpaceForm:
        return self.params.space_form


def check_model(sf: SpaceForm, model: str):
    if model not in _ALLOWED:
        raise NotRepresentable(f"unknown model {model!r}")
    if sf.tag not in _ALLOWED[model]:
        raise NotRepresentable(f"the {model} model does not show {sf.tag.lower()} geometry")


def parse_config(d: dict) -> SceneConfig:
    """SceneConfig from its JSON form; raises InvalidParams on missing or bad fields."""
    try:
        sf = SpaceForm(d["space_form"])
        conic = d["conic"]
        net = d["net"]
        s = float(net["s"])
        base = NetParams(
            epsilon=sf.epsilon,
            conic=conic["type"],
            alpha=float(conic["alpha"]),
            beta=float(conic["beta"]),
            s=s,
            s_tilde=float(net.get("s_tilde", 0.0)),
            u0_l=float(net.get("u0_l", 0.0)),
            u0_m=float(net.get("u0_m", 0.0)),
            i_range=tuple(net.get("i_range", (-4, 4))),
            j_range=tuple(net.get("j_range", (-4, 4))),
        )
        if "N" in net:
            base = with_period(base, int(net["N"]))
        elif "s_tilde" not in net:
            raise InvalidParams("net needs s_tilde or N")
        r = dict(d.get("render", {}))
        palette = dict(DEFAULT_PALETTE)
        palette.update(r.pop("palette", {}))
        view = r.pop("view", None)
        opts = RenderOptions(palette=palette, view=tuple(float(v) for v in view) if view else None, **r)
        model = d.get("model", default_model(sf))
        cfg = SceneConfig(base, model, opts, int(d.get("seed", 0)))
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidParams(f"bad config: {e}") from e
    if opts.samples_per_circle < 8:
        raise InvalidParams("samples_per_circle must be at least 8")
    check_model(sf, model)
    return cfg


def default_model(sf: SpaceForm) -> str:
    return {HYPERBOLIC: "PoincareDisk", ELLIPTIC: "SphereStereographic", EUCLIDEAN: "EuclideanPlane"}[sf.tag]


# Models


def project_point(sf: SpaceForm, model: str, y) -> np.ndarray:
    """2D model coordinates of a point of the base plane given homogeneously."""
    check_model(sf, model)
    y = as_vec(y)
    if sf.tag == EUCLIDEAN:
        if abs(y[2]) <= 1e-12 * np.max(np.abs(y)):
            raise NotRepresentable("point at infinity")
        return y[:2] / y[2]
    if sf.tag == HYPERBOLIC:
        v = y[0] ** 2 + y[1] ** 2 - y[2] ** 2
        if v >= 0:
            raise NotRepresentable("point outside the hyperbolic plane")
        k = y[:2] / y[2]
        if model in ("Klein", "SphereOrthographic"):
            return k
        z = y / math.sqrt(-v)
        if z[2] < 0:
            z = -z
        d = z[:2] / (1.0 + z[2])
        if model == "HalfPlane":
            return disk_to_half_plane(d)
        return d
    # elliptic: sphere model with antipodes identified, upper hemisphere chosen
    z = y / np.linalg.norm(y)
    if z[2] < 0 or (z[2] == 0 and (z[1] < 0 or (z[1] == 0 and z[0] < 0))):
        z = -z
    if model == "Klein":
        if z[2] <= 1e-12:
            raise NotRepresentable("point on the line at infinity of the central projection")
        return z[:2] / z[2]
    if model == "SphereOrthographic":
        return z[:2].copy()
    return z[:2] / (1.0 + z[2])


def disk_to_half_plane(d) -> np.ndarray:
    """w = i(1 + z)/(1 - z): the unit disk onto the upper half plane, 0 ↦ i."""
    z = complex(d[0], d[1])
    if abs(1 - z) < 1e-15:
        raise NotRepresentable("the point 1 goes to infinity")
    w = 1j * (1 + z) / (1 - z)
    return np.array([w.real, w.imag])


def base_covector(sf: SpaceForm, nu) -> np.ndarray:
    """Coefficients of the line of the base plane belonging to a Laguerre point."""
    nu = as_vec(nu)
    s = {HYPERBOLIC: -1.0, ELLIPTIC: 1.0, EUCLIDEAN: -1.0}[sf.tag]
    return np.array([nu[0], nu[1], s * nu[2]]) * (1.0 if nu[3] >= 0 else -1.0)


def _base_form(sf: SpaceForm) -> np.ndarray:
    return np.diag([1.0, 1.0, -1.0 if sf.tag == HYPERBOLIC else 1.0])


def _line_frame(sf: SpaceForm, nu):
    """A point on the line and a second point giving its direction of travel, homogeneous."""
    c = base_covector(sf, nu)
    if sf.tag == EUCLIDEAN:
        n2 = c[0] ** 2 + c[1] ** 2
        return np.array([-c[0] * c[2] / n2, -c[1] * c[2] / n2, 1.0]), np.array([-c[1], c[0], 0.0]) / math.sqrt(n2)
    base = _base_form(sf)
    o = np.array([0.0, 0.0, 1.0])
    n = base @ c  # pole of the line
    nn = n @ base @ n
    if abs(nn) < 1e-14:
        raise NotRepresentable("line tangent to the absolute")
    foot = o - (o @ base @ n) / nn * n
    d = np.cross(c, foot)
    # affine velocity of foot + t d at t = 0 should turn the normal by +90°
    vel = d[:2] * foot[2] - foot[:2] * d[2]
    if np.dot(vel, [-c[1], c[0]]) < 0:
        d = -d
    return foot, d


def _polylines(sf, model, pts_h, jump):
    out, cur, prev = [], [], None
    for y in pts_h:
        try:
            q = project_point(sf, model, y)
        except NotRepresentable:
            q = None
        if q is None or not np.all(np.isfinite(q)) or (prev is not None and np.linalg.norm(q - prev) > jump):
            if len(cur) > 1:
                out.append(np.array(cur))
            cur = [] if q is None else [q]
        else:
            cur.append(q)
        prev = q
    if len(cur) > 1:
        out.append(np.array(cur))
    return out


def sample_line(sf: SpaceForm, model: str, nu, samples: int = 256, extent: float = 10.0):
    """Polylines of an oriented line, in the direction of its orientation."""
    check_model(sf, model)
    a, d = _line_frame(sf, nu)
    if sf.tag == EUCLIDEAN:
        ts = np.linspace(-extent, extent, samples)
        pts = [a + t * d for t in ts]
    elif sf.tag == HYPERBOLIC:
        # chord between the two ideal points a ± t d with <., .> = 0
        base = np.diag([1.0, 1.0, -1.0])
        A, Bc, C = d @ base @ d, 2 * a @ base @ d, a @ base @ a
        disc = Bc * Bc - 4 * A * C
        if A <= 0 or disc <= 0:
            raise NotRepresentable("line misses the hyperbolic plane")
        r = math.sqrt(disc)
        t0, t1 = (-Bc - r) / (2 * A), (-Bc + r) / (2 * A)
        ts = t0 + (t1 - t0) * (0.5 - 0.5 * np.cos(np.linspace(0.0, math.pi, samples)))
        ts = ts[1:-1]
        pts = [a + t * d for t in ts]
    else:
        an = a / np.linalg.norm(a)
        dn = d - (d @ an) * an
        dn = dn / np.linalg.norm(dn)
        th = np.linspace(0.0, math.pi, samples)
        pts = [math.cos(t) * an + math.sin(t) * dn for t in th]
    return _polylines(sf, model, pts, jump=_jump(model))


def _jump(model: str) -> float:
    return 50.0 if model in ("HalfPlane", "EuclideanPlane", "Klein") else 0.5


def _fix_signs(V: np.ndarray) -> np.ndarray:
    """Columns with their largest entry positive, so the parametrization does not depend on the solver."""
    k = np.argmax(np.abs(V), axis=0)
    return V * np.sign(V[k, np.arange(V.shape[1])])


def section_lines(B, w, samples: int):
    """Points ν(θ) of the conic cut on B by the plane with coefficients w; [] if it has no real points."""
    B, w = np.asarray(B, dtype=float), as_vec(w)
    E = _fix_signs(np.linalg.svd(w[None, :])[2][1:].T)  # basis of the plane
    G = E.T @ B @ E
    G = 0.5 * (G + G.T)
    sig = signature_of(G)
    if sig[2] > 0 or sig[0] == 3 or sig[1] == 3:
        return []
    ev, V = np.linalg.eigh(G)
    V = _fix_signs(V)
    odd = int(np.argmax(ev)) if sig[0] == 1 else int(np.argmin(ev))
    i, j = [k for k in range(3) if k != odd]
    u, v, o = (V[:, k] / math.sqrt(abs(ev[k])) for k in (i, j, odd))
    return [E @ (math.cos(t) * u + math.sin(t) * v + o) for t in np.linspace(0.0, 2 * math.pi, samples, endpoint=False)]


def circle_center(sf: SpaceForm, x) -> np.ndarray:
    """Center of the circle of a Laguerre point (Euclidean: of plane coefficients), homogeneous."""
    x = as_vec(x)
    if sf.tag == EUCLIDEAN:
        if abs(x[2]) < 1e-14 * np.max(np.abs(x)):
            raise NotRepresentable("pencil of parallel lines")
        return np.array([-x[0] / x[2], -x[1] / x[2], 1.0])
    return x[:3].copy()


def contact_point(sf: SpaceForm, center, nu) -> np.ndarray:
    """Where the oriented line ν touches a circle with the given center: the foot of the perpendicular."""
    c = base_covector(sf, nu)
    center = as_vec(center)
    if sf.tag == EUCLIDEAN:
        z = center / center[2]
        k = float(c @ z) / (c[0] ** 2 + c[1] ** 2)
        return np.array([z[0] - k * c[0], z[1] - k * c[1], 1.0])
    base = _base_form(sf)
    n = base @ c
    return center - (center @ base @ n) / (n @ base @ n) * n


def laguerre_matrix(sf: SpaceForm) -> np.ndarray:
    return np.diag([1.0, 1.0, float(sf.epsilon), -1.0])


def sample_circle(sf: SpaceForm, model: str, x, samples: int = 256):
    """Polylines of the circle of x, sampled on the B-section, and the arrow at parameter 0."""
    check_model(sf, model)
    x = normalize(x)
    B = laguerre_matrix(sf)
    center = circle_center(sf, x)
    w = x if sf.tag == EUCLIDEAN else B @ x
    lines = section_lines(B, w, samples)
    if not lines:
        raise NotRepresentable("the section has no real points")
    pts = [contact_point(sf, center, nu) for nu in lines]
    polys = _polylines(sf, model, pts + pts[:1], jump=_jump(model))
    arrow = None
    try:
        # move along the tangent line in the affine chart z = 1, where it runs along (-c1, c0)
        c = base_covector(sf, lines[0])
        p = pts[0] / np.linalg.norm(pts[0])
        if abs(p[2]) < 1e-9:
            raise NotRepresentable("contact point at infinity of the chart")
        p = p / p[2]
        d = np.array([-c[1], c[0], 0.0])
        tip = project_point(sf, model, p)
        ahead = project_point(sf, model, p + 1e-5 * np.linalg.norm(p) * d / np.linalg.norm(d))
        v = ahead - tip
        if np.linalg.norm(v) > 0:
            arrow = np.array([tip, v / np.linalg.norm(v)])
    except NotRepresentable:
        pass
    return polys, arrow


# Scenes


@dataclass
class Primitive:
    group: str
    key: tuple
    polylines: list
    arrow: np.ndarray | None = None  # (tip, direction) rows


@dataclass
class Scene2D:
    view: tuple  # xmin, xmax, ymin, ymax in model units
    boundary: str | None  # "circle", "axis" or None
    primitives: list = field(default_factory=list)


def default_view(cfg: SceneConfig) -> tuple:
    if cfg.render.view:
        return tuple(cfg.render.view)
    if cfg.model == "HalfPlane":
        return (-4.0, 4.0, -0.5, 7.5)
    if cfg.model == "EuclideanPlane":
        r = 2.5 * max(cfg.params.alpha, cfg.params.beta)
        return (-r, r, -r, r)
    if cfg.model == "Klein" and cfg.space_form.tag == ELLIPTIC:
        return (-4.0, 4.0, -4.0, 4.0)
    return (-1.05, 1.05, -1.05, 1.05)


def _arrow(polys):
    for p in polys:
        if len(p) >= 2:
            d = p[1] - p[0]
            if np.linalg.norm(d) > 0:
                return np.array([p[0], d / np.linalg.norm(d)])
    return None


def build_scene(cfg: SceneConfig, net: CbicNet | None = None) -> Scene2D:
    sf, model, opts = cfg.space_form, cfg.model, cfg.render
    check_model(sf, model)
    net = net or generate(cfg.params)
    view = default_view(cfg)
    boundary = "axis" if model == "HalfPlane" else (None if model in ("EuclideanPlane",) or (model == "Klein" and sf.tag == ELLIPTIC) else "circle")
    scene = Scene2D(view, boundary)
    extent = 4.0 * max(abs(v) for v in view)
    n = opts.samples_per_circle
    for group, idx, get in (("ell", net.i_indices, net.ell), ("m", net.j_indices, net.m)):
        for i in idx:
            try:
                polys = sample_line(sf, model, get(i), n, extent)
            except NotRepresentable:
                continue
            scene.primitives.append(Primitive(group, (i,), polys, _arrow(polys)))
    euclid = sf.tag == EUCLIDEAN
    for i, j in net.checkerboard_quads():
        x = incircle_pole(net.B, net.quad(i, j), euclid)
        try:
            polys, arrow = sample_circle(sf, model, x, n)
        except NotRepresentable:
            continue
        scene.primitives.append(Primitive("circle", (i, j), polys, arrow))
    return scene


# SVG


def _f(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def emit_svg(scene: Scene2D, opts: RenderOptions | None = None) -> bytes:
    opts = opts or RenderOptions()
    W, H = opts.width, opts.height
    x0, x1, y0, y1 = scene.view
    sx, sy = W / (x1 - x0), H / (y1 - y0)

    def px(p):
        return (p[0] - x0) * sx, (y1 - p[1]) * sy

    pal = opts.palette
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="{pal["background"]}"/>',
    ]
    if scene.boundary == "circle":
        cx, cy = px((0.0, 0.0))
        out.append(f'<ellipse cx="{_f(cx)}" cy="{_f(cy)}" rx="{_f(sx)}" ry="{_f(sy)}" fill="none" stroke="{pal["boundary"]}" stroke-width="{_f(opts.boundary_width)}"/>')
    elif scene.boundary == "axis":
        _, ay = px((0.0, 0.0))
        out.append(f'<line x1="0" y1="{_f(ay)}" x2="{W}" y2="{_f(ay)}" stroke="{pal["boundary"]}" stroke-width="{_f(opts.boundary_width)}"/>')
    order = {"ell": 0, "m": 1, "circle": 2}
    for prim in sorted(scene.primitives, key=lambda p: (order.get(p.group, 3), p.key)):
        width = opts.circle_width if prim.group == "circle" else opts.line_width
        color = pal.get(prim.group, "#000000")
        key = "-".join(str(k) for k in prim.key)
        out.append(f'<g id="{prim.group}-{key}" fill="none" stroke="{color}" stroke-width="{_f(width)}">')
        for poly in prim.polylines:
            pts = " ".join(f"{_f(a)},{_f(b)}" for a, b in (px(p) for p in poly))
            out.append(f'<polyline points="{pts}"/>')
        if prim.arrow is not None:
            tip = np.array(px(prim.arrow[0]))
            d = np.array([prim.arrow[1][0], -prim.arrow[1][1]])
            nrm = np.array([-d[1], d[0]])
            size = 4.0 * width + 2.0
            head = tip + size * d
            left, right = tip - 0.5 * size * nrm, tip + 0.5 * size * nrm
            pts = " ".join(f"{_f(a)},{_f(b)}" for a, b in (left, head, right))
            out.append(f'<polygon points="{pts}" fill="{color}" stroke="none"/>')
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def render_config(cfg: SceneConfig, net: CbicNet | None = None) -> bytes:
    return emit_svg(build_scene(cfg, net), cfg.render)


def empty_scene() -> Scene2D:
    return Scene2D((-1.0, 1.0, -1.0, 1.0), None)


def validate_options(opts: RenderOptions):
    if opts.width <= 0 or opts.height <= 0:
        raise InvalidParams("width and height must be positive")

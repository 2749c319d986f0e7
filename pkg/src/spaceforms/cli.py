"""Command line: generate, check and render nets, evaluate Jacobi functions."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .elliptic_fn import EllipticModulus, jacobi_sn_cn_dn
from .errors import GeometryError, InvalidParams
from .nets import COPLANAR_TOL, CbicNet, NetParams, coplanarity_residual, generate
from .quadric_engine import relative_value
from .render import RenderOptions, SceneConfig, check_model, default_model, parse_config, render_config


def _read_json(path: str | None) -> dict:
    try:
        text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
        d = json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidParams(f"cannot read JSON: {e}") from e
    if not isinstance(d, dict):
        raise InvalidParams("expected a JSON object")
    return d


def _write(path: str | None, data: bytes):
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as f:
            f.write(data)


def dump_json(d: dict) -> bytes:
    return (json.dumps(d, indent=1) + "\n").encode("utf-8")


def net_from_dump(d: dict) -> CbicNet:
    """A net whose points are the stored ones, so that check sees exactly the dump."""
    try:
        p = NetParams.from_json(d["params"])
        net = generate(p)
        ell, m = d["ell"], d["m"]
        if len(ell) != len(net.i_indices) or len(m) != len(net.j_indices):
            raise InvalidParams("number of stored lines does not match the index ranges")
        for i, x in zip(net.i_indices, ell):
            net._cache[("l", i)] = np.asarray(x, dtype=float)
        for j, x in zip(net.j_indices, m):
            net._cache[("m", j)] = np.asarray(x, dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidParams(f"bad net dump: {e}") from e
    return net


def check_net(net: CbicNet, tol: float = COPLANAR_TOL, seed: int = 0, spot_checks: int = 20) -> dict:
    """Residual report; "failures" names every offending point or quad."""
    report = {"max_coplanarity": 0.0, "max_on_quadric": 0.0, "max_generalized": 0.0, "failures": []}
    for group, idx, get in (("ell", net.i_indices, net.ell), ("m", net.j_indices, net.m)):
        for i in idx:
            x = get(i)
            r = max(abs(relative_value(net.B, x)), abs(relative_value(net.C, x)))
            report["max_on_quadric"] = max(report["max_on_quadric"], r)
            if r >= tol:
                report["failures"].append(f"{group}[{i}] off the base curve (residual {r:.3g})")
    for i, j in net.checkerboard_quads():
        r = coplanarity_residual(net.quad(i, j))
        report["max_coplanarity"] = max(report["max_coplanarity"], r)
        if r >= tol:
            report["failures"].append(f"quad (i={i}, j={j}) not circumscribed (residual {r:.3g})")
    # spot checks of the quads (l_i, m_j, l_{i+2k+1}, m_{j+2k+1}) with i + j even
    rng = np.random.default_rng(seed)
    i0, i1 = net.params.i_range
    j0, j1 = net.params.j_range
    for _ in range(spot_checks):
        k = int(rng.integers(0, 3))
        if i1 - i0 < 2 * k + 1 or j1 - j0 < 2 * k + 1:
            continue
        i = int(rng.integers(i0, i1 - 2 * k))
        j = int(rng.integers(j0, j1 - 2 * k))
        if (i + j) % 2:
            j = j + 1 if j + 1 <= j1 - 2 * k - 1 else j - 1
        r = coplanarity_residual([net.ell(i), net.m(j), net.ell(i + 2 * k + 1), net.m(j + 2 * k + 1)])
        report["max_generalized"] = max(report["max_generalized"], r)
        if r >= tol:
            report["failures"].append(f"generalized quad (i={i}, j={j}, k={k}) not circumscribed (residual {r:.3g})")
    return report


def cmd_generate(args) -> int:
    cfg = parse_config(_read_json(args.config))
    net = generate(cfg.params)
    _write(args.out, dump_json(net.to_json()))
    return 0


def cmd_check(args) -> int:
    net = net_from_dump(_read_json(args.dump))
    report = check_net(net, args.tol, args.seed)
    sys.stdout.write(json.dumps(report, indent=1) + "\n")
    if report["failures"]:
        for f in report["failures"]:
            print(f"check failed: {f}", file=sys.stderr)
        return 1
    return 0


def cmd_render(args) -> int:
    d = _read_json(args.config)
    if "params" in d and "ell" in d:
        net = net_from_dump(d)
        sf = net.params.space_form
        model = args.model or default_model(sf)
        check_model(sf, model)
        cfg = SceneConfig(net.params, model, RenderOptions())
    else:
        if args.model:
            d = dict(d, model=args.model)
        cfg = parse_config(d)
        net = None
    _write(args.out, render_config(cfg, net))
    return 0


def cmd_jacobi(args) -> int:
    sn, cn, dn = jacobi_sn_cn_dn(args.u, args.m)
    out = {"u": args.u, "m": args.m, "sn": sn, "cn": cn, "dn": dn, "K": EllipticModulus(args.m).K}
    sys.stdout.write(json.dumps(out) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spaceforms", description="Checkerboard incircular nets in the hyperbolic, elliptic and Euclidean planes.")
    sub = ap.add_subparsers(dest="command", required=True)
    g = sub.add_parser("generate", help="generate a net dump from a scene config")
    g.add_argument("--config", help="scene config JSON (default: stdin)")
    g.add_argument("--out", help="output path (default: stdout)")
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_generate)
    c = sub.add_parser("check", help="residual report for a net dump")
    c.add_argument("dump", nargs="?", help="net dump JSON (default: stdin)")
    c.add_argument("--tol", type=float, default=COPLANAR_TOL)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_check)
    r = sub.add_parser("render", help="SVG of a scene config or a net dump")
    r.add_argument("--config", help="scene config or net dump JSON (default: stdin)")
    r.add_argument("--model", choices=["Klein", "PoincareDisk", "HalfPlane", "SphereOrthographic", "SphereStereographic", "EuclideanPlane"])
    r.add_argument("--out", help="output path (default: stdout)")
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_render)
    j = sub.add_parser("jacobi", help="evaluate sn, cn, dn and K")
    j.add_argument("--u", type=float, required=True)
    j.add_argument("--m", type=float, required=True)
    j.set_defaults(func=cmd_jacobi)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except InvalidParams as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

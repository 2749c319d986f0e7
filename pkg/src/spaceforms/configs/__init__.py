"""Bundled example scene configs."""

import json
from importlib import resources

NAMES = ("elliptic_ellipse", "hyperbolic_ellipse", "hyperbolic_hyperbola", "euclidean_ellipse", "euclidean_hyperbola")


def load(name: str) -> dict:
    return json.loads(resources.files(__name__).joinpath(f"{name}.json").read_text(encoding="utf-8"))

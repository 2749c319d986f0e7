"""Projective models of space forms, Laguerre and Lie sphere geometry, and checkerboard incircular nets."""

from .errors import GeometryError
from .nets import CbicNet, NetParams, generate, octahedral_grid, with_period

__all__ = ["CbicNet", "GeometryError", "NetParams", "generate", "octahedral_grid", "with_period"]
__version__ = "0.1.0"

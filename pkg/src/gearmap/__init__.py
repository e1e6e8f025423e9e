"""Conformal maps onto one-tooth gear domains via Schwarzian accessory parameters."""

__version__ = "0.1.0"

from .errors import GearMapError
from .odecore import DiskMap, Jet2, MobiusMap
from .schwarzian import MapParams, disk_schwarzian, eval_R
from .geartools import GearMap, GearParams, multitooth, renormalized_gear_map
from .solver import RegionG, forward, invert, level_curves
from .curves import Curve, CurveSet
from .config import RunConfig

__all__ = [
    "Curve",
    "CurveSet",
    "DiskMap",
    "GearMap",
    "GearMapError",
    "GearParams",
    "Jet2",
    "MapParams",
    "MobiusMap",
    "RegionG",
    "RunConfig",
    "disk_schwarzian",
    "eval_R",
    "forward",
    "invert",
    "level_curves",
    "multitooth",
    "renormalized_gear_map",
]

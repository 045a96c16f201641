"""Shooting-point placement for a camera UAV relaying images to a base station."""

from .baselines import exhaustive_search_2d, exhaustive_search_3d, vertical_baseline
from .channel import BaseStation, LinkBudget
from .geometry import CameraConstants, CameraIntrinsics, GroundTarget, Placement
from .problem import ReducedPoint, Scenario
from .solver import SolverConfig, SolveResult, SolveStatus, bcd_solve

__all__ = [
    "BaseStation",
    "CameraConstants",
    "CameraIntrinsics",
    "GroundTarget",
    "LinkBudget",
    "Placement",
    "ReducedPoint",
    "Scenario",
    "SolveResult",
    "SolveStatus",
    "SolverConfig",
    "bcd_solve",
    "exhaustive_search_2d",
    "exhaustive_search_3d",
    "vertical_baseline",
]

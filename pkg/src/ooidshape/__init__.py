"""Steady shapes of grains under growth, abrasion and friction.

A closed convex curve evolving with normal speed
``c3 (-1 + c1 A kappa + c2 A y cos(gamma))`` (A the enclosed area) has smooth
steady states with D2 symmetry. This package computes them, maps between the
local and physical parameters, simulates the flow with markers, shows that
ellipses are not steady, and recovers ``(c1, c2)`` from an outline.
"""

from .ellipse import EllipseSpec, ellipse_residual, forced_c1, forced_c2
from .errors import (
    AccuracyError,
    DegeneracyError,
    DegenerateLimitError,
    DomainError,
    InvariantError,
    NoZeroError,
    NotRealizableError,
    OoidError,
    TopologyError,
)
from .flow import FlowConfig, FlowState, evolve_to_steady, residual, step
from .inverse import recover_params
from .local import LocalParams, assemble_shape, c1_crit, find_y0, find_ybar, kappa, realize_segment
from .nonlocal_map import NonlocalParams, c1_floor, invert_F, map_F, solve_nonlocal, sweep
from .properties import property_report
from .specfun import dawson, erfi_scaled

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "DegeneracyError",
    "DegenerateLimitError",
    "DomainError",
    "EllipseSpec",
    "FlowConfig",
    "FlowState",
    "InvariantError",
    "LocalParams",
    "NoZeroError",
    "NonlocalParams",
    "NotRealizableError",
    "OoidError",
    "TopologyError",
    "assemble_shape",
    "c1_crit",
    "c1_floor",
    "dawson",
    "ellipse_residual",
    "erfi_scaled",
    "evolve_to_steady",
    "find_y0",
    "find_ybar",
    "forced_c1",
    "forced_c2",
    "invert_F",
    "kappa",
    "map_F",
    "property_report",
    "realize_segment",
    "recover_params",
    "residual",
    "solve_nonlocal",
    "step",
    "sweep",
]

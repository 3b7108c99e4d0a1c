"""Exact Hasse-Herbrand functions and the depth transform for induced tori."""
from .catalog import CatalogEntry, VerificationReport, verify_entry
from .depth import (
    Depth,
    DepthReport,
    depth_gap,
    depth_ratio,
    depth_report,
    invariant_a,
    is_depth_preserving,
    min_depth_for_ratio,
    moy_prasad_threshold,
    parameter_depth,
)
from .filtration import Ramification, RamificationFiltration
from .herbrand import PiecewiseLinear, phi_from_filtration, phi_integer_oracle, upper_breaks

__all__ = [
    "CatalogEntry",
    "Depth",
    "DepthReport",
    "PiecewiseLinear",
    "Ramification",
    "RamificationFiltration",
    "VerificationReport",
    "depth_gap",
    "depth_ratio",
    "depth_report",
    "invariant_a",
    "is_depth_preserving",
    "min_depth_for_ratio",
    "moy_prasad_threshold",
    "parameter_depth",
    "phi_from_filtration",
    "phi_integer_oracle",
    "upper_breaks",
    "verify_entry",
]

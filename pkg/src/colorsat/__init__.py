"""Edge-colored graph saturation: verification, constructions, exact search
and t-partite cover bounds."""

from .graph import EdgeColoredGraph, color_neighborhood, add_edge, remove_edge
from .canon import canonical_key, canonical_form
from .family import ForbiddenFamily, monochromatic, rainbow, exactly, parse_family
from .saturation import SaturationReport, saturation_report, is_saturated, greedy_saturate
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "EdgeColoredGraph", "color_neighborhood", "add_edge", "remove_edge",
    "canonical_key", "canonical_form",
    "ForbiddenFamily", "monochromatic", "rainbow", "exactly", "parse_family",
    "SaturationReport", "saturation_report", "is_saturated", "greedy_saturate",
    "BACKEND",
]

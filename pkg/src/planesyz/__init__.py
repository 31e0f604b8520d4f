"""Exact Jacobian syzygies, Tjurina numbers and freeness of plane curves over Q."""

from __future__ import annotations

from .curvelab import CurveReport, analyze
from .curves import AffineCurve, ProjectiveCurve
from .polyring import Poly
from .textio import load_curve, parse_polynomial, print_polynomial

__version__ = "0.1.0"

__all__ = [
    "AffineCurve",
    "CurveReport",
    "Poly",
    "ProjectiveCurve",
    "analyze",
    "load_curve",
    "parse_polynomial",
    "print_polynomial",
]

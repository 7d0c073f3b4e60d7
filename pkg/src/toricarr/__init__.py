"""Exact combinatorics of toric arrangements and their finite covers."""

from .arrangement import Hypersurface, InvalidArrangement, ToricArrangement, braid, essentialize
from .covers import build_p_cover, deck_group, exceptional_primes, lift, lift_central
from .intlat import IntMatrix
from .layers import Layer, char_poly, layer_poset
from .pipeline import analyze, verify_report

__all__ = [
    "Hypersurface",
    "IntMatrix",
    "InvalidArrangement",
    "Layer",
    "ToricArrangement",
    "analyze",
    "braid",
    "build_p_cover",
    "char_poly",
    "deck_group",
    "essentialize",
    "exceptional_primes",
    "layer_poset",
    "lift",
    "lift_central",
    "verify_report",
]

"""Lens sequences: exact generation, underground factorization, lens geometry
and asymptotics for integer curvature sequences of circle chains in lenses."""

from __future__ import annotations

from .core import LensConstants, Seed, SequenceWindow, constants_from_seed, extend
from .errors import LensError
from .exactnum import QuadExt, Rational
from .geometry import Circle, LensClass, LensGeometry, chain_layout, classify, lens_params
from .underground import (
    Label,
    UndergroundSymbol,
    factorize,
    lens_from_underground,
    seed_to_symbol,
    symbol_to_seed,
    underground_extend,
)
from .analysis import binet_eval, binet_form, char_constant, reciprocal_sum

__version__ = "0.1.0"

__all__ = [
    "Circle",
    "Label",
    "LensClass",
    "LensConstants",
    "LensError",
    "LensGeometry",
    "QuadExt",
    "Rational",
    "Seed",
    "SequenceWindow",
    "UndergroundSymbol",
    "binet_eval",
    "binet_form",
    "chain_layout",
    "char_constant",
    "classify",
    "constants_from_seed",
    "extend",
    "factorize",
    "lens_from_underground",
    "lens_params",
    "reciprocal_sum",
    "seed_to_symbol",
    "symbol_to_seed",
    "underground_extend",
]

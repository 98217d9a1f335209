"""Exact Reshetikhin-Turaev invariants of lens spaces for G2, F4 and E8."""

from __future__ import annotations

__version__ = "0.1.0"

from .chains import LensSpec, hj_expand, signature_count
from .cyclo import CycNum, RootOfUnitySpec, embed, galois, inv, q_power
from .errors import (
    CapacityError,
    DegenerateOrderError,
    DimensionError,
    GroupTooLargeError,
    InvalidAutomorphismError,
    InvalidInputError,
    InvalidOrderError,
    OrderMismatchError,
    RTLensError,
)
from .gauss import QuadGaussSpec, g_k, gauss_brute, gauss_closed
from .invariant import chain_invariant, lens_invariant, z_closed
from .lattice import alcove, validate_order
from .rootsys import LieType, build_root_datum, pairing, weyl_group

__all__ = [
    "CapacityError", "CycNum", "DegenerateOrderError", "DimensionError", "GroupTooLargeError",
    "InvalidAutomorphismError", "InvalidInputError", "InvalidOrderError", "LensSpec", "LieType",
    "OrderMismatchError", "QuadGaussSpec", "RTLensError", "RootOfUnitySpec", "alcove",
    "build_root_datum", "chain_invariant", "embed", "g_k", "galois", "gauss_brute", "gauss_closed",
    "hj_expand", "inv", "lens_invariant", "pairing", "q_power", "signature_count", "validate_order",
    "weyl_group", "z_closed",
]

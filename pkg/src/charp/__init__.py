"""Exact characters of irreducible modular representations of simple groups."""

from .characters import (CharacterSystem, E_infinity, E_k, irreducible_character, p_coeff,
                         q_matrix, sl2_oracle)
from .group_ring import GroupRingElement, freudenthal_character, twist, weyl_character
from .root_datum import CartanType, RootDatum, build_root_datum
from .verify import verify

__all__ = [
    "CartanType", "CharacterSystem", "E_infinity", "E_k", "GroupRingElement", "RootDatum",
    "build_root_datum", "freudenthal_character", "irreducible_character", "p_coeff", "q_matrix",
    "sl2_oracle", "twist", "verify", "weyl_character",
]

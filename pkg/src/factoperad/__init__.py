"""Factorized local systems on configuration spaces of the plane, in exact arithmetic."""

from .braids import ColoredBraid, DegenerateMotion, cable, straighten
from .cat import BraidedObject, check_yang_baxter, eval_braid, rho
from .cubes import LinearEmbedding, Square, compose, is_vertical, vertical_order
from .factsys import (FactorizedSystem, SystemMorphism, extend_vertical_braided, from_object, lift_morphism, mu,
                      rho1, truncate, verify_factorization, verify_morphism)
from .limits import ProjectiveSystem, assemble, morphism_of_towers, tower_of, verify_tower
from .linalg import QQ, Field, Matrix

__version__ = "0.1.0"

__all__ = [
    "BraidedObject", "ColoredBraid", "DegenerateMotion", "FactorizedSystem", "Field", "LinearEmbedding", "Matrix",
    "ProjectiveSystem", "QQ", "Square", "SystemMorphism", "assemble", "cable", "check_yang_baxter", "compose",
    "eval_braid", "extend_vertical_braided", "from_object", "is_vertical", "lift_morphism", "morphism_of_towers", "mu",
    "rho", "rho1", "straighten", "tower_of", "truncate", "verify_factorization", "verify_morphism", "verify_tower",
    "vertical_order",
]

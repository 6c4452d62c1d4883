"""Piecewise bijections on finite sets and on unions of progressions."""

from .bsb import Ancestry, BijectionReport, Parity, bsb_combine, classify, verify_bijection
from .intsets import IntSet, Progression
from .motions import Affine, Permutation, RigidMotion
from .piecewise import (
    ParadoxCheck,
    ParadoxWitness,
    Piece,
    PiecewiseMap,
    agree_on,
    check_paradoxical,
    compose_piecewise,
    identity_map,
    invert_piecewise,
    make_piecewise,
    restrict_piecewise,
    same_set,
    scale_conjugate,
    transfer_paradox,
)
from .regions import DEFAULT_WINDOW, FiniteSet, Filter, IntRegion, as_region

__all__ = [
    "Affine", "Ancestry", "BijectionReport", "DEFAULT_WINDOW", "Filter", "FiniteSet", "IntRegion",
    "IntSet", "ParadoxCheck", "ParadoxWitness", "Parity", "Permutation", "Piece", "PiecewiseMap",
    "Progression", "RigidMotion", "agree_on", "as_region", "bsb_combine", "check_paradoxical",
    "classify", "compose_piecewise", "identity_map", "invert_piecewise", "make_piecewise",
    "restrict_piecewise", "same_set", "scale_conjugate", "transfer_paradox", "verify_bijection",
]

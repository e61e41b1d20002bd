"""Exact computer algebra for differential operators and their modules:
Weyl/Ore normal forms, Groebner-based ideal arithmetic, Koszul complexes,
injective-hull multiplicities, and graded local cohomology."""

from .poly import GREVLEX, LEX, SparsePoly, TermOrder
from .groebner import Ideal, saturation, standard_monomials
from .ore import DiffOp, LocalizedFraction, OreRing, in_left_ideal_si, verify_star
from .koszul import (
    GradedModuleModel,
    KoszulComplex,
    ext1_koszul,
    is_regular_sequence,
    koszul_matrix,
    prime_avoidance_sequence,
)
from .artin import ArtinAlgebra, LocalFactor, decompose_local
from .hulls import (
    ArtinModule,
    CurveExtension,
    TruncatedHull,
    essential_hull,
    socle_growth_oracle,
    hull_multiplicity,
)
from .localcoh import CechComplex, cech_cohomology_piece, mv_dimension_check

__version__ = "0.1.0"

__all__ = [
    "ArtinAlgebra",
    "ArtinModule",
    "CechComplex",
    "CurveExtension",
    "DiffOp",
    "GradedModuleModel",
    "GREVLEX",
    "Ideal",
    "KoszulComplex",
    "LEX",
    "LocalFactor",
    "LocalizedFraction",
    "OreRing",
    "SparsePoly",
    "TermOrder",
    "TruncatedHull",
    "cech_cohomology_piece",
    "decompose_local",
    "essential_hull",
    "ext1_koszul",
    "in_left_ideal_si",
    "is_regular_sequence",
    "koszul_matrix",
    "mv_dimension_check",
    "prime_avoidance_sequence",
    "saturation",
    "socle_growth_oracle",
    "standard_monomials",
    "hull_multiplicity",
    "verify_star",
]

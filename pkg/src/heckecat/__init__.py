"""Hecke algebras of Coxeter systems with weights in {0, 1}, the reflection
subgroup generated by the weight-1 reflections, and characters of
Bott-Samelson type bimodules."""

from .coxeter import CoxeterSystem, Element, IDENTITY
from .dyer import SubgroupData, build_subgroup, compute_sprime
from .errors import HeckeCatError
from .exactmath import LaurentPoly, QuadScalar
from .groupspec import GroupSpec, load_spec, preset
from .hecke import CanonicalCache, HeckeAlgebra, HeckeElt, rho_embed
from .soergel import bs_character, decompose_bs, sweep_normalize

__all__ = [
    "CoxeterSystem", "Element", "IDENTITY", "SubgroupData", "build_subgroup", "compute_sprime",
    "HeckeCatError", "LaurentPoly", "QuadScalar", "GroupSpec", "load_spec", "preset",
    "CanonicalCache", "HeckeAlgebra", "HeckeElt", "rho_embed", "bs_character", "decompose_bs",
    "sweep_normalize",
]
__version__ = "0.1.0"

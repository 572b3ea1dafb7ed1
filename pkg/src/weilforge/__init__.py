"""Exact computations with Weil algebras, near-points and jets.

Core entry points are re-exported here; see the submodules for the rest.
"""
from .algebra import (
    AlgebraElement,
    AlgebraMorphism,
    WeilAlgebra,
    algebra_from_table,
    ground_field,
    quotient_algebra,
    tensor_product,
    truncated_algebra,
)
from .criteria import aut_affine, jet_affine, regular_affine, scan_truncated, weil_affine
from .derivations import ModuleSpec, derivation_space, induced_derivation_map, left_exactness_test
from .ideals import Ideal, annihilator, ideal_span, maximal_power
from .points import jet_add, jet_of, jet_project, make_near_point, tangent_dimensions

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "AlgebraMorphism", "WeilAlgebra", "algebra_from_table", "ground_field",
    "quotient_algebra", "tensor_product", "truncated_algebra", "aut_affine", "jet_affine",
    "regular_affine", "scan_truncated", "weil_affine", "ModuleSpec", "derivation_space",
    "induced_derivation_map", "left_exactness_test", "Ideal", "annihilator", "ideal_span",
    "maximal_power", "jet_add", "jet_of", "jet_project", "make_near_point", "tangent_dimensions",
]

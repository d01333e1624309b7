"""Finite medial quandles as sums of affine meshes."""

from .abelian import AbelianGroup, Homomorphism, canonicalize, groups_of_order
from .mesh import AffineMesh, canonical_mesh, homologous, make_mesh, sum_quandle, validate_mesh
from .quandle import Quandle, affine, brute_force_iso, cyclic_affine, is_medial, projection

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "Homomorphism", "canonicalize", "groups_of_order",
    "AffineMesh", "canonical_mesh", "homologous", "make_mesh", "sum_quandle", "validate_mesh",
    "Quandle", "affine", "brute_force_iso", "cyclic_affine", "is_medial", "projection",
]

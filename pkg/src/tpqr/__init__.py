"""Exact algebra, lattice and K-theory checks for the mirror of the T_{p,q,r} Milnor fibre."""

__version__ = "0.1.0"

from .lattice import IntMatrix, smith_normal_form, cokernel_invariants, is_upper_unitriangular
from .picard import named_classes, chern_character, euler_pairing, twist_matrix, riemann_roch_matrix
from .quiver import build_algebra, verify_associativity, euler_matrix
from .fukaya import build_directed_algebra, expected_dim_table, coxeter_matrix
from .sheafalg import build_sheaf_algebra, fiber_sheaf_dims
from .hms import check_phi_A, euler_crosscheck, serre_vs_twist, k0_localization, mutate
from .cusp import CycleSeq, triangle_cycle, dual_cycle, charge

__all__ = [
    "IntMatrix", "smith_normal_form", "cokernel_invariants", "is_upper_unitriangular",
    "named_classes", "chern_character", "euler_pairing", "twist_matrix", "riemann_roch_matrix",
    "build_algebra", "verify_associativity", "euler_matrix",
    "build_directed_algebra", "expected_dim_table", "coxeter_matrix",
    "build_sheaf_algebra", "fiber_sheaf_dims",
    "check_phi_A", "euler_crosscheck", "serre_vs_twist", "k0_localization", "mutate",
    "CycleSeq", "triangle_cycle", "dual_cycle", "charge",
]

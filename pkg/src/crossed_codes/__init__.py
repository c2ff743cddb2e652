"""Crossed products over finite fields as ambient spaces for codes.

Rings F_{q^r} * G are built from cocycle data.  Their isometry classes are
read off from H^2 and its automorphism orbits, which are computed by brute
force.
"""

from .classify import (
    Bicharacter,
    CyclicParams,
    ElabClass,
    alpha_matrix,
    classify_cyclic,
    congruence_classes,
    count_elab_complex,
    count_elab_finite_field,
    is_semisimple_cyclic,
    normal_form,
    wedderburn,
)
from .cocycles import (
    CocycleTable,
    CoeffModule,
    beta_of,
    coboundary,
    cohomologous,
    pullback,
    standard_cocycle,
    validate,
)
from .cohomology import CohGroup, compute_h2, h2_by_enumeration, orbits
from .crossring import (
    Code,
    CrossedRing,
    enumerate_codes,
    find_isometry,
    is_semisimple,
    multiply,
    skew_poly_view,
    verify_isometry,
)
from .errors import CrossedCodesError
from .ffield import FieldElem, FieldTower, FrobAction, frobenius, make_tower, norm_map
from .groups import CompatAut, GroupSpec, aut_eta, aut_eta_cyclic

__all__ = [
    "Bicharacter", "CyclicParams", "ElabClass", "alpha_matrix", "classify_cyclic",
    "congruence_classes", "count_elab_complex", "count_elab_finite_field",
    "is_semisimple_cyclic", "normal_form", "wedderburn",
    "CocycleTable", "CoeffModule", "beta_of", "coboundary", "cohomologous", "pullback",
    "standard_cocycle", "validate",
    "CohGroup", "compute_h2", "h2_by_enumeration", "orbits",
    "Code", "CrossedRing", "enumerate_codes", "find_isometry", "is_semisimple", "multiply",
    "skew_poly_view", "verify_isometry",
    "CrossedCodesError",
    "FieldElem", "FieldTower", "FrobAction", "frobenius", "make_tower", "norm_map",
    "CompatAut", "GroupSpec", "aut_eta", "aut_eta_cyclic",
]

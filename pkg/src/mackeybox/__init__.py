"""Finitely presented Mackey functors for a cyclic group of prime order.

The package computes box products of two-tier (Lewis diagram) presentations,
derived fixed-point and quotient constructions, and the classification of
invertible objects under the box product.
"""

from .intlin import (
    IntMatrix,
    SmithDecomposition,
    smith_normal_form,
    hermite_normal_form,
    solve_linear,
    kernel_basis,
)
from .abgroup import FpAbGroup, AbHom, GroupElement, invariant_factors, describe_group
from .mackey import (
    MackeyFunctor,
    MackeyMorphism,
    GSet,
    gset_product,
    check_axioms,
    verify_morphism,
    is_mackey_isomorphism,
    unit_isomorphism,
    box_product,
    burnside,
    twisted_burnside,
    constant_z,
    zero_functor,
    fixed_point_functor,
    orbit_functor,
    permutation_functor,
    direct_sum_functors,
)
from .separation import (
    ClassificationResult,
    IsoSearchResult,
    IsotropySequence,
    classify_invertible,
    invert,
    gamma_functor,
    phi_functor,
    isotropy_sequence,
    is_geometric,
    try_find_isomorphism,
    twisted_iso_criterion,
    twisted_isomorphism,
)
from .document import (
    DocumentError,
    MackeyDocument,
    parse_document,
    parse_functor,
    render_machine,
    render_text,
    render_lewis,
)

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "smith_normal_form",
    "hermite_normal_form",
    "solve_linear",
    "kernel_basis",
    "FpAbGroup",
    "AbHom",
    "GroupElement",
    "invariant_factors",
    "describe_group",
    "MackeyFunctor",
    "MackeyMorphism",
    "GSet",
    "gset_product",
    "check_axioms",
    "verify_morphism",
    "is_mackey_isomorphism",
    "unit_isomorphism",
    "box_product",
    "burnside",
    "twisted_burnside",
    "constant_z",
    "zero_functor",
    "fixed_point_functor",
    "orbit_functor",
    "permutation_functor",
    "direct_sum_functors",
    "ClassificationResult",
    "IsoSearchResult",
    "IsotropySequence",
    "classify_invertible",
    "invert",
    "gamma_functor",
    "phi_functor",
    "isotropy_sequence",
    "is_geometric",
    "try_find_isomorphism",
    "twisted_iso_criterion",
    "twisted_isomorphism",
    "DocumentError",
    "MackeyDocument",
    "parse_document",
    "parse_functor",
    "render_machine",
    "render_text",
    "render_lewis",
]

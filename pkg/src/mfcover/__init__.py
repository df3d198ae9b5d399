"""Exact symbolic kernel for multiplicity-free coverings of graded manifolds."""

from .algebra import AlgebraSpec, FiberMonomial, Polynomial, weight_monomials
from .atlas import (
    Atlas,
    CoveredAtlas,
    check_cocycle,
    check_symmetric,
    cover_atlas,
    descend,
    lift_atlas_morphism,
    roundtrip,
)
from .covering import (
    CoveringData,
    build_covering,
    canonical_covering,
    double_vb_fixture,
    enumerate_lifts_bruteforce,
    lift,
    lift_graded_morphism,
    quotient_category_lift,
    verify_no_vb_covering,
    verify_universal,
)
from .invariants import (
    decompose_invariant,
    invariant_dimension,
    is_invariant,
    is_primitive,
    orbit_vanishes,
    primitive_monomials,
    primitivize,
    push_down,
    symmetrize,
)
from .morphism import GradedMorphism, check_weights, compose, morphisms_equal
from .weights import (
    EVEN,
    ODD,
    LambdaDecomposition,
    Permutation,
    QuotientLabel,
    Weight,
    WeightSystem,
    act,
    chi,
    deck_group,
    is_sn_invariant,
    lambda_decompositions,
    length,
    parity,
    quotient_label,
)

__version__ = "0.1.0"

"""Exact classification of pairs of alternating bilinear forms over
characteristic-2 finite fields, with the attached nilpotent 2-groups."""

from .blocks import (
    AlternatingPair,
    BlockId,
    build_finite,
    build_infinity,
    build_plus,
    companion,
    direct_sum,
    residue_oracle,
)
from .field import FieldElement, FieldSpec, field_add, field_enumerate, field_inv, field_mul
from .linalg import Mat, PolyMat, congruence, smith_form
from .pencil import (
    ClassFunction,
    assemble,
    congruent,
    decompose,
    kronecker_invariants,
    pfaffian_form,
    validate,
)
from .polyring import (
    EPS,
    BinaryForm,
    Poly,
    dehomogenize,
    factor,
    homogenize,
    moebius_act,
    reverse_star,
    series_inverse_trunc,
)
from .weakeq import GL2Element, act_on_class, canonical_rep, gl2_enumerate, weakly_equivalent
from .chernikov import (
    FiniteQuotient,
    GroupPresentation,
    brute_force_isomorphic,
    build_quotient,
    iso_from_witness,
    presentation_from_class,
    presentation_from_tuple,
)

__version__ = "0.1.0"

__all__ = [
    "AlternatingPair",
    "BinaryForm",
    "BlockId",
    "ClassFunction",
    "EPS",
    "FieldElement",
    "FieldSpec",
    "FiniteQuotient",
    "GL2Element",
    "GroupPresentation",
    "Mat",
    "Poly",
    "PolyMat",
    "act_on_class",
    "assemble",
    "brute_force_isomorphic",
    "build_finite",
    "build_infinity",
    "build_plus",
    "build_quotient",
    "canonical_rep",
    "companion",
    "congruence",
    "congruent",
    "decompose",
    "dehomogenize",
    "direct_sum",
    "factor",
    "field_add",
    "field_enumerate",
    "field_inv",
    "field_mul",
    "gl2_enumerate",
    "homogenize",
    "iso_from_witness",
    "kronecker_invariants",
    "moebius_act",
    "pfaffian_form",
    "presentation_from_class",
    "presentation_from_tuple",
    "residue_oracle",
    "reverse_star",
    "series_inverse_trunc",
    "smith_form",
    "validate",
    "weakly_equivalent",
]

"""Groupoid graded algebras and their smash products by G-sets."""

from .errors import GsmError
from .groupoid import FiniteGroupoid, pair_groupoid, cyclic_group, trivial_groupoid, whole, identities
from .gset import GSetAction, BiSet, validate_action, validate_biset, coset_biset
from .algebra import StructureAlgebra, GradedAlgebra, AlgebraMap, graded_algebra, groupoid_algebra
from .smash import SmashAlgebra, smash_product, eta_embedding, induced_morphism
from .skew import gamma_action, skew_groupoid_ring, invariant_subalgebra, galois_check
from .duality import verify_duality, coset_duality, partial_bijection_duality, weak_hopf_smash
from .morita import build_morita_context, strictness_report, roundtrip_check
from .dsl import parse_spec, print_spec

__version__ = "0.1.0"

__all__ = [
    "GsmError", "FiniteGroupoid", "pair_groupoid", "cyclic_group", "trivial_groupoid", "whole", "identities",
    "GSetAction", "BiSet", "validate_action", "validate_biset", "coset_biset",
    "StructureAlgebra", "GradedAlgebra", "AlgebraMap", "graded_algebra", "groupoid_algebra",
    "SmashAlgebra", "smash_product", "eta_embedding", "induced_morphism",
    "gamma_action", "skew_groupoid_ring", "invariant_subalgebra", "galois_check",
    "verify_duality", "coset_duality", "partial_bijection_duality", "weak_hopf_smash",
    "build_morita_context", "strictness_report", "roundtrip_check", "parse_spec", "print_spec",
]

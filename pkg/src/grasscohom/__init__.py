"""Exact cohomology rings of complex Grassmannians.

Integer and rational computations only: graded ring tables with certified
Hilbert series and integral freeness, restriction homomorphisms, and a
solver that decides rigidity of graded ring maps between two rings by
exact polynomial-system solving, emitting replayable certificates.
"""

from .cache import CacheIntegrityError, DiskRingCache, canonical_json
from .groebner import BudgetExceeded, Budgets
from .maps import (
    HOM_SCHEMA,
    GradedHom,
    WellDefinedReport,
    apply_hom,
    bijective_through_degree,
    check_well_defined,
    compose,
    compose_alpha_beta,
    hom_from_dict,
    hom_to_dict,
    identity_hom,
    rank_profile,
    restriction_i,
    restriction_j,
    surjective_every_degree,
    zero_hom,
)
from .polynomials import Polynomial, parse_polynomial
from .rings import (
    TABLE_SCHEMA,
    FreenessReport,
    RingCache,
    RingElement,
    RingSpec,
    RingTable,
    box_partition_count,
    build_ring,
    freeness_check,
    gaussian_binomial,
    get_table,
    grassmann_relations,
    hilbert_check,
    nilpotency_degree,
    pairing_is_unimodular,
    pairing_matrix,
    rectangle_tableau_count,
    table_from_dict,
    table_to_dict,
    top_identity,
)
from .solver import (
    CERT_SCHEMA,
    ConjectureReport,
    HomSystem,
    Inconclusive,
    OnlyTrivial,
    RigidityCertificate,
    WitnessFound,
    admissible_tuples,
    build_hom_system,
    c1_vanishing_shortcut,
    certify_rigidity,
    conjecture_scan,
    endo_reduction,
    hypothesis_checklist,
    replay_certificate,
    solve_system,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Budgets",
    "CERT_SCHEMA",
    "CacheIntegrityError",
    "ConjectureReport",
    "DiskRingCache",
    "FreenessReport",
    "GradedHom",
    "HOM_SCHEMA",
    "HomSystem",
    "Inconclusive",
    "OnlyTrivial",
    "Polynomial",
    "RigidityCertificate",
    "RingCache",
    "RingElement",
    "RingSpec",
    "RingTable",
    "TABLE_SCHEMA",
    "WellDefinedReport",
    "WitnessFound",
    "admissible_tuples",
    "apply_hom",
    "bijective_through_degree",
    "box_partition_count",
    "build_hom_system",
    "build_ring",
    "c1_vanishing_shortcut",
    "canonical_json",
    "certify_rigidity",
    "check_well_defined",
    "compose",
    "compose_alpha_beta",
    "conjecture_scan",
    "endo_reduction",
    "freeness_check",
    "gaussian_binomial",
    "get_table",
    "grassmann_relations",
    "hilbert_check",
    "hom_from_dict",
    "hom_to_dict",
    "hypothesis_checklist",
    "identity_hom",
    "nilpotency_degree",
    "pairing_is_unimodular",
    "pairing_matrix",
    "parse_polynomial",
    "rank_profile",
    "rectangle_tableau_count",
    "replay_certificate",
    "restriction_i",
    "restriction_j",
    "solve_system",
    "surjective_every_degree",
    "table_from_dict",
    "table_to_dict",
    "top_identity",
    "zero_hom",
]

"""
Comparison functors between the module categories of the four models.
"""

from torus_models.functors.base import FunctorBox, trace
from torus_models.functors.euler_adapted import (
    PiStructure,
    canonical_pi_structure,
    pi_shriek_e,
    pi_shriek_e_pairs,
    pi_shriek_e_pairs_ring,
    pi_shriek_e_ring,
    pi_shriek_e_rings,
)
from torus_models.functors.extended import Extended, gamma_d_rank1, gamma_v, lift_through_counit
from torus_models.functors.flags_pairs import functor_f, functor_p
from torus_models.functors.multiplicity import FqStructure, e_q, fq_structure, q_shriek_d
from torus_models.functors.pushforward import (
    apply_e,
    pi_shriek,
    pi_shriek_ring,
    pi_star,
    pi_star_ring,
)
from torus_models.functors.rank1 import (
    AeFamily,
    Rank1AObject,
    Rank1CObject,
    rank1_e,
    rank1_gamma_qd,
    rank1_model_objects,
    strictness_witness,
)

__all__ = [
    "AeFamily",
    "Extended",
    "FqStructure",
    "FunctorBox",
    "PiStructure",
    "Rank1AObject",
    "Rank1CObject",
    "apply_e",
    "canonical_pi_structure",
    "e_q",
    "fq_structure",
    "functor_f",
    "functor_p",
    "gamma_d_rank1",
    "gamma_v",
    "lift_through_counit",
    "pi_shriek",
    "pi_shriek_e",
    "pi_shriek_e_pairs",
    "pi_shriek_e_pairs_ring",
    "pi_shriek_e_ring",
    "pi_shriek_e_rings",
    "pi_shriek_ring",
    "pi_star",
    "pi_star_ring",
    "q_shriek_d",
    "rank1_e",
    "rank1_gamma_qd",
    "rank1_model_objects",
    "strictness_witness",
    "trace",
]

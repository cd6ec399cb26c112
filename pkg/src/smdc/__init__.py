"""Weakly secure symmetric multilevel diversity coding over prime fields.

Builds linear SMDC codes (superposition, pairwise, group pairwise), checks
them exhaustively for reconstruction and weak security, and computes the
associated rate regions with exact rational arithmetic.
"""
from .codec import (
    CodeSpec,
    ShareSet,
    SmdcCode,
    build_code,
    build_group_pairwise,
    build_pairwise_a,
    build_pairwise_b,
    build_superposition,
    decode,
    encode,
)
from .errors import *  # noqa: F401,F403
from .field import FieldElement, Matrix, field_ops, rank, solve_linear
from .mds import MdsGenerator, MdsParams, build_generator, mds_decode, mds_encode, verify_full_rank_condition
from .ramp import RampScheme, make_ramp_scheme, ramp_reconstruct, ramp_share
from .region import (
    RateTuple,
    check_superposition_optimal,
    compute_eta_star,
    ds_sum_rate,
    f_alpha,
    f_alpha_lp,
    g_eta,
    g_star,
    gp_region_contains,
    star_region_contains,
    sup_sum_rate,
    supporting_rate_tuple,
)
from .verify import check_mds_lemmas, check_reconstruction, check_security, entropy, enumerate_joint, verify_code

__version__ = "0.1.0"

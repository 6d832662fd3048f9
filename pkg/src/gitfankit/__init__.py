"""Exact-arithmetic combinatorics of point configurations up to translation:
GIT fans of the Grassmannian cone Gr(2, n+1), semilattice blow-ups, stellar
subdivisions and the tropical Delta-reduction, with machine verification."""

from .exact_linalg import ExactScalar, QMatrix, QVector, gale_dual, kernel_basis, rank, solve
from .grassmann import (
    TwoBlock,
    WeightData,
    YSet,
    brute_force_supports,
    delta_contains,
    delta_meets_relint,
    enumerate_y_sets,
    is_y_set,
    pairs,
    plucker_quadruples,
    trop_contains,
    two_block_hyperplane,
    wedge_support,
    weights,
    y_set_witness,
)
from .gitfan import (
    CenterIdeal,
    EnvelopeSets,
    GitChamber,
    center_ideal,
    center_pullback,
    chamber,
    delta_reduction,
    envelope_sets,
    git_fan,
    git_fan_star,
    gkz_cone,
    lambda0,
    lambda1,
    nu_order,
    nu_ray,
    omega,
    omega_star,
    sigma_fan,
    sigma_r,
    verify_delta_subfan,
    verify_nu_equality,
    verify_ray_classification,
    verify_star_subfan,
    verify_walls,
    wall_fan,
)
from .polyhedral import (
    Cone,
    Fan,
    FanAxiomViolation,
    dual_description,
    fan_from_maximal,
    is_subfan,
    iterated_stellar,
    stellar_subdivide,
)
from .semilattice import (
    BlowPair,
    FiniteSemilattice,
    blow_up,
    face_poset,
    harmonious_closure,
    is_building_set,
    is_harmonious,
    is_nested,
    iterated_blow_up,
    join_exists_in_blowup,
    poset_isomorphic,
    verify_blowup_join_criterion,
    verify_fk_bridge,
)

__version__ = "0.1.0"

"""Exact verification of the group-ring identities behind Hecke operators
on period polynomials, with indefinite theta series cross-checks."""

from .matrices import IDENT, Mat, S, T, T_INV, U, U2
from .ring import (
    ONE,
    ONE_MINUS_S,
    ONE_MINUS_T,
    ONE_MINUS_TINV,
    ONE_PLUS_S,
    RingElt,
    T_MINUS_TINV,
    U_ORBIT_SUM,
    aug,
    signed_count,
    star,
)
from .membership import (
    ModuleSpec,
    ResourceLimit,
    Status,
    Verdict,
    VerificationError,
    in_I,
    in_I_adj,
    in_I_plus_I_adj,
    in_J,
    in_one_minus_S_left,
    in_one_minus_S_right,
    in_one_minus_T_left,
    in_one_minus_Tinv_right,
    in_one_plus_S_left,
    in_one_plus_U_left,
    j_adj_spec,
    j_spec,
    jj_spec,
    left_t_orbit_rep,
    right_t_orbit_rep,
    search_membership,
    support_closure,
)
from .hecke import (
    DepthExhausted,
    HeckePair,
    check_obstruction,
    check_tilde_equivariance,
    coset_rep_sum,
    coset_reps,
    merel_adjoint_candidate,
    pairing_obstruction,
    solve_tilde,
    t_upper,
    verify_hecke_relation,
)
from .geometry import (
    MatSet,
    OrbitClass,
    build_set,
    congruence_rhs,
    orbit_classes,
    signed_count_set,
    star_sum,
    swap_family,
    verify_congruence,
    weighted_boundary_count,
)
from .theta import (
    DivisorTables,
    QSeries,
    check_identity,
    divisor_tables,
    lhs_identity1,
    lhs_identity2,
    prime_solution_count,
    rhs_identity1,
    rhs_identity2,
)
from .reports import VerificationReport

__all__ = [name for name in dir() if not name.startswith("_")]

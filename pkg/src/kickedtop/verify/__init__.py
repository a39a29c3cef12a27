"""Numerical verification of the kicked top's operator identities."""

from kickedtop.verify.identities import (
    CHECKS,
    IdentityCheck,
    check_3pij_and_5pij2,
    check_gaussian_sum_pij2,
    check_half_period_rotation,
    check_kappa_shift_symmetry,
    check_pi_twist_cases,
    check_twist_jpi,
    check_U4_U6,
    run_checks,
)

__all__ = [
    "CHECKS",
    "IdentityCheck",
    "check_3pij_and_5pij2",
    "check_U4_U6",
    "check_gaussian_sum_pij2",
    "check_half_period_rotation",
    "check_kappa_shift_symmetry",
    "check_pi_twist_cases",
    "check_twist_jpi",
    "run_checks",
]

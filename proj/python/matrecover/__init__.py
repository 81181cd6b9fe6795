"""Recover matrices from matrix-vector products."""

from ._matrecover import (
    BandedMatrix,
    BandRecovery,
    CsSolution,
    Operator,
    RecoveryReport,
    SensingOperator,
    bamram_error_estimate,
    bamram_recover,
    dense_matrix_function,
    hard_threshold,
    kron_exp_recover,
    kron_sum_recover,
    matfun_operator,
    niht_solve,
    probe_apply,
    run_experiment,
    s0_for_accuracy,
    spamram_default_s,
    spamram_recover,
)

__all__ = [
    "BandedMatrix",
    "BandRecovery",
    "CsSolution",
    "Operator",
    "RecoveryReport",
    "SensingOperator",
    "bamram_error_estimate",
    "bamram_recover",
    "dense_matrix_function",
    "hard_threshold",
    "kron_exp_recover",
    "kron_sum_recover",
    "matfun_operator",
    "niht_solve",
    "probe_apply",
    "run_experiment",
    "s0_for_accuracy",
    "spamram_default_s",
    "spamram_recover",
]

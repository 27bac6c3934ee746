"""Small-deviation toolkit for symmetric alpha-stable processes.

Thin bindings over the C++ core. Results are reproducible per seed and do not
depend on the worker count.
"""

from ._core import (
    AlphaStableParams,
    Estimate,
    ShiftFunction,
    SmallBallQuery,
    TiltSpec,
    c_alpha_symbol,
    deterministic_exponent,
    deterministic_exponent_quadrature,
    estimate_crude,
    estimate_is,
    estimate_K_alpha_spectral,
    integral_test,
    lemma2_ratios,
    prob_no_big_jumps,
    psi,
    run_cli,
    sample_jump_path,
    sample_stable_path,
    sample_tilted_path,
    selftest,
    series_C1,
    series_C_alpha,
    sup_distance,
    validity_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]

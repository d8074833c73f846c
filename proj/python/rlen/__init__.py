"""Relative-entropy complexity scores and change-point detection for
intermittent time series, backed by the C++ core."""

from _rlen import (  # noqa: F401
    __version__,
    apen,
    ar2_rlen,
    arp_rlen,
    base_kernel_eval,
    bic_score,
    build_case_matrix,
    default_entropy_grid,
    default_penalty,
    dp_detect_k,
    entropy_profile,
    extract_min_variance_window,
    gen_series,
    jackknife_eval,
    kernel_constants,
    kernel_moment,
    logistic_transform,
    matched_noise_variance,
    pelt_detect,
    rlen_estimate,
    select_bandwidth,
    select_lag,
    theory_constants,
    welch_t_test,
    yule_walker_autocorr,
    ArgumentError,
    DataError,
    DegeneracyError,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Smoothed min-entropy toolkit.

Thin python surface over the compiled core: the quadratic-program smoothing
solver and its certificates, hypothesis-testing and information-spectrum
quantities, classical smoothed entropies, and the compression bound curves.
"""

from minent._core import (  # noqa: F401
    Certificate,
    CurveRow,
    Expansion,
    QpSolution,
    SmoothMode,
    Spectrum,
    TypeClass,
    __version__,
    build_certificate,
    compression_curves,
    curves_csv,
    direct_achievability,
    entropy,
    eta_diagnostic,
    expand,
    hmin_purified_classical,
    hmin_trace_lp,
    hmin_trace_relaxed,
    iid_classes,
    imax_global,
    imax_partial,
    imax_partial_witness_residual,
    log_sum_exp,
    normal_cdf,
    normal_quantile,
    qp_oracle,
    smoothing_vector,
    solve_qp,
    solve_qp_iid,
    variance,
    verify_suite,
    verify_suite_names,
)


def hmin_partial(probs, eps, n=1):
    """Partially smoothed conditional min-entropy of a pure state with the
    given Schmidt coefficient distribution; returns -log2 f."""
    sol = solve_qp_iid(list(probs), n, eps) if n > 1 else solve_qp(list(probs), eps)
    return -sol.log2_f

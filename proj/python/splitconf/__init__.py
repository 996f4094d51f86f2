"""Split-sample confidence sets for M-estimation.

Thin Python surface over the C++ core: loss models, initial estimators,
the naive / universal-inference / empirical-Bernstein / studentized /
bias-corrected membership tests, set geometry, and the Monte Carlo
coverage and width engines.
"""

from ._core import (  # noqa: F401
    CapabilityError,
    ConfigError,
    CoverageConfig,
    CoverageReport,
    DgpKind,
    DgpSpec,
    DiffStats,
    IntervalHull,
    LossModel,
    MembershipResult,
    MethodCoverage,
    MethodKind,
    MethodSpec,
    RngStream,
    SingularMatrixError,
    SplitIndices,
    WidthCell,
    WidthConfig,
    WidthReport,
    clt_threshold,
    contains,
    default_loss_model,
    default_search_radius,
    eb_threshold,
    gaussian_regression_loglik,
    generate,
    initial_estimator,
    interval_hull_1d,
    loss_diff_stats,
    make_bias_corrected,
    make_empirical_bernstein,
    make_naive,
    make_stream,
    make_studentized,
    make_universal,
    manski_loss,
    max_score_2d,
    mean_loss,
    merge_reports,
    normal_cdf,
    normal_quantile,
    ols_estimator,
    pinball_loss,
    preset_names,
    ray_widths,
    regression_loss,
    run_coverage,
    run_coverage_range,
    run_preset,
    run_width,
    sample_mean_estimator,
    sample_mean_var,
    sample_quantile,
    split,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

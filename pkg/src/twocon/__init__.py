"""Asymptotic enumeration of 2-connected, 2-edge-connected, and
minimum-degree-2 labelled (n,m)-graphs, with exact brute-force oracles and
Monte Carlo checks of the pairing and kernel-configuration models."""

from .errors import DomainError, LimitError, RetryExhaustedError, TwoconError
from .numeric import (
    LogReal,
    ModelParams,
    TruncatedPoisson,
    derive_params,
    eta_bar_of,
    eta_of,
    expm1m,
    g,
    log_binomial,
    log_double_factorial,
    log_expm1m,
    p_c_of,
    solve_lambda,
    trunc_poisson_pmf,
)
from .graphs import (
    DegreeSequence,
    Multigraph,
    format_edge_list,
    is_simple,
    is_two_connected,
    is_two_edge_connected,
    kernel,
    parse_edge_list,
    pre_kernel,
    two_core,
)
from .formulas import (
    CountEstimate,
    auto_regime,
    evaluate,
    log_count_all_graphs,
    log_count_case_a,
    log_count_case_b,
    log_count_case_c,
    log_count_degseq,
    log_count_main,
    log_count_mindeg2,
    log_count_two_edge,
    log_count_wright,
)
from .oracle import (
    exact_U,
    exact_Uprime,
    exact_count,
    exact_count_degseq,
    exact_prob_2cs,
)
from .models import (
    KernelConfig,
    TypicalityReport,
    classify_typical,
    measure_acceptance,
    rng_for,
    sample_degrees,
    sample_degrees_conditioned,
    sample_kernel_config,
    sample_pairing,
)
from .mc import (
    Estimate,
    ShapeStats,
    XYZStats,
    XYZSummary,
    collect_xyz,
    estimate_event,
    kernel_shape_stats,
    lemma9_sum,
)

__version__ = "0.1.0"

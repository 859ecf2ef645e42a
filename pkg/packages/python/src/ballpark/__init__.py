"""ballpark - Lattice points in balls, counted and bounded.

Counts the lattice points of a full-rank lattice A Z^N inside a ball, and
checks the count against an explicit error bound built from Bessel
functions.

Modules (cool names):
- ripples: Bessel functions, bracket identity, tail integrals
- fence: Ball constants and the u_nu error bound
- scaffold: Matrix input, Gram matrix, symmetric square root
- headcount: Exact weighted counting, shortest vector
- crucible: Theorem trials, sweeps, Poisson checks
- knobs: Settings and sweep configuration
- hideaway: Data directory management
- blueprint: JSON schema validation
- mishaps: Exception hierarchy
- cli: Command-line front end

Usage:
    from ballpark import scaffold, headcount, fence, crucible
"""

from .mishaps import (
    BallparkError,
    DomainError,
    UnsupportedOrderError,
    PositivityError,
    ConvergenceError,
    RankDeficiencyError,
    MatrixFormatError,
    SchemaError,
    CountOverflowError,
    BoxTooSmallError,
    VectorNotFoundError,
    HypothesisViolationError,
    SupportViolationError,
)

from .ripples import (
    BesselOrder,
    bessel_j,
    bessel_pair,
    bracket,
    bracket_derivative,
    tail_integral,
    tail_integral_quadrature,
    sinc_squared_tail,
    lanczos_gamma,
)

from .fence import (
    BoundParams,
    BoundValue,
    volume_const,
    surface_const,
    u_nu,
    u_nu_general,
    u_nu_bracket_route,
    u_nu_closed_form_n3,
    u_nu_at_zero,
    equality_case,
    theorem_window,
)

from .scaffold import (
    MatrixReal,
    LatticeBasis,
    build_basis,
    jacobi_eigh,
    upper_cholesky,
    op_norm_upper_delta,
    parse_matrix_text,
    parse_matrix_document,
    load_matrix,
)

from .headcount import (
    BallQuery,
    WeightedCount,
    count_ball,
    count_ball_bruteforce,
    enumerate_ellipsoid,
    shortest_vector,
    minimal_box_radius,
    predicted_count,
    box_blocks,
    reduce_center,
)

from .knobs import (
    Settings,
    SweepConfig,
    DeltaPolicy,
    get_config,
    save_config,
)

from .hideaway import (
    get_data_dir,
    get_config_path,
    ensure_data_dir,
)

from .crucible import (
    VerificationRecord,
    PoissonCheckResult,
    SweepSummary,
    verify_theorem,
    sweep_theorem,
    summarize,
    fejer_product,
    fejer_transform,
    poisson_truncation_bound,
    poisson_check,
)

__version__ = "0.1.0"

__all__ = [
    # mishaps
    "BallparkError",
    "DomainError",
    "UnsupportedOrderError",
    "PositivityError",
    "ConvergenceError",
    "RankDeficiencyError",
    "MatrixFormatError",
    "SchemaError",
    "CountOverflowError",
    "BoxTooSmallError",
    "VectorNotFoundError",
    "HypothesisViolationError",
    "SupportViolationError",
    # ripples
    "BesselOrder",
    "bessel_j",
    "bessel_pair",
    "bracket",
    "bracket_derivative",
    "tail_integral",
    "tail_integral_quadrature",
    "sinc_squared_tail",
    "lanczos_gamma",
    # fence
    "BoundParams",
    "BoundValue",
    "volume_const",
    "surface_const",
    "u_nu",
    "u_nu_general",
    "u_nu_bracket_route",
    "u_nu_closed_form_n3",
    "u_nu_at_zero",
    "equality_case",
    "theorem_window",
    # scaffold
    "MatrixReal",
    "LatticeBasis",
    "build_basis",
    "jacobi_eigh",
    "upper_cholesky",
    "op_norm_upper_delta",
    "parse_matrix_text",
    "parse_matrix_document",
    "load_matrix",
    # headcount
    "BallQuery",
    "WeightedCount",
    "count_ball",
    "count_ball_bruteforce",
    "enumerate_ellipsoid",
    "shortest_vector",
    "minimal_box_radius",
    "predicted_count",
    "box_blocks",
    "reduce_center",
    # knobs
    "Settings",
    "SweepConfig",
    "DeltaPolicy",
    "get_config",
    "save_config",
    # hideaway
    "get_data_dir",
    "get_config_path",
    "ensure_data_dir",
    # crucible
    "VerificationRecord",
    "PoissonCheckResult",
    "SweepSummary",
    "verify_theorem",
    "sweep_theorem",
    "summarize",
    "fejer_product",
    "fejer_transform",
    "poisson_truncation_bound",
    "poisson_check",
]

"""crucible - Theorem Trials and Poisson Checks.

Runs the lattice-count inequality

    |sqrt(det A^T A) * #_{1/2}{m : |A(m + x)| <= R} - V_N R^N| <= omega_{N-1} u_nu(R, delta)

on given or randomly drawn bases, and checks Poisson summation on the
Fejer product family, whose Fourier transform is supported in the
delta-ball.

Example:
    >>> from ballpark import crucible, headcount, scaffold
    >>> basis = scaffold.build_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    >>> query = headcount.BallQuery(radius=2.0, center=(0.0, 0.0, 0.0))
    >>> record = crucible.verify_theorem(basis, 1.0, query)
    >>> record.lhs, record.rhs, record.passed      # 3.51..., 16 pi, True

Classes:
    VerificationRecord: One theorem trial.
    PoissonCheckResult: Space side, frequency side and truncation bound.
    SweepSummary: Trials, failures, errors, smallest margin, largest ratio.

Functions:
    verify_theorem: One trial on a given basis.
    sweep_theorem: Seeded randomized trials.
    summarize: Reduce sweep records to a SweepSummary.
    fejer_product: F_c(y) = prod_j sinc^2(c y_j).
    fejer_transform: Transform of F_c, prod_j (1/c) max(0, 1 - |t_j|/c).
    poisson_truncation_bound: Space-side tail estimate outside the box.
    poisson_check: Compare both sides of Poisson summation.
    csv_header: Column names for sweep rows.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .fence import BoundParams, u_nu, volume_const
from .headcount import (
    BallQuery,
    box_blocks,
    count_ball,
    enumerate_ellipsoid,
    reduce_center,
)
from .knobs import DEFAULT_HYPOTHESIS_TOL, DEFAULT_SLACK_REL, Settings, SweepConfig
from .mishaps import (
    BallparkError,
    CountOverflowError,
    DomainError,
    HypothesisViolationError,
    SupportViolationError,
)
from .scaffold import LatticeBasis, build_basis, upper_cholesky

logger = logging.getLogger(__name__)


POISSON_FLOOR = 1e-9
# frequencies within this relative distance of the delta-sphere count as outside
FREQUENCY_EDGE_REL = 1e-9
DEFAULT_BOX_CEILING = 10**7


def _fmt(value: float) -> str:
    return format(value, ".15g")


@dataclass(frozen=True)
class VerificationRecord:
    """One theorem trial.

    lhs is the discrepancy |scaled count - V_N R^N|, rhs the bound
    omega_{N-1} u_nu(R, delta). A trial that raised carries the message in
    error, NaN numbers and passed=False.
    """
    basis_summary: tuple[int, int, float, float]
    delta: float
    radius: float
    center: tuple[float, ...]
    lhs: float
    rhs: float
    margin: float
    boundary_hits: int
    passed: bool
    lower: float = math.nan
    upper: float = math.nan
    ratio: float = math.nan
    seed: Optional[int] = None
    trial: Optional[int] = None
    error: Optional[str] = None

    def to_row(self, n_max: Optional[int] = None) -> list[str]:
        """CSV cells in csv_header order; center padded to n_max coordinates."""
        m_rows, n_cols, op_norm, _sqrt_det = self.basis_summary
        width = len(self.center) if n_max is None else n_max
        center = [_fmt(v) for v in self.center] + [""] * (width - len(self.center))
        return [
            "" if self.seed is None else str(self.seed),
            "" if self.trial is None else str(self.trial),
            str(m_rows),
            str(n_cols),
            _fmt(op_norm),
            _fmt(self.delta),
            _fmt(self.radius),
            *center,
            _fmt(self.lhs),
            _fmt(self.rhs),
            _fmt(self.margin),
            str(self.boundary_hits),
            "1" if self.passed else "0",
        ]

    def to_dict(self) -> dict:
        m_rows, n_cols, op_norm, sqrt_det = self.basis_summary
        return {
            "seed": self.seed,
            "trial": self.trial,
            "M": m_rows,
            "N": n_cols,
            "op_norm": op_norm,
            "sqrt_det": sqrt_det,
            "delta": self.delta,
            "R": self.radius,
            "center": list(self.center),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "lower": self.lower,
            "upper": self.upper,
            "ratio": self.ratio,
            "boundary_hits": self.boundary_hits,
            "passed": self.passed,
            "error": self.error,
        }


def csv_header(n_max: int) -> list[str]:
    centers = [f"x{i}" for i in range(1, n_max + 1)]
    return ["seed", "trial", "M", "N", "op_norm", "delta", "R", *centers,
            "lhs", "rhs", "margin", "boundary_hits", "passed"]


@dataclass(frozen=True)
class PoissonCheckResult:
    """Both sides of Poisson summation for the Fejer family.

    Attributes:
        bandwidth: c
        delta: Radius of the frequency ball
        lhs: det S * sum over the box of F_c(S(m + x))
        rhs: sum over |S^-1 n| < delta of F_c^(S^-1 n) cos(2 pi x.n)
        truncation_bound: Bound on the space-side terms outside the box
        abs_error: |lhs - rhs|
        frequency_terms: Number of n with |S^-1 n| < delta
        one_term: frequency_terms == 1
        passed: abs_error <= truncation_bound + 1e-9
    """
    bandwidth: float
    delta: float
    lhs: float
    rhs: float
    truncation_bound: float
    abs_error: float
    frequency_terms: int
    one_term: bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "bandwidth": self.bandwidth,
            "delta": self.delta,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "truncation_bound": self.truncation_bound,
            "abs_error": self.abs_error,
            "frequency_terms": self.frequency_terms,
            "one_term": self.one_term,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class SweepSummary:
    trials: int
    failures: int
    errors: int
    min_margin: float
    max_ratio: float

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "errors": self.errors,
            "min_margin": self.min_margin,
            "max_ratio": self.max_ratio,
        }

    def __str__(self) -> str:
        return (f"trials: {self.trials}, failures: {self.failures}, errors: {self.errors}, "
                f"min margin: {_fmt(self.min_margin)}")


def verify_theorem(
    basis: LatticeBasis,
    delta: float,
    query: BallQuery,
    *,
    slack_rel: float = DEFAULT_SLACK_REL,
    hypothesis_tol: float = DEFAULT_HYPOTHESIS_TOL,
    ceiling: Optional[float] = None,
    seed: Optional[int] = None,
    trial: Optional[int] = None,
) -> VerificationRecord:
    """Check the inequality for one basis, delta and ball.

    Args:
        basis: Lattice basis with |A| <= 1/delta
        delta: Type parameter
        query: Radius and center
        slack_rel: passed iff lhs <= rhs + slack_rel * (1 + rhs)
        hypothesis_tol: Allowed excess of delta * |A| over 1
        ceiling: Count ceiling passed to count_ball

    Raises:
        HypothesisViolationError: If delta * |A| > 1 + hypothesis_tol
    """
    if math.isnan(delta) or delta <= 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    if delta * basis.op_norm > 1.0 + hypothesis_tol:
        raise HypothesisViolationError(
            f"delta * |A| = {delta * basis.op_norm:.15g} exceeds 1; largest admissible delta is {1.0 / basis.op_norm:.15g}"
        )

    count = count_ball(basis, query, ceiling=ceiling)
    bound = u_nu(BoundParams(dim_n=basis.dim, delta=delta, radius=query.radius))
    lhs = count.discrepancy
    rhs = bound.bound
    slack = slack_rel * (1.0 + rhs)
    return VerificationRecord(
        basis_summary=basis.summary(),
        delta=delta,
        radius=query.radius,
        center=query.center,
        lhs=lhs,
        rhs=rhs,
        margin=rhs - lhs,
        boundary_hits=count.boundary,
        passed=lhs <= rhs + slack,
        lower=count.main_term - rhs,
        upper=count.main_term + rhs,
        ratio=lhs / rhs,
        seed=seed,
        trial=trial,
    )


def _error_record(config: SweepConfig, trial: int, summary, delta, radius, center, error: Exception) -> VerificationRecord:
    return VerificationRecord(
        basis_summary=summary,
        delta=delta,
        radius=radius,
        center=center,
        lhs=math.nan,
        rhs=math.nan,
        margin=math.nan,
        boundary_hits=0,
        passed=False,
        seed=config.seed,
        trial=trial,
        error=f"{type(error).__name__}: {error}",
    )


def _run_trial(config: SweepConfig, settings: Settings, trial: int) -> VerificationRecord:
    rng = np.random.default_rng([config.seed, trial])
    dim_n = int(rng.integers(config.n_min, config.n_max + 1))
    m_rows = dim_n + int(rng.integers(0, config.m_extra_max + 1))
    low, high = config.entry_range
    matrix = rng.uniform(low, high, size=(m_rows, dim_n))
    radius = float(config.r_grid[int(rng.integers(0, len(config.r_grid)))])
    center = tuple(float(v) for v in rng.random(dim_n))

    summary: tuple = (m_rows, dim_n, math.nan, math.nan)
    delta = math.nan
    try:
        basis = build_basis(matrix, rank_tol=settings.rank_tol)
        summary = basis.summary()
        delta = config.delta_for(basis.op_norm)
        query = BallQuery(radius=radius, center=center, boundary_tol=settings.boundary_tol(radius))
        return verify_theorem(
            basis, delta, query,
            slack_rel=settings.slack_rel,
            hypothesis_tol=settings.hypothesis_tol,
            ceiling=config.count_ceiling,
            seed=config.seed,
            trial=trial,
        )
    except BallparkError as e:
        logger.warning("trial %d (seed %d) errored: %s", trial, config.seed, e)
        return _error_record(config, trial, summary, delta, radius, center, e)


def sweep_theorem(config: SweepConfig, settings: Optional[Settings] = None) -> list[VerificationRecord]:
    """Run config.trials randomized trials.

    Trial t draws everything from numpy's default_rng([seed, t]): N, M,
    uniform entries, R from the grid and x uniform in [0, 1)^N. Results
    are returned in trial order whatever the worker count. A trial that
    raises becomes a record with error set; the sweep continues.
    """
    settings = settings or Settings()
    logger.info("sweep: %d trials, seed %d, N in %d..%d, %d workers",
                config.trials, config.seed, config.n_min, config.n_max, config.workers)

    def run(trial: int) -> VerificationRecord:
        return _run_trial(config, settings, trial)

    if config.workers > 1 and config.trials > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(run, range(config.trials)))
    else:
        records = [run(t) for t in range(config.trials)]

    logger.info("sweep done: %s", summarize(records))
    return records


def summarize(records: Iterable[VerificationRecord]) -> SweepSummary:
    records = list(records)
    checked = [r for r in records if r.error is None]
    return SweepSummary(
        trials=len(records),
        failures=sum(1 for r in checked if not r.passed),
        errors=len(records) - len(checked),
        min_margin=min((r.margin for r in checked), default=math.nan),
        max_ratio=max((r.ratio for r in checked), default=math.nan),
    )


def _check_bandwidth(bandwidth: float) -> None:
    if math.isnan(bandwidth) or bandwidth <= 0:
        raise DomainError(f"bandwidth must be > 0, got {bandwidth}")


def _fejer_values(bandwidth: float, points: np.ndarray) -> np.ndarray:
    return np.prod(np.sinc(bandwidth * points) ** 2, axis=-1)


def fejer_product(bandwidth: float, point: Sequence[float]) -> float:
    """F_c(y) = prod_j (sin(pi c y_j) / (pi c y_j))^2, equal to 1 at y_j = 0."""
    _check_bandwidth(bandwidth)
    return float(_fejer_values(bandwidth, np.asarray(point, dtype=float)))


def fejer_transform(bandwidth: float, t: Sequence[float]) -> float:
    """Fourier transform of F_c: prod_j (1/c) max(0, 1 - |t_j|/c), supported in [-c, c]^N."""
    _check_bandwidth(bandwidth)
    t = np.asarray(t, dtype=float)
    return float(np.prod(np.maximum(0.0, 1.0 - np.abs(t) / bandwidth) / bandwidth, axis=-1))


def _sinc_bound_sum(bandwidth: float, start: int) -> float:
    """sum_{j >= start} min(1, (pi c j)^-2), with the j = 0 term equal to 1."""
    scale = math.pi * bandwidth
    stop = max(start, math.ceil(1.0 / scale)) + 4096
    j = np.arange(start, stop, dtype=float)
    with np.errstate(divide="ignore"):
        terms = np.where(j == 0, 1.0, np.minimum(1.0, 1.0 / (scale * j) ** 2))
    # sum_{j >= K} j^-2 <= 1/K + 1/K^2
    remainder = (1.0 / stop + 1.0 / (stop * stop)) / (scale * scale)
    return math.fsum(terms.tolist()) + remainder


def poisson_truncation_bound(basis: LatticeBasis, bandwidth: float, trunc_radius: int) -> float:
    """Bound on det S * sum of F_c(S(m + x)) over m outside [-b, b]^N.

    Outside the box |m + x| >= b + 1/2 for reduced x, so |S(m + x)| has some
    coordinate of size at least T = sqrt(d_min) (b + 1/2) / sqrt(N). Points
    of S(Z^N + x) are sqrt(d_min) apart, so a unit cube holds at most
    P = (1 + lam)^N / (V_N (lam/2)^N) of them, lam = sqrt(d_min). On the
    cube k + [0, 1)^N each sinc^2 factor is at most min(1, (pi c dist)^-2),
    which gives

        det S * P * N * H_out * H^(N-1)

    with H the two-sided per-coordinate sum and H_out the part beyond T.
    Valid for any x.
    """
    _check_bandwidth(bandwidth)
    if trunc_radius < 0:
        raise DomainError(f"trunc_radius must be >= 0, got {trunc_radius}")
    dim = basis.dim
    lam = math.sqrt(float(basis.eigvals[0]))
    packing = (1.0 + lam) ** dim / (volume_const(dim) * (0.5 * lam) ** dim)
    threshold = lam * (trunc_radius + 0.5) / math.sqrt(dim)
    first_outside = max(math.ceil(threshold) - 1, 0)
    h_all = 2.0 * _sinc_bound_sum(bandwidth, 0)
    h_out = 2.0 * _sinc_bound_sum(bandwidth, first_outside)
    return basis.sqrt_det * packing * dim * h_out * h_all ** (dim - 1)


def _frequency_side(basis: LatticeBasis, delta: float, bandwidth: float, x0: np.ndarray) -> tuple[float, int]:
    s_inv = np.asarray(basis.s_inv)
    r_dual = upper_cholesky(s_inv.T @ s_inv)
    limit = delta * (1.0 - FREQUENCY_EDGE_REL)
    terms = []
    count = 0
    for block in enumerate_ellipsoid(r_dual, np.zeros(basis.dim), delta):
        t = block.astype(float) @ s_inv.T
        inside = np.sqrt(np.sum(t * t, axis=1)) < limit
        for n, t_n in zip(block[inside], t[inside]):
            count += 1
            terms.append(fejer_transform(bandwidth, t_n) * math.cos(2.0 * math.pi * float(x0 @ n)))
    return math.fsum(terms), count


def poisson_check(
    basis: LatticeBasis,
    delta: float,
    center: Sequence[float],
    bandwidth: float,
    trunc_radius: int,
    *,
    box_ceiling: float = DEFAULT_BOX_CEILING,
) -> PoissonCheckResult:
    """Compare both sides of Poisson summation for F_c on the lattice S(Z^N + x).

    When bandwidth * sqrt(N) <= delta the transform vanishes outside the
    delta-ball, so the frequency side is a finite sum. If also
    delta <= 1/|A|, only n = 0 survives and the sum is c^-N.

    Raises:
        SupportViolationError: If bandwidth * sqrt(N) > delta
        CountOverflowError: If the box holds more than box_ceiling points
    """
    _check_bandwidth(bandwidth)
    if math.isnan(delta) or delta <= 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    if len(center) != basis.dim:
        raise DomainError(f"center has {len(center)} coordinates, lattice rank is {basis.dim}")
    dim = basis.dim
    if bandwidth * math.sqrt(dim) > delta * (1.0 + 1e-12):
        raise SupportViolationError(
            f"bandwidth * sqrt(N) = {bandwidth * math.sqrt(dim):.15g} exceeds delta = {delta:.15g}"
        )
    box_points = (2 * trunc_radius + 1) ** dim
    if box_points > box_ceiling:
        raise CountOverflowError(box_points, box_ceiling)

    x0 = reduce_center(center)
    s = np.asarray(basis.s)
    partial = []
    for block in box_blocks(dim, trunc_radius):
        y = (block + x0) @ s.T
        partial.append(float(np.sum(_fejer_values(bandwidth, y))))
    lhs = basis.sqrt_det * math.fsum(partial)

    rhs, terms = _frequency_side(basis, delta, bandwidth, x0)
    bound = poisson_truncation_bound(basis, bandwidth, trunc_radius)
    error = abs(lhs - rhs)
    logger.debug("poisson: N=%d c=%g b=%d lhs=%.15g rhs=%.15g bound=%.3g terms=%d",
                 dim, bandwidth, trunc_radius, lhs, rhs, bound, terms)
    return PoissonCheckResult(
        bandwidth=bandwidth,
        delta=delta,
        lhs=lhs,
        rhs=rhs,
        truncation_bound=bound,
        abs_error=error,
        frequency_terms=terms,
        one_term=terms == 1,
        passed=error <= bound + POISSON_FLOOR,
    )

"""headcount - Exact Lattice Point Counting.

Counts the lattice points A(m + x), m in Z^N, in the closed ball of radius
R around the origin, giving points on the sphere weight 1/2. Since
|A(m + x)| = |S(m + x)|, all work happens in R^N with the Gram matrix.

Enumeration is a Fincke-Pohst sphere decoder over the upper Cholesky
factor R of the Gram matrix (R^T R = A^T A), last coordinate outermost,
with the innermost coordinate handled as one numpy block.

Example:
    >>> from ballpark import headcount, scaffold
    >>> basis = scaffold.build_basis([[1, 0], [0, 1]])
    >>> query = headcount.BallQuery(radius=1.0, center=(0.0, 0.0))
    >>> headcount.count_ball(basis, query).weighted_total
    3.0

Classes:
    BallQuery: Radius, center coordinates x, boundary tolerance.
    WeightedCount: Interior/boundary counts, weighted and scaled totals.

Functions:
    count_ball: Sphere-decoder count.
    count_ball_bruteforce: Exhaustive box scan (test oracle).
    enumerate_ellipsoid: Integer vectors m with |R(m + c)| <= radius, in blocks.
    shortest_vector: Shortest nonzero vector of B Z^N.
    minimal_box_radius: Smallest box that holds the ball.
    predicted_count: Volume estimate used by the overflow guard.
    reduce_center: Move x into [-1/2, 1/2)^N.

Boundary membership:
    |y| = R cannot be decided in floating point. A point is on the
    boundary when ||y| - R| <= boundary_tol, interior when |y| < R - boundary_tol.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .fence import volume_const
from .mishaps import BoxTooSmallError, CountOverflowError, DomainError, VectorNotFoundError
from .scaffold import LatticeBasis, upper_cholesky

logger = logging.getLogger(__name__)


DEFAULT_BOUNDARY_TOL_REL = 1e-9
DEFAULT_COUNT_CEILING = 10**8

# relative widening of the search ellipsoid; candidates are re-filtered exactly
_SEARCH_SLACK = 1e-9


@dataclass(frozen=True)
class BallQuery:
    """Ball of radius R centered at Ax.

    Attributes:
        radius: R > 0
        center: x, N coordinates
        boundary_tol: Boundary band half-width; defaults to 1e-9 * R
    """
    radius: float
    center: tuple[float, ...]
    boundary_tol: Optional[float] = None

    def __post_init__(self):
        if math.isnan(self.radius) or self.radius <= 0:
            raise DomainError(f"radius must be > 0, got {self.radius}")
        center = tuple(float(v) for v in self.center)
        if not center or not all(math.isfinite(v) for v in center):
            raise DomainError(f"center must be a nonempty vector of finite reals, got {self.center!r}")
        object.__setattr__(self, "center", center)
        if self.boundary_tol is None:
            object.__setattr__(self, "boundary_tol", DEFAULT_BOUNDARY_TOL_REL * self.radius)
        elif math.isnan(self.boundary_tol) or self.boundary_tol < 0:
            raise DomainError(f"boundary_tol must be >= 0, got {self.boundary_tol}")

    @classmethod
    def at_origin(cls, radius: float, dim: int, boundary_tol: Optional[float] = None) -> "BallQuery":
        return cls(radius=radius, center=(0.0,) * dim, boundary_tol=boundary_tol)


@dataclass(frozen=True)
class WeightedCount:
    """Result of a ball count.

    Attributes:
        interior: Points with |A(m+x)| < R - tol
        boundary: Points with ||A(m+x)| - R| <= tol
        weighted_total: interior + boundary / 2
        scaled_total: sqrt_det * weighted_total
        main_term: V_N R^N
        discrepancy: |scaled_total - main_term|
    """
    interior: int
    boundary: int
    weighted_total: float
    scaled_total: float
    main_term: float
    discrepancy: float

    def to_dict(self) -> dict:
        return {
            "interior": self.interior,
            "boundary": self.boundary,
            "weighted_total": self.weighted_total,
            "scaled_total": self.scaled_total,
            "main_term": self.main_term,
            "discrepancy": self.discrepancy,
        }


def reduce_center(center: Sequence[float]) -> np.ndarray:
    """Representative of x modulo Z^N in [-1/2, 1/2)^N."""
    x = np.asarray(center, dtype=float)
    return x - np.floor(x + 0.5)


def _check_dims(basis: LatticeBasis, query: BallQuery) -> None:
    if len(query.center) != basis.dim:
        raise DomainError(f"center has {len(query.center)} coordinates, lattice rank is {basis.dim}")


def _norms(s: np.ndarray, points: np.ndarray, x0: np.ndarray) -> np.ndarray:
    """|S(m + x0)| for each row m; fixed operation order so results do not depend on batching."""
    n = s.shape[0]
    shifted = points + x0
    y = np.zeros((points.shape[0], n))
    for j in range(n):
        y += np.outer(shifted[:, j], s[:, j])
    sq = np.zeros(points.shape[0])
    for i in range(n):
        sq += y[:, i] * y[:, i]
    return np.sqrt(sq)


def _tally(basis: LatticeBasis, query: BallQuery, norms: np.ndarray) -> WeightedCount:
    radius, tol = query.radius, query.boundary_tol
    interior = int(np.count_nonzero(norms < radius - tol))
    boundary = int(np.count_nonzero((norms >= radius - tol) & (norms <= radius + tol)))
    weighted = interior + 0.5 * boundary
    scaled = basis.sqrt_det * weighted
    main = volume_const(basis.dim) * radius ** basis.dim
    return WeightedCount(
        interior=interior,
        boundary=boundary,
        weighted_total=weighted,
        scaled_total=scaled,
        main_term=main,
        discrepancy=abs(scaled - main),
    )


def _coordinate_range(center: float, width: float) -> tuple[int, int]:
    pad = _SEARCH_SLACK * (1.0 + abs(center) + width)
    return math.ceil(center - width - pad), math.floor(center + width + pad)


def enumerate_ellipsoid(r_factor: np.ndarray, center: Sequence[float], radius: float) -> Iterator[np.ndarray]:
    """Yield blocks of integer vectors m with |R(m + c)| <= radius.

    The search region is widened slightly, so callers that need exact
    membership filter the candidates themselves.

    Args:
        r_factor: Upper-triangular N x N factor R
        center: c, N reals
        radius: Search radius

    Yields:
        int64 arrays of shape (k, N)
    """
    r = np.asarray(r_factor, dtype=float)
    c = np.asarray(center, dtype=float)
    n = r.shape[0]
    diag = np.abs(np.diag(r))
    budget = radius * radius * (1.0 + _SEARCH_SLACK) + _SEARCH_SLACK * radius
    y = np.zeros(n)
    m = np.zeros(n, dtype=np.int64)
    nodes = 0

    def search(level: int, remaining: float) -> Iterator[np.ndarray]:
        nonlocal nodes
        nodes += 1
        partial = float(r[level, level + 1:] @ y[level + 1:])
        width = math.sqrt(max(remaining, 0.0)) / diag[level]
        lo, hi = _coordinate_range(-partial / r[level, level] - c[level], width)
        if lo > hi:
            return
        if level == 0:
            block = np.empty((hi - lo + 1, n), dtype=np.int64)
            block[:, 0] = np.arange(lo, hi + 1)
            block[:, 1:] = m[1:]
            yield block
            return
        for value in range(lo, hi + 1):
            m[level] = value
            y[level] = value + c[level]
            term = r[level, level] * y[level] + partial
            left = remaining - term * term
            if left >= 0.0:
                yield from search(level - 1, left)
        y[level] = 0.0

    yield from search(n - 1, budget)
    logger.debug("ellipsoid search: n=%d radius=%g nodes=%d", n, radius, nodes)


def predicted_count(basis: LatticeBasis, query: BallQuery) -> float:
    """Expected number of points, V_N (R + tol)^N / det S."""
    return volume_const(basis.dim) * (query.radius + query.boundary_tol) ** basis.dim / basis.sqrt_det


def count_ball(basis: LatticeBasis, query: BallQuery, ceiling: Optional[float] = None) -> WeightedCount:
    """Count lattice points in the ball with boundary weight 1/2.

    Args:
        basis: Lattice basis
        query: Radius, center and boundary tolerance
        ceiling: Largest acceptable predicted count (default 1e8)

    Returns:
        WeightedCount

    Raises:
        CountOverflowError: If the predicted count exceeds the ceiling
    """
    _check_dims(basis, query)
    ceiling = DEFAULT_COUNT_CEILING if ceiling is None else ceiling
    predicted = predicted_count(basis, query)
    if predicted > ceiling:
        raise CountOverflowError(predicted, ceiling)

    x0 = reduce_center(query.center)
    blocks = list(enumerate_ellipsoid(basis.r_factor, x0, query.radius + query.boundary_tol))
    if not blocks:
        return _tally(basis, query, np.zeros(0))
    points = np.concatenate(blocks)
    return _tally(basis, query, _norms(basis.s, points, x0))


def minimal_box_radius(basis: LatticeBasis, query: BallQuery) -> int:
    """Smallest b with every ball point inside S([-b, b]^N + x0).

    |m + x0| <= |S^-1| |S(m + x0)| and |S^-1| = d_min^(-1/2).
    """
    _check_dims(basis, query)
    reach = (query.radius + query.boundary_tol) / math.sqrt(float(basis.eigvals[0]))
    return max(0, math.floor(reach * (1.0 + 1e-12) + 0.5 + 1e-12))


def box_blocks(dim: int, box_radius: int) -> Iterator[np.ndarray]:
    """All integer vectors of [-b, b]^N, as blocks that vary the first coordinate."""
    line = np.arange(-box_radius, box_radius + 1, dtype=np.int64)
    for rest in itertools.product(line.tolist(), repeat=dim - 1):
        block = np.empty((line.size, dim), dtype=np.int64)
        block[:, 0] = line
        block[:, 1:] = rest
        yield block


def count_ball_bruteforce(basis: LatticeBasis, query: BallQuery, box_radius: int) -> WeightedCount:
    """Same contract as count_ball, by scanning the whole integer box.

    Raises:
        BoxTooSmallError: If box_radius is below minimal_box_radius
    """
    needed = minimal_box_radius(basis, query)
    if box_radius < needed:
        raise BoxTooSmallError(box_radius, needed)

    x0 = reduce_center(query.center)
    limit = query.radius + query.boundary_tol
    kept = []
    for block in box_blocks(basis.dim, box_radius):
        norms = _norms(basis.s, block, x0)
        kept.append(norms[norms <= limit])
    return _tally(basis, query, np.concatenate(kept))


def shortest_vector(basis_matrix: np.ndarray, ceiling: float) -> tuple[tuple[int, ...], float]:
    """Shortest nonzero vector of the lattice B Z^N.

    Sphere decoding with a radius that shrinks to each new best length.

    Args:
        basis_matrix: N x N nonsingular matrix B (used with S^-1)
        ceiling: Search radius

    Returns:
        (n, |Bn|) for a minimizing nonzero integer vector n

    Raises:
        VectorNotFoundError: If no nonzero vector has |Bn| <= ceiling
    """
    b = np.asarray(basis_matrix, dtype=float)
    n = b.shape[1]
    r = upper_cholesky(b.T @ b)
    diag = np.abs(np.diag(r))
    y = np.zeros(n)
    m = np.zeros(n, dtype=np.int64)
    best: dict = {"sq": ceiling * ceiling * (1.0 + _SEARCH_SLACK) + _SEARCH_SLACK * ceiling, "vector": None}

    def search(level: int, used: float) -> None:
        partial = float(r[level, level + 1:] @ y[level + 1:])
        width = math.sqrt(max(best["sq"] - used, 0.0)) / diag[level]
        lo, hi = _coordinate_range(-partial / r[level, level], width)
        if level == 0:
            values = np.arange(lo, hi + 1)
            totals = used + (r[0, 0] * values + partial) ** 2
            if not m[1:].any():
                totals[values == 0] = np.inf
            if totals.size and totals.min() < best["sq"]:
                k = int(np.argmin(totals))
                best["sq"] = float(totals[k])
                vector = m.copy()
                vector[0] = values[k]
                best["vector"] = vector
            return
        for value in range(lo, hi + 1):
            m[level] = value
            y[level] = value
            term = r[level, level] * value + partial
            if used + term * term < best["sq"]:
                search(level - 1, used + term * term)
        m[level] = 0
        y[level] = 0.0

    search(n - 1, 0.0)
    if best["vector"] is None:
        raise VectorNotFoundError(f"no nonzero lattice vector of length <= {ceiling}")
    vector = tuple(int(v) for v in best["vector"])
    return vector, float(np.linalg.norm(b @ np.array(vector, dtype=float)))

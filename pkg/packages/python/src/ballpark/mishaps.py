"""mishaps - Exception Hierarchy.

Every error raised by ballpark derives from BallparkError, so callers can
catch the whole family at once or pick out one failure mode.

Example:
    >>> from ballpark import mishaps
    >>> try:
    ...     build_basis(matrix)
    ... except mishaps.RankDeficiencyError as e:
    ...     print(e)

Classes:
    BallparkError: Base class.
    DomainError: Argument outside an operation's domain.
    UnsupportedOrderError: Bessel order the operation cannot handle.
    PositivityError: u_nu denominator came out nonpositive.
    ConvergenceError: Jacobi iteration did not converge.
    RankDeficiencyError: Gram matrix is (numerically) singular.
    MatrixFormatError: Matrix text or document cannot be parsed.
    SchemaError: JSON document fails validation.
    CountOverflowError: Predicted lattice point count above the ceiling.
    BoxTooSmallError: Brute-force box does not contain the ball.
    VectorNotFoundError: No nonzero vector below the search ceiling.
    HypothesisViolationError: delta * |A| > 1.
    SupportViolationError: Test function transform leaves the delta-ball.
"""

from typing import Optional


class BallparkError(Exception):
    """Base exception for ballpark errors"""
    pass


class DomainError(BallparkError, ValueError):
    """Raised when an argument lies outside an operation's domain"""
    pass


class UnsupportedOrderError(DomainError):
    """Raised when a Bessel order is not supported by an operation"""
    pass


class PositivityError(BallparkError, ArithmeticError):
    """Raised when the u_nu denominator is not positive"""
    pass


class ConvergenceError(BallparkError, ArithmeticError):
    """Raised when an iterative matrix routine fails to converge"""
    pass


class RankDeficiencyError(BallparkError):
    """Raised when A^T A is too close to singular for rank A = N"""

    def __init__(self, message: str, min_eigval: float = 0.0, max_eigval: float = 0.0):
        super().__init__(message)
        self.min_eigval = min_eigval
        self.max_eigval = max_eigval


class MatrixFormatError(BallparkError, ValueError):
    """Raised when a matrix file or document cannot be parsed"""

    def __init__(self, message: str, source: str = "<matrix>", line: Optional[int] = None):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line


class SchemaError(BallparkError, ValueError):
    """Raised when a JSON document fails blueprint validation"""
    pass


class CountOverflowError(BallparkError):
    """Raised when the predicted number of lattice points exceeds the ceiling"""

    def __init__(self, predicted: float, ceiling: float):
        super().__init__(f"predicted point count {predicted:.6g} exceeds ceiling {ceiling:.6g}")
        self.predicted = predicted
        self.ceiling = ceiling


class BoxTooSmallError(BallparkError):
    """Raised when a brute-force box cannot contain the ball"""

    def __init__(self, box_radius: int, minimal_radius: int):
        super().__init__(f"box radius {box_radius} too small, need at least {minimal_radius}")
        self.box_radius = box_radius
        self.minimal_radius = minimal_radius


class VectorNotFoundError(BallparkError):
    """Raised when no nonzero lattice vector is within the search ceiling"""
    pass


class HypothesisViolationError(BallparkError):
    """Raised when delta * |A| > 1, outside the theorem's hypothesis"""
    pass


class SupportViolationError(BallparkError):
    """Raised when bandwidth * sqrt(N) > delta in a Poisson check"""
    pass

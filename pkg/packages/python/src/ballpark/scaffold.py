"""scaffold - Lattice Basis.

Reads the M x N generator matrix A, forms the Gram matrix A^T A, and
builds its positive-definite symmetric square root S, so that
|Ax| = |Sx| for every x. Exposes det S = (det A^T A)^(1/2), the operator
norm |A| and S^-1.

Example:
    >>> from ballpark import scaffold
    >>> matrix = scaffold.load_matrix("basis.txt")
    >>> basis = scaffold.build_basis(matrix)
    >>> basis.sqrt_det, basis.op_norm
    >>> scaffold.op_norm_upper_delta(basis)     # largest admissible delta

Classes:
    MatrixReal: Plain M x N real matrix, row-major.
    LatticeBasis: Immutable derived data (Gram, eigensystem, S, S^-1, ...).

Functions:
    build_basis: Derive a LatticeBasis from a MatrixReal.
    jacobi_eigh: Cyclic Jacobi eigendecomposition of a symmetric matrix.
    upper_cholesky: Upper Cholesky factor, failures as RankDeficiencyError.
    op_norm_upper_delta: 1 / |A|.
    parse_matrix_text: Whitespace-separated rows, one per line.
    parse_matrix_document: {"rows": [[...], ...]} JSON document.
    load_matrix: Read either format from a file.

Matrix text format:
    One row per line, entries separated by whitespace. Blank lines and
    anything after '#' are ignored.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence, Union

import numpy as np

from .blueprint import COMMON_SCHEMAS, validate
from .mishaps import ConvergenceError, DomainError, MatrixFormatError, RankDeficiencyError, SchemaError

logger = logging.getLogger(__name__)


DEFAULT_RANK_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class MatrixReal:
    """M x N real matrix stored row-major.

    Attributes:
        rows: M
        cols: N
        entries: M*N floats, row by row
    """
    rows: int
    cols: int
    entries: tuple[float, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DomainError(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DomainError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")
        if not all(math.isfinite(v) for v in self.entries):
            raise DomainError("matrix entries must be finite")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "MatrixReal":
        """Build from a list of equal-length rows."""
        if not rows:
            raise DomainError("matrix has no rows")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DomainError("matrix rows have different lengths")
        return cls(rows=len(rows), cols=width, entries=tuple(float(v) for row in rows for v in row))

    @classmethod
    def from_array(cls, array: Any) -> "MatrixReal":
        arr = np.asarray(array, dtype=float)
        if arr.ndim != 2:
            raise DomainError(f"expected a 2-d array, got shape {arr.shape}")
        return cls(rows=arr.shape[0], cols=arr.shape[1], entries=tuple(float(v) for v in arr.ravel()))

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float).reshape(self.rows, self.cols)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class LatticeBasis:
    """Derived data of a full-column-rank matrix A.

    Attributes:
        a: The generator matrix
        gram: A^T A
        eigvecs: Orthogonal matrix whose columns are eigenvectors of the Gram matrix
        eigvals: Gram eigenvalues d_1 <= ... <= d_N
        s: Symmetric positive-definite square root of the Gram matrix
        s_inv: Inverse of s
        sqrt_det: (det A^T A)^(1/2) = det S
        op_norm: |A| = max d_n^(1/2)
        r_factor: Upper-triangular R with R^T R = A^T A
    """
    a: MatrixReal
    gram: np.ndarray
    eigvecs: np.ndarray
    eigvals: np.ndarray
    s: np.ndarray
    s_inv: np.ndarray
    sqrt_det: float
    op_norm: float
    r_factor: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        """Lattice rank N."""
        return self.a.cols

    @property
    def ambient_dim(self) -> int:
        """M."""
        return self.a.rows

    def summary(self) -> tuple[int, int, float, float]:
        """(M, N, op_norm, sqrt_det)."""
        return self.a.rows, self.a.cols, self.op_norm, self.sqrt_det


def jacobi_eigh(sym: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps over all (p, q) pairs until every off-diagonal magnitude is at
    most tol * max |diagonal|.

    Returns:
        (eigvals ascending, eigvecs) with sym = eigvecs @ diag(eigvals) @ eigvecs.T

    Raises:
        DomainError: If sym is not square
        ConvergenceError: If off-diagonal mass remains after max_sweeps sweeps
    """
    a = np.array(sym, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    v = np.eye(n)

    sweeps = 0
    for sweeps in range(max_sweeps + 1):
        off = np.abs(a - np.diag(np.diag(a))).max() if n > 1 else 0.0
        if off <= tol * np.abs(np.diag(a)).max():
            break
        if sweeps == max_sweeps:
            raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    logger.debug("jacobi: n=%d converged after %d sweeps", n, sweeps)
    eigvals = np.diag(a).copy()
    order = np.argsort(eigvals, kind="stable")
    return eigvals[order], v[:, order]


def upper_cholesky(gram: np.ndarray) -> np.ndarray:
    """Upper triangular R with R^T R = gram.

    Raises:
        RankDeficiencyError: If gram is not numerically positive definite
    """
    try:
        return np.linalg.cholesky(gram).T
    except np.linalg.LinAlgError as e:
        eigvals = np.linalg.eigvalsh(0.5 * (gram + gram.T))
        raise RankDeficiencyError(
            f"Cholesky factorization failed: {e}",
            min_eigval=float(eigvals[0]),
            max_eigval=float(eigvals[-1]),
        ) from e


def build_basis(a: Union[MatrixReal, np.ndarray, Sequence[Sequence[float]]], rank_tol: float = DEFAULT_RANK_TOL) -> LatticeBasis:
    """Derive Gram matrix, S = Phi^T D^(1/2) Phi, S^-1, det S and |A|.

    Args:
        a: The M x N generator matrix, N <= M
        rank_tol: Relative eigenvalue floor separating rank N from rank < N

    Returns:
        LatticeBasis

    Raises:
        DomainError: If N > M
        RankDeficiencyError: If min eigenvalue <= rank_tol * max eigenvalue
        ConvergenceError: If the Jacobi iteration stalls
    """
    if not isinstance(a, MatrixReal):
        a = MatrixReal.from_array(a)
    if rank_tol <= 0:
        raise DomainError(f"rank_tol must be > 0, got {rank_tol}")
    if a.cols > a.rows:
        raise DomainError(f"{a.rows}x{a.cols} matrix has more columns than rows, need N <= M")

    arr = a.to_array()
    gram = arr.T @ arr
    gram = 0.5 * (gram + gram.T)

    eigvals, eigvecs = jacobi_eigh(gram)
    d_min, d_max = float(eigvals[0]), float(eigvals[-1])
    if not d_max > 0 or d_min <= rank_tol * d_max:
        raise RankDeficiencyError(
            f"Gram matrix is rank deficient: min eigenvalue {d_min:.6g} <= {rank_tol:g} * max eigenvalue {d_max:.6g}",
            min_eigval=d_min,
            max_eigval=d_max,
        )
    if d_min < 1e3 * rank_tol * d_max:
        logger.warning("Gram matrix is nearly rank deficient: eigenvalue ratio %.3g", d_min / d_max)

    root = np.sqrt(eigvals)
    s = eigvecs @ np.diag(root) @ eigvecs.T
    s_inv = eigvecs @ np.diag(1.0 / root) @ eigvecs.T
    r_factor = upper_cholesky(gram)

    return LatticeBasis(
        a=a,
        gram=_frozen(gram),
        eigvecs=_frozen(eigvecs),
        eigvals=_frozen(eigvals),
        s=_frozen(0.5 * (s + s.T)),
        s_inv=_frozen(0.5 * (s_inv + s_inv.T)),
        sqrt_det=math.prod(float(r) for r in root),
        op_norm=math.sqrt(d_max),
        r_factor=_frozen(r_factor),
    )


def op_norm_upper_delta(basis: LatticeBasis) -> float:
    """Largest delta allowed by |A| <= 1/delta."""
    return 1.0 / basis.op_norm


def parse_matrix_text(text: str, source: str = "<matrix>") -> MatrixReal:
    """Parse whitespace-separated rows, one per line.

    Raises:
        MatrixFormatError: On non-numeric entries, ragged rows or no rows
    """
    rows: list[list[float]] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [float(token) for token in line.split()]
        except ValueError:
            raise MatrixFormatError(f"non-numeric entry in {line!r}", source, lineno)
        if not all(math.isfinite(v) for v in row):
            raise MatrixFormatError("entries must be finite", source, lineno)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFormatError(f"row has {len(row)} entries, expected {width}", source, lineno)
        rows.append(row)
    if not rows:
        raise MatrixFormatError("no matrix rows found", source)
    return MatrixReal.from_rows(rows)


def parse_matrix_document(doc: Any, source: str = "<matrix>") -> MatrixReal:
    """Parse a {"rows": [[...], ...]} document.

    Raises:
        MatrixFormatError: If the document fails validation or rows are ragged
    """
    try:
        data = validate(doc, COMMON_SCHEMAS["matrix"])
    except SchemaError as e:
        raise MatrixFormatError(str(e), source)
    rows = data["rows"]
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise MatrixFormatError(f"rows[{i}] has {len(row)} entries, expected {width}", source)
    try:
        return MatrixReal.from_rows(rows)
    except DomainError as e:
        raise MatrixFormatError(str(e), source)


def load_matrix(path: Union[str, Path]) -> MatrixReal:
    """Read a matrix file; '.json' files are structured documents, anything else is text.

    Raises:
        MatrixFormatError: If the file cannot be read or parsed
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise MatrixFormatError(f"cannot read file: {e.strerror or e}", str(path))

    if path.suffix.lower() == ".json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise MatrixFormatError(f"invalid JSON: {e.msg}", str(path), e.lineno)
        return parse_matrix_document(doc, str(path))
    return parse_matrix_text(text, str(path))

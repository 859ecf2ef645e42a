"""Tests for ballpark.scaffold - matrix input and the lattice basis."""

import json
import math
from unittest.mock import patch

import numpy as np
import pytest

from ballpark.mishaps import BallparkError, ConvergenceError, DomainError, MatrixFormatError, RankDeficiencyError
from ballpark.scaffold import (
    MatrixReal,
    build_basis,
    jacobi_eigh,
    load_matrix,
    op_norm_upper_delta,
    parse_matrix_document,
    parse_matrix_text,
    upper_cholesky,
)


def random_bases(count, seed=2024):
    rng = np.random.default_rng(seed)
    bases = []
    while len(bases) < count:
        n = int(rng.integers(1, 5))
        m = n + int(rng.integers(0, 4))
        try:
            bases.append(build_basis(rng.uniform(-2.0, 2.0, size=(m, n))))
        except RankDeficiencyError:
            continue
    return bases


class TestMatrixReal:
    """Tests for MatrixReal."""

    def test_from_rows(self):
        matrix = MatrixReal.from_rows([[1, 2], [3, 4], [5, 6]])
        assert (matrix.rows, matrix.cols) == (3, 2)
        assert matrix.entries == (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)
        np.testing.assert_array_equal(matrix.to_array(), [[1, 2], [3, 4], [5, 6]])

    def test_ragged_rows(self):
        with pytest.raises(DomainError):
            MatrixReal.from_rows([[1, 2], [3]])

    def test_wrong_entry_count(self):
        with pytest.raises(DomainError):
            MatrixReal(rows=2, cols=2, entries=(1.0, 2.0, 3.0))

    def test_non_finite(self):
        with pytest.raises(DomainError):
            MatrixReal.from_rows([[1.0, math.inf]])


class TestBuildBasis:
    """Tests for build_basis."""

    def test_identity(self):
        """Test A = I2 gives S = I, det S = 1, |A| = 1."""
        basis = build_basis([[1, 0], [0, 1]])
        np.testing.assert_allclose(basis.s, np.eye(2), atol=1e-15)
        assert basis.sqrt_det == pytest.approx(1.0)
        assert basis.op_norm == pytest.approx(1.0)
        assert basis.summary() == (2, 2, basis.op_norm, basis.sqrt_det)

    def test_tall_diagonal(self):
        """Test a 3x2 matrix with orthogonal columns of length 2 and 3."""
        basis = build_basis([[2, 0], [0, 3], [0, 0]])
        assert basis.dim == 2
        assert basis.ambient_dim == 3
        assert basis.sqrt_det == pytest.approx(6.0, rel=1e-14)
        assert basis.op_norm == pytest.approx(3.0, rel=1e-14)
        assert op_norm_upper_delta(basis) == pytest.approx(1 / 3)
        np.testing.assert_allclose(basis.s, np.diag([2.0, 3.0]), atol=1e-14)

    def test_square_root_properties(self):
        """Test S^2 = A^T A, S S^-1 = I and R^T R = A^T A on random bases."""
        for basis in random_bases(50):
            scale = float(np.abs(basis.gram).max())
            np.testing.assert_allclose(basis.s @ basis.s, basis.gram, atol=1e-11 * scale)
            np.testing.assert_allclose(basis.s @ basis.s_inv, np.eye(basis.dim), atol=1e-8)
            np.testing.assert_allclose(basis.r_factor.T @ basis.r_factor, basis.gram, atol=1e-11 * scale)
            np.testing.assert_allclose(basis.s, basis.s.T, atol=0)

    def test_norm_identity(self):
        """Test |Ax| = |Sx| on 1000 random x for each of 50 random bases."""
        rng = np.random.default_rng(99)
        for basis in random_bases(50):
            a = basis.a.to_array()
            x = rng.normal(size=(1000, basis.dim))
            left = np.linalg.norm(x @ a.T, axis=1)
            right = np.linalg.norm(x @ basis.s.T, axis=1)
            assert np.all(np.abs(left - right) <= 1e-10 * (1.0 + left))

    def test_sqrt_det_and_op_norm(self):
        """Test det S and |A| against numpy."""
        for basis in random_bases(20, seed=5):
            a = basis.a.to_array()
            assert basis.sqrt_det == pytest.approx(math.sqrt(np.linalg.det(a.T @ a)), rel=1e-8)
            assert basis.op_norm == pytest.approx(np.linalg.norm(a, 2), rel=1e-12)

    def test_rank_deficient(self):
        """Test dependent columns are refused."""
        with pytest.raises(RankDeficiencyError) as excinfo:
            build_basis([[1, 2], [2, 4], [3, 6]])
        assert excinfo.value.min_eigval <= 1e-10 * excinfo.value.max_eigval

    def test_more_columns_than_rows(self):
        """Test N > M is a dimension error, not a rank failure."""
        with pytest.raises(DomainError) as excinfo:
            build_basis([[1, 0, 0], [0, 1, 0]])
        assert not isinstance(excinfo.value, RankDeficiencyError)
        assert "2x3" in str(excinfo.value)

    def test_cholesky_failure_is_rank_deficiency(self):
        """Test a LinAlgError from the Cholesky step surfaces as RankDeficiencyError."""
        with patch("numpy.linalg.cholesky", side_effect=np.linalg.LinAlgError("Matrix is not positive definite")):
            with pytest.raises(RankDeficiencyError) as excinfo:
                build_basis([[1, 0], [0, 1]])
        assert isinstance(excinfo.value.__cause__, np.linalg.LinAlgError)

    def test_arrays_are_read_only(self):
        basis = build_basis([[1, 0], [0, 1]])
        with pytest.raises(ValueError):
            basis.s[0, 0] = 5.0


class TestJacobi:
    """Tests for jacobi_eigh."""

    def test_matches_numpy(self):
        rng = np.random.default_rng(3)
        for n in (1, 2, 3, 5):
            b = rng.normal(size=(n, n))
            sym = b @ b.T + n * np.eye(n)
            eigvals, eigvecs = jacobi_eigh(sym)
            np.testing.assert_allclose(eigvals, np.linalg.eigvalsh(sym), rtol=1e-12)
            np.testing.assert_allclose(eigvecs @ np.diag(eigvals) @ eigvecs.T, sym, atol=1e-11 * n)
            np.testing.assert_allclose(eigvecs.T @ eigvecs, np.eye(n), atol=1e-12)

    def test_already_diagonal(self):
        eigvals, eigvecs = jacobi_eigh(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_array_equal(eigvals, [1.0, 2.0, 3.0])

    def test_not_square(self):
        with pytest.raises(DomainError):
            jacobi_eigh(np.ones((2, 3)))

    def test_no_convergence(self):
        """Test a sweep budget of zero on a non-diagonal matrix raises ConvergenceError."""
        with pytest.raises(ConvergenceError) as excinfo:
            jacobi_eigh(np.array([[2.0, 1.0], [1.0, 2.0]]), max_sweeps=0)
        assert isinstance(excinfo.value, BallparkError)
        assert "0 sweeps" in str(excinfo.value)


class TestUpperCholesky:
    """Tests for upper_cholesky."""

    def test_factor(self):
        gram = np.array([[4.0, 2.0], [2.0, 3.0]])
        r = upper_cholesky(gram)
        assert r[1, 0] == 0.0
        np.testing.assert_allclose(r.T @ r, gram, rtol=1e-14)

    def test_indefinite(self):
        """Test an indefinite matrix raises RankDeficiencyError instead of LinAlgError."""
        with pytest.raises(RankDeficiencyError) as excinfo:
            upper_cholesky(np.array([[1.0, 2.0], [2.0, 1.0]]))
        assert excinfo.value.min_eigval == pytest.approx(-1.0)
        assert excinfo.value.max_eigval == pytest.approx(3.0)


class TestParsing:
    """Tests for matrix text and documents."""

    def test_text(self):
        """Test comments and blank lines are skipped."""
        text = "# a basis\n1 0 0\n\n0 1 0   # second row\n0 0 1\n"
        matrix = parse_matrix_text(text)
        assert (matrix.rows, matrix.cols) == (3, 3)

    def test_text_ragged(self):
        """Test ragged rows name the line."""
        with pytest.raises(MatrixFormatError) as excinfo:
            parse_matrix_text("1 0\n0 1 2\n", source="a.txt")
        assert excinfo.value.line == 2
        assert "a.txt:2" in str(excinfo.value)

    def test_text_non_numeric(self):
        with pytest.raises(MatrixFormatError):
            parse_matrix_text("1 x\n")

    def test_text_empty(self):
        with pytest.raises(MatrixFormatError):
            parse_matrix_text("# nothing here\n\n")

    def test_document(self):
        matrix = parse_matrix_document({"rows": [[2, 0], [0, 2]], "comment": "2 I"})
        assert matrix.entries == (2.0, 0.0, 0.0, 2.0)

    @pytest.mark.parametrize("doc", [
        {},
        {"rows": []},
        {"rows": [[1, "a"]]},
        {"rows": [[1, 0], [1]]},
        {"rows": [[1]], "extra": 1},
        [[1, 0], [0, 1]],
    ])
    def test_document_errors(self, doc):
        with pytest.raises(MatrixFormatError):
            parse_matrix_document(doc)

    def test_load_text(self, tmp_path):
        path = tmp_path / "basis.txt"
        path.write_text("1 0\n0 1\n")
        assert load_matrix(path).cols == 2

    def test_load_json(self, tmp_path):
        path = tmp_path / "basis.json"
        path.write_text(json.dumps({"rows": [[1, 0], [0, 1], [1, 1]]}))
        matrix = load_matrix(path)
        assert (matrix.rows, matrix.cols) == (3, 2)

    def test_load_bad_json(self, tmp_path):
        path = tmp_path / "basis.json"
        path.write_text("{not json")
        with pytest.raises(MatrixFormatError):
            load_matrix(path)

    def test_load_missing(self, tmp_path):
        with pytest.raises(MatrixFormatError):
            load_matrix(tmp_path / "absent.txt")

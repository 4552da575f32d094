"""The Fayers pairing between conjugate rectangular tableaux, and the matrices F and Phi.

Rows of both matrices are indexed by the canonical standard tableaux
``alpha_i`` of shape ``n^m`` (m rows), columns by their conjugates
``beta_i = alpha_i'`` of shape ``m^n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .errors import ConsistencyError, ShapeError, SingularMatrixError
from .exact_core import Matrix, matrix_inverse_exact, permutation_sign
from .tableaux import Tableau, TableauBasis, conjugate, enumerate_syt, sign


def _column_index(t: Tableau) -> dict:
    return {e: j for j, c in enumerate(t.columns()) for e in c}


def _pairing_from_index(a_col: dict, b_col: dict, m: int, n: int) -> int:
    """Same value as :func:`pairing`, from label-to-column maps.

    Label e belongs to cell (b_col[e], a_col[e]) of gamma; gamma exists
    exactly when these cells are all distinct.
    """
    cells = {e: (b_col[e], a_col[e]) for e in a_col}
    if len(set(cells.values())) != m * n:
        return 0
    grid = [[0] * n for _ in range(m)]
    for e, (i, j) in cells.items():
        grid[i][j] = e
    return permutation_sign([grid[i][j] for j in range(n) for i in range(m)])


def pairing(alpha: Tableau, beta: Tableau) -> int:
    """Fayers number of ``alpha`` (shape n^m) and ``beta`` (shape m^n).

    The candidate tableau gamma has, in row i and column j, the single label
    shared by column j of alpha and column i of beta.  Any intersection of
    size other than one gives 0; otherwise the result is ``sign(gamma)``.
    """
    m, n = alpha.nrows, alpha.ncols
    if not alpha.is_rectangular() or beta.shape != (m,) * n:
        raise ShapeError(f"shapes {alpha.shape} and {beta.shape} are not conjugate rectangles")
    return _pairing_from_index(_column_index(alpha), _column_index(beta), m, n)


def hook_product(m: int, n: int) -> int:
    """Product of hook lengths of the m x n rectangle: prod_{i<n} (m+i)!/i! with m >= n."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    m, n = max(m, n), min(m, n)
    return prod(factorial(m + i) // factorial(i) for i in range(n))


@dataclass(frozen=True)
class FayersMatrix:
    m: int
    n: int
    basis: TableauBasis
    conjugates: tuple
    entries: tuple  # tuple of int rows

    @property
    def matrix(self) -> Matrix:
        return Matrix.from_rows(self.entries)


@dataclass(frozen=True)
class PhiMatrix:
    m: int
    n: int
    basis: TableauBasis
    conjugates: tuple
    entries: tuple

    @property
    def matrix(self) -> Matrix:
        return Matrix.from_rows(self.entries)

    def nonzero(self):
        """Yield ``(i, j, value)`` for the nonzero entries in row-major order."""
        for i, row in enumerate(self.entries):
            for j, v in enumerate(row):
                if v:
                    yield i, j, v


@lru_cache(maxsize=None)
def _fayers(m, n, cap):
    basis = enumerate_syt(m, n, cap)
    conj = tuple(conjugate(a) for a in basis)
    a_idx = [_column_index(a) for a in basis]
    b_idx = [_column_index(b) for b in conj]
    entries = tuple(tuple(_pairing_from_index(ai, bj, m, n) for bj in b_idx) for ai in a_idx)
    return FayersMatrix(m, n, basis, conj, entries)


def fayers_matrix(m: int, n: int, cap: int | None = None) -> FayersMatrix:
    return _fayers(m, n, cap)


def sign_conjugated(fm: FayersMatrix) -> Matrix:
    """``E F E`` with the same sign vector on both sides.

    The right-hand sign of ``beta`` is that of its conjugate, a tableau of
    the row shape, which for ``beta_j = alpha_j'`` is ``sign(alpha_j)``.
    """
    eps = [sign(a) for a in fm.basis]
    k = len(eps)
    return Matrix(k, k, [eps[i] * fm.entries[i][j] * eps[j] for i in range(k) for j in range(k)])


@lru_cache(maxsize=None)
def _phi(m, n, cap):
    fm = fayers_matrix(m, n, cap)
    efe = sign_conjugated(fm)
    try:
        inv = matrix_inverse_exact(efe)
    except SingularMatrixError:
        raise ConsistencyError(f"EFE for ({m},{n}) is singular") from None
    phi = inv.transpose()
    # an integer matrix with an integral inverse has determinant +-1
    if any(x.denominator != 1 for x in phi.entries):
        raise ConsistencyError(f"EFE for ({m},{n}) is not unimodular: Phi is not integral")
    k = phi.rows
    entries = tuple(tuple(int(phi[i, j]) for j in range(k)) for i in range(k))
    return PhiMatrix(m, n, fm.basis, fm.conjugates, entries)


def phi_matrix(m: int, n: int, cap: int | None = None) -> PhiMatrix:
    """``Phi = (EFE)^{-T}``, computed by exact inversion."""
    return _phi(m, n, cap)

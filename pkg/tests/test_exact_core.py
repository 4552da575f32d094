from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import cofactor_det, inversion_sign, vandermonde_product
from specht_vdm.errors import DimensionError, SingularMatrixError, UnknownVariableError
from specht_vdm.exact_core import (
    Matrix,
    MultiPoly,
    det_exact,
    det_minor_ordered,
    kernel_exact,
    matrix_inverse_exact,
    permutation_sign,
    poly_coeff,
    poly_diff,
    poly_eval,
    poly_substitute,
    polyvars,
    to_scalar,
)

small_ints = st.integers(-9, 9)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


# -- scalars -------------------------------------------------------------


def test_to_scalar_is_reduced():
    x = to_scalar("-6/4")
    assert (x.numerator, x.denominator) == (-3, 2)
    assert to_scalar(0) == Fraction(0, 1) and to_scalar("0/5").denominator == 1


def test_to_scalar_rejects_bool():
    with pytest.raises(TypeError):
        to_scalar(True)


@given(st.permutations(list(range(7))))
def test_permutation_sign_matches_inversions(word):
    assert permutation_sign(word) == inversion_sign(word)


# -- determinants ----------------------------------------------------------


def test_det_two_by_two():
    assert det_exact(Matrix.from_rows([[1, 2], [3, 4]])) == -2


def test_det_empty_and_nonsquare():
    assert det_exact(Matrix(0, 0, [])) == 1
    with pytest.raises(DimensionError):
        det_exact(Matrix.from_rows([[1, 2, 3], [4, 5, 6]]))


def test_det_equal_rows_vanishes():
    assert det_exact(Matrix.from_rows([[1, 5, 2], [7, 1, 1], [1, 5, 2]])) == 0


def test_det_cofactor_oracle_seeded():
    rng = np.random.default_rng(2024)
    for trial in range(200):
        n = 1 + trial % 5
        rows = rng.integers(-9, 10, size=(n, n)).tolist()
        assert det_exact(Matrix.from_rows(rows)) == cofactor_det(rows)


@given(st.integers(1, 5).flatmap(square))
def test_det_agrees_with_cofactor(rows):
    assert det_exact(Matrix.from_rows(rows)) == cofactor_det(rows)


@given(st.lists(st.fractions(max_denominator=7), min_size=2, max_size=4))
def test_det_rational_vandermonde(row):
    n = len(row)
    rows = [[x ** k for k in range(n)] for x in row]
    assert det_exact(Matrix.from_rows(rows)) == vandermonde_product(row)


def test_det_symbolic_vandermonde():
    zs = polyvars("z1", "z2", "z3", "z4")
    M = Matrix.from_rows([[z ** k for k in range(4)] for z in zs])
    assert det_exact(M) == vandermonde_product(list(zs))


def test_det_symbolic_spot_check():
    a, b, c, d, e = polyvars("a", "b", "c", "d", "e")
    M = Matrix.from_rows([[a, b, 1], [c, a * e, d], [b, 2, c + e]])
    D = det_exact(M)
    rng = np.random.default_rng(5)
    for _ in range(10):
        vals = {v: Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for v in "abcde"}
        numeric = M.map(lambda x: poly_eval(x, vals) if isinstance(x, MultiPoly) else x)
        assert poly_eval(D, vals) == det_exact(numeric)


# -- ordered minors --------------------------------------------------------


def test_minor_ordered_basic():
    A = Matrix.from_rows([[1, 2], [3, 5], [7, 11], [13, 17]])
    assert det_minor_ordered(A, [0, 1]) == -1
    assert det_minor_ordered(A, [1, 0]) == 1
    assert det_minor_ordered(A, [0, 0]) == 0
    with pytest.raises(DimensionError):
        det_minor_ordered(A, [0, 1, 2])


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_minor_ordered_alternating(k):
    rng = np.random.default_rng(k)
    A = Matrix.from_rows(rng.integers(-9, 10, size=(6, k)).tolist())
    base = [5, 2, 0, 3][:k]
    ref = det_minor_ordered(A, base)
    for p in permutations(range(k)):
        assert det_minor_ordered(A, [base[i] for i in p]) == inversion_sign(p) * ref


# -- polynomials -----------------------------------------------------------


def test_poly_diff_examples():
    x, y = polyvars("x", "y")
    assert poly_diff(x * x * y, "x") == 2 * x * y
    assert poly_diff(y, "x").is_zero()
    a, b = polyvars("a", "b")
    assert poly_diff(a * b + a ** 2, "a") == b + 2 * a
    with pytest.raises(UnknownVariableError):
        poly_diff(a, "z")


def test_poly_coeff_examples():
    a, b, c = polyvars("a", "b", "c")
    assert poly_coeff(a * b + c, [("a", 1)]) == b
    assert poly_coeff(a * b, [("a", 1), ("b", 1)]) == 1
    assert poly_coeff(a * b, {"a": 2}).is_zero()
    with pytest.raises(UnknownVariableError):
        poly_coeff(a, [("q", 1)])


def test_poly_eval_examples():
    x, y = polyvars("x", "y")
    assert poly_eval(x - y, {"x": 3, "y": 1}) == 2
    assert poly_eval(MultiPoly.constant(0, ("x",)), {"x": 4}) == 0
    assert poly_eval(x * y, {"x": Fraction(1, 2), "y": Fraction(2, 3)}) == Fraction(1, 3)
    with pytest.raises(UnknownVariableError):
        poly_eval(x * y, {"x": 1})
    with pytest.raises(UnknownVariableError):
        poly_eval(x, {"x": 1, "w": 2})


def test_poly_substitute_partial():
    x, y = polyvars("x", "y")
    p = poly_substitute(x * x + y, {"x": y + 1}, strict=False)
    assert p == (y + 1) ** 2 + y
    assert poly_substitute(x * y, {"x": 2, "y": 3}) == 6


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small_ints, max_size=5),
       st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small_ints, max_size=5),
       st.fractions(max_denominator=5), st.fractions(max_denominator=5))
def test_poly_ring_laws_under_evaluation(t1, t2, xv, yv):
    p, q = MultiPoly(("x", "y"), t1), MultiPoly(("x", "y"), t2)
    pt = {"x": xv, "y": yv}
    assert poly_eval(p * q, pt) == poly_eval(p, pt) * poly_eval(q, pt)
    assert poly_eval(p - q, pt) == poly_eval(p, pt) - poly_eval(q, pt)
    assert all(c != 0 for c in (p * q).terms.values())


def test_universe_merge():
    x = MultiPoly.var("x")
    y = MultiPoly.var("y")
    s = x + y
    assert set(s.variables) == {"x", "y"} and s.total_degree() == 1


# -- inverse and kernel ----------------------------------------------------


def test_inverse_examples():
    I3 = Matrix.identity(3)
    assert matrix_inverse_exact(I3) == I3
    D = Matrix.from_rows([[1, 0], [0, -1]])
    assert matrix_inverse_exact(D) == D
    with pytest.raises(SingularMatrixError):
        matrix_inverse_exact(Matrix.from_rows([[1, 2], [2, 4]]))


def test_inverse_of_unitriangular_sign_matrix_is_integral():
    # EFE for (3,2) assembled from the printed F and the signs of the five tableaux
    F = [[1, 0, 0, 0, 0], [0, -1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [-1, 0, 0, 0, -1]]
    eps = [1, -1, 1, 1, -1]
    efe = Matrix.from_rows([[eps[i] * F[i][j] * eps[j] for j in range(5)] for i in range(5)])
    inv = matrix_inverse_exact(efe)
    assert efe @ inv == Matrix.identity(5)
    assert all(x.denominator == 1 for x in inv.entries)


@given(st.integers(1, 4).flatmap(square))
def test_inverse_round_trip(rows):
    M = Matrix.from_rows(rows)
    if det_exact(M) == 0:
        with pytest.raises(SingularMatrixError):
            matrix_inverse_exact(M)
    else:
        assert matrix_inverse_exact(M) @ M == Matrix.identity(len(rows))


def test_kernel_vectors_annihilate():
    M = Matrix.from_rows([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]])
    ker = kernel_exact(M)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(M[i, j] * v[j] for j in range(4)) == 0 for i in range(3))

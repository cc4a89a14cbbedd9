from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conjrank.errors import Singular
from conjrank.exact_linalg import (RationalMatrix, format_rational, hermite_rows,
                                   integer_kernel_basis, rank, solve, solve_unitriangular)

S3_MATRIX = [[6, 3, 2, 1], [3, 2, 1, 1], [2, 1, 2, 1], [1, 1, 1, 1]]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
matrices = st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=m, max_size=m)))
int_matrices = st.integers(1, 4).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


class TestRank:
    def test_zero(self):
        assert rank([[0] * 3] * 3) == 0

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_identity(self, n):
        assert rank([[int(i == j) for j in range(n)] for i in range(n)]) == n

    def test_s3_matrix(self):
        assert rank(S3_MATRIX) == 3
        # minors: full determinant vanishes, a 3x3 minor does not
        assert sympy.Matrix(S3_MATRIX).det() == 0
        assert sympy.Matrix(S3_MATRIX)[:3, :3].det() != 0

    def test_rational_entries(self):
        assert rank([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]) == 1

    def test_accepts_rational_matrix(self):
        M = RationalMatrix.from_rows(S3_MATRIX)
        assert rank(M) == 3 and M.shape == (4, 4)

    @settings(max_examples=200)
    @given(matrices)
    def test_matches_independent_oracles(self, rows):
        r = rank(rows)
        assert r == sympy.Matrix(rows).rank()
        assert r == oracles.fraction_rank(rows)
        assert r == rank([list(c) for c in zip(*rows)])

    @settings(max_examples=50)
    @given(matrices, st.lists(st.integers(-3, 3), min_size=6, max_size=6))
    def test_invariant_under_unimodular(self, rows, coeffs):
        n = len(rows[0])
        # unit upper triangular times a column permutation
        U = [[1 if i == j else (coeffs[(i + j) % 6] if j > i else 0) for j in range(n)]
             for i in range(n)]
        U = [row[1:] + row[:1] for row in U]
        M = RationalMatrix.from_rows(rows) @ RationalMatrix.from_rows(U)
        assert rank(M) == rank(rows)


class TestSolve:
    def test_identity(self):
        t = [Fraction(1, 3), 2, -1]
        eye = [[int(i == j) for j in range(3)] for i in range(3)]
        assert solve_unitriangular(eye, t) == t

    def test_two_by_two(self):
        assert solve_unitriangular([[2, 0], [1, 1]], [1, 0]) == [Fraction(1, 2), Fraction(-1, 2)]

    def test_marks_of_c2(self):
        # table of marks of C2 over (1, C2): columns [C2/1] = (2, 0), [C2/C2] = (1, 1)
        marks = [[2, 1], [0, 1]]
        x = solve_unitriangular(marks, [0, 1])
        assert x == [Fraction(-1, 2), 1]  # e_C2 = [C2/C2] - 1/2 [C2/1]

    def test_singular(self):
        with pytest.raises(Singular):
            solve_unitriangular([[1, 0], [1, 0]], [1, 1])
        with pytest.raises(Singular):
            solve([[1, 2], [2, 4]], [1, 1])

    def test_general_solve(self):
        A = [[0, 1], [1, 1]]
        assert solve_unitriangular(A, [1, 3]) == [2, 1]


class TestIntegerKernel:
    def test_zero_matrix(self):
        assert integer_kernel_basis([[0, 0, 0]]) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert integer_kernel_basis([], ncols=2) == [[1, 0], [0, 1]]

    def test_equality_constraint(self):
        assert integer_kernel_basis([[1, -1]]) == [[1, 1]]

    def test_saturated(self):
        # kernel of (2, 4) is spanned by (2, -1), not by a multiple
        assert integer_kernel_basis([[2, 4]]) == [[2, -1]]

    @settings(max_examples=150)
    @given(int_matrices)
    def test_properties(self, A):
        basis = integer_kernel_basis(A)
        k = len(A[0])
        assert len(basis) == k - sympy.Matrix(A).rank()
        for v in basis:
            assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
        if basis:
            assert rank(basis) == len(basis)
            # echelon: pivots strictly increase, positive, reduced above
            pivots = [next(j for j, x in enumerate(v) if x) for v in basis]
            assert pivots == sorted(set(pivots))
            for i, (v, p) in enumerate(zip(basis, pivots)):
                assert v[p] > 0
                for w in basis[:i]:
                    assert 0 <= w[p] < v[p]
            # saturation: the lattice is the full kernel (gcd of maximal minors is 1)
            minors = sympy.Matrix(basis)
            g = 0
            for cols in combinations(range(k), len(basis)):
                g = sympy.gcd(g, minors.extract(list(range(len(basis))), list(cols)).det())
            assert g == 1


def test_hermite_rows_drops_zero_rows():
    assert hermite_rows([[0, 0], [2, 4], [1, 1]]) == [[1, 1], [0, 2]]


def test_format_rational():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(4) == "4/1"

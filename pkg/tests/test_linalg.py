"""Exact matrix helpers and the sparse row-reduction machinery."""

from __future__ import annotations

from fractions import Fraction

import pytest

from skewpoisson.linalg import (
    RowSpace,
    det_generic,
    identity_matrix,
    inverse,
    mat_add,
    mat_mul,
    mat_scale,
    matrix_from_rows,
    parse_scalar,
    solve_combination,
    transpose,
)


class TestScalarsAndMatrices:
    def test_parse_scalar_forms(self):
        assert parse_scalar("-1") == -1
        assert parse_scalar("1/2") == Fraction(1, 2)
        assert parse_scalar("−3/4") == Fraction(-3, 4)
        with pytest.raises(ValueError):
            parse_scalar("a/b")
        with pytest.raises(ValueError):
            parse_scalar("1/0")

    def test_matrix_round_trip_and_ops(self):
        m = matrix_from_rows([["1", "2"], ["3", "4"]])
        n = matrix_from_rows([["0", "1"], ["1", "0"]])
        assert mat_mul(m, identity_matrix(2)) == m
        assert mat_mul(m, n) == matrix_from_rows([["2", "1"], ["4", "3"]])
        assert transpose(m) == matrix_from_rows([["1", "3"], ["2", "4"]])
        assert mat_add(m, mat_scale(Fraction(-1), m)) == matrix_from_rows(
            [["0", "0"], ["0", "0"]]
        )

    def test_ragged_matrix_rejected(self):
        with pytest.raises(ValueError, match="unequal"):
            matrix_from_rows([["1", "2"], ["3"]])

    def test_inverse(self):
        m = matrix_from_rows([["1", "2"], ["3", "4"]])
        assert mat_mul(m, inverse(m)) == identity_matrix(2)

    def test_singular_inverse_rejected(self):
        with pytest.raises(ValueError, match="singular"):
            inverse(matrix_from_rows([["1", "2"], ["2", "4"]]))

    def test_det_generic_on_scalars(self):
        m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
        assert det_generic(m) == 1
        three = [
            [Fraction(1), Fraction(0), Fraction(2)],
            [Fraction(0), Fraction(3), Fraction(0)],
            [Fraction(1), Fraction(0), Fraction(1)],
        ]
        assert det_generic(three) == -3


class TestRowSpace:
    def test_rank_and_membership(self):
        space = RowSpace()
        assert space.add({0: Fraction(1), 1: Fraction(2)})
        assert not space.add({0: Fraction(2), 1: Fraction(4)})  # dependent
        assert space.add({1: Fraction(1)})
        assert space.rank == 2
        assert space.contains({0: Fraction(3), 1: Fraction(-7)})
        assert not space.contains({2: Fraction(1)})

    def test_reduced_rows_are_canonical(self):
        space = RowSpace()
        space.add({0: Fraction(2), 1: Fraction(2)})
        space.add({0: Fraction(1), 1: Fraction(2), 2: Fraction(1)})
        rows = space.reduced_rows()
        assert rows == [
            {0: Fraction(1), 2: Fraction(-1)},
            {1: Fraction(1), 2: Fraction(1)},
        ]

    def test_solve_combination_consistent(self):
        vectors = [
            {0: Fraction(1), 1: Fraction(1)},
            {1: Fraction(1)},
            {0: Fraction(1)},  # dependent on the first two
        ]
        target = {0: Fraction(3), 1: Fraction(5)}
        coeffs, rank, residual = solve_combination(vectors, target)
        assert rank == 2
        assert residual == {}
        # replay the combination exactly
        acc: dict = {}
        for c, vec in zip(coeffs, vectors):
            for col, val in vec.items():
                acc[col] = acc.get(col, Fraction(0)) + c * val
        assert {k: v for k, v in acc.items() if v} == target

    def test_solve_combination_inconsistent(self):
        vectors = [{0: Fraction(1)}]
        target = {1: Fraction(1)}
        coeffs, rank, residual = solve_combination(vectors, target)
        assert coeffs is None
        assert rank == 1
        assert residual == {1: Fraction(1)}

    def test_zero_vector_never_increases_rank(self):
        space = RowSpace()
        assert not space.add({})
        assert space.rank == 0
        assert space.contains({})

"""Polynomial arithmetic, derivatives, substitution, and the bracket."""

from __future__ import annotations

from fractions import Fraction

import pytest

from skewpoisson import (
    Polynomial,
    SymplecticForm,
    parse_poly,
    partial_derivative,
    poisson_bracket,
    substitute_linear,
)
from skewpoisson.linalg import identity_matrix, mat_mul, matrix_from_rows


def P(text: str, nvars: int = 4) -> Polynomial:
    return parse_poly(text, nvars=nvars)


def oracle_product(a: Polynomial, b: Polynomial) -> Polynomial:
    """Term-by-term product, written independently of Polynomial.__mul__."""
    acc: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            acc[key] = acc.get(key, Fraction(0)) + ca * cb
    return Polynomial(a.nvars, acc)


class TestRingOps:
    def test_product_of_sums(self):
        # (x1^2 + x3^2)(x2^2 + x4^2), expanded by hand
        left = P("x1^2 + x3^2")
        right = P("x2^2 + x4^2")
        expected = P("x1^2*x2^2 + x1^2*x4^2 + x2^2*x3^2 + x3^2*x4^2")
        assert left * right == expected
        assert oracle_product(left, right) == expected

    def test_additive_identity(self):
        p = P("x1*x2 - 3*x4")
        assert p + Polynomial.zero(4) == p
        assert p + 0 == p

    def test_cube_binomial(self):
        # (x1*x2 + x3*x4)^3 by the binomial theorem
        base = P("x1*x2 + x3*x4")
        expected = P(
            "x1^3*x2^3 + 3*x1^2*x2^2*x3*x4 + 3*x1*x2*x3^2*x4^2 + x3^3*x4^3"
        )
        assert base**3 == expected
        assert oracle_product(oracle_product(base, base), base) == expected

    def test_mismatched_nvars_rejected(self):
        with pytest.raises(ValueError, match="mismatch"):
            P("x1", nvars=2) + P("x1", nvars=3)
        with pytest.raises(ValueError, match="mismatch"):
            P("x1", nvars=2) * P("x1", nvars=3)

    def test_canonical_form_drops_zeros(self):
        p = Polynomial(2, {(1, 0): Fraction(1), (0, 1): Fraction(0)})
        assert len(p) == 1
        assert (p - p).is_zero
        q = Polynomial(2, {(1, 0): Fraction(-1)})
        assert (p + q).is_zero

    def test_scalar_and_power_rules(self):
        p = P("x1 + x2", nvars=2)
        assert p * Fraction(1, 2) == P("1/2*x1 + 1/2*x2", nvars=2)
        assert p**0 == Polynomial.one(2)
        with pytest.raises(ValueError):
            p ** (-1)

    def test_equality_and_hash_are_structural(self):
        a = P("x1^2 - x2")
        b = P("-x2 + x1^2")
        assert a == b
        assert hash(a) == hash(b)
        assert a != P("x1^2 + x2")


class TestDerivative:
    def test_power_rule(self):
        assert partial_derivative(P("x1^2 + x3^2"), 0) == P("2*x1")

    def test_absent_variable(self):
        assert partial_derivative(P("x1^2 + x3^2"), 1).is_zero

    def test_two_term_derivative(self):
        got = partial_derivative(P("x1*x2*x4^2 + x2^2*x3*x4"), 3)
        assert got == P("2*x1*x2*x4 + x2^2*x3")

    def test_index_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            partial_derivative(P("x1"), 4)


class TestSubstitution:
    def test_kill_first_block(self):
        proj = matrix_from_rows([["0", "0", "0", "0"],
                                 ["0", "0", "0", "0"],
                                 ["0", "0", "1", "0"],
                                 ["0", "0", "0", "1"]])
        assert substitute_linear(P("x1^2 + x3^2"), proj) == P("x3^2")

    def test_identity_matrix(self):
        p = P("x1*x2^3 - 5/7*x4")
        assert substitute_linear(p, identity_matrix(4)) == p

    def test_pair_swap_fixes_h1(self):
        swap = matrix_from_rows([["0", "0", "1", "0"],
                                 ["0", "0", "0", "1"],
                                 ["1", "0", "0", "0"],
                                 ["0", "1", "0", "0"]])
        p = P("x1*x2 + x3*x4")
        assert substitute_linear(p, swap) == p

    def test_composition_law_dense_matrices(self):
        p = P("x1^2*x2 - x3*x4 + 2")
        m = matrix_from_rows([["1", "2", "0", "1"],
                              ["0", "1", "1", "0"],
                              ["1", "0", "1", "1"],
                              ["0", "1", "0", "2"]])
        n = matrix_from_rows([["2", "0", "1", "0"],
                              ["1", "1", "0", "0"],
                              ["0", "0", "1", "1"],
                              ["1", "0", "0", "1"]])
        assert substitute_linear(substitute_linear(p, m), n) == substitute_linear(
            p, mat_mul(m, n)
        )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="4x4"):
            substitute_linear(P("x1"), identity_matrix(3))


class TestSymplecticForm:
    def test_standard_form_matrix(self, form):
        assert SymplecticForm.standard(4) == form

    def test_rejects_odd_dimension(self):
        with pytest.raises(ValueError, match="even"):
            SymplecticForm.standard(3)

    def test_rejects_non_antisymmetric(self):
        with pytest.raises(ValueError, match="antisymmetric"):
            SymplecticForm(identity_matrix(2))

    def test_rejects_singular(self):
        rows = [["0", "0"], ["0", "0"]]
        with pytest.raises(ValueError):
            SymplecticForm(rows)


class TestPoissonBracket:
    def test_bundled_generator_bracket(self, form):
        # the bracket of the first two invariant generators
        assert poisson_bracket(P("x1^2 + x3^2"), P("x1*x2 + x3*x4"), form) == P(
            "2*x1^2 + 2*x3^2"
        )

    def test_self_bracket_vanishes(self, form):
        p = P("x1^3*x4 - 2*x2*x3 + 1/3")
        assert poisson_bracket(p, p, form).is_zero

    def test_darboux_pairs(self, form):
        x = [P(f"x{i}") for i in range(1, 5)]
        assert poisson_bracket(x[0], x[1], form) == Polynomial.one(4)
        assert poisson_bracket(x[0], x[3], form).is_zero
        assert poisson_bracket(x[2], x[3], form) == Polynomial.one(4)
        assert poisson_bracket(x[1], x[0], form) == Polynomial.constant(4, -1)

    def test_dimension_mismatch(self, form):
        with pytest.raises(ValueError, match="does not match"):
            poisson_bracket(P("x1", nvars=2), P("x1", nvars=2), form)

    def test_nonstandard_form_tensor(self):
        # doubled form: bracket scales by 1/2 relative to the standard one
        doubled = SymplecticForm([["0", "2"], ["-2", "0"]])
        p, q = P("x1", nvars=2), P("x2", nvars=2)
        assert poisson_bracket(p, q, doubled) == Polynomial.constant(2, Fraction(1, 2))

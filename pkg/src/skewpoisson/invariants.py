"""Invariant theory for finite matrix groups acting on polynomials.

Two independent routes to the dimensions of the invariant degree slices are
kept side by side on purpose: the Molien series (exact power-series
expansion of averaged characteristic determinants) and brute force
(Reynolds images of all monomials of a degree, row-reduced over the
rationals).  Generator verification compares the span of generator
products against those slices degree by degree, and relation verification
substitutes the generators into candidate relations and reports the
residual verbatim; a nonzero residual is a finding, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .groups import FiniteMatrixGroup, act_on_poly
from .poly import Polynomial, grlex_key, monomials_of_degree

__all__ = [
    "reynolds",
    "is_invariant",
    "molien_coefficients",
    "invariant_basis",
    "GeneratorSet",
    "RelationSet",
    "DegreeRow",
    "GeneratorSpanReport",
    "RelationReport",
    "verify_generators",
    "verify_relations",
]


def reynolds(group: FiniteMatrixGroup, p: Polynomial) -> Polynomial:
    """Average of a polynomial over the group; projects onto invariants."""
    if p.nvars != group.dim:
        raise ValueError(
            f"polynomial has {p.nvars} variables, group acts on {group.dim}"
        )
    total = Polynomial.zero(group.dim)
    for g in group.elements:
        total = total + act_on_poly(g, p)
    return total * Fraction(1, group.order)


def is_invariant(group: FiniteMatrixGroup, p: Polynomial, exhaustive: bool = False) -> bool:
    """Whether every group element fixes ``p``.

    By default only the generators are tested, which suffices because the
    action is a homomorphism; ``exhaustive=True`` checks all elements (the
    property suite compares the two).
    """
    if p.nvars != group.dim:
        raise ValueError(
            f"polynomial has {p.nvars} variables, group acts on {group.dim}"
        )
    if exhaustive:
        candidates = group.elements
    else:
        candidates = [group.elements[i] for i in group.generator_indices]
    return all(act_on_poly(g, p) == p for g in candidates)


def _char_det(group: FiniteMatrixGroup, element_index: int) -> list:
    """Coefficients of det(I - t*g) as a list indexed by power of t."""
    n = group.dim
    matrix = group.elements[element_index].matrix
    entries = [
        [
            Polynomial(1, {(0,): Fraction(1) if i == j else Fraction(0),
                           (1,): -matrix[i][j]})
            for j in range(n)
        ]
        for i in range(n)
    ]
    det = linalg.det_generic(entries)
    return [det.coefficient((k,)) for k in range(n + 1)]


def molien_coefficients(group: FiniteMatrixGroup, up_to_degree: int) -> list:
    """Dimensions of the invariant degree slices, from the Molien series.

    Expands ``(1/|G|) sum_g 1/det(I - t g)`` exactly to the requested order.
    Coefficient 0 is always 1.
    """
    if up_to_degree < 0:
        raise ValueError("up_to_degree must be non-negative")
    total = [Fraction(0)] * (up_to_degree + 1)
    for idx in range(group.order):
        dets = _char_det(group, idx)
        # power-series inverse of the determinant; constant term is det(I) = 1
        inv = [Fraction(1)]
        for k in range(1, up_to_degree + 1):
            acc = Fraction(0)
            for j in range(1, min(k, len(dets) - 1) + 1):
                acc += dets[j] * inv[k - j]
            inv.append(-acc)
        for k in range(up_to_degree + 1):
            total[k] += inv[k]
    coeffs = []
    for k, value in enumerate(total):
        value = value / group.order
        if value.denominator != 1:
            raise RuntimeError(
                f"Molien coefficient at degree {k} is not an integer: {value}"
            )
        coeffs.append(int(value))
    return coeffs


def _slice_axis(nvars: int, degree: int) -> dict:
    """Column index per degree-``degree`` monomial, grlex-descending."""
    monos = sorted(monomials_of_degree(nvars, degree), key=grlex_key, reverse=True)
    return {m: i for i, m in enumerate(monos)}


def _slice_vector(p: Polynomial, axis: dict) -> dict:
    vec = {}
    for exps, coeff in p._terms.items():
        vec[axis[exps]] = coeff
    return vec


def invariant_basis(group: FiniteMatrixGroup, degree: int) -> list:
    """A canonical basis of the degree-``degree`` invariant slice.

    Row-reduces the Reynolds images of all monomials of the degree; the
    returned polynomials are the fully reduced echelon rows (leading
    coefficient 1), so the basis is deterministic.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    axis = _slice_axis(group.dim, degree)
    back = {i: m for m, i in axis.items()}
    space = linalg.RowSpace()
    for exps in axis:
        image = reynolds(group, Polynomial.monomial(group.dim, exps))
        if image.is_zero:
            continue
        space.add(_slice_vector(image, axis))
    basis = []
    for row in space.reduced_rows():
        basis.append(Polynomial(group.dim, {back[i]: c for i, c in row.items()}))
    return basis


@dataclass(frozen=True)
class GeneratorSet:
    """Named polynomials proposed as algebra generators of the invariants."""

    names: tuple
    polys: tuple

    def __post_init__(self):
        if len(self.names) != len(self.polys):
            raise ValueError("generator names and polynomials differ in number")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")

    def __len__(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class RelationSet:
    """Candidate relations, as polynomials in the abstract generator names."""

    names: tuple
    polys: tuple  # Polynomial instances with nvars == len(GeneratorSet)

    def __post_init__(self):
        if len(self.names) != len(self.polys):
            raise ValueError("relation names and polynomials differ in number")


@dataclass(frozen=True)
class DegreeRow:
    degree: int
    molien: int
    slice_dim: int
    span_dim: int

    @property
    def deficient(self) -> bool:
        return self.span_dim < self.slice_dim

    @property
    def oracles_agree(self) -> bool:
        return self.molien == self.slice_dim


@dataclass(frozen=True)
class GeneratorSpanReport:
    rows: tuple  # tuple[DegreeRow, ...]

    @property
    def deficient_degrees(self) -> tuple:
        return tuple(r.degree for r in self.rows if r.deficient)

    @property
    def complete(self) -> bool:
        return not self.deficient_degrees


@dataclass(frozen=True)
class RelationReport:
    names: tuple
    residuals: tuple  # tuple[Polynomial, ...]

    @property
    def nonzero(self) -> tuple:
        return tuple(
            (n, r) for n, r in zip(self.names, self.residuals) if not r.is_zero
        )

    @property
    def all_zero(self) -> bool:
        return not self.nonzero


def _weighted_exponents(weights: Sequence[int], degree: int):
    """Exponent vectors e with sum(e[i] * weights[i]) == degree."""
    if not weights:
        if degree == 0:
            yield ()
        return
    w = weights[0]
    rest = weights[1:]
    e = 0
    while e * w <= degree:
        for tail in _weighted_exponents(rest, degree - e * w):
            yield (e,) + tail
        e += 1


def verify_generators(
    group: FiniteMatrixGroup,
    gens: GeneratorSet,
    up_to_degree: int,
    molien: Optional[Sequence[int]] = None,
) -> GeneratorSpanReport:
    """Compare generator-product spans with the invariant slices per degree.

    Requires homogeneous generators of positive degree, so the grading is
    respected and a degree-slice comparison is exact.  A deficient degree is
    reported, not raised.
    """
    for name, p in zip(gens.names, gens.polys):
        if p.nvars != group.dim:
            raise ValueError(f"generator {name!r} has the wrong variable count")
        if not is_invariant(group, p):
            raise ValueError(f"generator {name!r} is not invariant")
        if not p.is_homogeneous() or p.total_degree() < 1:
            raise ValueError(
                f"generator {name!r} must be homogeneous of positive degree"
            )
    weights = [p.total_degree() for p in gens.polys]
    if molien is None:
        molien = molien_coefficients(group, up_to_degree)

    power_cache = [dict() for _ in gens.polys]

    def gen_power(i: int, e: int) -> Polynomial:
        cached = power_cache[i].get(e)
        if cached is None:
            cached = gens.polys[i] ** e
            power_cache[i][e] = cached
        return cached

    rows = []
    for d in range(up_to_degree + 1):
        slice_dim = len(invariant_basis(group, d))
        axis = _slice_axis(group.dim, d)
        space = linalg.RowSpace()
        for exps in _weighted_exponents(weights, d):
            prod = Polynomial.one(group.dim)
            for i, e in enumerate(exps):
                if e:
                    prod = prod * gen_power(i, e)
            if not prod.is_zero:
                space.add(_slice_vector(prod, axis))
        rows.append(DegreeRow(d, molien[d], slice_dim, space.rank))
    return GeneratorSpanReport(tuple(rows))


def verify_relations(gens: GeneratorSet, rels: RelationSet) -> RelationReport:
    """Substitute the generators into each relation and report residuals."""
    k = len(gens)
    residuals = []
    power_cache = [dict() for _ in gens.polys]

    def gen_power(i: int, e: int) -> Polynomial:
        cached = power_cache[i].get(e)
        if cached is None:
            cached = gens.polys[i] ** e
            power_cache[i][e] = cached
        return cached

    nvars = gens.polys[0].nvars if gens.polys else 1
    for name, rel in zip(rels.names, rels.polys):
        if rel.nvars != k:
            raise ValueError(
                f"relation {name!r} uses {rel.nvars} abstract variables, expected {k}"
            )
        total = Polynomial.zero(nvars)
        for exps, coeff in rel._terms.items():
            term = Polynomial.constant(nvars, coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * gen_power(i, e)
            total = total + term
        residuals.append(total)
    return RelationReport(tuple(rels.names), tuple(residuals))

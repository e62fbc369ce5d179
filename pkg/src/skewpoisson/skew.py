"""The skew group algebra of a polynomial ring and a finite matrix group.

Elements are finitely supported maps from group elements to polynomials,
written ``sum_g psi_g . g``.  The product twists by the group action,

    (psi . g)(phi . h) = (psi * (g . phi)) . (g h),

extended bilinearly.  On top of the ring structure this module provides the
trace-space machinery: restriction of a polynomial to the fixed space of a
group element, and the per-conjugacy-class projections whose direct sum
realizes the zeroth Hochschild homology of the algebra.  The class-``i``
projection sends a commutator to zero and acts as the identity on
``psi . g_i`` whenever ``psi`` is a centralizer-invariant polynomial on the
fixed space of the representative ``g_i``; both facts are what the
obstruction computation leans on, and both are covered by the property
suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .groups import (
    ElementLike,
    FiniteMatrixGroup,
    GroupElement,
    act_on_poly,
    fixed_projection,
)
from .poly import Polynomial, format_poly, substitute_linear

__all__ = [
    "NotFixedError",
    "SkewElement",
    "commutator",
    "restrict_to_fixed",
    "hh0_project",
    "TraceVector",
    "trace_vector",
    "inner_derivation_g_part",
]


class NotFixedError(ValueError):
    """A polynomial violated a fixedness precondition (``g . x != x``)."""


class SkewElement:
    """An element of the skew group algebra, ``sum_g psi_g . g``.

    Immutable; zero polynomial parts are never stored.  Arithmetic mixes
    with plain polynomials and scalars, which embed at the identity.
    """

    __slots__ = ("group", "_parts")

    def __init__(self, group: FiniteMatrixGroup, parts: Mapping[int, Polynomial]):
        clean = {}
        for idx, p in parts.items():
            idx = group.element_index(idx)
            if not isinstance(p, Polynomial):
                raise TypeError("skew element parts must be Polynomial instances")
            if p.nvars != group.dim:
                raise ValueError(
                    f"part polynomial has {p.nvars} variables, group acts on {group.dim}"
                )
            if not p.is_zero:
                clean[idx] = p
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "_parts", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("SkewElement instances are immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, group: FiniteMatrixGroup) -> "SkewElement":
        return cls(group, {})

    @classmethod
    def one(cls, group: FiniteMatrixGroup) -> "SkewElement":
        return cls(group, {0: Polynomial.one(group.dim)})

    @classmethod
    def term(cls, group: FiniteMatrixGroup, poly: Polynomial, g: ElementLike) -> "SkewElement":
        """The single-term element ``poly . g``."""
        return cls(group, {group.element_index(g): poly})

    @classmethod
    def from_polynomial(cls, group: FiniteMatrixGroup, poly: Polynomial) -> "SkewElement":
        return cls.term(group, poly, 0)

    # ------------------------------------------------------------------
    # inspection

    def parts(self):
        """Iterate ``(element index, polynomial)`` pairs, index ascending."""
        return iter(sorted(self._parts.items()))

    def support(self) -> tuple:
        return tuple(sorted(self._parts))

    @property
    def is_zero(self) -> bool:
        return not self._parts

    def g_part(self, g: ElementLike) -> Polynomial:
        """Coefficient polynomial of a group element (zero if absent)."""
        idx = self.group.element_index(g)
        return self._parts.get(idx, Polynomial.zero(self.group.dim))

    # ------------------------------------------------------------------
    # arithmetic

    def _coerce(self, other):
        if isinstance(other, SkewElement):
            if other.group is not self.group:
                raise ValueError("skew elements belong to different groups")
            return other
        if isinstance(other, Polynomial):
            return SkewElement.from_polynomial(self.group, other)
        if isinstance(other, (int, Fraction)):
            return SkewElement.from_polynomial(
                self.group, Polynomial.constant(self.group.dim, other)
            )
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        parts = dict(self._parts)
        for idx, p in other._parts.items():
            acc = parts.get(idx, Polynomial.zero(self.group.dim)) + p
            if acc.is_zero:
                parts.pop(idx, None)
            else:
                parts[idx] = acc
        return SkewElement(self.group, parts)

    __radd__ = __add__

    def __neg__(self):
        return SkewElement(self.group, {i: -p for i, p in self._parts.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SkewElement(self.group, {i: p * other for i, p in self._parts.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        table = self.group.mul_table
        elements = self.group.elements
        parts: dict = {}
        for ia, pa in self._parts.items():
            ga = elements[ia]
            for ib, pb in other._parts.items():
                moved = act_on_poly(ga, pb)
                prod = pa * moved
                if prod.is_zero:
                    continue
                target = table[ia][ib]
                acc = parts.get(target)
                acc = prod if acc is None else acc + prod
                if acc.is_zero:
                    parts.pop(target, None)
                else:
                    parts[target] = acc
        return SkewElement(self.group, parts)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced.__mul__(self)

    def __eq__(self, other):
        coerced = self._coerce(other) if not isinstance(other, SkewElement) else other
        if coerced is None:
            return NotImplemented
        return self.group is coerced.group and self._parts == coerced._parts

    def __hash__(self):
        return hash((id(self.group), frozenset(self._parts.items())))

    def __repr__(self):
        if self.is_zero:
            return "SkewElement(0)"
        bits = [
            f"({format_poly(p)}).{self.group.elements[i].word}"
            for i, p in self.parts()
        ]
        return "SkewElement(" + " + ".join(bits) + ")"


def commutator(a: SkewElement, b: SkewElement) -> SkewElement:
    """``a b - b a`` in the skew group algebra."""
    return a * b - b * a


def restrict_to_fixed(p: Polynomial, g: GroupElement) -> Polynomial:
    """Restrict a polynomial to the fixed space of ``g`` (re-embedded).

    Implemented as composition with the averaging projection of ``g``, so
    the result is again a polynomial in the ambient variables; the map is
    idempotent and kills every difference ``x - g . x``.
    """
    return substitute_linear(p, fixed_projection(g))


def hh0_project(a: SkewElement, class_index: int) -> Polynomial:
    """Trace-space projection of ``a`` onto a conjugacy class.

    Returns the coefficient polynomial of the class representative: the
    average over the group of the representative-conjugated parts of ``a``,
    restricted to the representative's fixed space, normalized by the
    centralizer order so the projection is idempotent.  Vanishes on every
    commutator.
    """
    group = a.group
    if not 0 <= class_index < len(group.classes):
        raise ValueError(
            f"class index {class_index} out of range (group has {len(group.classes)} classes)"
        )
    cls = group.classes[class_index]
    rep = cls.representative
    table = group.mul_table
    inv = group.inverse_table
    proj = group.fixed_projection_matrix(rep)
    total = Polynomial.zero(group.dim)
    for k in range(group.order):
        source = table[table[inv[k]][rep]][k]  # k^-1 * rep * k
        part = a._parts.get(source)
        if part is None:
            continue
        moved = act_on_poly(group.elements[k], part)
        total = total + substitute_linear(moved, proj)
    return total * Fraction(1, len(cls.centralizer))


@dataclass(frozen=True)
class TraceVector:
    """Per-class projections of a skew element; one polynomial per class."""

    group: FiniteMatrixGroup
    components: tuple  # tuple[Polynomial, ...], one per conjugacy class

    def component(self, class_index: int) -> Polynomial:
        return self.components[class_index]

    def validate(self) -> bool:
        """Each component must live on the representative's fixed space and
        be invariant under the representative's centralizer."""
        for cls, comp in zip(self.group.classes, self.components):
            proj = self.group.fixed_projection_matrix(cls.representative)
            if substitute_linear(comp, proj) != comp:
                return False
            for h in cls.centralizer:
                if act_on_poly(self.group.elements[h], comp) != comp:
                    return False
        return True


def trace_vector(a: SkewElement) -> TraceVector:
    """Project a skew element onto every conjugacy class at once."""
    comps = tuple(hh0_project(a, i) for i in range(len(a.group.classes)))
    return TraceVector(a.group, comps)


def inner_derivation_g_part(a: SkewElement, x: Polynomial, g: ElementLike) -> Polynomial:
    """Part at ``g`` of the inner derivation ``[a, x]`` for a ``g``-fixed ``x``.

    Preconditions: ``g`` is not the identity and ``g . x == x`` (violations
    raise :class:`NotFixedError`).  Under them the result is identically the
    zero polynomial; the return value exists so the contract can be checked
    rather than assumed.
    """
    group = a.group
    idx = group.element_index(g)
    if idx == 0:
        raise ValueError("the identity element is excluded here")
    elem = group.elements[idx]
    if act_on_poly(elem, x) != x:
        raise NotFixedError(
            f"polynomial is not fixed by {elem.word!r}"
        )
    lifted = SkewElement.from_polynomial(group, x)
    return commutator(a, lifted).g_part(idx)

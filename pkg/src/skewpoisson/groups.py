"""Finite groups of exact rational matrices.

A group is enumerated once, breadth-first from its generators, and is
immutable afterwards: elements (with stable indices and generator words),
the full multiplication table, inverses, conjugacy classes with
lowest-index representatives, and centralizers.  All structure is computed
with exact arithmetic, so two runs always agree element for element.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from . import linalg
from .poly import Polynomial, SymplecticForm, substitute_linear

__all__ = [
    "GroupClosureError",
    "GroupElement",
    "ConjugacyClass",
    "FiniteMatrixGroup",
    "generate_group",
    "conjugacy_classes",
    "centralizer",
    "fixed_projection",
    "is_symplectic",
    "act_on_poly",
]


class GroupClosureError(ValueError):
    """Raised when the closure of the generators exceeds the element cap."""


class GroupElement:
    """One matrix of a finite group, with its discovery index and word."""

    __slots__ = ("index", "matrix", "word", "_inverse_matrix")

    def __init__(self, index: int, matrix, word: str):
        self.index = index
        self.matrix = matrix
        self.word = word
        self._inverse_matrix = None

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def inverse_matrix(self):
        if self._inverse_matrix is None:
            self._inverse_matrix = linalg.inverse(self.matrix)
        return self._inverse_matrix

    def matrix_order(self, cap: int = 10_000) -> int:
        """Multiplicative order of the matrix; raises if it exceeds ``cap``."""
        ident = linalg.identity_matrix(self.dim)
        power = self.matrix
        order = 1
        while power != ident:
            power = linalg.mat_mul(power, self.matrix)
            order += 1
            if order > cap:
                raise ValueError("matrix order exceeds cap; not a finite-order element?")
        return order

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"GroupElement({self.word!r})"


@dataclass(frozen=True)
class ConjugacyClass:
    index: int
    representative: int  # element index, always the lowest in the class
    members: tuple  # sorted element indices
    centralizer: tuple  # sorted element indices commuting with the representative

    @property
    def size(self) -> int:
        return len(self.members)


ElementLike = Union[GroupElement, int]


class FiniteMatrixGroup:
    """An enumerated finite matrix group; construct via :func:`generate_group`."""

    def __init__(self, elements: Sequence[GroupElement], generator_indices: Sequence[int],
                 generator_names: Sequence[str]):
        self.elements = tuple(elements)
        self.generator_indices = tuple(generator_indices)
        self.generator_names = tuple(generator_names)
        self.dim = self.elements[0].dim
        self.order = len(self.elements)
        self._index_by_matrix = {e.matrix: e.index for e in self.elements}

        table = []
        for a in self.elements:
            row = []
            for b in self.elements:
                prod = linalg.mat_mul(a.matrix, b.matrix)
                try:
                    row.append(self._index_by_matrix[prod])
                except KeyError:  # pragma: no cover - closure guarantees this
                    raise RuntimeError("multiplication left the enumerated set")
            table.append(tuple(row))
        self.mul_table = tuple(table)

        inv = [None] * self.order
        for i in range(self.order):
            for j in range(self.order):
                if self.mul_table[i][j] == 0:
                    inv[i] = j
                    break
        if any(v is None for v in inv):  # pragma: no cover
            raise RuntimeError("element without inverse; not a group")
        self.inverse_table = tuple(inv)

        self.classes = self._compute_classes()
        self._class_of = [None] * self.order
        for cls in self.classes:
            for m in cls.members:
                self._class_of[m] = cls.index
        self._fixed_proj = {}

    # ------------------------------------------------------------------

    def _compute_classes(self):
        classes = []
        assigned = [False] * self.order
        for i in range(self.order):
            if assigned[i]:
                continue
            members = set()
            for h in range(self.order):
                hi = self.mul_table[h][i]
                members.add(self.mul_table[hi][self.inverse_table[h]])
            members = tuple(sorted(members))
            for m in members:
                assigned[m] = True
            centr = tuple(
                h for h in range(self.order)
                if self.mul_table[h][i] == self.mul_table[i][h]
            )
            classes.append(ConjugacyClass(len(classes), i, members, centr))
        return tuple(classes)

    # ------------------------------------------------------------------
    # element access

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def element_index(self, g: ElementLike) -> int:
        """Index of an element; raises for matrices outside the group."""
        if isinstance(g, GroupElement):
            idx = self._index_by_matrix.get(g.matrix)
            if idx is None:
                raise ValueError(f"element {g.word!r} is not a member of this group")
            return idx
        idx = int(g)
        if not 0 <= idx < self.order:
            raise ValueError(f"element index {idx} out of range")
        return idx

    def mul(self, a: ElementLike, b: ElementLike) -> GroupElement:
        return self.elements[self.mul_table[self.element_index(a)][self.element_index(b)]]

    def inverse(self, g: ElementLike) -> GroupElement:
        return self.elements[self.inverse_table[self.element_index(g)]]

    def element_order(self, g: ElementLike) -> int:
        idx = self.element_index(g)
        order = 1
        cur = idx
        while cur != 0:
            cur = self.mul_table[cur][idx]
            order += 1
        return order

    def element_from_word(self, word: str) -> GroupElement:
        """Resolve a generator word like ``"e*b"`` (or ``"1"``) to an element."""
        word = word.strip()
        if word == "1" or word == "":
            return self.identity
        by_name = dict(zip(self.generator_names, self.generator_indices))
        idx = 0
        for piece in word.split("*"):
            piece = piece.strip()
            if piece not in by_name:
                raise ValueError(f"unknown generator name {piece!r} in word {word!r}")
            idx = self.mul_table[idx][by_name[piece]]
        return self.elements[idx]

    # ------------------------------------------------------------------
    # structure queries

    def class_of(self, g: ElementLike) -> int:
        return self._class_of[self.element_index(g)]

    def centralizer_of(self, g: ElementLike) -> tuple:
        idx = self.element_index(g)
        return tuple(
            self.elements[h] for h in range(self.order)
            if self.mul_table[h][idx] == self.mul_table[idx][h]
        )

    def fixed_projection_matrix(self, g: ElementLike):
        """Cached averaging projection onto the fixed space of an element."""
        idx = self.element_index(g)
        cached = self._fixed_proj.get(idx)
        if cached is None:
            cached = fixed_projection(self.elements[idx])
            self._fixed_proj[idx] = cached
        return cached


def generate_group(
    generators: Iterable,
    *,
    names: Optional[Sequence[str]] = None,
    cap: int = 10_000,
    dim: Optional[int] = None,
) -> FiniteMatrixGroup:
    """Enumerate the group generated by square rational matrices.

    Elements are discovered breadth-first (identity first, then products in
    generator order), giving a stable indexing.  Raises
    :class:`GroupClosureError` once more than ``cap`` elements appear, which
    signals an infinite or unexpectedly large group.  An empty generator
    list yields the trivial group and requires ``dim``.
    """
    gens = [linalg.matrix_from_rows(g) for g in generators]
    if names is None:
        names = [f"g{i + 1}" for i in range(len(gens))]
    names = list(names)
    if len(names) != len(gens):
        raise ValueError("generator name count does not match generator count")
    if len(set(names)) != len(names):
        raise ValueError("generator names must be unique")
    if gens:
        n = len(gens[0])
        if dim is not None and dim != n:
            raise ValueError("dim disagrees with generator size")
    else:
        if dim is None:
            raise ValueError("an empty generator list needs an explicit dim")
        n = dim
    for name, g in zip(names, gens):
        if len(g) != n or any(len(row) != n for row in g):
            raise ValueError(f"generator {name!r} is not {n}x{n}")
        if not linalg.is_invertible(g):
            raise ValueError(f"generator {name!r} is singular")

    ident = linalg.identity_matrix(n)
    elements = [GroupElement(0, ident, "1")]
    index = {ident: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for name, g in zip(names, gens):
            prod = linalg.mat_mul(elements[i].matrix, g)
            if prod in index:
                continue
            if len(elements) >= cap:
                raise GroupClosureError(
                    f"group closure exceeded the cap of {cap} elements"
                )
            word = name if i == 0 else f"{elements[i].word}*{name}"
            elem = GroupElement(len(elements), prod, word)
            index[prod] = elem.index
            elements.append(elem)
            queue.append(elem.index)

    generator_indices = [index[g] for g in gens]
    return FiniteMatrixGroup(elements, generator_indices, names)


def conjugacy_classes(group: FiniteMatrixGroup) -> tuple:
    """The group's conjugacy classes, representatives chosen by lowest index."""
    return group.classes


def centralizer(group: FiniteMatrixGroup, g: ElementLike) -> tuple:
    """All elements commuting with ``g``; raises for foreign elements."""
    return group.centralizer_of(g)


def fixed_projection(g: GroupElement):
    """Projection onto the fixed space, as the average of the powers of ``g``.

    The result is idempotent, has image ``ker(g - 1)``, and commutes with
    everything commuting with ``g``, and all of this stays inside the
    rationals, unlike an eigen-decomposition.
    """
    order = g.matrix_order()
    n = g.dim
    acc = linalg.identity_matrix(n)
    power = g.matrix
    for _ in range(order - 1):
        acc = linalg.mat_add(acc, power)
        power = linalg.mat_mul(power, g.matrix)
    return linalg.mat_scale(Fraction(1, order), acc)


def is_symplectic(g: GroupElement, form: SymplecticForm) -> bool:
    """True if the element preserves the form: g^T J g == J."""
    if g.dim != form.nvars:
        raise ValueError(
            f"dimension mismatch: element is {g.dim}x{g.dim}, form is {form.nvars}-dimensional"
        )
    gt = linalg.transpose(g.matrix)
    return linalg.mat_mul(linalg.mat_mul(gt, form.matrix), g.matrix) == form.matrix


def act_on_poly(g: GroupElement, p: Polynomial) -> Polynomial:
    """Left action of a group element on a polynomial.

    Defined as precomposition with the inverse matrix, which makes the map
    ``g -> (p -> g . p)`` a genuine left action: ``(gh) . p == g . (h . p)``.
    """
    if p.nvars != g.dim:
        raise ValueError(
            f"dimension mismatch: polynomial has {p.nvars} variables, element is {g.dim}x{g.dim}"
        )
    return substitute_linear(p, g.inverse_matrix)

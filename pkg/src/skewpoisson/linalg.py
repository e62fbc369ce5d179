"""Exact linear algebra over the rationals.

Matrices are immutable tuples of tuples of ``Fraction``; vectors used by the
row-reduction machinery are sparse dicts mapping a column index to a nonzero
``Fraction``.  Everything here is exact: no rounding, no tolerances.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Matrix = tuple  # tuple[tuple[Fraction, ...], ...]
SparseVec = dict  # dict[int, Fraction], zero entries never stored


def parse_scalar(text: str) -> Fraction:
    """Parse a rational literal such as ``-1``, ``3`` or ``1/2``."""
    cleaned = str(text).replace("−", "-").strip()
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational literal {text!r}") from exc


def matrix_from_rows(rows: Iterable[Iterable]) -> Matrix:
    """Build a rectangular matrix, coercing entries through ``parse_scalar``."""
    out = []
    for row in rows:
        out.append(tuple(x if isinstance(x, Fraction) else parse_scalar(x) for x in row))
    mat = tuple(out)
    if mat and any(len(r) != len(mat[0]) for r in mat):
        raise ValueError("matrix rows have unequal lengths")
    return mat


def identity_matrix(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def zero_matrix(n: int, m: Optional[int] = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b or len(a[0]) != len(b):
        raise ValueError("matrix dimension mismatch in multiplication")
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b) or (a and len(a[0]) != len(b[0])):
        raise ValueError("matrix dimension mismatch in addition")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: Fraction, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(tuple(col) for col in zip(*a))


def inverse(a: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("inverse requires a square matrix")
    work = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
        inv_p = Fraction(1) / work[col][col]
        work[col] = [x * inv_p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def is_invertible(a: Matrix) -> bool:
    try:
        inverse(a)
    except ValueError:
        return False
    return True


def det_generic(rows: Sequence[Sequence]):
    """Determinant by cofactor expansion along the first row.

    Entries may be any commutative ring elements supporting ``+ - *``
    (used with univariate polynomials for characteristic-style determinants).
    Intended for small matrices; cost grows factorially.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("determinant of empty matrix")
    if any(len(r) != n for r in rows):
        raise ValueError("determinant requires a square matrix")
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [tuple(r[k] for k in range(n) if k != j) for r in rows[1:]]
        term = rows[0][j] * det_generic(minor)
        if j % 2 == 1:
            term = -term
        total = term if total is None else total + term
    return total


class RowSpace:
    """Incremental sparse row reduction over the rationals.

    Maintains a row-echelon basis keyed by pivot column (lowest column index
    with a nonzero entry).  Pivot choice is purely positional, so results are
    deterministic for a fixed insertion order.  With ``track=True`` every
    stored row carries the combination of original inputs that produced it,
    which lets :meth:`reduce` express a target vector in terms of the inputs.
    """

    def __init__(self, track: bool = False):
        self._rows: dict[int, SparseVec] = {}  # pivot column -> normalized row
        self._combos: dict[int, SparseVec] = {}
        self._track = track
        self._added = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce_vec(self, vec: SparseVec, combo: Optional[SparseVec]):
        rem = dict(vec)
        while rem:
            lead = min(rem)
            row = self._rows.get(lead)
            if row is None:
                break
            f = rem[lead]  # rows are normalized to leading coefficient 1
            for col, val in row.items():
                new = rem.get(col, Fraction(0)) - f * val
                if new:
                    rem[col] = new
                else:
                    rem.pop(col, None)
            if combo is not None:
                for tag, val in self._combos[lead].items():
                    new = combo.get(tag, Fraction(0)) + f * val
                    if new:
                        combo[tag] = new
                    else:
                        combo.pop(tag, None)
        return rem

    def add(self, vec: SparseVec) -> bool:
        """Insert a vector; returns True if it enlarged the row space."""
        tag = self._added
        self._added += 1
        combo: Optional[SparseVec] = {tag: Fraction(1)} if self._track else None
        rem = self._reduce_vec(vec, combo)
        if not rem:
            return False
        lead = min(rem)
        inv_lead = Fraction(1) / rem[lead]
        row = {c: v * inv_lead for c, v in rem.items()}
        self._rows[lead] = row
        if self._track:
            # combo currently expresses vec - rem; rearrange to rem = vec - combo
            assert combo is not None
            stored = {tag: Fraction(1)}
            for t, v in combo.items():
                if t != tag:
                    stored[t] = -v
            self._combos[lead] = {t: v * inv_lead for t, v in stored.items()}
        return True

    def reduce(self, vec: SparseVec):
        """Reduce a vector against the basis.

        Returns ``(remainder, combo)``: the remainder after elimination and,
        when tracking, the coefficients over input tags such that
        ``vec = remainder + sum(combo[t] * input_t)``.
        """
        combo: Optional[SparseVec] = {} if self._track else None
        rem = self._reduce_vec(vec, combo)
        return rem, combo

    def contains(self, vec: SparseVec) -> bool:
        rem, _ = self.reduce(vec)
        return not rem

    def reduced_rows(self) -> list[SparseVec]:
        """Fully back-substituted (reduced row echelon) basis, by pivot column."""
        pivots = sorted(self._rows)
        reduced: dict[int, SparseVec] = {}
        for p in reversed(pivots):
            row = dict(self._rows[p])
            for q in pivots:
                if q > p and q in row:
                    f = row.pop(q)
                    for col, val in reduced[q].items():
                        if col == q:
                            continue
                        new = row.get(col, Fraction(0)) - f * val
                        if new:
                            row[col] = new
                        else:
                            row.pop(col, None)
            reduced[p] = row
        return [reduced[p] for p in pivots]


def solve_combination(vectors: Sequence[SparseVec], target: SparseVec):
    """Solve ``sum(c_i * vectors[i]) = target`` exactly.

    Returns ``(coeffs, rank, residual)``.  ``coeffs`` is a list of Fractions
    when the system is consistent and ``None`` otherwise; ``residual`` is the
    part of ``target`` outside the span (empty dict iff consistent).
    """
    space = RowSpace(track=True)
    for vec in vectors:
        space.add(vec)
    rem, combo = space.reduce(target)
    if rem:
        return None, space.rank, rem
    coeffs = [Fraction(0)] * len(vectors)
    assert combo is not None
    for tag, val in combo.items():
        coeffs[tag] = val
    return coeffs, space.rank, rem

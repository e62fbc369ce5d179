"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial in ``nvars`` variables is a finite map from exponent tuples to
nonzero ``Fraction`` coefficients.  Instances are immutable values: all
operations return new polynomials, equality is structural, and the term map
is always canonical (no zero coefficients, every exponent tuple has length
``nvars``).  Coefficients live in the rationals; nothing in this module ever
rounds.

Terms are ordered graded-lexicographically (total degree first, then the
exponent tuple, ``x1`` most significant) wherever a deterministic ordering
is needed, e.g. for printing and for pivoting in linear solves.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

from . import linalg

Exponents = tuple  # tuple[int, ...], one entry per variable
Scalar = Union[Fraction, int]


def grlex_key(exps: Exponents):
    """Sort key for graded-lexicographic monomial order (ascending)."""
    return (sum(exps), exps)


def monomials_of_degree(nvars: int, degree: int) -> Iterator[Exponents]:
    """Yield all exponent tuples of the given total degree, lex ascending."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest


def monomials_up_to(nvars: int, max_degree: int) -> Iterator[Exponents]:
    """Yield all exponent tuples of total degree <= max_degree, grlex ascending."""
    for d in range(max_degree + 1):
        yield from monomials_of_degree(nvars, d)


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponents, Scalar]] = None):
        if nvars < 1:
            raise ValueError("nvars must be a positive integer")
        clean: dict = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(
                        f"exponent tuple {exps} does not match nvars={nvars}"
                    )
                if any(e < 0 or not isinstance(e, int) for e in exps):
                    raise ValueError(f"exponents must be non-negative integers: {exps}")
                coeff = Fraction(coeff)
                if coeff:
                    acc = clean.get(exps, Fraction(0)) + coeff
                    if acc:
                        clean[exps] = acc
                    else:
                        clean.pop(exps, None)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Polynomial instances are immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        """The variable with 0-based index ``index`` (printed as ``x<index+1>``)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Iterable[int], coeff: Scalar = 1) -> "Polynomial":
        return cls(nvars, {tuple(exps): Fraction(coeff)})

    # ------------------------------------------------------------------
    # inspection

    def items(self):
        """Iterate ``(exponents, coefficient)`` pairs in grlex-descending order."""
        return iter(sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True))

    def coefficient(self, exps: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self._terms}
        return len(degrees) <= 1

    def homogeneous_component(self, degree: int) -> "Polynomial":
        return Polynomial(
            self.nvars,
            {e: c for e, c in self._terms.items() if sum(e) == degree},
        )

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def to_vector(self) -> dict:
        """Sparse coefficient vector keyed by grlex key, for linear algebra."""
        return {grlex_key(e): c for e, c in self._terms.items()}

    # ------------------------------------------------------------------
    # arithmetic

    def _check_compatible(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable-count mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc = terms.get(exps, Fraction(0)) + coeff
            if acc:
                terms[exps] = acc
            else:
                terms.pop(exps, None)
        return self._wrap(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return self._wrap({e: c * v for e, v in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        terms: dict = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                acc = terms.get(exps, Fraction(0)) + ca * cb
                if acc:
                    terms[exps] = acc
                else:
                    terms.pop(exps, None)
        return self._wrap(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.one(self.nvars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def _wrap(self, terms: dict) -> "Polynomial":
        # internal fast path: terms already canonical (no zeros, right arity)
        p = Polynomial.__new__(Polynomial)
        object.__setattr__(p, "nvars", self.nvars)
        object.__setattr__(p, "_terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    # ------------------------------------------------------------------
    # comparison

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.nvars, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, nvars={self.nvars})"


def format_poly(p: Polynomial, names: Optional[list] = None) -> str:
    """Canonical text form, terms in grlex-descending order.

    Uses ``x1 .. x<n>`` unless explicit variable names are supplied.  The
    output round-trips through :func:`skewpoisson.parse.parse_poly`.
    """
    if names is None:
        names = [f"x{i + 1}" for i in range(p.nvars)]
    if len(names) != p.nvars:
        raise ValueError("wrong number of variable names")
    if p.is_zero:
        return "0"
    pieces = []
    for exps, coeff in p.items():
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


def partial_derivative(p: Polynomial, index: int) -> Polynomial:
    """Formal partial derivative with respect to the 0-based variable index."""
    if not 0 <= index < p.nvars:
        raise ValueError(f"variable index {index} out of range for nvars={p.nvars}")
    terms: dict = {}
    for exps, coeff in p._terms.items():
        e = exps[index]
        if e == 0:
            continue
        lowered = exps[:index] + (e - 1,) + exps[index + 1:]
        acc = terms.get(lowered, Fraction(0)) + coeff * e
        if acc:
            terms[lowered] = acc
        else:
            terms.pop(lowered, None)
    return Polynomial(p.nvars, terms)


def substitute_linear(p: Polynomial, matrix) -> Polynomial:
    """Compose with a linear change of variables: x_j -> sum_k M[j][k] x_k.

    Satisfies the composition law ``substitute_linear(substitute_linear(p, M), N)
    == substitute_linear(p, mat_mul(M, N))``.
    """
    n = p.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError(f"substitution matrix must be {n}x{n}")
    if p.is_zero:
        return p

    # Fast path: monomial substitutions (at most one nonzero per row), which
    # covers signed permutations and diagonal actions.
    simple = []
    for row in matrix:
        nz = [(k, c) for k, c in enumerate(row) if c]
        if len(nz) > 1:
            simple = None
            break
        simple.append(nz[0] if nz else None)
    if simple is not None:
        terms: dict = {}
        for exps, coeff in p._terms.items():
            out = [0] * n
            scale = coeff
            dead = False
            for j, e in enumerate(exps):
                if e == 0:
                    continue
                target = simple[j]
                if target is None:
                    dead = True
                    break
                k, c = target
                out[k] += e
                if c != 1:
                    scale = scale * c**e
            if dead:
                continue
            key = tuple(out)
            acc = terms.get(key, Fraction(0)) + scale
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return Polynomial(n, terms)

    linear_forms = [
        Polynomial(n, {tuple(1 if k == i else 0 for k in range(n)): Fraction(c)
                       for i, c in enumerate(row) if c})
        for row in matrix
    ]
    # cache powers of each substituted variable
    pow_cache: list[dict] = [dict() for _ in range(n)]

    def var_power(j: int, e: int) -> Polynomial:
        cached = pow_cache[j].get(e)
        if cached is None:
            cached = linear_forms[j] ** e
            pow_cache[j][e] = cached
        return cached

    total = Polynomial.zero(n)
    for exps, coeff in p._terms.items():
        term = Polynomial.constant(n, coeff)
        for j, e in enumerate(exps):
            if e:
                term = term * var_power(j, e)
        total = total + term
    return total


class SymplecticForm:
    """A constant symplectic form, stored as its Gram matrix.

    The matrix must be antisymmetric and invertible (hence of even size).
    The associated Poisson tensor is the inverse transpose of the Gram
    matrix; for the standard block form ``dx1^dx2 + dx3^dx4 + ...`` this
    reproduces the familiar Darboux-coordinate bracket.
    """

    __slots__ = ("matrix", "poisson_tensor")

    def __init__(self, matrix):
        mat = linalg.matrix_from_rows(matrix)
        n = len(mat)
        if n == 0 or n % 2 != 0:
            raise ValueError("symplectic form needs a positive even dimension")
        if any(len(row) != n for row in mat):
            raise ValueError("symplectic form matrix must be square")
        if linalg.transpose(mat) != linalg.mat_scale(Fraction(-1), mat):
            raise ValueError("symplectic form matrix must be antisymmetric")
        try:
            inv = linalg.inverse(mat)
        except ValueError as exc:
            raise ValueError("symplectic form matrix must be invertible") from exc
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "poisson_tensor", linalg.transpose(inv))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("SymplecticForm instances are immutable")

    @property
    def nvars(self) -> int:
        return len(self.matrix)

    @classmethod
    def standard(cls, nvars: int) -> "SymplecticForm":
        """Block-Darboux form pairing (x1,x2), (x3,x4), ..."""
        if nvars % 2 != 0:
            raise ValueError("standard symplectic form needs even dimension")
        rows = [[Fraction(0)] * nvars for _ in range(nvars)]
        for k in range(0, nvars, 2):
            rows[k][k + 1] = Fraction(1)
            rows[k + 1][k] = Fraction(-1)
        return cls(rows)

    def __eq__(self, other):
        return isinstance(other, SymplecticForm) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"SymplecticForm({[list(map(str, r)) for r in self.matrix]})"


def poisson_bracket(p: Polynomial, q: Polynomial, form: SymplecticForm) -> Polynomial:
    """Poisson bracket of two polynomials for a constant symplectic form.

    Computed as ``sum_ij T[i][j] dp/dx_i dq/dx_j`` with ``T`` the form's
    Poisson tensor.  Bilinear, antisymmetric, a derivation in each slot,
    and satisfies the Jacobi identity, all exactly.
    """
    if p.nvars != q.nvars:
        raise ValueError(f"variable-count mismatch: {p.nvars} vs {q.nvars}")
    if form.nvars != p.nvars:
        raise ValueError(
            f"form dimension {form.nvars} does not match nvars={p.nvars}"
        )
    n = p.nvars
    tensor = form.poisson_tensor
    dp = [None] * n
    dq = [None] * n
    total = Polynomial.zero(n)
    for i in range(n):
        row = tensor[i]
        for j in range(n):
            c = row[j]
            if not c:
                continue
            if dp[i] is None:
                dp[i] = partial_derivative(p, i)
            if dq[j] is None:
                dq[j] = partial_derivative(q, j)
            if dp[i].is_zero or dq[j].is_zero:
                continue
            total = total + (dp[i] * dq[j]) * c
    return total

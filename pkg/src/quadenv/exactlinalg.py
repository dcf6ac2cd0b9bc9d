"""Exact scalars over Q or F_p and dense linear algebra over either field.

Scalars are plain Python values: ``fractions.Fraction`` for the rationals and
``int`` residues in ``[0, p)`` for a prime field.  A :class:`Field` knows how to
coerce, normalise and invert them; everything else uses ordinary operators
followed by :meth:`Field.norm`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime

DEFAULT_PRIME = 2147483647  # 2^31 - 1
SECOND_PRIME = 2147483629
SCAN_PRIME = 32003

# residues below this bound multiply without overflow in int64
_NUMPY_PRIME_BOUND = 3037000499


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """Either the rationals (``modulus is None``) or the prime field F_p."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None:
            p = self.modulus
            if p < 2 or not isprime(p):
                raise FieldError(f"modulus {p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def kind(self) -> str:
        return "Rationals" if self.modulus is None else "PrimeField"

    @property
    def zero(self):
        return Fraction(0) if self.modulus is None else 0

    @property
    def one(self):
        return Fraction(1) if self.modulus is None else 1

    def __call__(self, value):
        """Coerce an int, Fraction, or ``"num/den"`` string into this field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        p = self.modulus
        if p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"denominator of {value} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def norm(self, x):
        return x if self.modulus is None else x % self.modulus

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus is None:
            return 1 / x
        return pow(x, -1, self.modulus)

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def neg(self, x):
        return self.norm(-x)

    def to_str(self, x) -> str:
        return str(x)

    def describe(self) -> str:
        return "QQ" if self.modulus is None else f"GF({self.modulus})"

    def to_json(self):
        return "rational" if self.modulus is None else {"prime": self.modulus}

    @classmethod
    def from_json(cls, obj) -> "Field":
        if obj in (None, "rational", "QQ"):
            return QQ
        if isinstance(obj, dict):
            return cls(int(obj["prime"]))
        return cls(int(obj))


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


@dataclass
class ExactMatrix:
    rows: int
    cols: int
    entries: list  # list of row lists, already normalised into ``field``
    field: Field = dc_field(default=QQ)

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, cols: int | None = None) -> "ExactMatrix":
        data = [[field(x) for x in r] for r in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "ExactMatrix":
        return cls(rows, cols, [[field.zero] * cols for _ in range(rows)], field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        m = cls.zeros(n, n, field)
        for i in range(n):
            m.entries[i][i] = field.one
        return m

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [list(r) for r in self.entries], self.field)

    def mul_vector(self, v: Sequence) -> list:
        f = self.field
        return [f.norm(sum(a * b for a, b in zip(row, v))) for row in self.entries]

    def reduce_mod(self, p: int) -> "ExactMatrix":
        """Image of a rational matrix in F_p."""
        fp = GF(p)
        return ExactMatrix(self.rows, self.cols, [[fp(x) for x in r] for r in self.entries], fp)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )


def _size(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _rref_rational(a: list, ncols: int):
    rows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        # smallest-height pivot keeps the fractions short
        best = None
        for i in range(r, rows):
            x = a[i][c]
            if x:
                if best is None or _size(x) < _size(a[best][c]):
                    best = i
        if best is None:
            continue
        a[r], a[best] = a[best], a[r]
        piv = a[r][c]
        if piv != 1:
            inv = 1 / piv
            a[r] = [x * inv for x in a[r]]
        prow = a[r]
        for i in range(rows):
            if i != r:
                f = a[i][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def _rref_modp_python(a: list, ncols: int, p: int):
    rows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        best = next((i for i in range(r, rows) if a[i][c]), None)
        if best is None:
            continue
        a[r], a[best] = a[best], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        prow = a[r]
        for i in range(rows):
            if i != r:
                f = a[i][c]
                if f:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def _rref_modp_numpy(a: list, ncols: int, p: int):
    m = np.array(a, dtype=np.int64).reshape(len(a), ncols)
    rows = m.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        best = r + int(nz[0])
        if best != r:
            m[[r, best]] = m[[best, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = m[r] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            # two reductions keep every intermediate product below 2^63
            m[nzr] = (m[nzr] - (col[nzr, None] * m[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return pivots, [[int(x) for x in row] for row in m]


def rref(m: ExactMatrix):
    """Reduced row echelon form.  Returns ``(matrix, rank, pivot_columns)``."""
    f = m.field
    if m.rows == 0 or m.cols == 0:
        return m.copy(), 0, []
    if f.is_rational:
        a = [list(r) for r in m.entries]
        pivots = _rref_rational(a, m.cols)
    elif f.modulus < _NUMPY_PRIME_BOUND:
        pivots, a = _rref_modp_numpy(m.entries, m.cols, f.modulus)
    else:
        a = [list(r) for r in m.entries]
        pivots = _rref_modp_python(a, m.cols, f.modulus)
    return ExactMatrix(m.rows, m.cols, a, f), len(pivots), pivots


def rank(m: ExactMatrix) -> int:
    return rref(m)[1]


def kernel_basis(m: ExactMatrix, certify: bool = True) -> list[list]:
    """Basis of the right kernel, one vector per free column."""
    f = m.field
    if m.rows == 0:
        basis = []
        for j in range(m.cols):
            v = [f.zero] * m.cols
            v[j] = f.one
            basis.append(v)
        return basis
    r, rk, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [f.zero] * m.cols
        v[free] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(r.entries[i][free])
        basis.append(v)
    if certify:
        for v in basis:
            if any(m.mul_vector(v)):
                raise ArithmeticError("kernel vector failed the m*v = 0 check")
    return basis


def determinant(m: ExactMatrix):
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    f = m.field
    a = [list(r) for r in m.entries]
    n = m.rows
    det = f.one
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return f.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = f.neg(det)
        det = f.norm(det * a[c][c])
        inv = f.inv(a[c][c])
        for i in range(c + 1, n):
            x = a[i][c]
            if x:
                fac = f.norm(x * inv)
                a[i] = [f.norm(u - fac * v) for u, v in zip(a[i], a[c])]
    return det


def row_space_rref(vectors: Iterable[Sequence], field: Field, cols: int) -> ExactMatrix:
    """Canonical form of a span: nonzero rows of the RREF of stacked vectors."""
    rows = [list(v) for v in vectors]
    if not rows:
        return ExactMatrix(0, cols, [], field)
    r, rk, _ = rref(ExactMatrix(len(rows), cols, rows, field))
    return ExactMatrix(rk, cols, r.entries[:rk], field)

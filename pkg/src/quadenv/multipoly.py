"""Sparse multivariate polynomials over a :class:`~quadenv.exactlinalg.Field`.

A polynomial is a dict from exponent tuples to nonzero coefficients.  Terms are
listed in graded-lex order wherever an order is observable (monomial lists,
text output, coefficient matrices).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from .exactlinalg import QQ, Field

Monomial = tuple


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, degree: int) -> tuple[Monomial, ...]:
    """All exponent vectors of the given total degree, graded-lex descending.

    >>> monomials_of_degree(2, 2)
    ((2, 0), (1, 1), (0, 2))
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grlex_key, reverse=True)
    return tuple(out)


def grlex_key(e: Monomial):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("nvars", "terms", "field")

    def __init__(self, nvars: int, terms: dict | None = None, field: Field = QQ, *, clean: bool = True):
        self.nvars = nvars
        self.field = field
        if terms is None:
            terms = {}
        elif clean:
            norm = field.norm
            cleaned = {}
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"monomial {e} has wrong length for {nvars} variables")
                c = norm(c)
                if c:
                    cleaned[tuple(e)] = c
            terms = cleaned
        self.terms = terms

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, field: Field = QQ) -> "MultiPoly":
        return cls(nvars, {}, field, clean=False)

    @classmethod
    def constant(cls, value, nvars: int, field: Field = QQ) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: field(value)}, field)

    @classmethod
    def var(cls, i: int, nvars: int, field: Field = QQ) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): field.one}, field, clean=False)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1, field: Field = QQ) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): field(coeff)}, field)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, monomials: Sequence[Monomial], field: Field = QQ) -> "MultiPoly":
        nvars = len(monomials[0]) if monomials else 0
        return cls(nvars, dict(zip(monomials, coeffs)), field)

    # basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, e: Monomial):
        return self.terms.get(tuple(e), self.field.zero)

    def coeff_vector(self, monomials: Sequence[Monomial]) -> list:
        z = self.field.zero
        return [self.terms.get(m, z) for m in monomials]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if other.field != self.field:
            raise ValueError("field mismatch")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(other, self.nvars, self.field)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        norm = self.field.norm
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out, self.field, clean=False)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.norm
        return MultiPoly(self.nvars, {e: norm(-c) for e, c in self.terms.items()}, self.field, clean=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.field(other)
            if not c:
                return MultiPoly.zero(self.nvars, self.field)
            norm = self.field.norm
            return MultiPoly(self.nvars, {e: norm(v * c) for e, v in self.terms.items()}, self.field, clean=False)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.nvars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r}, nvars={self.nvars}, field={self.field.describe()})"

    # evaluation and change of field -------------------------------------

    def evaluate(self, point: Sequence):
        f = self.field
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total += term
        return f.norm(total) if self.terms else f.zero

    def reduce_mod(self, p: int) -> "MultiPoly":
        from .exactlinalg import GF

        fp = GF(p)
        return MultiPoly(self.nvars, {e: fp(c) for e, c in self.terms.items()}, fp)

    def map_coeffs(self, fn, field: Field | None = None) -> "MultiPoly":
        field = field or self.field
        return MultiPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()}, field)

    # text serialisation -------------------------------------------------

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [str(c)]
            factors += [f"x{i}^{k}" for i, k in enumerate(e) if k]
            parts.append("*".join(factors))
        return "+".join(parts)

    @classmethod
    def from_str(cls, text: str, nvars: int, field: Field = QQ) -> "MultiPoly":
        return parse_poly(text, nvars, field)


_TERM_SPLIT = re.compile(r"\+(?![^()]*\))")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, nvars: int, field: Field = QQ) -> MultiPoly:
    """Inverse of :meth:`MultiPoly.to_str`; also accepts bare ``-`` between terms."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return MultiPoly.zero(nvars, field)
    # turn "a-b" into "a+-b" but leave "^-" and leading signs alone
    s = re.sub(r"(?<=[0-9a-z])-", "+-", s)
    terms: dict = {}
    for chunk in _TERM_SPLIT.split(s):
        if not chunk:
            continue
        coeff = Fraction(1)
        e = [0] * nvars
        sign = 1
        if chunk.startswith("-"):
            sign, chunk = -1, chunk[1:]
        for factor in chunk.split("*"):
            m = _FACTOR.match(factor)
            if m:
                i = int(m.group(1))
                if i >= nvars:
                    raise ValueError(f"variable x{i} out of range for {nvars} variables")
                e[i] += int(m.group(2) or 1)
            else:
                coeff *= Fraction(factor)
        key = tuple(e)
        terms[key] = terms.get(key, 0) + field(sign * coeff)
    return MultiPoly(nvars, terms, field)


# substitution and reduction ---------------------------------------------


class _PowerCache:
    def __init__(self, images: Sequence[MultiPoly]):
        self.images = images
        self.cache: dict = {}

    def power(self, i: int, k: int) -> MultiPoly:
        key = (i, k)
        hit = self.cache.get(key)
        if hit is None:
            if k == 1:
                hit = self.images[i]
            elif k == 0:
                hit = MultiPoly.constant(1, self.images[i].nvars, self.images[i].field)
            else:
                hit = self.power(i, k - 1) * self.images[i]
            self.cache[key] = hit
        return hit


def _check_images(nvars: int, images: Sequence[MultiPoly]):
    if len(images) != nvars:
        raise ValueError(f"expected {nvars} images, got {len(images)}")
    if len({im.nvars for im in images}) > 1:
        raise ValueError("images must share a variable count")
    if len({im.field for im in images}) > 1:
        raise ValueError("images must share a field")


def substitute(target: MultiPoly, images: Sequence[MultiPoly], _cache: _PowerCache | None = None) -> MultiPoly:
    """Compose ``target`` with ``images``: replace variable i by ``images[i]``."""
    _check_images(target.nvars, images)
    if target.field != images[0].field:
        raise ValueError("target and images live over different fields")
    cache = _cache or _PowerCache(images)
    out = MultiPoly.zero(images[0].nvars, images[0].field)
    acc: dict = {}
    for e, c in target.terms.items():
        prod = None
        for i, k in enumerate(e):
            if k:
                pw = cache.power(i, k)
                prod = pw if prod is None else prod * pw
        if prod is None:
            prod = MultiPoly.constant(1, out.nvars, out.field)
        for m, v in prod.terms.items():
            acc[m] = acc.get(m, 0) + c * v
    return MultiPoly(out.nvars, acc, out.field)


def pullback_monomials(monomials: Sequence[Monomial], images: Sequence[MultiPoly]) -> list[MultiPoly]:
    """``substitute`` for each monomial, sharing one power cache."""
    _check_images(len(monomials[0]), images)
    cache = _PowerCache(images)
    f = images[0].field
    return [substitute(MultiPoly(len(m), {m: f.one}, f, clean=False), images, cache) for m in monomials]


@dataclass(frozen=True)
class Relation:
    """``var(lead_var) ** lead_exp == replacement`` in a quotient ring."""

    lead_var: int
    lead_exp: int
    replacement: MultiPoly

    def __post_init__(self):
        if self.lead_exp < 1:
            raise ValueError("lead exponent must be positive")
        if self.replacement.degree_in(self.lead_var) >= self.lead_exp:
            raise ValueError("replacement still contains the lead power")

    @property
    def field(self) -> Field:
        return self.replacement.field

    @property
    def nvars(self) -> int:
        return self.replacement.nvars

    def as_poly(self) -> MultiPoly:
        """The defining polynomial ``lead - replacement``."""
        e = [0] * self.nvars
        e[self.lead_var] = self.lead_exp
        return MultiPoly.monomial(e, 1, self.field) - self.replacement

    def reduce_mod(self, p: int) -> "Relation":
        return Relation(self.lead_var, self.lead_exp, self.replacement.reduce_mod(p))

    def to_json(self) -> dict:
        return {
            "lead_var": self.lead_var,
            "lead_exp": self.lead_exp,
            "nvars": self.nvars,
            "replacement": self.replacement.to_str(),
        }

    @classmethod
    def from_json(cls, obj: dict, field: Field = QQ) -> "Relation":
        return cls(obj["lead_var"], obj["lead_exp"], parse_poly(obj["replacement"], obj["nvars"], field))


def reduce(p: MultiPoly, rel: Relation) -> MultiPoly:
    """Normal form of ``p`` modulo ``rel``: the lead variable ends below the lead exponent."""
    if p.field != rel.field or p.nvars != rel.nvars:
        raise ValueError("polynomial and relation do not match")
    v, k = rel.lead_var, rel.lead_exp
    field = p.field
    done: dict = {}
    todo = dict(p.terms)
    rep_powers = {1: rel.replacement}
    while todo:
        # peel off the highest power of the lead variable first
        top = max(e[v] for e in todo)
        if top < k:
            for e, c in todo.items():
                done[e] = done.get(e, 0) + c
            break
        q, r = divmod(top, k)
        batch = {e: c for e, c in todo.items() if e[v] == top}
        for e in batch:
            del todo[e]
        if q not in rep_powers:
            rep_powers[q] = rel.replacement ** q
        rep = rep_powers[q]
        for e, c in batch.items():
            base = list(e)
            base[v] = r
            for m, cm in rep.terms.items():
                ne = tuple(a + b for a, b in zip(base, m))
                todo[ne] = todo.get(ne, 0) + c * cm
        todo = {e: field.norm(c) for e, c in todo.items() if field.norm(c)}
    return MultiPoly(p.nvars, done, field)

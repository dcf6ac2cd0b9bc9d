"""Divisor classes aH + bF on rational normal scrolls S(a_1, ..., a_{n+1}).

Sections are counted with the standard formula
``h0(aH + bF) = sum over |I| = a of max(0, <I, type> + b + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence


class ScrollCalcError(ValueError):
    pass


@dataclass(frozen=True)
class ScrollDivisorClass:
    scroll_type: tuple
    a: int
    b: int

    def __post_init__(self):
        t = tuple(int(x) for x in self.scroll_type)
        if not t or list(t) != sorted(t) or t[0] < 0 or t[-1] < 1:
            raise ScrollCalcError(f"invalid scroll type {self.scroll_type}")
        object.__setattr__(self, "scroll_type", t)

    @property
    def n(self) -> int:
        return len(self.scroll_type) - 1

    @property
    def c(self) -> int:
        return sum(self.scroll_type)

    @property
    def ambient_dim(self) -> int:
        return self.n + self.c

    @property
    def top(self) -> int:
        return self.scroll_type[-1]

    def shifted(self, a: int, b: int) -> "ScrollDivisorClass":
        return ScrollDivisorClass(self.scroll_type, a, b)


def _exponent_vectors(length: int, total: int):
    for combo in combinations_with_replacement(range(length), total):
        e = [0] * length
        for i in combo:
            e[i] += 1
        yield e


def h0_class(cls: ScrollDivisorClass) -> int:
    if cls.a < 0:
        return 0
    t = cls.scroll_type
    return sum(max(0, sum(i * ai for i, ai in zip(e, t)) + cls.b + 1) for e in _exponent_vectors(len(t), cls.a))


def is_nondegenerate_class(cls: ScrollDivisorClass) -> bool:
    a, b, top = cls.a, cls.b, cls.top
    return (a == 0 and b >= 1 + top) or (a == 1 and b >= 1) or (a >= 2 and b >= -a * top)


def is_effective_class(cls: ScrollDivisorClass) -> bool:
    return h0_class(cls) > 0


def _q_equals_disjunction(cls: ScrollDivisorClass) -> bool:
    a, b, top = cls.a, cls.b, cls.top
    return (a == 0 and b >= 1 + 2 * top) or (a == 1 and b >= 1 + top) or (a == 2 and b >= 1) or a >= 3


def q_equals_scroll(cls: ScrollDivisorClass) -> bool:
    """Whether the quadrics through X cut out exactly the scroll.

    Evaluated both from the closed-form disjunction and from vanishing of
    h0((2-a)H - bF); a disagreement raises.
    """
    by_rule = _q_equals_disjunction(cls)
    by_h0 = h0_class(cls.shifted(2 - cls.a, -cls.b)) == 0
    if by_rule != by_h0:
        raise ScrollCalcError(f"disjunction and h0 test disagree for {cls}")
    return by_rule


def a2_scroll(scroll_type: Sequence[int]) -> int:
    cls = ScrollDivisorClass(tuple(scroll_type), 2, 0)
    r = cls.ambient_dim
    return comb(r + 2, 2) - h0_class(cls)


def predicted_a2(cls: ScrollDivisorClass) -> int:
    if not is_nondegenerate_class(cls):
        raise ScrollCalcError(f"degenerate class {cls}")
    return a2_scroll(cls.scroll_type) + h0_class(cls.shifted(2 - cls.a, -cls.b))


def divisor_degree(cls: ScrollDivisorClass) -> int:
    return cls.a * cls.c + cls.b


def x0_subscroll_type(scroll_type: Sequence[int]) -> tuple:
    """(a_1, ..., a_k) where a_k < a_{k+1} = ... = a_{n+1}; empty when all entries agree."""
    t = tuple(scroll_type)
    top = t[-1]
    k = max((i + 1 for i, ai in enumerate(t) if ai < top), default=0)
    return t[:k]


def base_locus_case(cls: ScrollDivisorClass) -> str:
    """Which base-locus statement applies to a nondegenerate class.

    X0 is the subscroll spanned by the blocks of degree below the top one.
    """
    a, b = cls.a, cls.b
    t = cls.scroll_type
    if q_equals_scroll(cls):
        return "Q=Y"
    if a == 2 and -2 * cls.top <= b <= 0:
        return "Q=X (a=2)"
    if a == 1 and 1 <= b <= t[0]:
        return "Q=X (a=1, b<=a_1)"
    if a == 1 and t[0] + 1 <= b <= cls.top:
        return "Q in X+X0 (a=1, a_1<b<=a_top)"
    return "unclassified"


def describe(cls: ScrollDivisorClass) -> dict:
    out = {
        "type": list(cls.scroll_type),
        "a": cls.a,
        "b": cls.b,
        "ambient_dim": cls.ambient_dim,
        "degree": divisor_degree(cls),
        "h0": h0_class(cls),
        "nondegenerate": is_nondegenerate_class(cls),
        "q_equals_scroll": q_equals_scroll(cls),
        "a2_scroll": a2_scroll(cls.scroll_type),
    }
    if out["nondegenerate"]:
        out["predicted_a2"] = predicted_a2(cls)
        out["difference_h0"] = h0_class(cls.shifted(2 - cls.a, -cls.b))
        out["case"] = base_locus_case(cls)
    return out

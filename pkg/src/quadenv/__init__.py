"""Exact computation of a2(X), the number of independent quadrics through a projective variety."""

__version__ = "0.1.0"

from .exactlinalg import QQ, GF, Field, ExactMatrix, rref, rank, kernel_basis
from .multipoly import MultiPoly, Relation, substitute, reduce
from .quadspace import SamplingPolicy, QuadricBasis, quadric_basis, contains_in_baselocus, exclusion_witnesses
from .scrollcalc import ScrollDivisorClass, h0_class, predicted_a2, q_equals_scroll

__all__ = [
    "QQ", "GF", "Field", "ExactMatrix", "rref", "rank", "kernel_basis",
    "MultiPoly", "Relation", "substitute", "reduce",
    "SamplingPolicy", "QuadricBasis", "quadric_basis", "contains_in_baselocus", "exclusion_witnesses",
    "ScrollDivisorClass", "h0_class", "predicted_a2", "q_equals_scroll",
]

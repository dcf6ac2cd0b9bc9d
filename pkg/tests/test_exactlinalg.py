import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadenv.exactlinalg import (
    DEFAULT_PRIME,
    QQ,
    SECOND_PRIME,
    ExactMatrix,
    FieldError,
    GF,
    Field,
    determinant,
    kernel_basis,
    rank,
    rref,
)


def test_identity_rref():
    m, r, piv = rref(ExactMatrix.identity(2))
    assert r == 2 and piv == [0, 1]
    assert m == ExactMatrix.identity(2)


def test_proportional_rows_rank_one():
    assert rank(ExactMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_empty_matrix_has_rank_zero():
    assert rank(ExactMatrix.zeros(0, 3)) == 0


def test_identity_kernel_empty_and_zero_kernel_full():
    assert kernel_basis(ExactMatrix.identity(4)) == []
    assert len(kernel_basis(ExactMatrix.zeros(3, 5))) == 5


def test_prime_validation():
    with pytest.raises(FieldError):
        GF(10)
    assert GF(SECOND_PRIME).modulus == SECOND_PRIME


def test_field_coercion():
    assert QQ("3/6") == Fraction(1, 2)
    f = GF(7)
    assert f(Fraction(1, 2)) == 4
    assert f(-1) == 6
    assert Field.from_json(f.to_json()) == f


def _rand_matrix(rng, n, m, box=9):
    return [[Fraction(rng.randint(-box, box), rng.randint(1, box)) for _ in range(m)] for _ in range(n)]


@pytest.mark.parametrize("seed", range(5))
def test_rank_agrees_across_primes(seed):
    # oracle: rank over Q equals rank mod primes larger than every numerator and denominator
    rng = random.Random(seed)
    rows = _rand_matrix(rng, 10, 10)
    # force a rank drop
    rows[7] = [a + 2 * b for a, b in zip(rows[1], rows[2])]
    m = ExactMatrix.from_rows(rows)
    r = rank(m)
    assert r == 9
    assert rank(m.reduce_mod(DEFAULT_PRIME)) == r
    assert rank(m.reduce_mod(SECOND_PRIME)) == r


def test_numpy_and_python_paths_agree():
    rng = random.Random(3)
    rows = [[rng.randrange(0, 101) for _ in range(8)] for _ in range(6)]
    small = rref(ExactMatrix.from_rows(rows, GF(101)))
    big_p = 2**61 - 1  # above the int64 bound: pure-python path
    big = rref(ExactMatrix.from_rows(rows, GF(big_p)))
    assert small[1] == big[1] == rank(ExactMatrix.from_rows(rows))


def test_twisted_cubic_evaluation_kernel():
    # 7 points on the twisted cubic, all 10 quadratic monomials: kernel is the 3 Hankel minors
    from quadenv.multipoly import monomials_of_degree

    monos = monomials_of_degree(4, 2)
    pts = [(1, t, t * t, t**3) for t in range(-3, 4)]
    rows = [[_eval(m, p) for m in monos] for p in pts]
    ker = kernel_basis(ExactMatrix.from_rows(rows))
    assert len(ker) == 3
    hankel = [
        {(1, 0, 1, 0): 1, (0, 2, 0, 0): -1},  # x0 x2 - x1^2
        {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1},  # x0 x3 - x1 x2
        {(0, 1, 0, 1): 1, (0, 0, 2, 0): -1},  # x1 x3 - x2^2
    ]
    span = ExactMatrix.from_rows(ker)
    for h in hankel:
        vec = [h.get(m, 0) for m in monos]
        assert rank(ExactMatrix.from_rows(ker + [vec])) == rank(span)


def _eval(mono, pt):
    out = 1
    for x, e in zip(pt, mono):
        out *= x**e
    return out


def test_determinant_matches_known_value():
    m = ExactMatrix.from_rows([[2, 0, 1], [1, 3, 2], [1, 1, 1]])
    assert determinant(m) == 2 * (3 - 2) - 0 + 1 * (1 - 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-20, 20), min_size=4, max_size=4), min_size=1, max_size=6))
def test_kernel_vectors_are_annihilated(rows):
    m = ExactMatrix.from_rows(rows)
    ker = kernel_basis(m)
    assert len(ker) + rank(m) == 4
    for v in ker:
        assert all(x == 0 for x in m.mul_vector(v))

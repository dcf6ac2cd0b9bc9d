# Dense univariate polynomials over F_p, coefficients listed low degree first.
from __future__ import annotations

import random

import numpy as np
from sympy.ntheory import sqrt_mod as _sympy_sqrt_mod

SCAN_LIMIT = 1 << 16


def trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: list) -> int:
    return len(trim(a)) - 1


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    return add(a, [(-x) % p for x in b], p)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([x % p for x in out])


def divmod_(a, b, p):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] * inv % p
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] - c * y) % p
    return trim(q), trim(r[: len(b) - 1])


def monic(a, p):
    a = trim(a)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)


def derivative(a, p):
    return trim([i * a[i] % p for i in range(1, len(a))])


def is_squarefree(a, p) -> bool:
    return deg(gcd(a, derivative(a, p), p)) == 0


def powmod(base, e, m, p):
    result = [1]
    base = divmod_(base, m, p)[1]
    while e:
        if e & 1:
            result = divmod_(mul(result, base, p), m, p)[1]
        e >>= 1
        if e:
            base = divmod_(mul(base, base, p), m, p)[1]
    return result


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _roots_scan(a, p):
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(a):
        acc = (acc * xs + c) % p
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def _split(f, p, rng):
    # f is monic, squarefree, and a product of distinct linear factors
    if deg(f) == 1:
        return [(-f[0]) % p]
    if p == 2:
        return [x for x in (0, 1) if evaluate(f, x, 2) == 0]
    while True:
        delta = rng.randrange(p)
        g = powmod([delta, 1], (p - 1) // 2, f, p)
        g = gcd(f, sub(g, [1], p), p)
        if 0 < deg(g) < deg(f):
            return _split(g, p, rng) + _split(divmod_(f, g, p)[0], p, rng)


def roots(a, p, rng: random.Random | None = None) -> list[int]:
    """Distinct roots in F_p, sorted.  Small primes are scanned exhaustively."""
    a = trim([x % p for x in a])
    if not a:
        raise ValueError("zero polynomial has every element as a root")
    if len(a) == 1:
        return []
    if p <= SCAN_LIMIT:
        return _roots_scan(a, p)
    rng = rng or random.Random(0)
    a = monic(a, p)
    # restrict to the product of the linear factors
    g = gcd(a, sub(powmod([0, 1], p, a, p), [0, 1], p), p)
    if deg(g) <= 0:
        return []
    return sorted(_split(g, p, rng))


def sqrt_mod(a: int, p: int) -> int | None:
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    return _sympy_sqrt_mod(a, p)


def interpolate(xs, ys, p):
    """Lagrange interpolation through ``(xs[i], ys[i])``."""
    result = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        num = [1]
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                num = mul(num, [(-xj) % p, 1], p)
                den = den * (xi - xj) % p
        scale = yi * pow(den, -1, p) % p
        result = add(result, [c * scale % p for c in num], p)
    return result

"""Witness varieties: constructors, point sampling and JSON round-tripping.

Every constructor returns a :class:`VarietyRep` whose symbolic data lives over
QQ with integer coefficients, so it can be reduced modulo any large prime for
sampling.  Random choices come from ``random.Random(seed)`` over a bounded
integer box and the seed is kept in ``meta``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from . import _upoly
from .exactlinalg import DEFAULT_PRIME, GF, QQ, ExactMatrix, Field, determinant, kernel_basis, rank
from .multipoly import MultiPoly, Relation, monomials_of_degree, parse_poly, substitute

BOX = 50
MAX_RETRIES = 25

TAGS = (
    "RNC",
    "Scroll",
    "ScrollDivisor",
    "EllipticNormal",
    "ProjectedElliptic",
    "RationalWithMSecant",
    "PlaneQuarticEmbedding",
    "PointConfig",
    "Projection",
    "LinearSpace",
)


class ConstructionError(ValueError):
    pass


@dataclass
class Parametrization:
    """Coordinates given by polynomial maps in ``source_vars`` variables."""

    source_vars: int
    maps: list
    domain_relation: Relation | None = None

    def reduce_mod(self, p: int) -> "Parametrization":
        rel = self.domain_relation.reduce_mod(p) if self.domain_relation else None
        return Parametrization(self.source_vars, [m.reduce_mod(p) for m in self.maps], rel)


@dataclass
class ImplicitCurve:
    """A curve given by a single relation plus the functions that embed it.

    ``kind`` is ``"weierstrass"`` (affine x, y with y^2 = cubic) or
    ``"plane"`` (homogeneous x, y, z with a form monic in z).
    """

    relation: Relation
    section_basis: list
    kind: str = "weierstrass"

    def reduce_mod(self, p: int) -> "ImplicitCurve":
        return ImplicitCurve(self.relation.reduce_mod(p), [b.reduce_mod(p) for b in self.section_basis], self.kind)


@dataclass
class DivisorData:
    """X = {G = 0} inside the scroll ``S(scroll_type)``; G lives in the Cox ring."""

    scroll_type: tuple
    a: int
    b: int
    form: MultiPoly

    @property
    def nvars(self) -> int:
        return 2 + len(self.scroll_type)


@dataclass
class VarietyRep:
    tag: str
    ambient_dim: int
    dim: int
    degree: int
    sectional_genus: int | None = None
    param: Parametrization | None = None
    implicit: ImplicitCurve | None = None
    points: list | None = None
    points_field: Field = dc_field(default=QQ)
    divisor: DivisorData | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def nvars(self) -> int:
        return self.ambient_dim + 1

    def has_symbolic_model(self) -> bool:
        return self.param is not None or self.implicit is not None or self.divisor is not None

    def summary(self) -> dict:
        return {
            "tag": self.tag,
            "n": self.dim,
            "c": self.codim,
            "d": self.degree,
            "g": self.sectional_genus,
            "r": self.ambient_dim,
        }


# --- helpers -----------------------------------------------------------------


def _binary_form(coeffs: Sequence[int]) -> MultiPoly:
    """sum coeffs[j] * s^(k-j) t^j in variables (s, t)."""
    k = len(coeffs) - 1
    return MultiPoly(2, {(k - j, j): Fraction(c) for j, c in enumerate(coeffs)}, QQ)


def _random_binary_form(rng: random.Random, degree: int) -> MultiPoly:
    return _binary_form([rng.randint(-BOX, BOX) for _ in range(degree + 1)])


def _nonzero(rng: random.Random, box: int = BOX) -> int:
    while True:
        v = rng.randint(-box, box)
        if v:
            return v


def _normalise(vec: list, field: Field):
    for x in vec:
        if x:
            inv = field.inv(x)
            return tuple(field.norm(v * inv) for v in vec)
    return None


def span_rank(vectors: Sequence[Sequence], field: Field) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return rank(ExactMatrix(len(vectors), len(vectors[0]), [[field.norm(x) for x in v] for v in vectors], field))


def _maps_rank(maps: Sequence[MultiPoly]) -> int:
    monos = sorted({e for m in maps for e in m.terms})
    if not monos:
        return 0
    return span_rank([m.coeff_vector(monos) for m in maps], QQ)


# --- constructors -------------------------------------------------------------


def rational_normal_curve(r: int) -> VarietyRep:
    if r < 2:
        raise ConstructionError("rational normal curve needs r >= 2")
    maps = [MultiPoly.monomial((r - j, j), 1) for j in range(r + 1)]
    return VarietyRep("RNC", r, 1, r, 0, param=Parametrization(2, maps), meta={"r": r})


def validate_scroll_type(scroll_type: Sequence[int], strict: bool = True) -> tuple:
    t = tuple(int(a) for a in scroll_type)
    if not t:
        raise ConstructionError("empty scroll type")
    if list(t) != sorted(t):
        raise ConstructionError(f"scroll type {t} is not sorted")
    if t[0] < 0:
        raise ConstructionError(f"scroll type {t} has a negative entry")
    if t[-1] <= 0:
        raise ConstructionError(f"scroll type {t} needs a positive last entry")
    if strict and len(t) >= 2 and t[-2] <= 0:
        raise ConstructionError(f"scroll type {t} needs its last two entries positive")
    return t


def scroll_coordinate_maps(scroll_type: Sequence[int]) -> list:
    """u_i s^(a_i - j) t^j over the Cox variables (s, t, u_1, ..., u_{n+1})."""
    nv = 2 + len(scroll_type)
    maps = []
    for i, ai in enumerate(scroll_type):
        for j in range(ai + 1):
            e = [0] * nv
            e[0], e[1], e[2 + i] = ai - j, j, 1
            maps.append(MultiPoly.monomial(e, 1))
    return maps


def scroll(scroll_type: Sequence[int], strict: bool = True) -> VarietyRep:
    t = validate_scroll_type(scroll_type, strict)
    maps = scroll_coordinate_maps(t)
    r = len(maps) - 1
    return VarietyRep(
        "Scroll",
        r,
        len(t),
        sum(t),
        0,
        param=Parametrization(2 + len(t), maps),
        meta={"type": list(t)},
    )


def divisor_class_monomials(scroll_type: Sequence[int], a: int, b: int) -> list:
    """Cox monomials u^I s^(k - j) t^j with |I| = a, k = <I, type> + b, 0 <= j <= k."""
    n1 = len(scroll_type)
    out = []
    if a < 0:
        return out
    for combo in combinations_with_replacement(range(n1), a):
        exps = [0] * n1
        for i in combo:
            exps[i] += 1
        k = sum(e * ai for e, ai in zip(exps, scroll_type)) + b
        for j in range(k + 1):
            out.append((k - j, j) + tuple(exps))
    return sorted(out, reverse=True)


def scroll_divisor(scroll_type: Sequence[int], a: int, b: int, seed: int = 0) -> VarietyRep:
    """A random member of |aH + bF| on S(type), kept symbolically as its Cox form."""
    t = validate_scroll_type(scroll_type)
    if a == 0 and b < 1:
        raise ConstructionError("ineffective class: a=0 needs b >= 1")
    monos = divisor_class_monomials(t, a, b)
    if not monos:
        raise ConstructionError(f"ineffective class aH+bF with a={a}, b={b}")
    rng = random.Random(seed)
    form = MultiPoly(2 + len(t), {m: Fraction(_nonzero(rng)) for m in monos}, QQ)
    n = len(t) - 1
    r = n + sum(t)
    return VarietyRep(
        "ScrollDivisor",
        r,
        n,
        a * sum(t) + b,
        None,
        param=None,
        divisor=DivisorData(t, a, b, form),
        meta={"type": list(t), "a": a, "b": b, "seed": seed},
    )


def scroll_divisor_samples(scroll_type, a: int, b: int, count: int, seed: int = 0, prime: int = DEFAULT_PRIME) -> VarietyRep:
    v = scroll_divisor(scroll_type, a, b, seed)
    pf = GF(prime)
    v.points = sample_points(v, pf, count, random.Random(seed + 1))
    v.points_field = pf
    return v


def elliptic_section_basis(m: int) -> list:
    """x^i y^j with 2i + 3j <= m and j <= 1, ordered by pole order."""
    basis = []
    for w in range(m + 1):
        if w == 1:
            continue
        if w % 2 == 0:
            basis.append(MultiPoly.monomial((w // 2, 0), 1))
        elif w >= 3:
            basis.append(MultiPoly.monomial(((w - 3) // 2, 1), 1))
    return basis


def weierstrass_relation(A, B) -> Relation:
    A, B = Fraction(A), Fraction(B)
    rep = MultiPoly(2, {(3, 0): Fraction(1), (1, 0): A, (0, 0): B}, QQ)
    return Relation(1, 2, rep)


def elliptic_normal_curve(c: int, A=-1, B=1) -> VarietyRep:
    """Degree c+2 elliptic curve in P^{c+1}, embedded by L((c+2) O)."""
    if c < 2:
        raise ConstructionError("elliptic normal curve needs c >= 2")
    A, B = Fraction(A), Fraction(B)
    if 4 * A**3 + 27 * B**2 == 0:
        raise ConstructionError("singular Weierstrass data: 4A^3 + 27B^2 = 0")
    m = c + 2
    basis = elliptic_section_basis(m)
    return VarietyRep(
        "EllipticNormal",
        c + 1,
        1,
        m,
        1,
        implicit=ImplicitCurve(weierstrass_relation(A, B), basis, "weierstrass"),
        meta={"c": c, "A": str(A), "B": str(B)},
    )


def projection_matrix(center: Sequence) -> list:
    """Rows of a full-rank linear map whose kernel is spanned by ``center``."""
    center = [Fraction(x) for x in center]
    k = next((i for i, x in enumerate(center) if x), None)
    if k is None:
        raise ConstructionError("projection centre is the zero vector")
    rows = []
    for i in range(len(center)):
        if i == k:
            continue
        row = [Fraction(0)] * len(center)
        row[i] = Fraction(1)
        row[k] = -center[i] / center[k]
        rows.append(row)
    return rows


def apply_linear(rows: Sequence[Sequence], polys: Sequence[MultiPoly]) -> list:
    out = []
    for row in rows:
        acc = MultiPoly.zero(polys[0].nvars, polys[0].field)
        for coeff, p in zip(row, polys):
            if coeff:
                acc = acc + p * coeff
        out.append(acc)
    return out


def projected_elliptic_curve(c: int, seed: int = 0, A=-1, B=1) -> VarietyRep:
    """Degree c+3 elliptic curve in P^{c+1}: the normal curve in P^{c+2} projected from a random point."""
    from .geometry import project_from_point

    base = elliptic_normal_curve(c + 1, A, B)
    rng = random.Random(seed)
    for _ in range(MAX_RETRIES):
        center = [rng.randint(-BOX, BOX) for _ in range(base.nvars)]
        if not any(center):
            continue
        try:
            v = project_from_point(base, center)
        except ConstructionError:
            continue
        v.tag = "ProjectedElliptic"
        v.meta.update({"c": c, "seed": seed, "A": str(Fraction(A)), "B": str(Fraction(B))})
        return v
    raise ConstructionError("could not find a projection centre off the curve")


def _base_point_free_binary(maps: Sequence[MultiPoly], p: int = DEFAULT_PRIME) -> bool:
    # no common zero at s = 0, and no common root of the dehomogenised forms
    if all(m.coefficient((0, m.degree())) == 0 for m in maps):
        return False
    fp = GF(p)
    g = None
    for m in maps:
        d = m.degree()
        u = [fp(m.coefficient((d - j, j))) for j in range(d + 1)]
        g = u if g is None else _upoly.gcd(g, u, p)
        if _upoly.deg(g) == 0:
            return True
    return _upoly.deg(g) <= 0


def injective_on_samples(maps: Sequence[MultiPoly], samples: int, rng: random.Random, p: int = DEFAULT_PRIME) -> bool:
    """Distinct random parameters must land on distinct projective points."""
    fp = GF(p)
    red = [m.reduce_mod(p) for m in maps]
    seen = set()
    for _ in range(samples):
        t = rng.randrange(p)
        pt = _normalise([m.evaluate((1, t)) for m in red], fp)
        if pt is None or pt in seen:
            return False
        seen.add(pt)
    return True


def rational_curve_with_4secant(c: int, seed: int = 0) -> VarietyRep:
    """Degree c+3 rational curve in P^{c+1} whose parameters t_1..t_4 all land on the line x_2 = ... = 0."""
    if c < 4:
        raise ConstructionError("the 4-secant construction needs c >= 4")
    rng = random.Random(seed)
    d = c + 3
    for attempt in range(MAX_RETRIES):
        ts = rng.sample(range(-BOX, BOX + 1), 4)
        q = MultiPoly.constant(1, 2)
        for ti in ts:
            q = q * _binary_form([-ti, 1])  # t - t_i s
        f0 = _random_binary_form(rng, d)
        f1 = _random_binary_form(rng, d)
        gs = [_random_binary_form(rng, d - 4) for _ in range(c)]
        maps = [f0, f1] + [q * g for g in gs]
        if _maps_rank(maps) != c + 2:
            continue
        if not _base_point_free_binary(maps):
            continue
        if not injective_on_samples(maps, 3 * d, random.Random(seed * 7919 + attempt)):
            continue
        return VarietyRep(
            "RationalWithMSecant",
            c + 1,
            1,
            d,
            0,
            param=Parametrization(2, maps),
            meta={"c": c, "seed": seed, "secant_params": ts, "secant_order": 4, "attempt": attempt},
        )
    raise ConstructionError("could not draw a nondegenerate injective 4-secant curve")


def secant_line(v: VarietyRep) -> VarietyRep:
    """The line spanned by the images of the 4-secant parameters."""
    pts = [[m.evaluate((Fraction(1), Fraction(t))) for m in v.param.maps] for t in v.meta["secant_params"]]
    basis = _independent_subset(pts, 2)
    return linear_space(basis, tag_meta={"role": "secant line"})


def _independent_subset(vectors, k):
    chosen = []
    for vec in vectors:
        if span_rank(chosen + [vec], QQ) > len(chosen):
            chosen.append(vec)
        if len(chosen) == k:
            return chosen
    raise ConstructionError("points do not span the expected dimension")


def linear_space(spanning: Sequence[Sequence], tag_meta: dict | None = None) -> VarietyRep:
    """Linear subspace spanned by the given coordinate vectors, parametrized linearly."""
    k = len(spanning)
    maps = []
    for coord in range(len(spanning[0])):
        terms = {}
        for i, vec in enumerate(spanning):
            if vec[coord]:
                e = [0] * k
                e[i] = 1
                terms[tuple(e)] = Fraction(vec[coord])
        maps.append(MultiPoly(k, terms, QQ))
    meta = {"spanning": [[str(Fraction(x)) for x in vec] for vec in spanning]}
    meta.update(tag_meta or {})
    return VarietyRep("LinearSpace", len(spanning[0]) - 1, k - 1, 1, 0, param=Parametrization(k, maps), meta=meta)


# --- plane quartics ------------------------------------------------------------

_QUARTIC_BASE_POINTS = [(1, 0, 0), (0, 1, 0), (1, 1, 0)]


def _pencil_discriminant_certificate(F: MultiPoly, p: int, rng: random.Random) -> bool:
    """True certifies that the plane curve F = 0 is smooth in characteristic zero.

    Lines through a point O off the curve form a pencil; the discriminant of
    F restricted to them is a polynomial of degree 12 in the pencil parameter,
    and every singular point makes it acquire a repeated root.  A squarefree
    reduction of full degree mod p therefore rules singularities out.
    """
    fp = GF(p)
    Fp = F.reduce_mod(p)
    O = [rng.randrange(p) for _ in range(3)]
    if Fp.evaluate(O) == 0:
        return False
    A = [rng.randrange(p) for _ in range(3)]
    Bv = [rng.randrange(p) for _ in range(3)]
    xs, ys = [], []
    for lam in range(14):
        Q = [(a + lam * b) % p for a, b in zip(A, Bv)]
        images = [MultiPoly(1, {(1,): o, (0,): q}, fp) for o, q in zip(O, Q)]
        g = substitute(Fp, images)
        coeffs = [g.coefficient((k,)) for k in range(5)]
        dg = _upoly.derivative(coeffs, p)
        xs.append(lam)
        ys.append(_sylvester_resultant(coeffs, dg, p))
    disc = _upoly.interpolate(xs[:13], ys[:13], p)
    if _upoly.evaluate(disc, xs[13], p) != ys[13]:
        return False
    return _upoly.deg(disc) == 12 and _upoly.is_squarefree(disc, p)


def _sylvester_resultant(f, g, p):
    f, g = _upoly.trim(f), _upoly.trim(g)
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(f)) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(g)) + [0] * (size - n - 1 - i))
    return determinant(ExactMatrix(size, size, rows, GF(p)))


def _random_plane_quartic(rng: random.Random, base_points: Sequence) -> MultiPoly:
    monos = monomials_of_degree(3, 4)
    coeffs = {m: Fraction(rng.randint(-BOX, BOX)) for m in monos}
    coeffs[(0, 0, 4)] = Fraction(1)
    for pt in base_points:
        # fix one coefficient per base point so that F vanishes there
        if pt == (1, 0, 0):
            coeffs[(4, 0, 0)] = Fraction(0)
        elif pt == (0, 1, 0):
            coeffs[(0, 4, 0)] = Fraction(0)
        elif pt == (1, 1, 0):
            rest = sum(v for m, v in coeffs.items() if m[2] == 0 and m != (3, 1, 0))
            coeffs[(3, 1, 0)] = -rest
    return MultiPoly(3, coeffs, QQ)


def plane_quartic_embedding(c: int = 4, seed: int = 0) -> VarietyRep:
    """Linearly normal genus-3 curve of degree c+4 in P^{c+1}, 4 <= c <= 8.

    c = 4 uses all plane conics; larger c uses plane cubics through 8 - c
    points of the quartic on the line z = 0.
    """
    if not 4 <= c <= 8:
        raise ConstructionError("plane quartic embeddings cover 4 <= c <= 8")
    rng = random.Random(seed)
    base = _QUARTIC_BASE_POINTS[: 8 - c] if c >= 5 else []
    for attempt in range(MAX_RETRIES):
        F = _random_plane_quartic(rng, base)
        if any(F.evaluate(pt) for pt in base):
            continue
        if not _pencil_discriminant_certificate(F, DEFAULT_PRIME, random.Random(seed * 104729 + attempt)):
            continue
        rel = Relation(2, 4, MultiPoly.monomial((0, 0, 4), 1) - F)
        if c == 4:
            basis = [MultiPoly.monomial(m, 1) for m in monomials_of_degree(3, 2)]
        else:
            cubics = monomials_of_degree(3, 3)
            if base:
                conds = ExactMatrix.from_rows([[MultiPoly.monomial(m, 1).evaluate(pt) for m in cubics] for pt in base])
                basis = [MultiPoly.from_coeffs(v, cubics) for v in kernel_basis(conds)]
            else:
                basis = [MultiPoly.monomial(m, 1) for m in cubics]
        return VarietyRep(
            "PlaneQuarticEmbedding",
            c + 1,
            1,
            c + 4,
            3,
            implicit=ImplicitCurve(rel, basis, "plane"),
            meta={"c": c, "seed": seed, "quartic": F.to_str(), "base_points": [list(b) for b in base], "attempt": attempt},
        )
    raise ConstructionError("could not draw a smooth plane quartic")


def point_config_on_rnc(c: int, m: int, seed: int = 0) -> VarietyRep:
    """m distinct rational points on the rational normal curve in P^c."""
    if m < c + 1:
        raise ConstructionError("need at least c+1 points")
    rng = random.Random(seed)
    box = max(BOX, 2 * m)
    params = rng.sample(range(-box, box + 1), m)
    pts = [tuple(Fraction(t) ** j for j in range(c + 1)) for t in params]
    return VarietyRep(
        "PointConfig",
        c,
        0,
        m,
        None,
        points=pts,
        points_field=QQ,
        meta={"c": c, "m": m, "seed": seed, "params": params},
    )


def point_list(points: Sequence[Sequence], field: Field, tag: str = "PointConfig", meta: dict | None = None) -> VarietyRep:
    pts = [tuple(field.norm(x) for x in p) for p in points]
    return VarietyRep(tag, len(pts[0]) - 1, 0, len(set(pts)), None, points=pts, points_field=field, meta=dict(meta or {}))


# --- sampling ------------------------------------------------------------------


def _eval_maps(maps, args, field):
    return [m.evaluate(args) for m in maps]


def _sample_param(param: Parametrization, field: Field, count: int, rng: random.Random) -> list:
    maps = param.maps if field.is_rational else [m.reduce_mod(field.modulus) for m in param.maps]
    out = []
    while len(out) < count:
        if field.is_rational:
            args = [Fraction(rng.randint(-BOX, BOX)) for _ in range(param.source_vars)]
        else:
            args = [rng.randrange(1, field.modulus) for _ in range(param.source_vars)]
        pt = _eval_maps(maps, args, field)
        if any(pt):
            out.append(pt)
    return out


def _sample_weierstrass(curve: ImplicitCurve, field: Field, count: int, rng: random.Random) -> list:
    p = field.modulus
    red = curve.reduce_mod(p)
    cubic = red.relation.replacement
    out = []
    while len(out) < count:
        x = rng.randrange(p)
        y = _upoly.sqrt_mod(cubic.evaluate((x, 0)), p)
        if y is None:
            continue
        if rng.random() < 0.5:
            y = (-y) % p
        pt = [b.evaluate((x, y)) for b in red.section_basis]
        out.append(pt)
    return out


def _sample_plane(curve: ImplicitCurve, field: Field, count: int, rng: random.Random) -> list:
    p = field.modulus
    red = curve.reduce_mod(p)
    F = red.relation.as_poly()
    out = []
    while len(out) < count:
        x, y = rng.randrange(p), rng.randrange(p)
        coeffs = [0] * 5
        for e, cf in F.terms.items():
            coeffs[e[2]] = (coeffs[e[2]] + cf * pow(x, e[0], p) * pow(y, e[1], p)) % p
        zs = _upoly.roots(coeffs, p, rng)
        if not zs:
            continue
        z = rng.choice(zs)
        pt = [b.evaluate((x, y, z)) for b in red.section_basis]
        if any(pt):
            out.append(pt)
    return out


def fiber_points(div: DivisorData, field: Field, st: tuple, rng: random.Random, tries: int = 8, G: MultiPoly | None = None):
    """A random point u of the fibre over (s:t) with G(s, t, u) = 0, or None."""
    p = field.modulus
    if G is None:
        G = div.form.reduce_mod(p)
    n1 = len(div.scroll_type)
    s, t = st
    if div.a == 0:
        # G depends only on (s, t): the whole fibre lies on X when G(s, t) = 0
        if G.evaluate((s, t) + (0,) * n1) != 0:
            return None
        return [rng.randrange(p) for _ in range(n1)]
    for _ in range(tries):
        base = [rng.randrange(p) for _ in range(n1)]
        direction = [rng.randrange(p) for _ in range(n1)]
        images = [MultiPoly.constant(s, 1, field), MultiPoly.constant(t, 1, field)]
        images += [MultiPoly(1, {(0,): u0, (1,): w}, field) for u0, w in zip(base, direction)]
        g = substitute(G, images)
        coeffs = [g.coefficient((k,)) for k in range(div.a + 1)]
        if not any(coeffs):
            continue
        lams = _upoly.roots(coeffs, p, rng)
        if not lams:
            continue
        lam = rng.choice(lams)
        return [(u0 + lam * w) % p for u0, w in zip(base, direction)]
    return None


def _sample_divisor(div: DivisorData, field: Field, count: int, rng: random.Random) -> list:
    if field.is_rational:
        raise ValueError("divisor sampling needs a prime field")
    p = field.modulus
    maps = [m.reduce_mod(p) for m in scroll_coordinate_maps(div.scroll_type)]
    out = []
    misses = 0
    G = div.form.reduce_mod(p)
    if div.a == 0:
        binary = [G.coefficient((G.degree() - j, j) + (0,) * len(div.scroll_type)) for j in range(G.degree() + 1)]
        ts = _upoly.roots(binary, p, rng)
        if not ts:
            raise ConstructionError("fibre-union class has no fibres over this prime")
    while len(out) < count:
        if div.a == 0:
            st = (1, rng.choice(ts))
        else:
            st = (1, rng.randrange(p))
        u = fiber_points(div, field, st, rng, G=G)
        if u is None:
            misses += 1
            if misses > 50 * count + 1000:
                raise ConstructionError("too few points found on the divisor")
            continue
        pt = [m.evaluate(st + tuple(u)) for m in maps]
        if any(pt):
            out.append(pt)
    return out


def sample_points(v: VarietyRep, field: Field, count: int, rng: random.Random) -> list:
    """``count`` coordinate vectors of points of ``v`` over ``field``."""
    if v.divisor is not None:
        return _sample_divisor(v.divisor, field, count, rng)
    if v.param is not None:
        return _sample_param(v.param, field, count, rng)
    if v.implicit is not None:
        if field.is_rational:
            raise ValueError("implicit curves are sampled over prime fields only")
        if v.implicit.kind == "weierstrass":
            return _sample_weierstrass(v.implicit, field, count, rng)
        return _sample_plane(v.implicit, field, count, rng)
    if v.points is not None:
        if field == v.points_field:
            return [list(p) for p in v.points]
        if v.points_field.is_rational:
            return [[field(x) for x in p] for p in v.points]
        raise ValueError("point list lives over a different prime field")
    raise ValueError("variety has no samplable representation")


# --- serialisation ---------------------------------------------------------------


def _poly_list(polys):
    return [p.to_str() for p in polys]


def to_json(v: VarietyRep) -> dict:
    doc = {
        "tag": v.tag,
        "ambientDim": v.ambient_dim,
        "dim": v.dim,
        "codim": v.codim,
        "degree": v.degree,
    }
    if v.sectional_genus is not None:
        doc["sectionalGenus"] = v.sectional_genus
    if v.param is not None:
        doc["parametrization"] = {
            "sourceVars": v.param.source_vars,
            "maps": _poly_list(v.param.maps),
        }
        if v.param.domain_relation is not None:
            doc["parametrization"]["domainRelation"] = v.param.domain_relation.to_json()
    if v.implicit is not None:
        doc["relation"] = v.implicit.relation.to_json()
        doc["sectionBasis"] = _poly_list(v.implicit.section_basis)
        doc["curveKind"] = v.implicit.kind
    if v.divisor is not None:
        doc["divisor"] = {
            "type": list(v.divisor.scroll_type),
            "a": v.divisor.a,
            "b": v.divisor.b,
            "form": v.divisor.form.to_str(),
        }
    if v.points is not None:
        doc["points"] = [[str(x) for x in p] for p in v.points]
        doc["pointsField"] = v.points_field.to_json()
    if v.meta:
        doc["meta"] = v.meta
    return doc


def from_json(doc: dict) -> VarietyRep:
    param = implicit = divisor = points = None
    pfield = QQ
    if "parametrization" in doc:
        pd = doc["parametrization"]
        k = pd["sourceVars"]
        rel = Relation.from_json(pd["domainRelation"]) if pd.get("domainRelation") else None
        param = Parametrization(k, [parse_poly(s, k, QQ) for s in pd["maps"]], rel)
    if "relation" in doc:
        rel = Relation.from_json(doc["relation"])
        basis = [parse_poly(s, rel.nvars, QQ) for s in doc["sectionBasis"]]
        implicit = ImplicitCurve(rel, basis, doc.get("curveKind", "weierstrass"))
    if "divisor" in doc:
        dd = doc["divisor"]
        t = tuple(dd["type"])
        divisor = DivisorData(t, dd["a"], dd["b"], parse_poly(dd["form"], 2 + len(t), QQ))
    if "points" in doc:
        pfield = Field.from_json(doc.get("pointsField", "rational"))
        points = [tuple(pfield(x) for x in p) for p in doc["points"]]
    return VarietyRep(
        doc["tag"],
        doc["ambientDim"],
        doc["dim"],
        doc["degree"],
        doc.get("sectionalGenus"),
        param=param,
        implicit=implicit,
        points=points,
        points_field=pfield,
        divisor=divisor,
        meta=doc.get("meta", {}),
    )


def expected_a2_bound(v: VarietyRep) -> int:
    """Right-hand side of the fundamental inequality C(c+1, 2) - min(d - c - 1, c)."""
    c, d = v.codim, v.degree
    return comb(c + 1, 2) - min(d - c - 1, c)

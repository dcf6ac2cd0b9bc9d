"""Projective points, spans, general position, projections and linear sections."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from . import _upoly
from .exactlinalg import DEFAULT_PRIME, GF, QQ, ExactMatrix, Field, kernel_basis, rank
from .multipoly import MultiPoly, reduce, substitute
from .varieties import (
    BOX,
    MAX_RETRIES,
    ConstructionError,
    ImplicitCurve,
    Parametrization,
    VarietyRep,
    apply_linear,
    point_list,
    projection_matrix,
    scroll_coordinate_maps,
)


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple
    field: Field = QQ

    def __post_init__(self):
        coords = tuple(self.field(x) for x in self.coords)
        pivot = next((x for x in coords if x), None)
        if pivot is None:
            raise ValueError("the zero vector is not a projective point")
        inv = self.field.inv(pivot)
        object.__setattr__(self, "coords", tuple(self.field.norm(x * inv) for x in coords))

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    def to_json(self) -> list:
        return [str(x) for x in self.coords]


@dataclass
class LinearProjection:
    center: ProjPoint
    matrix: ExactMatrix

    def apply(self, coords: Sequence) -> list:
        f = self.matrix.field
        return self.matrix.mul_vector([f(x) for x in coords])


def linear_projection(center: ProjPoint) -> LinearProjection:
    rows = projection_matrix(center.coords)
    f = center.field
    return LinearProjection(center, ExactMatrix(len(rows), len(rows[0]), [[f(x) for x in r] for r in rows], f))


def span_dimension(points: Sequence[ProjPoint]) -> int:
    """Projective dimension of the linear span; -1 for an empty list."""
    if not points:
        return -1
    if len({p.ambient_dim for p in points}) > 1:
        raise ValueError("points live in different ambient spaces")
    f = points[0].field
    m = ExactMatrix(len(points), len(points[0].coords), [list(p.coords) for p in points], f)
    return rank(m) - 1


def general_position_check(points: Sequence[ProjPoint], trials: int = 200, seed: int = 0) -> bool:
    """Every checked (r+1)-subset spans P^r.  Exhaustive when there are at most ``trials`` subsets."""
    r = points[0].ambient_dim
    if len(points) < r + 1:
        raise ValueError("need at least r+1 points")
    if len(set(points)) < len(points):
        return False
    k = r + 1
    total = comb(len(points), k)
    if total <= trials:
        subsets = combinations(range(len(points)), k)
    else:
        rng = random.Random(seed)
        subsets = (rng.sample(range(len(points)), k) for _ in range(trials))
    return all(span_dimension([points[i] for i in idx]) == r for idx in subsets)


def _certify_off(v: VarietyRep, center: Sequence) -> None:
    from .quadspace import SamplingPolicy, quadric_basis

    if v.points is not None and v.param is None and v.implicit is None:
        cp = ProjPoint(tuple(center), v.points_field)
        if any(ProjPoint(tuple(p), v.points_field) == cp for p in v.points):
            raise ConstructionError("projection centre is one of the points")
        return
    basis = quadric_basis(v, SamplingPolicy(primes=(DEFAULT_PRIME,)))
    pt = [Fraction(x) for x in center]
    if not any(q.evaluate(pt) for q in basis.quadrics):
        raise ConstructionError("cannot certify the projection centre off the variety")


def project_from_point(obj, center: Sequence):
    """Project points or a variety from ``center``.

    Points come back as :class:`ProjPoint` in P^{r-1}; varieties come back with
    composed maps (or composed section basis for implicit curves).  The centre
    is certified off the variety by a quadric through it that misses the centre.
    """
    if isinstance(obj, (list, tuple)) and obj and isinstance(obj[0], ProjPoint):
        f = obj[0].field
        cp = ProjPoint(tuple(center), f)
        if cp in obj:
            raise ConstructionError("projection centre is one of the points")
        proj = linear_projection(cp)
        return [ProjPoint(tuple(proj.apply(p.coords)), f) for p in obj]
    v: VarietyRep = obj
    if len(center) != v.nvars:
        raise ValueError("centre has the wrong number of coordinates")
    _certify_off(v, center)
    rows = projection_matrix(center)
    out = VarietyRep(
        "Projection",
        v.ambient_dim - 1,
        v.dim,
        v.degree,
        v.sectional_genus,
        meta={"source_tag": v.tag, "center": [str(Fraction(x)) for x in center], **{k: val for k, val in v.meta.items() if k != "center"}},
    )
    if v.param is not None:
        out.param = Parametrization(v.param.source_vars, apply_linear(rows, v.param.maps), v.param.domain_relation)
    elif v.implicit is not None:
        out.implicit = ImplicitCurve(v.implicit.relation, apply_linear(rows, v.implicit.section_basis), v.implicit.kind)
    elif v.points is not None:
        f = v.points_field
        out.points = [tuple(f.norm(sum(f(c) * x for c, x in zip(row, p))) for row in rows) for p in v.points]
        out.points_field = f
    else:
        raise ValueError("cannot project this representation")
    return out


# --- linear sections -------------------------------------------------------------


def _random_hyperplanes(rng: random.Random, count: int, nvars: int, p: int) -> list:
    return [[rng.randrange(p) for _ in range(nvars)] for _ in range(count)]


def _binary_coeffs(form: MultiPoly, p: int) -> list:
    d = form.degree()
    return [form.coefficient((d - j, j)) % p for j in range(d + 1)] if d >= 0 else []


def _section_param_curve(v, H, p, rng):
    fp = GF(p)
    maps = [m.reduce_mod(p) for m in v.param.maps]
    form = MultiPoly.zero(2, fp)
    for coeff, m in zip(H[0], maps):
        form = form + m * coeff
    if form.is_zero():
        return None
    d = form.degree()
    coeffs = _binary_coeffs(form, p)  # coefficient of t^j with s = 1
    pts = [[m.evaluate((1, t)) for m in maps] for t in _upoly.roots(coeffs, p, rng)]
    if _upoly.deg(coeffs) < d:
        # the point s = 0 lies on the hyperplane too
        pts.append([m.evaluate((0, 1)) for m in maps])
    return pts, d, _upoly.is_squarefree(coeffs, p) and _upoly.deg(coeffs) >= d - 1


def _section_weierstrass(v, H, p, rng):
    fp = GF(p)
    curve = v.implicit.reduce_mod(p)
    h = MultiPoly.zero(2, fp)
    for coeff, b in zip(H[0], curve.section_basis):
        h = h + b * coeff
    h = reduce(h, curve.relation)
    if h.is_zero():
        return None
    # the section has a single pole at the origin of the group law
    d = max(2 * e[0] + 3 * e[1] for e in h.terms)
    A = [0] * (h.degree_in(0) + 1)
    B = [0] * (h.degree_in(0) + 1)
    for e, c in h.terms.items():
        (A if e[1] == 0 else B)[e[0]] = c
    cubic = _upoly.trim([curve.relation.replacement.coefficient((k, 0)) for k in range(4)])
    norm_eq = _upoly.sub(_upoly.mul(A, A, p), _upoly.mul(cubic, _upoly.mul(B, B, p), p), p)
    pts = []
    for x in _upoly.roots(norm_eq, p, rng):
        bx = _upoly.evaluate(B, x, p)
        ax = _upoly.evaluate(A, x, p)
        if bx:
            ys = [(-ax) * pow(bx, -1, p) % p]
        else:
            y0 = _upoly.sqrt_mod(_upoly.evaluate(cubic, x, p), p)
            ys = [] if y0 is None else sorted({y0, (-y0) % p})
        for y in ys:
            pts.append([b.evaluate((x, y)) for b in curve.section_basis])
    return pts, d, _upoly.is_squarefree(norm_eq, p)


def _cox_linear_rows(scroll_type, H, p):
    """Restrict hyperplanes to the Cox ring: row k, column i is the binary form multiplying u_i."""
    fp = GF(p)
    maps = [m.reduce_mod(p) for m in scroll_coordinate_maps(scroll_type)]
    nv = 2 + len(scroll_type)
    rows = []
    for h in H:
        row = [MultiPoly.zero(2, fp) for _ in scroll_type]
        for coeff, m in zip(h, maps):
            if not coeff:
                continue
            (e, c), = m.terms.items()
            i = next(k for k in range(2, nv) if e[k])
            row[i - 2] = row[i - 2] + MultiPoly(2, {(e[0], e[1]): c * coeff % p}, fp, clean=False)
        rows.append(row)
    return rows


def _poly_det(m: list, nvars: int, field: Field) -> MultiPoly:
    n = len(m)
    if n == 0:
        return MultiPoly.constant(1, nvars, field)
    if n == 1:
        return m[0][0]
    total = MultiPoly.zero(nvars, field)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _poly_det(minor, nvars, field)
        total = total + term if j % 2 == 0 else total - term
    return total


def _maximal_minors(rows, nvars, field):
    """Signed maximal minors of a k x (k+1) matrix of polynomials: a generator of its kernel."""
    k1 = len(rows[0])
    out = []
    for i in range(k1):
        minor = [r[:i] + r[i + 1 :] for r in rows]
        d = _poly_det(minor, nvars, field)
        out.append(d if i % 2 == 0 else -d)
    return out


def _eval_matrix(rows, st, p):
    return [[x.evaluate(st) for x in r] for r in rows]


def _section_scroll(v, H, p, rng, count):
    fp = GF(p)
    t = tuple(v.meta["type"])
    rows = _cox_linear_rows(t, H, p)
    maps = [m.reduce_mod(p) for m in v.param.maps]
    if len(H) == len(t):
        det = _poly_det(rows, 2, fp)
        if det.is_zero():
            return None
        d = det.degree()
        coeffs = _binary_coeffs(det, p)
        params = [(1, x) for x in _upoly.roots(coeffs, p, rng)]
        if _upoly.deg(coeffs) < d:
            params.append((0, 1))
        pts = []
        for st in params:
            ker = kernel_basis(ExactMatrix(len(rows), len(t), _eval_matrix(rows, st, p), fp))
            for u in ker[:1]:
                pts.append([m.evaluate(st + tuple(u)) for m in maps])
        return pts, d, _upoly.is_squarefree(coeffs, p)
    # positive-dimensional section: sample it fibrewise
    pts = []
    while len(pts) < count:
        st = (1, rng.randrange(p))
        ker = kernel_basis(ExactMatrix(len(rows), len(t), _eval_matrix(rows, st, p), fp))
        u = [sum(rng.randrange(p) * vec[i] for vec in ker) % p for i in range(len(t))]
        pt = [m.evaluate(st + tuple(u)) for m in maps]
        if any(pt):
            pts.append(pt)
    return pts, None, True


def _section_divisor(v, H, p, rng):
    fp = GF(p)
    div = v.divisor
    t = div.scroll_type
    rows = _cox_linear_rows(t, H, p)
    u = _maximal_minors(rows, 2, fp)
    G = div.form.reduce_mod(p)
    images = [MultiPoly.var(0, 2, fp), MultiPoly.var(1, 2, fp)] + u
    g = substitute(G, images)
    if g.is_zero():
        return None
    d = g.degree()
    coeffs = _binary_coeffs(g, p)
    maps = [m.reduce_mod(p) for m in scroll_coordinate_maps(t)]
    pts = []
    params = [(1, x) for x in _upoly.roots(coeffs, p, rng)]
    if _upoly.deg(coeffs) < d:
        params.append((0, 1))
    for st in params:
        uu = tuple(x.evaluate(st) for x in u)
        pt = [m.evaluate(st + uu) for m in maps]
        if any(pt):
            pts.append(pt)
    return pts, d, _upoly.is_squarefree(coeffs, p)


def random_linear_section(v: VarietyRep, codim: int, seed: int = 0, prime: int = DEFAULT_PRIME, count: int = 50) -> VarietyRep:
    """Intersect with ``codim`` random hyperplanes over GF(prime).

    The result is a point list of the GF(prime)-rational points found, with the
    Bezout count of the section (points over the algebraic closure, with
    multiplicity) stored as ``meta["section_degree"]`` when the section is
    finite.
    """
    if codim > v.dim:
        raise ValueError("codimension exceeds the dimension of the variety")
    rng = random.Random(seed)
    for attempt in range(MAX_RETRIES):
        H = _random_hyperplanes(rng, codim, v.nvars, prime)
        if v.divisor is not None:
            if codim != v.dim:
                raise ValueError("divisor sections are implemented for finite sections only")
            res = _section_divisor(v, H, prime, rng)
        elif v.tag == "Scroll":
            res = _section_scroll(v, H, prime, rng, count)
        elif v.param is not None and v.dim == 1 and v.param.source_vars == 2 and codim == 1:
            res = _section_param_curve(v, H, prime, rng)
        elif v.implicit is not None and v.implicit.kind == "weierstrass" and codim == 1:
            res = _section_weierstrass(v, H, prime, rng)
        else:
            raise ValueError(f"linear sections of {v.tag} are not supported")
        if res is None or not res[0]:
            continue
        pts, d, squarefree = res
        out = point_list(pts, GF(prime), tag="PointConfig", meta={
            "source_tag": v.tag,
            "section_codim": codim,
            "section_degree": d,
            "reduced": squarefree,
            "seed": seed,
            "attempt": attempt,
            "prime": prime,
        })
        out.dim = v.dim - codim
        out.ambient_dim = v.ambient_dim
        out.meta["hyperplanes"] = [[int(x) for x in h] for h in H]
        return out
    raise ConstructionError("linear section empty over the working field after retries")


def degree_by_section(v: VarietyRep, seed: int = 0, prime: int = DEFAULT_PRIME) -> int:
    """Degree from a finite linear section (Bezout count), or from the Hilbert function for plane-curve models."""
    if v.points is not None and v.param is None and v.implicit is None and v.divisor is None:
        return len(set(v.points))
    if v.implicit is not None and v.implicit.kind == "plane":
        from .quadspace import hilbert_function

        m = 3
        return hilbert_function(v, m + 1, GF(prime)) - hilbert_function(v, m, GF(prime))
    sec = random_linear_section(v, v.dim, seed, prime)
    return sec.meta["section_degree"]

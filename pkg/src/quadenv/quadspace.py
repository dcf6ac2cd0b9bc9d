"""Spaces of quadrics through a variety and probes of their base locus.

The quadric space is computed twice.  The sampled route evaluates monomials at
points of the variety over each working prime and grows the sample until the
kernel dimension is stable.  The symbolic route pulls every monomial back
through the variety's model (parametrization, curve relation or Cox form of a
scroll divisor) and takes the exact kernel over QQ.  The two must agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

from .exactlinalg import DEFAULT_PRIME, GF, QQ, SECOND_PRIME, ExactMatrix, Field, kernel_basis, rank, row_space_rref
from .multipoly import MultiPoly, monomials_of_degree, pullback_monomials, reduce, substitute
from .varieties import (
    ConstructionError,
    VarietyRep,
    divisor_class_monomials,
    sample_points,
    scroll_coordinate_maps,
    to_json as variety_to_json,
)

SYMBOLIC = "SymbolicCertified"
MULTI_PRIME = "MultiPrimeAgreed"
SAMPLED = "SampledOnly"
LEVELS = {SAMPLED: 0, MULTI_PRIME: 1, SYMBOLIC: 2}


class CertificationError(ArithmeticError):
    def __init__(self, message, vector=None):
        super().__init__(message)
        self.vector = vector


@dataclass
class SamplingPolicy:
    primes: tuple = (DEFAULT_PRIME, SECOND_PRIME)
    seed: int = 0
    initial_extra: int = 10
    increment: int = 25
    max_points: int = 3000
    retries: int = 3
    symbolic: bool = True


@dataclass
class QuadricBasis:
    ambient_dim: int
    quadrics: list
    a2: int
    certification: str
    field: Field = QQ
    provenance: dict = dc_field(default_factory=dict)

    def coefficient_matrix(self) -> ExactMatrix:
        monos = monomials_of_degree(self.ambient_dim + 1, 2)
        return ExactMatrix(len(self.quadrics), len(monos), [q.coeff_vector(monos) for q in self.quadrics], self.field)

    def reduce_mod(self, p: int) -> list:
        if self.field.is_rational:
            return [q.reduce_mod(p) for q in self.quadrics]
        if self.field.modulus != p:
            raise ValueError("basis lives over a different prime")
        return list(self.quadrics)

    def to_json(self) -> dict:
        return {
            "ambientDim": self.ambient_dim,
            "a2": self.a2,
            "certification": self.certification,
            "field": self.field.to_json(),
            "quadrics": [q.to_str() for q in self.quadrics],
            "provenance": self.provenance,
        }


@dataclass
class BaseLocusReport:
    certified_components: list = dc_field(default_factory=list)
    excluded_witnesses: list = dc_field(default_factory=list)
    counterexamples: list = dc_field(default_factory=list)
    discarded_on_known: int = 0
    probes: int = 0
    primes: tuple = ()
    seed: int = 0
    dimension_bound_ok: bool = True

    @property
    def all_excluded(self) -> bool:
        return not self.counterexamples and len(self.excluded_witnesses) + self.discarded_on_known == self.probes

    def to_json(self) -> dict:
        return {
            "certifiedComponents": self.certified_components,
            "excludedWitnesses": len(self.excluded_witnesses),
            "witnessSample": self.excluded_witnesses[:5],
            "counterexamples": self.counterexamples,
            "discardedOnKnown": self.discarded_on_known,
            "probes": self.probes,
            "primes": list(self.primes),
            "seed": self.seed,
            "dimensionBoundOk": self.dimension_bound_ok,
        }


# --- matrices --------------------------------------------------------------------


def evaluation_matrix(points: Sequence[Sequence], degree: int, field: Field = QQ) -> ExactMatrix:
    """Rows are points, columns are graded-lex monomials of the given degree."""
    if not points:
        raise ValueError("no points")
    nvars = len(points[0])
    if any(len(p) != nvars for p in points):
        raise ValueError("points live in different ambient spaces")
    monos = monomials_of_degree(nvars, degree)
    rows = []
    norm = field.norm
    for pt in points:
        pt = [field(x) for x in pt]
        # powers computed once per coordinate
        powers = [[field.one] * (degree + 1) for _ in range(nvars)]
        for i, x in enumerate(pt):
            for k in range(1, degree + 1):
                powers[i][k] = norm(powers[i][k - 1] * x)
        row = []
        for m in monos:
            v = field.one
            for i, k in enumerate(m):
                if k:
                    v = v * powers[i][k]
            row.append(norm(v))
        rows.append(row)
    return ExactMatrix(len(rows), len(monos), rows, field)


def _symbolic_parts(v: VarietyRep, field: Field):
    """Images, optional relation and optional Cox divisor form, reduced into ``field``."""
    red = (lambda poly: poly) if field.is_rational else (lambda poly: poly.reduce_mod(field.modulus))
    if v.divisor is not None:
        maps = [red(m) for m in scroll_coordinate_maps(v.divisor.scroll_type)]
        return maps, None, red(v.divisor.form)
    if v.param is not None:
        return [red(m) for m in v.param.maps], None, None
    if v.implicit is not None:
        rel = v.implicit.relation if field.is_rational else v.implicit.relation.reduce_mod(field.modulus)
        return [red(b) for b in v.implicit.section_basis], rel, None
    return None


def _constraint_block(v: VarietyRep, degree: int, field: Field):
    """Linear conditions on degree-``degree`` forms to vanish on ``v``.

    Returns ``(rows, extra)`` where ``rows`` act on ambient monomials and
    ``extra`` (possibly empty) holds the columns for the cofactor of the
    divisor form, so that kernel vectors are ``(form, cofactor)`` pairs.
    """
    monos = monomials_of_degree(v.nvars, degree)
    parts = _symbolic_parts(v, field)
    if parts is None:
        if v.points is None:
            raise ValueError("variety has no usable representation")
        pts = sample_points(v, field, len(v.points), random.Random(0))
        m = evaluation_matrix(pts, degree, field)
        return m.entries, []
    images, rel, form = parts
    pulled = pullback_monomials(monos, images)
    if rel is not None:
        pulled = [reduce(p, rel) for p in pulled]
    cof = []
    if form is not None:
        div = v.divisor
        cmonos = divisor_class_monomials(div.scroll_type, degree - div.a, -div.b)
        for cm in cmonos:
            cof.append(-(form * MultiPoly(form.nvars, {cm: field.one}, field, clean=False)))
    keys = sorted({e for p in pulled + cof for e in p.terms})
    rows = [[p.coefficient(k) for p in pulled] for k in keys]
    extra = [[p.coefficient(k) for p in cof] for k in keys] if cof else []
    return rows, extra


def forms_vanishing(parts: Sequence[VarietyRep], degree: int, field: Field) -> list:
    """Exact basis (RREF rows) of degree-``degree`` forms vanishing on every part."""
    nv = parts[0].nvars
    ncols = comb(nv + degree - 1, degree)
    blocks = [_constraint_block(p, degree, field) for p in parts]
    total_extra = sum(len(b[1][0]) if b[1] else 0 for b in blocks)
    rows = []
    offset = ncols
    for main, extra in blocks:
        width = len(extra[0]) if extra else 0
        for i, r in enumerate(main):
            row = list(r) + [field.zero] * total_extra
            if width:
                row[offset : offset + width] = extra[i]
            rows.append(row)
        offset += width
    width = ncols + total_extra
    if not rows:
        ker = kernel_basis(ExactMatrix(0, width, [], field))
    else:
        ker = kernel_basis(ExactMatrix(len(rows), width, rows, field))
    projected = [vec[:ncols] for vec in ker]
    span = row_space_rref(projected, field, ncols)
    return span.entries


def hilbert_function(v: VarietyRep, m: int, field: Field = QQ) -> int:
    """dim of degree-m forms restricted to ``v``."""
    return comb(v.nvars + m - 1, m) - len(forms_vanishing([v], m, field))


# --- certification -----------------------------------------------------------------


def _in_divisor_ideal(pulled: MultiPoly, form: MultiPoly, cofactor_monos, field: Field) -> bool:
    if pulled.is_zero():
        return True
    cols = [form * MultiPoly(form.nvars, {cm: field.one}, field, clean=False) for cm in cofactor_monos]
    keys = sorted({e for p in cols + [pulled] for e in p.terms})
    a = ExactMatrix(len(keys), len(cols), [[c.coefficient(k) for c in cols] for k in keys], field) if cols else None
    aug = ExactMatrix(len(keys), len(cols) + 1, [[c.coefficient(k) for c in cols] + [pulled.coefficient(k)] for k in keys], field)
    return (rank(a) if a is not None else 0) == rank(aug)


def vanishes_on(form: MultiPoly, v: VarietyRep) -> bool:
    """Symbolic test that the form vanishes identically on ``v``."""
    field = form.field
    parts = _symbolic_parts(v, field)
    if parts is None:
        pts = sample_points(v, field, len(v.points), random.Random(0))
        return all(form.evaluate(p) == 0 for p in pts)
    images, rel, G = parts
    pulled = substitute(form, images)
    if rel is not None:
        pulled = reduce(pulled, rel)
    if G is None:
        return pulled.is_zero()
    div = v.divisor
    cmonos = divisor_class_monomials(div.scroll_type, form.degree() - div.a, -div.b)
    return _in_divisor_ideal(pulled, G, cmonos, field)


# --- the quadric basis -------------------------------------------------------------


def _stable_sampled_kernel(parts, prime, policy, monos):
    field = GF(prime)
    rng = random.Random(f"{policy.seed}:{prime}")
    nv = parts[0].nvars
    batch = comb(nv + 1, 2) + policy.initial_extra
    points = []

    def grow(k):
        for part in parts:
            if part.points is not None and part.param is None and part.implicit is None and part.divisor is None:
                if not any(points_from is part for points_from in finite_parts):
                    finite_parts.append(part)
                    points.extend(sample_points(part, field, len(part.points), rng))
            else:
                points.extend(sample_points(part, field, k, rng))

    finite_parts: list = []
    grow(batch)
    prev = None
    while True:
        ker = kernel_basis(evaluation_matrix(points, 2, field))
        if prev is not None and len(ker) == prev:
            return ker, points
        if len(points) > policy.max_points:
            raise CertificationError(f"kernel did not stabilise within {policy.max_points} points")
        prev = len(ker)
        grow(policy.increment)


def _vector_to_form(vec, monos, field):
    return MultiPoly(len(monos[0]), dict(zip(monos, vec)), field)


def quadric_basis(variety, policy: SamplingPolicy | None = None) -> QuadricBasis:
    """Certified basis of the degree-2 part of the ideal of ``variety``.

    ``variety`` may also be a list of varieties, giving the quadrics through
    their union.
    """
    policy = policy or SamplingPolicy()
    parts = list(variety) if isinstance(variety, (list, tuple)) else [variety]
    r = parts[0].ambient_dim
    if any(p.ambient_dim != r for p in parts):
        raise ValueError("parts live in different ambient spaces")
    monos = monomials_of_degree(r + 1, 2)
    symbolic_ok = policy.symbolic and all(p.has_symbolic_model() or (p.points is not None and p.points_field.is_rational) for p in parts)
    over_fp = [p for p in parts if p.points is not None and not p.has_symbolic_model() and not p.points_field.is_rational]

    prov = {"seed": policy.seed, "primes": [], "sampled_a2": {}, "samples": {}}
    if over_fp:
        # points that only exist mod one prime: everything happens over that prime
        field = over_fp[0].points_field
        if any(p.points_field != field for p in over_fp):
            raise ValueError("point lists over different primes cannot be combined")
        rows = forms_vanishing(parts, 2, field)
        quads = [_vector_to_form(v, monos, field) for v in rows]
        prov["primes"] = [field.modulus]
        prov["sampled_a2"][str(field.modulus)] = len(quads)
        return QuadricBasis(r, quads, len(quads), SAMPLED, field, prov)

    sampled = {}
    for p in policy.primes:
        fp = GF(p)
        for attempt in range(policy.retries + 1):
            ker, pts = _stable_sampled_kernel(parts, p, policy, monos)
            bad = None
            if symbolic_ok:
                for vec in ker:
                    q = _vector_to_form(vec, monos, fp)
                    if not all(vanishes_on(q, part) for part in parts):
                        bad = vec
                        break
            if bad is None:
                break
            policy = SamplingPolicy(**{**policy.__dict__, "initial_extra": policy.initial_extra + 2 * policy.increment})
        else:
            raise CertificationError("spurious quadric survived resampling", bad)
        sampled[p] = len(ker)
        prov["primes"].append(p)
        prov["sampled_a2"][str(p)] = len(ker)
        prov["samples"][str(p)] = len(pts)

    dims = set(sampled.values())
    if symbolic_ok:
        rows = forms_vanishing(parts, 2, QQ)
        quads = [_vector_to_form(v, monos, QQ) for v in rows]
        for q in quads:
            if not all(vanishes_on(q, part) for part in parts):
                raise CertificationError("exact quadric failed symbolic certification", q.to_str())
        if dims and dims != {len(quads)}:
            raise CertificationError(
                f"sampled dimensions {sorted(sampled.items())} disagree with exact dimension {len(quads)}"
            )
        all_symbolic = all(p.has_symbolic_model() for p in parts)
        level = SYMBOLIC if all_symbolic else (MULTI_PRIME if len(sampled) >= 2 else SAMPLED)
        prov["exact_a2"] = len(quads)
        return QuadricBasis(r, quads, len(quads), level, QQ, prov)

    if len(dims) != 1:
        raise CertificationError(f"primes disagree on a2: {sorted(sampled.items())}")
    p0 = policy.primes[0]
    fp = GF(p0)
    ker, _ = _stable_sampled_kernel(parts, p0, policy, monos)
    span = row_space_rref(ker, fp, len(monos)).entries
    quads = [_vector_to_form(v, monos, fp) for v in span]
    level = MULTI_PRIME if len(sampled) >= 2 else SAMPLED
    return QuadricBasis(r, quads, len(quads), level, fp, prov)


def same_row_space(b1: QuadricBasis, b2: QuadricBasis) -> bool:
    if b1.field != b2.field or b1.ambient_dim != b2.ambient_dim:
        return False
    monos = monomials_of_degree(b1.ambient_dim + 1, 2)
    r1 = row_space_rref([q.coeff_vector(monos) for q in b1.quadrics], b1.field, len(monos))
    r2 = row_space_rref([q.coeff_vector(monos) for q in b2.quadrics], b2.field, len(monos))
    return r1 == r2


# --- base locus ------------------------------------------------------------------------


def contains_in_baselocus(basis: QuadricBasis, candidate: VarietyRep) -> bool:
    """Every quadric of ``basis`` vanishes identically on ``candidate``."""
    if candidate.ambient_dim != basis.ambient_dim:
        raise ValueError("candidate lives in a different ambient space")
    if not candidate.has_symbolic_model() and candidate.points is None:
        raise ValueError("candidate needs a parametrization, relation or point list")
    return all(vanishes_on(q, candidate) for q in basis.quadrics)


class _Membership:
    """Membership in a known component, tested mod p.

    Linear spaces are tested exactly by a rank check.  Anything else is tested
    against its interpolated forms of degree 2 and 3.
    """

    def __init__(self, comp: VarietyRep, p: int, rng: random.Random):
        self.comp = comp
        self.field = GF(p)
        self.linear = None
        self.forms = []
        if comp.tag == "LinearSpace":
            self.linear = [[self.field(x) for x in vec] for vec in comp.meta["spanning"]]
            self.rank = rank(ExactMatrix(len(self.linear), len(self.linear[0]), self.linear, self.field))
            return
        for deg in (2, 3):
            monos = monomials_of_degree(comp.nvars, deg)
            if comp.has_symbolic_model():
                rows = forms_vanishing([comp], deg, self.field)
            else:
                pts = sample_points(comp, self.field, len(comp.points), rng)
                rows = kernel_basis(evaluation_matrix(pts, deg, self.field))
            self.forms += [_vector_to_form(vec, monos, self.field) for vec in rows]

    def __contains__(self, pt) -> bool:
        if self.linear is not None:
            m = self.linear + [list(pt)]
            return rank(ExactMatrix(len(m), len(m[0]), m, self.field)) == self.rank
        return all(f.evaluate(pt) == 0 for f in self.forms)


def _dimension_bound(basis_dim: int | None, components) -> bool:
    if basis_dim is None:
        return True
    from .geometry import ProjPoint, span_dimension

    for comp in components:
        pts = sample_points(comp, GF(DEFAULT_PRIME), comp.nvars + 5, random.Random(1)) if comp.has_symbolic_model() else comp.points
        nondeg = span_dimension([ProjPoint(tuple(p), GF(DEFAULT_PRIME) if comp.has_symbolic_model() else comp.points_field) for p in pts]) == comp.ambient_dim
        if nondeg and comp.dim > basis_dim + 1:
            return False
    return True


def exclusion_witnesses(
    basis: QuadricBasis,
    superset: VarietyRep,
    known_components: Sequence[VarietyRep],
    trials: int = 200,
    seed: int = 0,
    primes: Sequence[int] = (DEFAULT_PRIME, SECOND_PRIME),
    variety_dim: int | None = None,
) -> BaseLocusReport:
    """Evidence that the base locus of ``basis`` meets ``superset`` only inside the known components.

    Sample points of ``superset`` mod each prime, drop those lying on a known
    component, and record for every survivor the index of a quadric that does
    not vanish there.  Survivors killed by every quadric are counterexample
    candidates.
    """
    report = BaseLocusReport(primes=tuple(primes), seed=seed)
    for comp in known_components:
        if comp.has_symbolic_model() and contains_in_baselocus(basis, comp):
            report.certified_components.append({"tag": comp.tag, "dim": comp.dim, "proof": "symbolic pullback"})
    report.dimension_bound_ok = _dimension_bound(variety_dim, [c for c in known_components if c.has_symbolic_model() and contains_in_baselocus(basis, c)])
    for p in primes:
        rng = random.Random(f"{seed}:{p}:probe")
        quads = basis.reduce_mod(p)
        members = [_Membership(c, p, rng) for c in known_components]
        pts = sample_points(superset, GF(p), trials, rng)
        for pt in pts:
            report.probes += 1
            if any(pt in m for m in members):
                report.discarded_on_known += 1
                continue
            idx = next((i for i, q in enumerate(quads) if q.evaluate(pt)), None)
            if idx is None:
                report.counterexamples.append({"prime": p, "point": [str(x) for x in pt]})
            else:
                report.excluded_witnesses.append({"prime": p, "point": [str(x) for x in pt], "quadric": idx})
    return report


def ambient_space(r: int) -> VarietyRep:
    """P^r itself, parametrized by the identity."""
    from .varieties import linear_space

    return linear_space([[1 if i == j else 0 for j in range(r + 1)] for i in range(r + 1)], {"role": "ambient"})


def secant_probe(v: VarietyRep) -> VarietyRep:
    """Points on secant lines of a parametrized variety: lambda*P + mu*Q."""
    from .varieties import Parametrization

    if v.param is None:
        raise ValueError("secant probes need a parametrization")
    k = v.param.source_vars
    nv = 2 * k + 2
    maps = []
    for m in v.param.maps:
        first = MultiPoly(nv, {e + (0,) * k + (1, 0): c for e, c in m.terms.items()}, QQ)
        second = MultiPoly(nv, {(0,) * k + e + (0, 1): c for e, c in m.terms.items()}, QQ)
        maps.append(first + second)
    return VarietyRep("Projection", v.ambient_dim, min(2 * v.dim + 1, v.ambient_dim), 0, None,
                      param=Parametrization(nv, maps), meta={"role": "secant probe", "source_tag": v.tag})


def basis_report(v: VarietyRep, basis: QuadricBasis, emit: bool = False) -> dict:
    out = {"variety": v.summary(), "a2": basis.a2, "certification": basis.certification, "provenance": basis.provenance}
    if emit:
        out["basis"] = basis.to_json()
    return out

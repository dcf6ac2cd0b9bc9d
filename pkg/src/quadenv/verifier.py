"""Named scenarios that check predicted quadric counts on constructed varieties."""

from __future__ import annotations

import csv
import io
import random
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from . import __version__
from .exactlinalg import DEFAULT_PRIME, SECOND_PRIME, GF
from .quadspace import (
    LEVELS,
    MULTI_PRIME,
    CertificationError,
    SamplingPolicy,
    contains_in_baselocus,
    exclusion_witnesses,
    quadric_basis,
    secant_probe,
)
from .scrollcalc import (
    ScrollCalcError,
    ScrollDivisorClass,
    a2_scroll,
    is_effective_class,
    is_nondegenerate_class,
    predicted_a2,
    q_equals_scroll,
    x0_subscroll_type,
)
from .varieties import (
    ConstructionError,
    VarietyRep,
    elliptic_normal_curve,
    expected_a2_bound,
    linear_space,
    plane_quartic_embedding,
    point_config_on_rnc,
    point_list,
    projected_elliptic_curve,
    rational_curve_with_4secant,
    rational_normal_curve,
    sample_points,
    scroll,
    scroll_divisor,
    secant_line,
)

PASS, FAIL, INCONCLUSIVE = "Pass", "Fail", "Inconclusive"




@dataclass
class Scenario:
    name: str
    params: dict
    expected: dict
    observed: dict = dc_field(default_factory=dict)
    status: str = INCONCLUSIVE
    claim: str = ""
    certification: str | None = None
    inequality_checks: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    def param_string(self) -> str:
        return ";".join(f"{k}={_fmt(v)}" for k, v in self.params.items())


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def _policy_dict(policy: SamplingPolicy) -> dict:
    return {"primes": list(policy.primes), "seed": policy.seed}


def _inequality_entry(v: VarietyRep, a2: int) -> dict:
    bound = expected_a2_bound(v)
    return {"tag": v.tag, "c": v.codim, "d": v.degree, "a2": a2, "bound": bound, "ok": a2 <= bound}


def _certified(level: str) -> bool:
    return LEVELS[level] >= LEVELS[MULTI_PRIME]


def _equality_scenario(name, v, expected_a2, claim, policy, params):
    sc = Scenario(name, params, {"a2": expected_a2}, claim=claim)
    try:
        basis = quadric_basis(v, policy)
    except (CertificationError, ConstructionError) as exc:
        sc.status = FAIL
        sc.notes.append(f"certification failed: {exc}")
        return sc, None
    sc.observed = {"a2": basis.a2, "sampled": basis.provenance.get("sampled_a2", {})}
    sc.certification = basis.certification
    sc.inequality_checks.append(_inequality_entry(v, basis.a2))
    ok = basis.a2 == expected_a2 and _certified(basis.certification) and sc.inequality_checks[-1]["ok"]
    sc.status = PASS if ok else FAIL
    return sc, basis


# --- individual scenarios -------------------------------------------------------------


def check_fundamental_inequality(v: VarietyRep, policy: SamplingPolicy | None = None, basis=None) -> Scenario:
    policy = policy or SamplingPolicy()
    basis = basis or quadric_basis(v, policy)
    entry = _inequality_entry(v, basis.a2)
    sc = Scenario(
        "fundamental-inequality",
        {"tag": v.tag, "c": v.codim, "d": v.degree},
        {"bound": entry["bound"]},
        {"a2": basis.a2},
        PASS if entry["ok"] else FAIL,
        claim="a2 <= C(c+1,2) - min(d-c-1, c)",
        certification=basis.certification,
        inequality_checks=[entry],
    )
    return sc


def scenario_castelnuovo(c_values: Sequence[int] = range(2, 7), policy: SamplingPolicy | None = None,
                         scroll_types: Sequence[Sequence[int]] = ((1, 2), (2, 2), (1, 1, 1))) -> list:
    policy = policy or SamplingPolicy()
    out = []
    for c in c_values:
        v = rational_normal_curve(c + 1)
        sc, _ = _equality_scenario("castelnuovo", v, comb(c + 1, 2), "minimal degree attains C(c+1,2)", policy, {"kind": "RNC", "c": c})
        out.append(sc)
    for t in scroll_types:
        v = scroll(t)
        sc, _ = _equality_scenario("castelnuovo", v, comb(v.codim + 1, 2), "minimal degree attains C(c+1,2)", policy,
                                   {"kind": "Scroll", "type": list(t), "c": v.codim})
        sc.expected["a2_closed_form"] = a2_scroll(t)
        if a2_scroll(t) != sc.expected["a2"]:
            sc.status = FAIL
            sc.notes.append("closed-form scroll count disagrees")
        out.append(sc)
    return out


def scenario_fano(c: int, policy: SamplingPolicy | None = None, A=-1, B=1) -> Scenario:
    policy = policy or SamplingPolicy()
    v = elliptic_normal_curve(c, A, B)
    sc, _ = _equality_scenario("fano", v, comb(c + 1, 2) - 1, "linearly normal genus-one curve has C(c+1,2)-1", policy,
                               {"c": c, "A": str(A), "B": str(B)})
    return sc


def scenario_curve_witnesses(c: int, policy: SamplingPolicy | None = None, seed: int = 0) -> list:
    """The three curve types with a2 = C(c+1,2) - 3 for c >= 4."""
    policy = policy or SamplingPolicy()
    if c < 4:
        raise ValueError("the curve witnesses need c >= 4")
    target = comb(c + 1, 2) - 3
    builders = [
        ("rational-4-secant", lambda: rational_curve_with_4secant(c, seed), "smooth rational curve of degree c+3 with a 4-secant line"),
        ("projected-elliptic", lambda: projected_elliptic_curve(c, seed), "isomorphic projection of a genus-one normal curve, degree c+3"),
        ("genus-3", lambda: plane_quartic_embedding(c, seed), "linearly normal genus-3 curve of degree c+4"),
    ]
    out = []
    for kind, build, claim in builders:
        params = {"kind": kind, "c": c, "seed": seed}
        try:
            v = build()
        except ConstructionError as exc:
            sc = Scenario("curve-witness", params, {"a2": target}, status=INCONCLUSIVE, claim=claim, notes=[str(exc)])
            out.append(sc)
            continue
        sc, _ = _equality_scenario("curve-witness", v, target, claim, policy, params)
        sc.observed["degree"] = v.degree
        if kind == "genus-3" and sc.observed.get("a2") is not None:
            # Riemann-Roch: quadrics restricted to the curve fill h0(O(2)) = 2d + 1 - g
            restricted = comb(c + 3, 2) - sc.observed["a2"]
            sc.observed["h0_O2"] = restricted
            if restricted != 2 * v.degree + 1 - 3:
                sc.status = FAIL
                sc.notes.append("2-normality count inconsistent with Riemann-Roch")
        out.append(sc)
    return out


def scenario_two_normality(c: int, m: int, policy: SamplingPolicy | None = None, seed: int = 0) -> Scenario:
    policy = policy or SamplingPolicy()
    v = point_config_on_rnc(c, m, seed)
    sc, _ = _equality_scenario("two-normality", v, comb(c + 2, 2) - m, "points in general position, at most 2c+1 of them, are 2-normal",
                               policy, {"c": c, "m": m, "seed": seed})
    return sc


def scenario_divisor_difference(scroll_type: Sequence[int], a: int, b: int, policy: SamplingPolicy | None = None, seed: int = 0) -> Scenario:
    policy = policy or SamplingPolicy()
    t = tuple(scroll_type)
    cls = ScrollDivisorClass(t, a, b)
    params = {"type": list(t), "a": a, "b": b, "seed": seed}
    sc = Scenario("divisor-difference", params, {}, claim="a2(X) - a2(Y) = h0((2-a)H - bF)")
    if not is_nondegenerate_class(cls):
        sc.notes.append("degenerate class")
        return sc
    if not is_effective_class(cls):
        sc.notes.append("ineffective class")
        return sc
    predicted = predicted_a2(cls)
    sc.expected = {"a2": predicted, "a2_scroll": a2_scroll(t)}
    try:
        v = scroll_divisor(t, a, b, seed)
        basis = quadric_basis(v, policy)
    except (ConstructionError, CertificationError) as exc:
        sc.status = FAIL
        sc.notes.append(str(exc))
        return sc
    sc.observed = {"a2": basis.a2, "sampled": basis.provenance.get("sampled_a2", {})}
    sc.certification = basis.certification
    sc.inequality_checks.append(_inequality_entry(v, basis.a2))
    sampled = set(basis.provenance.get("sampled_a2", {}).values())
    ok = basis.a2 == predicted and sampled == {predicted} and _certified(basis.certification)
    if q_equals_scroll(cls):
        y_contained = contains_in_baselocus(basis, scroll(t))
        sc.observed["scroll_in_base_locus"] = y_contained
        sc.expected["scroll_in_base_locus"] = True
        ok = ok and y_contained and basis.a2 == a2_scroll(t)
    sc.status = PASS if ok else FAIL
    return sc


def divisor_sweep(scroll_type: Sequence[int], policy: SamplingPolicy | None = None, a_values=(1, 2, 3), b_values=range(-3, 4), seed: int = 0) -> list:
    """Every nondegenerate effective class in the grid; the rest are skipped, not reported."""
    out = []
    for a in a_values:
        for b in b_values:
            cls = ScrollDivisorClass(tuple(scroll_type), a, b)
            if is_nondegenerate_class(cls) and is_effective_class(cls):
                out.append(scenario_divisor_difference(scroll_type, a, b, policy, seed))
    return out


def scenario_maxreg_baselocus(c: int, policy: SamplingPolicy | None = None, seed: int = 0, probes: int = 100) -> Scenario:
    policy = policy or SamplingPolicy()
    target = comb(c + 1, 2) - 3
    params = {"c": c, "seed": seed, "probes": probes}
    sc = Scenario("maxreg-baselocus", params, {"a2": target, "a2_union": target, "line_in_base_locus": True, "counterexamples": 0},
                  claim="quadrics through the curve also contain its 4-secant line")
    curve = rational_curve_with_4secant(c, seed)
    line = secant_line(curve)
    try:
        basis = quadric_basis(curve, policy)
        union = quadric_basis([curve, line], policy)
    except CertificationError as exc:
        sc.status = FAIL
        sc.notes.append(str(exc))
        return sc
    on_line = contains_in_baselocus(basis, line)
    report = exclusion_witnesses(basis, secant_probe(curve), [curve, line], probes, policy.seed, policy.primes, variety_dim=curve.dim)
    sc.certification = min(basis.certification, union.certification, key=LEVELS.get)
    sc.inequality_checks.append(_inequality_entry(curve, basis.a2))
    sc.observed = {
        "a2": basis.a2,
        "a2_union": union.a2,
        "line_in_base_locus": on_line,
        "counterexamples": len(report.counterexamples),
        "excluded": len(report.excluded_witnesses),
        "discarded_on_known": report.discarded_on_known,
    }
    ok = (
        basis.a2 == target
        and union.a2 == basis.a2
        and on_line
        and not report.counterexamples
        and report.dimension_bound_ok
        and _certified(sc.certification)
    )
    sc.status = PASS if ok else FAIL
    return sc


def scenario_unique_container(scroll_type=(1, 1, 1), a: int = 3, b: int = 0, policy: SamplingPolicy | None = None,
                              seed: int = 0, probes: int = 200) -> Scenario:
    policy = policy or SamplingPolicy()
    t = tuple(scroll_type)
    X = scroll_divisor(t, a, b, seed)
    Y = scroll(t)
    c = X.codim
    params = {"type": list(t), "a": a, "b": b, "seed": seed, "probes": probes}
    k = 0
    sc = Scenario("unique-container", params,
                  {"a2": comb(c, 2) - k, "a2_scroll": comb(c, 2) - k, "scroll_in_base_locus": True, "counterexamples": 0, "degree_at_least": 2 * c + 2 * k + 3},
                  claim="a divisor of large degree shares its quadrics with a unique (n+1)-fold")
    try:
        bx = quadric_basis(X, policy)
        by = quadric_basis(Y, policy)
    except CertificationError as exc:
        sc.status = FAIL
        sc.notes.append(str(exc))
        return sc
    contained = contains_in_baselocus(bx, Y)
    report = exclusion_witnesses(bx, secant_probe(Y), [X, Y], probes, policy.seed, policy.primes, variety_dim=X.dim)
    sc.certification = min(bx.certification, by.certification, key=LEVELS.get)
    sc.inequality_checks += [_inequality_entry(X, bx.a2), _inequality_entry(Y, by.a2)]
    sc.observed = {
        "a2": bx.a2,
        "a2_scroll": by.a2,
        "degree": X.degree,
        "scroll_in_base_locus": contained,
        "counterexamples": len(report.counterexamples),
        "excluded": len(report.excluded_witnesses),
        "probes": report.probes,
        "dimension_bound_ok": report.dimension_bound_ok,
    }
    ok = (
        bx.a2 == sc.expected["a2"]
        and by.a2 == bx.a2
        and contained
        and X.degree >= sc.expected["degree_at_least"]
        and not report.counterexamples
        and report.dimension_bound_ok
        and _certified(sc.certification)
    )
    sc.status = PASS if ok else FAIL
    return sc


def scenario_gamma_on_curve(c: int, k: int, policy: SamplingPolicy | None = None, size: int | None = None, seed: int = 0) -> Scenario:
    """Points on a curve D of degree c+k in P^c: more than 2 deg D of them have the quadrics of D."""
    policy = policy or SamplingPolicy()
    if k not in (0, 1) or c < k + 2:
        raise ValueError("need k in {0, 1} and c >= k + 2")
    D = rational_normal_curve(c) if k == 0 else elliptic_normal_curve(c - 1)
    m = size if size is not None else 2 * D.degree + 1
    params = {"c": c, "k": k, "size": m, "seed": seed, "deg_D": D.degree}
    sc = Scenario("gamma-on-curve", params, {"a2": comb(c, 2) - k}, claim="a2(Gamma) = a2(D) once |Gamma| > 2 deg D")
    try:
        bd = quadric_basis(D, policy)
    except CertificationError as exc:
        sc.status = FAIL
        sc.notes.append(str(exc))
        return sc
    gamma_a2 = {}
    if k == 0:
        gamma = point_config_on_rnc(c, m, seed)
        bg = quadric_basis(gamma, policy)
        gamma_a2 = dict(bg.provenance.get("sampled_a2", {}))
        level = bg.certification
        value = bg.a2
    else:
        for p in policy.primes:
            rng = random.Random(f"{seed}:{p}:gamma")
            pts = []
            seen = set()
            while len(pts) < m:
                (pt,) = sample_points(D, GF(p), 1, rng)
                key = tuple(pt)
                if key not in seen:
                    seen.add(key)
                    pts.append(pt)
            bg = quadric_basis(point_list(pts, GF(p)), policy)
            gamma_a2[str(p)] = bg.a2
        values = set(gamma_a2.values())
        value = values.pop() if len(values) == 1 else None
        level = MULTI_PRIME if value is not None and len(gamma_a2) >= 2 else "SampledOnly"
    sc.certification = min(level, bd.certification, key=LEVELS.get)
    sc.observed = {"a2_D": bd.a2, "a2_Gamma": value, "per_prime": gamma_a2}
    sc.inequality_checks.append(_inequality_entry(D, bd.a2))
    if m <= 2 * D.degree:
        sc.status = INCONCLUSIVE
        sc.notes.append("hypothesis |Gamma| > 2 deg D not met")
        return sc
    ok = value == bd.a2 == sc.expected["a2"] and _certified(sc.certification)
    sc.status = PASS if ok else FAIL
    return sc


def scenario_q_equals_sweep(max_len: int = 4, max_entry: int = 4, max_a: int = 5, max_b: int = 10) -> Scenario:
    """Closed-form base-locus rule against the h0 vanishing test on every small class."""
    from itertools import combinations_with_replacement

    checked = 0
    errors = []
    for length in range(1, max_len + 1):
        for t in combinations_with_replacement(range(max_entry + 1), length):
            if t[-1] < 1:
                continue
            for a in range(max_a + 1):
                for b in range(-max_b, max_b + 1):
                    try:
                        q_equals_scroll(ScrollDivisorClass(t, a, b))
                    except ScrollCalcError as exc:
                        errors.append(str(exc))
                    checked += 1
    sc = Scenario("q-equals-sweep", {"max_len": max_len, "max_entry": max_entry, "max_a": max_a, "max_b": max_b},
                  {"disagreements": 0}, {"disagreements": len(errors), "classes": checked},
                  PASS if not errors else FAIL, claim="Q(X) = Y exactly when h0((2-a)H - bF) = 0",
                  certification="SymbolicCertified", notes=errors[:5])
    return sc


def scenario_scroll_base_locus(scroll_type, a: int, b: int, policy: SamplingPolicy | None = None, seed: int = 0, probes: int = 100) -> Scenario:
    """Exclusion evidence for the base locus of a divisor on a scroll."""
    policy = policy or SamplingPolicy()
    t = tuple(scroll_type)
    cls = ScrollDivisorClass(t, a, b)
    X = scroll_divisor(t, a, b, seed)
    Y = scroll(t)
    known = [X]
    x0 = x0_subscroll_type(t)
    params = {"type": list(t), "a": a, "b": b, "seed": seed, "probes": probes}
    sc = Scenario("scroll-base-locus", params, {"a2": predicted_a2(cls), "counterexamples": 0})
    if a == 1 and t[0] + 1 <= b <= t[-1] and x0:
        n0 = sum(x0) + len(x0)
        spanning = [[1 if i == j else 0 for j in range(Y.nvars)] for i in range(n0)]
        known.append(linear_space(spanning, {"role": "X0"}) if len(x0) == 1 and x0[0] <= 1 else scroll(x0, strict=False))
        sc.claim = "base locus inside X union X0"
    else:
        sc.claim = "base locus equals X"
    basis = quadric_basis(X, policy)
    report = exclusion_witnesses(basis, Y, known, probes, policy.seed, policy.primes, variety_dim=X.dim)
    sc.certification = basis.certification
    sc.inequality_checks.append(_inequality_entry(X, basis.a2))
    sc.observed = {
        "a2": basis.a2,
        "counterexamples": len(report.counterexamples),
        "excluded": len(report.excluded_witnesses),
        "discarded_on_known": report.discarded_on_known,
    }
    ok = basis.a2 == sc.expected["a2"] and not report.counterexamples and report.dimension_bound_ok and _certified(basis.certification)
    sc.status = PASS if ok else FAIL
    return sc


# --- suites and reports ---------------------------------------------------------------------


def _suite_castelnuovo(policy, opts):
    if opts.get("c"):
        return scenario_castelnuovo(opts["c"], policy, scroll_types=())
    return scenario_castelnuovo(range(2, 7), policy)


def _suite_fano(policy, opts):
    return [scenario_fano(c, policy) for c in (opts.get("c") or (3, 4, 5))]


def _suite_curve_witnesses(policy, opts):
    out = []
    for c in opts.get("c") or (4, 5):
        out += scenario_curve_witnesses(c, policy, opts.get("seed", 0))
    return out


def _suite_two_normality(policy, opts):
    out = []
    for c in opts.get("c") or (3, 4, 5):
        for m in range(c + 2, 2 * c + 2):
            out.append(scenario_two_normality(c, m, policy, opts.get("seed", 0)))
    return out


def _suite_divisor_difference(policy, opts):
    types = opts.get("types") or ((1, 2), (1, 1, 1))
    out = []
    for t in types:
        if opts.get("sweep", True):
            out += divisor_sweep(t, policy, seed=opts.get("seed", 0))
        else:
            out.append(scenario_divisor_difference(t, opts.get("a", 2), opts.get("b", 0), policy, opts.get("seed", 0)))
    return out


def _suite_maxreg(policy, opts):
    return [scenario_maxreg_baselocus(c, policy, opts.get("seed", 0)) for c in (opts.get("c") or (4, 5))]


def _suite_unique_container(policy, opts):
    return [scenario_unique_container(policy=policy, seed=opts.get("seed", 0))]


def _suite_gamma(policy, opts):
    out = []
    for c in opts.get("c") or (4,):
        for k in (0, 1):
            if c >= k + 2:
                out.append(scenario_gamma_on_curve(c, k, policy, seed=opts.get("seed", 0)))
    return out


def _suite_scroll_base_locus(policy, opts):
    seed = opts.get("seed", 0)
    return [
        scenario_q_equals_sweep(),
        scenario_divisor_difference((1, 1, 1), 3, 0, policy, seed),
        scenario_scroll_base_locus((1, 2), 2, -2, policy, seed),
        scenario_scroll_base_locus((1, 2), 1, 1, policy, seed),
        scenario_scroll_base_locus((1, 2), 1, 2, policy, seed),
    ]


SUITES: dict[str, Callable] = {
    "castelnuovo": _suite_castelnuovo,
    "fano": _suite_fano,
    "curve-witnesses": _suite_curve_witnesses,
    "two-normality": _suite_two_normality,
    "divisor-difference": _suite_divisor_difference,
    "maxreg-baselocus": _suite_maxreg,
    "unique-container": _suite_unique_container,
    "gamma-on-curve": _suite_gamma,
    "scroll-base-locus": _suite_scroll_base_locus,
}


def resolve_suite(name: str) -> str:
    if name not in SUITES:
        raise KeyError(name)
    return name


def _run_suite(args):
    name, policy_dict, opts = args
    policy = SamplingPolicy(**policy_dict)
    return [asdict(s) for s in SUITES[name](policy, opts)]


@dataclass
class VerificationReport:
    scenarios: list
    environment: dict

    @property
    def summary(self) -> dict:
        counts = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
        for s in self.scenarios:
            counts[s["status"]] += 1
        checks = [c for s in self.scenarios for c in s["inequality_checks"]]
        counts["inequality_instances"] = len(checks)
        counts["inequality_violations"] = sum(not c["ok"] for c in checks)
        return counts

    def exit_code(self) -> int:
        s = self.summary
        if s[FAIL]:
            return 1
        if s[INCONCLUSIVE]:
            return 3
        return 0

    def to_json(self) -> str:
        doc = {"environment": self.environment, "summary": self.summary, "scenarios": self.scenarios}
        return json.dumps(doc, indent=2, sort_keys=True, default=str)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scenario", "param_string", "expected", "observed", "status", "seed", "prime"])
        primes = ",".join(str(p) for p in self.environment["primes"])
        for s in self.scenarios:
            params = ";".join(f"{k}={_fmt(v)}" for k, v in s["params"].items())
            w.writerow([
                s["name"],
                params,
                json.dumps(s["expected"], sort_keys=True),
                json.dumps(s["observed"], sort_keys=True, default=str),
                s["status"],
                self.environment["seed"],
                primes,
            ])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for s in self.scenarios:
            params = ";".join(f"{k}={_fmt(v)}" for k, v in s["params"].items())
            lines.append(f"{s['status']:<12} {s['name']:<20} {params}  expected={s['expected']} observed={ {k: v for k, v in s['observed'].items() if k != 'sampled'} }")
        sm = self.summary
        lines.append(f"pass={sm[PASS]} fail={sm[FAIL]} inconclusive={sm[INCONCLUSIVE]} inequality={sm['inequality_instances']}/{sm['inequality_violations']} violations")
        return "\n".join(lines)


def run_suites(names: Sequence[str], policy: SamplingPolicy | None = None, opts: dict | None = None, jobs: int = 1) -> VerificationReport:
    policy = policy or SamplingPolicy()
    opts = dict(opts or {})
    opts.setdefault("seed", policy.seed)
    names = [resolve_suite(n) for n in names]
    pd = {k: v for k, v in policy.__dict__.items()}
    tasks = [(n, pd, opts) for n in names]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as ex:
            results = list(ex.map(_run_suite, tasks))
    else:
        results = [_run_suite(t) for t in tasks]
    scenarios = [s for batch in results for s in batch]
    env = {"primes": list(policy.primes), "seed": policy.seed, "version": __version__, "suites": names}
    return VerificationReport(scenarios, env)

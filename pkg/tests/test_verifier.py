import csv
import io
import json

import pytest

from quadenv.quadspace import SamplingPolicy
from quadenv.varieties import elliptic_normal_curve, rational_curve_with_4secant, rational_normal_curve
from quadenv.verifier import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    check_fundamental_inequality,
    divisor_sweep,
    resolve_suite,
    run_suites,
    scenario_castelnuovo,
    scenario_divisor_difference,
    scenario_fano,
    scenario_gamma_on_curve,
    scenario_two_normality,
)


@pytest.mark.parametrize(
    "v, bound",
    [(rational_normal_curve(3), 3), (elliptic_normal_curve(3), 5), (rational_curve_with_4secant(4), 8)],
    ids=["twisted-cubic", "quintic-elliptic", "septic-4-secant"],
)
def test_fundamental_inequality(v, bound):
    sc = check_fundamental_inequality(v)
    assert sc.status == PASS
    assert sc.expected["bound"] == bound


def test_castelnuovo_values():
    out = scenario_castelnuovo(range(2, 7), scroll_types=[(1, 2), (2, 2)])
    assert [s.observed["a2"] for s in out] == [3, 6, 10, 15, 21, 3, 6]
    assert all(s.status == PASS for s in out)


def test_fano_c3():
    assert scenario_fano(3).observed["a2"] == 5


def test_divisor_scenarios():
    assert scenario_divisor_difference((1, 2), 2, -2).observed["a2"] == 6
    s = scenario_divisor_difference((1, 1, 1), 3, 0)
    assert s.status == PASS and s.observed["scroll_in_base_locus"]


def test_ineffective_or_degenerate_is_inconclusive():
    assert scenario_divisor_difference((1, 2), 0, 1).status == INCONCLUSIVE
    assert scenario_divisor_difference((1, 2), 2, -5).status == INCONCLUSIVE


def test_sweep_skips_degenerate_classes():
    out = divisor_sweep((1, 2), a_values=(1,), b_values=range(-1, 3))
    assert [s.params["b"] for s in out] == [1, 2]


def test_two_normality_boundary():
    assert scenario_two_normality(3, 7).observed["a2"] == 3


def test_gamma_boundary_is_inconclusive():
    sc = scenario_gamma_on_curve(4, 0, size=8)
    assert sc.status == INCONCLUSIVE
    assert sc.status != FAIL


def test_unknown_suite():
    assert resolve_suite("curve-witnesses") == "curve-witnesses"
    with pytest.raises(KeyError):
        resolve_suite("nope")


def test_reports_are_deterministic_and_csv_shaped():
    r1 = run_suites(["fano", "two-normality"], SamplingPolicy(seed=4), {"c": [3]})
    r2 = run_suites(["fano", "two-normality"], SamplingPolicy(seed=4), {"c": [3]}, jobs=2)
    assert r1.to_json() == r2.to_json()
    rows = list(csv.reader(io.StringIO(r1.to_csv())))
    assert rows[0] == ["scenario", "param_string", "expected", "observed", "status", "seed", "prime"]
    assert len(rows) == 1 + 1 + 3
    doc = json.loads(r1.to_json())
    assert doc["summary"]["Pass"] == 4
    assert r1.exit_code() == 0

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

import pytest

from eulerchi.appendix import (
    CHECK_NAMES,
    Outcome,
    cross_check_self_intersection,
    large_s_check,
    m0_bound_arithmetic,
    q2_inequality,
    ratio_gt_16,
    ratio_monotonicity,
    remaining_q2_inequality,
    report_csv,
    report_json,
    run_checks,
    s_lower_bound_check,
    self_intersection,
    sweep,
    threshold_quadratic,
    threshold_quartic,
)
from eulerchi.chi import ChiSequence, DegreeProfile, chi_same_class


@pytest.fixture(scope="module")
def chi_1040():
    return self_intersection(2, 1040)


def test_thresholds():
    assert threshold_quadratic(2) == 1040 and threshold_quadratic(3) == 1090
    assert threshold_quartic(2) == 1160


def test_ratio_gt_16(chi_1040):
    assert ratio_gt_16(chi_1040).holds
    v = ratio_gt_16((14, 44, 14))
    assert v.outcome is Outcome.FAILS and v.witness["margin"] == 44 - 224
    assert ratio_gt_16((1, 17)).holds
    assert not ratio_gt_16((1, 16)).holds
    assert not ratio_gt_16((1, 16)).conservative
    with pytest.raises(ValueError):
        ratio_gt_16((1,))


def test_q2(chi_1040):
    assert q2_inequality(chi_1040).holds
    assert q2_inequality((14, 44, 14)).witness["margin"] == 1936 - 9408
    assert not q2_inequality((14, 44, 14)).holds
    assert q2_inequality((1, 100, 1)).holds
    with pytest.raises(ValueError):
        q2_inequality((1, 2))


def test_remaining_q2_thresholds(chi_1040):
    v = remaining_q2_inequality(chi_1040, 1040, 2)
    assert v.holds and v.conservative
    assert remaining_q2_inequality(self_intersection(3, 1090)).holds


def test_remaining_q2_small_n_fails_after_tightening():
    v = remaining_q2_inequality(self_intersection(2, 8), 8, 2)
    assert v.outcome is Outcome.FAILS
    assert v.witness["gap"] <= v.witness["sqrt_lower_sum"]


def test_remaining_q2_inconclusive_band():
    # chi_5 = 0 and n = r leave gap = chi_2/chi_0 - 9 chi_3/chi_1 - 3 against sqrt(2)
    # (chi_0 = 3c, chi_1 = 4c, chi_3 = c give 9 chi_3 chi_1 / (2 chi_0^2) = 2).
    # chi_2 puts the gap 1e-12 below sqrt(2), inside the 2^-32 bracket.
    c = 10**12
    chi_2 = 3 * c * 21 // 4 + 3 * math.isqrt(2 * c * c)
    seq = ChiSequence(6, 1, (3 * c, 4 * c, chi_2, c, 0, 0))
    v = remaining_q2_inequality(seq, 1, 1)
    assert v.outcome is Outcome.INCONCLUSIVE
    assert not v.holds
    assert v.witness["sqrt_lower_sum"] < v.witness["gap"] <= v.witness["sqrt_upper_sum"]
    # moving the gap clearly to either side settles it
    assert remaining_q2_inequality(ChiSequence(6, 1, (3 * c, 4 * c, chi_2 + 3 * c, c, 0, 0)), 1, 1).holds
    assert remaining_q2_inequality(ChiSequence(6, 1, (3 * c, 4 * c, chi_2 - 3 * c, c, 0, 0)), 1, 1).outcome is Outcome.FAILS


def test_remaining_q2_needs_six_values():
    with pytest.raises(ValueError):
        remaining_q2_inequality((1, 2, 3, 4, 5), 6, 1)


def test_s_lower_bound():
    assert s_lower_bound_check(self_intersection(3, 127), 3).holds
    assert s_lower_bound_check(chi_same_class(DegreeProfile(2, 112, (1, 2))), 2).holds
    assert s_lower_bound_check(self_intersection(2, 111), 2).outcome is Outcome.HYPOTHESIS_NOT_MET


def test_s_lower_bound_small_chi0_fails():
    seq = ChiSequence(112, 2, (3,) + (1,) * 110)
    v = s_lower_bound_check(seq, 2)
    assert v.outcome is Outcome.FAILS


def test_large_s(chi_1040):
    assert large_s_check(chi_1040, 2).holds
    assert large_s_check(chi_1040, 400).holds  # 3s - 2 > n - r, zero convention
    assert large_s_check(self_intersection(2, 6), 2).holds
    v = large_s_check((2, 5, 100, 100, 100), 2)
    assert v.outcome is Outcome.FAILS and v.witness["margin"] == 5 * 4 - 400
    with pytest.raises(ValueError):
        large_s_check(chi_1040, 0)


def test_m0_bound():
    v = m0_bound_arithmetic(2, 23)
    assert v.holds
    assert v.witness["base"] == 2**23 - 24 == 8388584
    assert v.witness["rhs_root"] == 14**6 == 7529536
    assert m0_bound_arithmetic(2, 1040).holds
    assert m0_bound_arithmetic(5, 26).holds
    assert m0_bound_arithmetic(2, 22).outcome is Outcome.HYPOTHESIS_NOT_MET


def test_m0_bound_fails_below_boundary_arithmetic():
    # the hypothesis guards real failures: at n - r = 10 the inequality is false
    e = 13
    assert (2 ** (e - 1) - e) ** 4 <= 14**e


def test_run_checks_order_and_filters():
    names = [v.name for v in run_checks(self_intersection(2, 30))]
    assert names == ["ratio-gt-16", "q2", "large-s", "large-s", "large-s", "large-s", "s-lower", "remaining-q2", "m0-bound"]
    only = run_checks(self_intersection(2, 30), only=["m0-bound"])
    assert [v.name for v in only] == ["m0-bound"]
    with pytest.raises(ValueError):
        run_checks(self_intersection(2, 30), only=["nope"])
    short = run_checks(self_intersection(2, 3))
    assert {v.name: v.outcome for v in short}["q2"] is Outcome.HYPOTHESIS_NOT_MET


def test_sweep_threshold_run_all_true():
    verdicts = sweep([2, 3], threshold_quadratic)
    assert verdicts and all(v.holds for v in verdicts)
    assert [v.params["n"] for v in verdicts][0] == 1040


def test_sweep_small_n_is_mixed_and_ordered():
    verdicts = sweep([2], range(6, 15))
    outcomes = {v.outcome for v in verdicts}
    assert Outcome.HOLDS in outcomes and Outcome.FAILS in outcomes
    ns = [v.params["n"] for v in verdicts]
    assert ns == sorted(ns)


def test_sweep_empty_grid():
    assert sweep([2, 3], []) == []


def test_sweep_worker_independent():
    a = sweep([2, 3], [20, 30, 40], workers=1)
    b = sweep([2, 3], [20, 30, 40], workers=3)
    assert report_json(a) == report_json(b)


def test_sweep_custom_generator():
    def degree_two(r, n):
        return chi_same_class(DegreeProfile(r, n, (2,) * r, 1))

    verdicts = sweep([2], [30], profile_generator=degree_two, only=["ratio-gt-16"])
    assert verdicts[0].params["profile_id"] == "degree_two"


def test_cross_check_against_sum_route():
    for r in (1, 2, 3):
        for n in (r + 5, 40, 60, 100, 200):
            assert cross_check_self_intersection(r, n)


def test_ratio_monotone_along_hundreds():
    verdicts = ratio_monotonicity()
    flags = [v.holds for v in verdicts]
    first = flags.index(True)
    assert all(flags[first:])


def test_reports():
    verdicts = sweep([2], [8], only=["ratio-gt-16", "remaining-q2"])
    doc = json.loads(report_json(verdicts))
    assert [d["name"] for d in doc] == ["ratio-gt-16", "remaining-q2"]
    assert doc[1]["conservative"] is True
    rows = list(csv.DictReader(io.StringIO(report_csv(verdicts))))
    assert rows[0]["name"] == "ratio-gt-16" and rows[0]["holds"] == "true" and rows[0]["profile_id"] == "self-intersection"
    assert rows[1]["holds"] == "false" and rows[1]["conservative"] == "true"


def test_check_names_are_stable():
    assert CHECK_NAMES == ("ratio-gt-16", "q2", "large-s", "s-lower", "remaining-q2", "m0-bound")


def test_mixed_log_concavity_flags():
    from eulerchi.appendix import mixed_log_concavity_flags
    from eulerchi.chi import IntersectionProfile
    from eulerchi.combinatorics import iter_compositions

    assert mixed_log_concavity_flags(IntersectionProfile.same_class(3, 5, (1, 2, 3), 1)) == []
    dipped = IntersectionProfile(2, 4, {e: 24 if e == (2, 2) else 1200 for e in iter_compositions(2, 4)})
    assert mixed_log_concavity_flags(dipped) == ["classes 1,2: not log-concave at a=2"]

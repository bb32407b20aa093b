from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from eulerchi.chi import (
    ChiSequence,
    DegreeProfile,
    IntegralityError,
    IntersectionProfile,
    chi_coefficient,
    chi_from_profile,
    chi_same_class,
    chi_via_recurrence,
    dim2_closed_form,
    dim2_variables_from_profile,
    dim4_closed_form,
    dim4_quadratic_check,
    dim4_variables_from_profile,
    divisible_by_six,
    numerical_condition,
    p_zero,
    topological_euler,
    twisted_chi_via_coefficients,
    twisted_chi_via_recurrence,
)
from eulerchi.combinatorics import factorial, iter_compositions
from eulerchi.eulerian import eulerian, generalized_eulerian_row


def const(r, n, v):
    return IntersectionProfile.constant(r, n, v)


def random_profile(rng, r, n, top=40):
    numbers = {}
    for eps in iter_compositions(r, n):
        scale = 1
        for e in eps:
            scale *= factorial(e)
        numbers[eps] = scale * rng.randint(1, top)
    return IntersectionProfile(r, n, numbers)


# profile / sequence types


def test_profile_requires_every_exponent_vector():
    with pytest.raises(ValueError, match="incomplete"):
        IntersectionProfile(2, 2, {(1, 1): 2, (2, 0): 2})


@pytest.mark.parametrize(
    "numbers",
    [{(3,): 0}, {(2,): 6}, {(3, 0): 6}, {(-1,): 6}],
)
def test_profile_rejects_bad_entries(numbers):
    with pytest.raises(ValueError):
        IntersectionProfile(1, 3, numbers)


def test_admissibility_is_opt_in():
    p = const(2, 4, 5)
    assert not p.is_admissible()
    assert const(2, 4, 24).is_admissible()


def test_profile_json_round_trip_and_decimal_strings():
    p = DegreeProfile(2, 5, (2, 7), 3).profile()
    doc = p.to_json()
    assert all(isinstance(e["value"], str) for e in doc["numbers"])
    assert IntersectionProfile.from_json(json.dumps(doc)) == p
    bad = dict(doc, numbers=[dict(doc["numbers"][0], value=5)] + doc["numbers"][1:])
    with pytest.raises(ValueError):
        IntersectionProfile.from_json(bad)
    dup = dict(doc, numbers=doc["numbers"] + doc["numbers"][:1])
    with pytest.raises(ValueError, match="duplicate"):
        IntersectionProfile.from_json(dup)
    with pytest.raises(ValueError):
        IntersectionProfile.from_json({"r": 1})


def test_chi_sequence_sign_and_range():
    seq = ChiSequence(4, 2, (14, 44, 14))
    assert [seq.signed(q) for q in range(3)] == [14, -44, 14]
    assert seq.value(5) == 0 and seq.value(-1) == 0
    assert seq.is_palindromic()
    with pytest.raises(ValueError):
        ChiSequence(4, 2, (0, 1, 0))
    with pytest.raises(ValueError):
        ChiSequence(4, 2, ())


def test_degree_profile_validation():
    with pytest.raises(ValueError):
        DegreeProfile(2, 4, (1,))
    with pytest.raises(ValueError):
        DegreeProfile(1, 4, (0,))
    with pytest.raises(ValueError):
        DegreeProfile(1, 4, (1,), 0)


# chi_from_profile


@pytest.mark.parametrize(
    "profile,expected",
    [
        (const(2, 4, 24), (14, 44, 14)),
        (const(1, 3, 6), (1, 4, 1)),
    ],
)
def test_chi_from_profile_examples(profile, expected):
    assert chi_from_profile(profile).values == expected


def test_chi_from_profile_mixed_degrees():
    p = IntersectionProfile(2, 4, {e: 24 * 2 ** e[1] for e in iter_compositions(2, 4)})
    assert chi_from_profile(p).values[0] == 64
    assert chi_from_profile(p).values == (64, 208, 64)


def test_integrality_failure():
    with pytest.raises(IntegralityError):
        chi_from_profile(const(1, 3, 5))


# same class


@pytest.mark.parametrize(
    "dp,expected",
    [
        (DegreeProfile(2, 4, (1, 1), 1), (14, 44, 14)),
        (DegreeProfile(1, 7, (1,), 1), (1, 120, 1191, 2416, 1191, 120, 1)),
    ],
)
def test_chi_same_class_examples(dp, expected):
    assert chi_same_class(dp).values == expected


def test_chi_same_class_unequal_degrees_goes_through_profile():
    dp = DegreeProfile(2, 4, (1, 2), 1)
    assert chi_same_class(dp).values[0] == 64
    assert chi_same_class(dp) == chi_from_profile(dp.profile())


def test_equal_degree_fast_path_matches_profile_route():
    for dp in (DegreeProfile(2, 6, (3, 3), 2), DegreeProfile(3, 7, (2, 2, 2), 5)):
        assert chi_same_class(dp) == chi_from_profile(dp.profile())


# coefficient polynomials


def test_chi_coefficient_examples():
    for eps in [(1, 3), (2, 2), (1, 1, 2)]:
        assert abs(chi_coefficient(0, eps, (0,) * len(eps))) == 1
    assert abs(chi_coefficient(1, (1, 3), (0, 0))) == eulerian(1, 0) * eulerian(3, 1) + eulerian(1, 1) * eulerian(3, 0)
    assert abs(chi_coefficient(1, (1, 3), (0, 0))) == 4
    assert chi_coefficient(1, (4, 0), (0, 0)) == 0
    with pytest.raises(ValueError):
        chi_coefficient(0, (1, 3), (0,))


def test_chi_coefficient_at_zero_matches_eulerian_products():
    # |c_{q;eps}(0)| = sum_{|t|=q} prod E(eps_i, t_i), with sign (-1)^(n-q-r)
    for eps in [(1, 3), (2, 2), (2, 3), (1, 2, 2), (3,)]:
        n, r = sum(eps), len(eps)
        for q in range(n - r + 1):
            prod_sum = 0
            for t in iter_compositions(r, q):
                v = 1
                for e, ti in zip(eps, t):
                    v *= eulerian(e, ti)
                prod_sum += v
            assert chi_coefficient(q, eps, (0,) * r) == (-1) ** (n - q - r) * prod_sum


# recurrence route


def test_recurrence_examples():
    assert chi_via_recurrence(const(2, 4, 24)).values == (14, 44, 14)
    assert chi_via_recurrence(const(1, 3, 6)).values == (1, 4, 1)
    assert p_zero(const(2, 4, 24), (1, 1)) == 14


def test_p_zero_with_extra_class():
    # H_1 = H_2 = H with H^4 = 24, twist H_1 + H_2 + H:
    # (1/4!) * 24 * (3^4 - 2 * 2^4 + 1^4) = 50
    p = const(3, 4, 24)
    assert p_zero(p, (1, 1), m=1) == 50
    assert p_zero(p, (1, 1), m=-1) == 1 - 2 * 0 + (-1) ** 4
    with pytest.raises(ValueError):
        p_zero(const(2, 4, 24), (1, 1), m=1)
    with pytest.raises(ValueError):
        p_zero(const(2, 4, 24), (1,))


def test_twisted_routes_agree():
    rng = random.Random(7)
    for _ in range(15):
        r = rng.randint(1, 3)
        n = rng.randint(r, 6)
        profile = random_profile(rng, r, n)
        d = tuple(rng.randint(-2, 3) for _ in range(r))
        assert twisted_chi_via_coefficients(profile, d) == twisted_chi_via_recurrence(profile, d)


def test_recurrence_at_twist_returns_magnitudes():
    p = DegreeProfile(2, 4, (1, 2), 1).profile()
    seq = chi_via_recurrence(p, (1, 1))
    assert seq.values == (64, 224, 496)


def test_routes_agree_on_random_profiles():
    rng = random.Random(2024)
    for _ in range(30):
        r = rng.randint(1, 3)
        n = rng.randint(r, 8)
        p = random_profile(rng, r, n)
        a = chi_from_profile(p)
        assert a == chi_via_recurrence(p)
        assert a.is_palindromic()


def test_scaling_linearity():
    rng = random.Random(5)
    p = random_profile(rng, 2, 6)
    base = chi_from_profile(p).values
    assert chi_from_profile(p.scaled(7)).values == tuple(7 * v for v in base)


# numerical condition


@pytest.mark.parametrize("values,expected", [((14, 44, 14), True), ((1, 4, 1), True), ((1, 1), True), ((1, 10, 1), False), ((1,), False)])
def test_numerical_condition(values, expected):
    assert numerical_condition(values) is expected


def test_numerical_condition_accepts_sequences():
    assert numerical_condition(ChiSequence(3, 1, (1, 4, 1)))


# closed forms


@pytest.mark.parametrize("a,b,expected", [(8, 6, (14, 44, 14)), (1, 0, (1, 4, 1)), (0, 1, (1, 2, 1))])
def test_dim2_closed_form(a, b, expected):
    assert dim2_closed_form(a, b).values == expected


def test_dim2_rejects_non_integral():
    with pytest.raises(IntegralityError):
        dim2_closed_form(Fraction(1, 3), 0)


def test_dim2_variables_match_profile():
    p = const(2, 4, 24)
    assert dim2_variables_from_profile(p) == (8, 6)
    for dp in (DegreeProfile(2, 4, (1, 3)), DegreeProfile(3, 5, (1, 2, 2), 2), DegreeProfile(1, 3, (4,))):
        prof = dp.profile()
        a, b = dim2_variables_from_profile(prof)
        assert dim2_closed_form(a, b, r=dp.r) == chi_from_profile(prof)
    with pytest.raises(ValueError):
        dim2_variables_from_profile(const(2, 5, 120))


@pytest.mark.parametrize(
    "var,expected",
    [
        ("A", (1, 26, 66, 26, 1)),
        ("B13", (1, 12, 22, 12, 1)),
        ("B22", (1, 8, 18, 8, 1)),
        ("C", (1, 6, 10, 6, 1)),
        ("D", (1, 4, 6, 4, 1)),
    ],
)
def test_dim4_columns(var, expected):
    kwargs = {v: 0 for v in ("A", "B13", "B22", "C", "D")}
    kwargs[var] = 1
    assert dim4_closed_form(**kwargs).values == expected


def test_dim4_variables_match_profile():
    rng = random.Random(11)
    for r in (1, 2, 3, 4):
        for _ in range(3):
            prof = random_profile(rng, r, r + 4)
            vals = dim4_variables_from_profile(prof)
            assert dim4_closed_form(**vals, r=r) == chi_from_profile(prof)
    with pytest.raises(ValueError):
        dim4_variables_from_profile(const(2, 4, 24))


def test_dim4_quadratic_forms():
    q = dim4_quadratic_check()
    assert q.sum_of_squares[("A", "A")] == 5710
    assert q.square_of_sum[("A", "A")] == 14400
    assert q.sum_of_squares[("A", "B13")] == 4156
    assert q.square_of_sum[("A", "B13")] == 11520
    assert q.sum_of_squares[("D", "D")] == 70
    assert q.square_of_sum[("D", "D")] == 256
    assert q.dominated
    assert set(q.sum_of_squares) == set(q.square_of_sum)


# topology


@pytest.mark.parametrize("profile,expected", [(const(2, 4, 24), 72), (const(1, 3, 6), 6), (const(2, 5, 120), 480)])
def test_topological_euler(profile, expected):
    assert topological_euler(profile) == expected


@pytest.mark.parametrize("profile", [const(2, 5, 120), const(1, 3, 6), const(2, 6, 720)])
def test_divisible_by_six(profile):
    assert divisible_by_six(profile)


def test_divisible_by_six_value_for_r2_n6():
    # 5 positive compositions of 6 into 2 parts
    assert topological_euler(const(2, 6, 720)) == 3600


def test_divisible_by_six_precondition():
    with pytest.raises(ValueError):
        divisible_by_six(const(2, 4, 24))


def test_self_intersection_collapse_small():
    for r in range(1, 4):
        for n in range(r, 9):
            for h in (1, 3):
                assert chi_same_class(DegreeProfile(r, n, (1,) * r, h)).values == tuple(
                    h * v for v in generalized_eulerian_row(r, n)
                )

"""Euler characteristics of complete intersections in abelian varieties.

For ``X`` cut out by ample hypersurfaces ``H_1..H_r`` in an abelian variety of
dimension ``n``, the numbers ``|chi(X, Omega^q)|`` (``q = 0..n-r``) are
determined by the intersection numbers ``H_1^e1 ... H_r^er`` with
``|e| = n``.  This module computes them three ways:

* :func:`chi_from_profile` -- multinomials times convolutions of classical
  Eulerian rows;
* :func:`chi_via_recurrence` -- the Koszul base case ``P_0`` together with the
  wedge-filtration recurrence in ``q``;
* :func:`twisted_chi_via_coefficients` -- the closed coefficient polynomials
  ``c_{q;eps}(d)`` (valid at any twist ``d``).

Magnitudes are stored; the sign of ``chi(X, Omega^q)`` is ``(-1)^(n-q-r)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .combinatorics import (
    ExponentVector,
    binomial,
    factorial,
    iter_compositions,
    iter_positive_compositions,
    multinomial,
    poly_mul,
)
from .eulerian import eulerian_row, generalized_eulerian_row

Number = Union[int, Fraction]


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer came out fractional."""


@dataclass(frozen=True)
class IntersectionProfile:
    """Intersection numbers ``H_1^eps1 ... H_r^epsr`` for every ``|eps| = n``."""

    r: int
    n: int
    numbers: Mapping[ExponentVector, int]

    def __post_init__(self):
        if self.r < 1 or self.n < 1:
            raise ValueError("r and n must be positive")
        frozen = {}
        for eps, value in self.numbers.items():
            eps = tuple(int(e) for e in eps)
            if len(eps) != self.r or any(e < 0 for e in eps) or sum(eps) != self.n:
                raise ValueError(f"bad exponent vector {eps} for r={self.r}, n={self.n}")
            value = int(value)
            if value <= 0:
                raise ValueError(f"intersection number for {eps} must be positive")
            frozen[eps] = value
        missing = [eps for eps in iter_compositions(self.r, self.n) if eps not in frozen]
        if missing:
            raise ValueError(f"profile incomplete, missing {missing[0]} (and {len(missing) - 1} more)")
        object.__setattr__(self, "numbers", frozen)

    def __getitem__(self, eps: Sequence[int]) -> int:
        return self.numbers[tuple(eps)]

    def is_admissible(self) -> bool:
        """Every intersection number is at least ``n!`` (Riemann-Roch lower bound)."""
        bound = factorial(self.n)
        return all(v >= bound for v in self.numbers.values())

    def scaled(self, c: int) -> "IntersectionProfile":
        return IntersectionProfile(self.r, self.n, {e: c * v for e, v in self.numbers.items()})

    @classmethod
    def constant(cls, r: int, n: int, value: int) -> "IntersectionProfile":
        return cls(r, n, {eps: value for eps in iter_compositions(r, n)})

    @classmethod
    def same_class(cls, r: int, n: int, d: Sequence[int], h: int = 1) -> "IntersectionProfile":
        """Profile of hypersurfaces in classes ``d_i H`` with ``H^n / n! = h``."""
        base = h * factorial(n)
        numbers = {}
        for eps in iter_compositions(r, n):
            v = base
            for di, e in zip(d, eps):
                v *= di**e
            numbers[eps] = v
        return cls(r, n, numbers)

    # JSON: {"r": int, "n": int, "numbers": [{"eps": [...], "value": "decimal"}]}
    def to_json(self) -> dict:
        return {
            "r": self.r,
            "n": self.n,
            "numbers": [
                {"eps": list(eps), "value": str(self.numbers[eps])}
                for eps in iter_compositions(self.r, self.n)
            ],
        }

    @classmethod
    def from_json(cls, data: Union[str, Mapping]) -> "IntersectionProfile":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            r, n = int(data["r"]), int(data["n"])
            numbers = {}
            for entry in data["numbers"]:
                eps = tuple(int(e) for e in entry["eps"])
                if eps in numbers:
                    raise ValueError(f"duplicate exponent vector {eps}")
                value = entry["value"]
                if not isinstance(value, str):
                    raise ValueError("values must be decimal strings")
                numbers[eps] = int(value)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed profile: {exc}") from exc
        return cls(r, n, numbers)


@dataclass(frozen=True)
class ChiSequence:
    """Magnitudes ``|chi(X, Omega^q)|`` for ``q = 0..len(values)-1``."""

    n: int
    r: int
    values: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not self.values:
            raise ValueError("empty chi sequence")
        if self.values[0] <= 0:
            raise ValueError("chi(O_X) must be nonzero")
        if any(v < 0 for v in self.values):
            raise ValueError("magnitudes must be non-negative")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, q: int) -> int:
        return self.value(q)

    def value(self, q: int) -> int:
        """Magnitude at ``q``; zero outside the stored range."""
        if 0 <= q < len(self.values):
            return self.values[q]
        return 0

    def signed(self, q: int) -> int:
        """The actual ``chi(X, Omega^q)``, with sign ``(-1)^(n-q-r)``."""
        v = self.value(q)
        return -v if (self.n - q - self.r) % 2 else v

    def is_palindromic(self) -> bool:
        return self.values == self.values[::-1]

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "values": [str(v) for v in self.values]}


@dataclass(frozen=True)
class DegreeProfile:
    """Hypersurfaces in classes ``d_1 H, ..., d_r H`` with ``H^n / n! = h``."""

    r: int
    n: int
    d: Tuple[int, ...]
    h: int = 1

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if self.r < 1 or self.n < 1:
            raise ValueError("r and n must be positive")
        if len(self.d) != self.r:
            raise ValueError("need one degree per hypersurface")
        if any(x < 1 for x in self.d) or self.h < 1:
            raise ValueError("degrees and h must be positive")

    def profile(self) -> IntersectionProfile:
        return IntersectionProfile.same_class(self.r, self.n, self.d, self.h)


def _exact_div(num: int, den: int, what: str) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise IntegralityError(f"{what}: {num} is not divisible by {den}")
    return q


@lru_cache(maxsize=4096)
def _eulerian_product(eps: ExponentVector) -> Tuple[int, ...]:
    # coefficient of x^q is sum_{|t|=q} prod E(eps_i, t_i)
    poly: List[int] = [1]
    for e in eps:
        poly = poly_mul(poly, eulerian_row(e))
    return tuple(poly)


def chi_numerators(profile: IntersectionProfile) -> List[int]:
    """``n! |chi_q|`` for ``q = 0..n-r`` before the final division."""
    n, r = profile.n, profile.r
    out = [0] * (n - r + 1)
    for eps in iter_positive_compositions(r, n):
        weight = multinomial(n, eps) * profile[eps]
        for q, v in enumerate(_eulerian_product(eps)):
            out[q] += weight * v
    return out


def chi_from_profile(profile: IntersectionProfile) -> ChiSequence:
    """``|chi_q| = (1/n!) sum_eps multinomial(n; eps) I(eps) sum_{|t|=q} prod E(eps_i, t_i)``.

    Exponent vectors with a zero entry contribute nothing since E(0, .) = 0.
    """
    nf = factorial(profile.n)
    values = [_exact_div(v, nf, f"chi_{q}") for q, v in enumerate(chi_numerators(profile))]
    return ChiSequence(profile.n, profile.r, tuple(values))


def chi_same_class(dp: DegreeProfile) -> ChiSequence:
    """Chi sequence when every hypersurface is a multiple of one class.

    With equal degrees ``d`` this is ``h d^n E_r(n, q)``; otherwise the
    induced profile is expanded through :func:`chi_from_profile`.
    """
    if len(set(dp.d)) == 1:
        scale = dp.h * dp.d[0] ** dp.n
        return ChiSequence(dp.n, dp.r, tuple(scale * v for v in generalized_eulerian_row(dp.r, dp.n)))
    return chi_from_profile(dp.profile())


def chi_coefficient(q: int, eps: Sequence[int], d: Sequence[int]) -> int:
    """``c_{q;eps}(d) = sum_{s >= 0} (-1)^|s| C(n, q-|s|) prod((d_i-s_i)^eps_i - (d_i-s_i-1)^eps_i)``.

    ``n = |eps|``; the sum stops at ``|s| = q`` because the binomial vanishes
    beyond it.
    """
    eps = tuple(eps)
    if len(d) != len(eps):
        raise ValueError("eps and d must have equal length")
    n = sum(eps)
    r = len(eps)
    total = 0
    for size in range(q + 1):
        b = binomial(n, q - size)
        if not b:
            continue
        acc = 0
        for s in iter_compositions(r, size):
            prod = 1
            for di, si, ei in zip(d, s, eps):
                base = di - si
                prod *= base**ei - (base - 1) ** ei
                if not prod:
                    break
            acc += prod
        total += (-1) ** size * b * acc
    return total


def twisted_chi_via_coefficients(profile: IntersectionProfile, d: Sequence[int]) -> List[int]:
    """Signed ``P_q(d) = chi(X, Omega^q(d_1 H_1 + ... + d_r H_r))`` for ``q = 0..n``.

    Evaluated from the coefficient polynomials :func:`chi_coefficient`.
    """
    n = profile.n
    nf = factorial(n)
    out = []
    for q in range(n + 1):
        acc = 0
        for eps in iter_compositions(profile.r, n):
            c = chi_coefficient(q, eps, d)
            if c:
                acc += multinomial(n, eps) * profile[eps] * c
        out.append(_exact_div(acc, nf, f"P_{q}"))
    return out


def _self_power(profile: IntersectionProfile, coeffs: Sequence[int]) -> int:
    # (sum_i coeffs_i H_i)^n expanded multilinearly
    total = 0
    for eps in iter_compositions(profile.r, profile.n):
        term = multinomial(profile.n, eps) * profile[eps]
        for c, e in zip(coeffs, eps):
            term *= c**e
            if not term:
                break
        total += term
    return total


def p_zero_numerator(profile: IntersectionProfile, d: Sequence[int], m: int = 0) -> int:
    """``n! P_0(d, m)``: the Koszul inclusion-exclusion over ``eps in {0,1}^r``.

    For ``m != 0`` the profile must carry one extra class ``H`` in its last
    slot, and ``d`` lists the twists of the first ``profile.r - 1`` classes.
    """
    r = len(d)
    if m == 0:
        if r != profile.r:
            raise ValueError("need one twist per hypersurface")
    elif profile.r != r + 1:
        raise ValueError("a nonzero m needs a profile with the extra class H last")
    total = 0
    for size in range(r + 1):
        for eps in iter_compositions(r, size, caps=[1] * r):
            coeffs = [di - ei for di, ei in zip(d, eps)]
            if m != 0:
                coeffs.append(m)
            total += (-1) ** size * _self_power(profile, coeffs)
    return total


def p_zero(profile: IntersectionProfile, d: Sequence[int], m: int = 0) -> int:
    """``P_0(d, m) = chi(X, O_X(sum d_i H_i + m H))``."""
    return _exact_div(p_zero_numerator(profile, d, m), factorial(profile.n), "P_0")


def twisted_chi_via_recurrence(profile: IntersectionProfile, d: Sequence[int]) -> List[int]:
    """Signed ``P_q(d)`` for ``q = 0..n`` from the wedge-filtration recurrence

    ``C(n, q) P_0(d) = sum_{s in {0,1}^r} P_{q-|s|}(d - s)``.
    """
    r, n = profile.r, profile.n
    d = tuple(d)
    if len(d) != r:
        raise ValueError("need one twist per hypersurface")
    nonzero_shifts = [
        s for size in range(1, r + 1) for s in iter_compositions(r, size, caps=[1] * r)
    ]
    memo: Dict[Tuple[int, Tuple[int, ...]], int] = {}

    def p0(point: Tuple[int, ...]) -> int:
        key = (0, point)
        if key not in memo:
            memo[key] = p_zero_numerator(profile, point)
        return memo[key]

    def p(q: int, point: Tuple[int, ...]) -> int:
        # numerators scaled by n!
        if q < 0:
            return 0
        if q == 0:
            return p0(point)
        key = (q, point)
        if key in memo:
            return memo[key]
        value = binomial(n, q) * p0(point)
        for s in nonzero_shifts:
            shifted = tuple(a - b for a, b in zip(point, s))
            value -= p(q - sum(s), shifted)
        memo[key] = value
        return value

    nf = factorial(n)
    return [_exact_div(p(q, d), nf, f"P_{q}") for q in range(n + 1)]


def chi_via_recurrence(profile: IntersectionProfile, d: Optional[Sequence[int]] = None) -> ChiSequence:
    """Chi magnitudes at twist ``d`` (default zero) via :func:`twisted_chi_via_recurrence`.

    At ``d = 0`` this must agree with :func:`chi_from_profile`; the sign
    ``(-1)^(n-q-r)`` is checked on the way and entries above ``n-r`` must vanish.
    """
    r, n = profile.r, profile.n
    d = tuple(d) if d is not None else (0,) * r
    signed = twisted_chi_via_recurrence(profile, d)
    if any(d):
        if signed[0] == 0:
            raise IntegralityError("twisted chi(O_X) vanishes")
        return ChiSequence(n, r, tuple(abs(v) for v in signed[: n - r + 1]))
    values = []
    for q, v in enumerate(signed):
        sign = -1 if (n - q - r) % 2 else 1
        if q > n - r:
            if v != 0:
                raise ArithmeticError(f"P_{q}(0) = {v} should vanish above n - r")
            continue
        if v * sign < 0:
            raise ArithmeticError(f"P_{q}(0) = {v} has the wrong sign")
        values.append(v * sign)
    return ChiSequence(n, r, tuple(values))


def numerical_condition(chi: Union[ChiSequence, Sequence[int]]) -> bool:
    """``2 sum |chi_q|^2 <= (sum |chi_q|)^2``."""
    values = chi.values if isinstance(chi, ChiSequence) else tuple(chi)
    return 2 * sum(v * v for v in values) <= sum(values) ** 2


def _integral(values: Iterable[Number], what: str) -> Tuple[int, ...]:
    out = []
    for v in values:
        v = Fraction(v)
        if v.denominator != 1:
            raise IntegralityError(f"{what}: non-integral value {v}")
        out.append(int(v))
    return tuple(out)


def dim2_closed_form(a: Number, b: Number, *, r: int = 1) -> ChiSequence:
    """Surfaces: ``(a + b, 4a + 2b, a + b)``.

    ``a = sum_i (X . H_i^2) / 6`` and ``b = sum_{i<j} (X . H_i H_j) / 4``.
    """
    a, b = Fraction(a), Fraction(b)
    values = _integral((a + b, 4 * a + 2 * b, a + b), "dim2")
    return ChiSequence(r + 2, r, values)


DIM4_COLUMNS: Dict[str, Tuple[int, int, int]] = {
    "A": (1, 26, 66),
    "B13": (1, 12, 22),
    "B22": (1, 8, 18),
    "C": (1, 6, 10),
    "D": (1, 4, 6),
}
DIM4_VARIABLES = tuple(DIM4_COLUMNS)


def _dim4_rows() -> List[Dict[str, int]]:
    rows = [{v: DIM4_COLUMNS[v][q] for v in DIM4_VARIABLES} for q in range(3)]
    return rows + rows[1::-1]


def dim4_closed_form(A: Number, B13: Number, B22: Number, C: Number, D: Number, *, r: int = 1) -> ChiSequence:
    """Fourfolds: chi_q is linear in the five aggregated intersection numbers."""
    vals = dict(zip(DIM4_VARIABLES, map(Fraction, (A, B13, B22, C, D))))
    out = [sum(row[v] * vals[v] for v in DIM4_VARIABLES) for row in _dim4_rows()]
    return ChiSequence(r + 4, r, _integral(out, "dim4"))


def dim2_variables_from_profile(profile: IntersectionProfile) -> Tuple[Fraction, Fraction]:
    """``(a, b)`` for a profile with ``n = r + 2``."""
    r = profile.r
    if profile.n != r + 2:
        raise ValueError("need n = r + 2")
    ones = [1] * r
    a = b = Fraction(0)
    for i in range(r):
        e = ones.copy()
        e[i] += 2
        a += Fraction(profile[e], 6)
        for j in range(i + 1, r):
            e = ones.copy()
            e[i] += 1
            e[j] += 1
            b += Fraction(profile[e], 4)
    return a, b


def dim4_variables_from_profile(profile: IntersectionProfile) -> Dict[str, Fraction]:
    """``A, B13, B22, C, D`` for a profile with ``n = r + 4``.

    The exponent vector is ``1 + extra``, where ``extra`` is the
    self-intersection pattern of the variable (``X = H_1 ... H_r``).
    """
    r = profile.r
    if profile.n != r + 4:
        raise ValueError("need n = r + 4")
    out = {v: Fraction(0) for v in DIM4_VARIABLES}
    for extra in iter_compositions(r, 4):
        parts = sorted((x for x in extra if x), reverse=True)
        eps = tuple(1 + x for x in extra)
        value = profile[eps]
        if parts == [4]:
            out["A"] += Fraction(value, 120)
        elif parts == [3, 1]:
            # X . H_i H_j^3 with i != j
            out["B13"] += Fraction(value, 48)
        elif parts == [2, 2]:
            out["B22"] += Fraction(value, 36)
        elif parts == [2, 1, 1]:
            out["C"] += Fraction(value, 24)
        else:
            out["D"] += Fraction(value, 16)
    return out


Monomial = Tuple[str, str]


@dataclass(frozen=True)
class QuadraticCheck:
    sum_of_squares: Dict[Monomial, int] = field(default_factory=dict)
    square_of_sum: Dict[Monomial, int] = field(default_factory=dict)
    dominated: bool = False


def _square(linear_forms: Iterable[Dict[str, int]]) -> Dict[Monomial, int]:
    out: Dict[Monomial, int] = {}
    order = {v: i for i, v in enumerate(DIM4_VARIABLES)}
    for form in linear_forms:
        for u, cu in form.items():
            for v, cv in form.items():
                key = tuple(sorted((u, v), key=order.__getitem__))
                out[key] = out.get(key, 0) + cu * cv
    return out


def dim4_quadratic_check() -> QuadraticCheck:
    """Expand ``sum chi_q^2`` and ``(sum chi_q)^2`` in A, B13, B22, C, D."""
    rows = _dim4_rows()
    sos = _square(rows)
    total = {v: sum(row[v] for row in rows) for v in DIM4_VARIABLES}
    sq = _square([total])
    dominated = all(sq.get(k, 0) >= 2 * c for k, c in sos.items())
    return QuadraticCheck(sum_of_squares=sos, square_of_sum=sq, dominated=dominated)


def topological_euler(profile: IntersectionProfile) -> int:
    """``|chi_top(X)| = sum_{|e| = n, all e_i >= 1} H_1^e1 ... H_r^er``.

    Cross-checked against ``sum_q |chi_q|``.
    """
    total = sum(profile[e] for e in iter_positive_compositions(profile.r, profile.n))
    chi_total = sum(chi_from_profile(profile).values)
    if chi_total != total:
        raise ArithmeticError(f"topological Euler characteristic {total} != sum of chi {chi_total}")
    return total


def divisible_by_six(profile: IntersectionProfile) -> bool:
    """``chi_top(X) = 0 mod 6``; only claimed when ``r < n/2``."""
    if not 2 * profile.r < profile.n:
        raise ValueError("divisibility by 6 needs r < n/2")
    return topological_euler(profile) % 6 == 0

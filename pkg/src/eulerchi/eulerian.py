"""Eulerian numbers E(n, k) and their r-th order generalisation E_r(n, k).

E(n, k) counts permutations of ``{1..n}`` with ``k`` descents.  E_r(n, k)
counts pairs (permutation, ``(r-1)``-subset ``S`` of ``{1..n-1}``) with ``k``
descents outside ``S``.  Three routes to E_r are provided and are expected to
agree:

* :func:`generalized_eulerian` lifts the E(n, .) row in ``r`` with the
  two-term recurrence (the fast path);
* :func:`generalized_eulerian_via_sum` sums over exponent vectors, using
  multinomials and products of classical Eulerian numbers;
* :func:`brute_force_generalized` enumerates permutations and subsets.

Out-of-range arguments give 0: E(n, k) = 0 for ``n <= 0`` or ``k`` outside
``[0, n-1]``, and E_r(n, k) = 0 for ``n < r`` or ``k`` outside ``[0, n-r]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .combinatorics import (
    binomial,
    binomial_row,
    factorial,
    iter_compositions,
    multinomial,
    poly_mul,
)
from .rational import ln_upper_bound

ORACLE_CAP = 10


class HypothesisNotMet(ValueError):
    """Raised when parameters satisfy none of a lemma's hypotheses."""


@lru_cache(maxsize=None)
def eulerian_row(n: int) -> Tuple[int, ...]:
    """``(E(n, 0), ..., E(n, n-1))`` by the alternating binomial sum.

    Only the first half is summed; the rest is filled in by the symmetry
    ``E(n, k) = E(n, n-1-k)``.  Empty for ``n <= 0``.
    """
    if n <= 0:
        return ()
    powers = [j**n for j in range(n + 1)]
    coeffs = binomial_row(n + 1)
    half = (n - 1) // 2
    row = [0] * n
    for k in range(half + 1):
        acc = 0
        for i in range(k + 1):
            term = coeffs[i] * powers[k + 1 - i]
            acc = acc - term if i & 1 else acc + term
        row[k] = acc
    for k in range(half + 1, n):
        row[k] = row[n - 1 - k]
    return tuple(row)


def eulerian(n: int, k: int) -> int:
    """Classical Eulerian number E(n, k), zero outside ``n >= 1, 0 <= k <= n-1``."""
    if n <= 0 or k < 0 or k > n - 1:
        return 0
    return eulerian_row(n)[k]


def eulerian_by_recurrence(n: int) -> Tuple[int, ...]:
    """E(n, .) from ``E(n, k) = (n-k) E(n-1, k-1) + (k+1) E(n-1, k)``.

    Kept separate from :func:`eulerian_row` so the two can check each other.
    """
    if n <= 0:
        return ()
    row = [1]
    for m in range(2, n + 1):
        prev = row
        row = [0] * m
        for k in range(m):
            left = prev[k - 1] if k >= 1 else 0
            right = prev[k] if k < m - 1 else 0
            row[k] = (m - k) * left + (k + 1) * right
    return tuple(row)


@lru_cache(maxsize=None)
def generalized_eulerian_row(r: int, n: int) -> Tuple[int, ...]:
    """``(E_r(n, 0), ..., E_r(n, n-r))`` via the lift in ``r``.

    ``(r-1) E_r(n, j) = (j+1) E_{r-1}(n, j+1) + (n+1-j-r) E_{r-1}(n, j)``
    """
    if r < 1:
        raise ValueError("r must be positive")
    if n < r or n <= 0:
        return ()
    if r == 1:
        return eulerian_row(n)
    prev = generalized_eulerian_row(r - 1, n)
    size = n - r + 1
    row = []
    for j in range(size):
        up = prev[j + 1] if j + 1 < len(prev) else 0
        num = (j + 1) * up + (n + 1 - j - r) * prev[j]
        q, rem = divmod(num, r - 1)
        if rem:
            raise ArithmeticError(f"non-integral lift at r={r}, n={n}, j={j}")
        row.append(q)
    return tuple(row)


def generalized_eulerian(r: int, n: int, k: int) -> int:
    """E_r(n, k); zero outside ``0 <= k <= n-r``."""
    if r < 1:
        raise ValueError("r must be positive")
    if n < r or k < 0 or k > n - r:
        return 0
    return generalized_eulerian_row(r, n)[k]


def _sum_route_row(r: int, n: int, kmax: int) -> List[int]:
    out = [0] * (kmax + 1)
    if n <= 0:
        return out
    for eps in iter_compositions(r, n):
        if 0 in eps:
            # E(0, .) vanishes identically
            continue
        poly: List[int] = [1]
        for e in eps:
            poly = poly_mul(poly, eulerian_row(e), limit=kmax + 1)
        weight = multinomial(n, eps)
        for k, v in enumerate(poly):
            out[k] += weight * v
    return out


def generalized_eulerian_via_sum(r: int, n: int, k: int) -> int:
    """E_r(n, k) as a sum over exponent vectors ``eps`` with ``|eps| = n``
    and ``t`` with ``|t| = k`` of ``multinomial(n; eps) * prod E(eps_i, t_i)``.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if k < 0 or n < 0:
        return 0
    total = 0
    for eps in iter_compositions(r, n):
        inner = 0
        for t in iter_compositions(r, k):
            prod = 1
            for e, ti in zip(eps, t):
                prod *= eulerian(e, ti)
                if not prod:
                    break
            inner += prod
        if inner:
            total += multinomial(n, eps) * inner
    return total


def generalized_eulerian_row_via_sum(
    r: int, n: int, kmax: Optional[int] = None
) -> Tuple[int, ...]:
    """Row of E_r(n, .) by the exponent-vector sum, optionally truncated.

    The inner sum over ``t`` is evaluated as a truncated product of the
    Eulerian polynomials of the parts, which is the same finite sum.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if n < r:
        return ()
    top = n - r if kmax is None else min(kmax, n - r)
    return tuple(_sum_route_row(r, n, top))


def brute_force_generalized(r: int, n: int, k: int, cap: int = ORACLE_CAP) -> int:
    """Count (permutation, subset) pairs directly.

    Permutations are grouped by descent set first; the subset loop then runs
    over descent sets rather than permutations.
    """
    if n > cap:
        raise ValueError(f"brute force oracle capped at n <= {cap}, got n={n}")
    if r < 1:
        raise ValueError("r must be positive")
    if n <= 0:
        return 0
    by_descents: dict = {}
    for perm in itertools.permutations(range(n)):
        key = frozenset(i + 1 for i in range(n - 1) if perm[i] > perm[i + 1])
        by_descents[key] = by_descents.get(key, 0) + 1
    count = 0
    for subset in itertools.combinations(range(1, n), r - 1):
        s = set(subset)
        for desc, c in by_descents.items():
            if len(desc - s) == k:
                count += c
    return count


def eulerian_convolution(a: int, b: int) -> Tuple[int, ...]:
    """``c_k = sum_{i+j=k} E(a, i) E(b, j)`` for ``k = 0..a+b-2``."""
    return tuple(poly_mul(eulerian_row(a), eulerian_row(b)))


@dataclass(frozen=True)
class BoundCheck:
    lower_ok: bool
    upper_ok: bool


def asymptotic_bounds(r: int, n: int, k: int) -> Tuple[int, int]:
    """The integer lower and upper bounds for E_r(n, k) used by
    :func:`check_asymptotic_bounds`."""
    c = binomial(k + r - 1, r - 1)
    upper = c * (k + r) ** n
    lower = c * ((k + r) ** n - (n + 1) * (k + r - 1) ** n)
    return lower, upper


def check_asymptotic_bounds(r: int, n: int, k: int) -> BoundCheck:
    """Exact check of
    ``C(k+r-1, r-1)((k+r)^n - (n+1)(k+r-1)^n) <= E_r(n,k) <= C(k+r-1, r-1)(k+r)^n``.
    """
    if n < 1 or r < 1 or k < 0:
        raise ValueError("need n >= 1, r >= 1, k >= 0")
    lower, upper = asymptotic_bounds(r, n, k)
    value = generalized_eulerian(r, n, k)
    return BoundCheck(lower_ok=lower <= value, upper_ok=value <= upper)


def lower_06_hypothesis(r: int, n: int, k: int) -> Optional[str]:
    """Name of the first satisfied hypothesis of the 0.6 lower bound, or None.

    ``"large_n"``: ``n >= 3r^2 + 100``, ``r >= 2``, ``k <= 4r``.
    ``"small_k"``: ``k <= n / (ln(n+1) + 1) - r``, decided with a certified
    upper bound on ``ln(n+1)`` so that acceptance is never due to rounding.
    """
    if r >= 2 and n >= 3 * r * r + 100 and k <= 4 * r:
        return "large_n"
    if n >= 1:
        ln_hi = ln_upper_bound(n + 1)
        if k + r <= Fraction(n) / (ln_hi + 1):
            return "small_k"
    return None


def check_lower_06(r: int, n: int, k: int) -> bool:
    """Exact truth of ``E_r(n, k) >= 0.6 C(k+r-1, r-1) (k+r)^n``.

    Raises :class:`HypothesisNotMet` when neither hypothesis holds.
    """
    if lower_06_hypothesis(r, n, k) is None:
        raise HypothesisNotMet(f"no hypothesis of the 0.6 bound holds for r={r}, n={n}, k={k}")
    rhs = 3 * binomial(k + r - 1, r - 1) * (k + r) ** n
    return 5 * generalized_eulerian(r, n, k) >= rhs


@dataclass(frozen=True)
class RowProperties:
    symmetric: bool
    log_concave: bool
    total: int


def check_row_properties(r: int, n: int) -> RowProperties:
    """Symmetry, log-concavity and total of the E_r(n, .) row."""
    if n < r:
        raise ValueError("need n >= r")
    row = generalized_eulerian_row(r, n)
    m = len(row)
    symmetric = all(row[k] == row[m - 1 - k] for k in range(m))
    log_concave = all(row[k] * row[k] >= row[k - 1] * row[k + 1] for k in range(1, m - 1))
    return RowProperties(symmetric=symmetric, log_concave=log_concave, total=sum(row))


@dataclass(frozen=True)
class Dominance:
    holds: bool
    is_exception: bool


def check_dominance(n: int) -> Dominance:
    """Whether ``2 max_k E(n, k) <= n!``; ``n`` in {1, 3, 5} are the known exceptions."""
    if n < 1:
        raise ValueError("need n >= 1")
    peak = max(eulerian_row(n))
    return Dominance(holds=2 * peak <= factorial(n), is_exception=n in (1, 3, 5))

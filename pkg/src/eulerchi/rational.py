"""Certified rational bounds for exp, ln and square roots.

Every function here returns bounds that are provably on the stated side of
the true real value; nothing is computed in floating point.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from .combinatorics import isqrt_ceil

# Outward rounding grid for intermediate exp bounds; keeps denominators small.
_GRID = 1 << 96
_TAYLOR_TERMS = 30


def _round_down(x: Fraction) -> Fraction:
    return Fraction(math.floor(x * _GRID), _GRID)


def _round_up(x: Fraction) -> Fraction:
    return Fraction(math.ceil(x * _GRID), _GRID)


def exp_bounds(x: Fraction) -> Tuple[Fraction, Fraction]:
    """Return ``(lo, hi)`` with ``lo <= exp(x) <= hi`` for rational ``x >= 0``."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("exp_bounds expects x >= 0")
    halvings = 0
    while x > Fraction(1, 2):
        x /= 2
        halvings += 1
    term = Fraction(1)
    total = Fraction(1)
    for i in range(1, _TAYLOR_TERMS + 1):
        term = term * x / i
        total += term
    # tail after N terms is at most x^(N+1)/(N+1)! * 1/(1 - x/(N+2))
    nxt = term * x / (_TAYLOR_TERMS + 1)
    tail = nxt / (1 - x / (_TAYLOR_TERMS + 2))
    lo, hi = _round_down(total), _round_up(total + tail)
    for _ in range(halvings):
        lo, hi = _round_down(lo * lo), _round_up(hi * hi)
    return lo, hi


@lru_cache(maxsize=4096)
def ln_upper_bound(y: int, width: Fraction = Fraction(1, 10**6)) -> Fraction:
    """Rational ``U`` with ``ln(y) <= U``, found by bisection on ``exp``.

    The returned value is within ``width`` (plus a negligible rounding slack)
    of ``ln(y)``.  Requires ``y >= 1``.
    """
    if y < 1:
        raise ValueError("ln_upper_bound expects y >= 1")
    if y == 1:
        return Fraction(0)
    lo = Fraction(0)
    # e > 2, so exp(bit_length(y)) > 2**bit_length(y) > y
    hi = Fraction(y.bit_length())
    while hi - lo > width:
        mid = (lo + hi) / 2
        if exp_bounds(mid)[0] >= y:
            hi = mid
        else:
            lo = mid
    return hi


def sqrt_bracket(x: Fraction, rounds: int = 0) -> Tuple[Fraction, Fraction]:
    """Return ``(lo, hi)`` with ``lo <= sqrt(x) <= hi`` for rational ``x >= 0``.

    The starting bracket is ``(isqrt(floor(x)), isqrt_ceil(ceil(x)))``;
    ``rounds`` bisection steps then tighten it by exact squaring.
    """
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of negative number")
    lo = Fraction(math.isqrt(math.floor(x)))
    hi = Fraction(isqrt_ceil(math.ceil(x)))
    for _ in range(rounds):
        mid = (lo + hi) / 2
        if mid * mid <= x:
            lo = mid
        else:
            hi = mid
    return lo, hi

"""Exact integer combinatorics: factorials, binomials, multinomials, compositions.

All quantities are plain Python ``int`` (unbounded) or ``fractions.Fraction``.
Exponent vectors are tuples of non-negative ints.
"""
from __future__ import annotations

import math
import threading
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

ExponentVector = Tuple[int, ...]

_factorials: List[int] = [1]
_factorial_lock = threading.Lock()


def factorial(n: int) -> int:
    """Return ``n!`` from a table that only ever grows."""
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    table = _factorials
    if n < len(table):
        return table[n]
    with _factorial_lock:
        while len(table) <= n:
            table.append(table[-1] * len(table))
    return table[n]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with the zero convention.

    Returns 0 whenever ``k < 0``, ``k > n`` or ``n < 0``; several finite sums
    downstream rely on out-of-range terms vanishing.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def binomial_row(n: int) -> Tuple[int, ...]:
    """``(C(n, 0), ..., C(n, n))`` as an immutable tuple."""
    row = [1]
    for k in range(1, n + 1):
        row.append(row[-1] * (n - k + 1) // k)
    return tuple(row)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """``n! / prod(parts[i]!)``; the parts must be non-negative and sum to ``n``."""
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {tuple(parts)}")
    if sum(parts) != n:
        raise ValueError(f"parts {tuple(parts)} do not sum to {n}")
    result = 1
    remaining = n
    for p in parts:
        result *= binomial(remaining, p)
        remaining -= p
    return result


def iter_compositions(
    r: int, total: int, caps: Optional[Sequence[int]] = None
) -> Iterator[ExponentVector]:
    """Yield every ``eps`` of length ``r`` with ``sum(eps) == total``.

    Entries are non-negative and, if ``caps`` is given, ``eps[i] <= caps[i]``.
    Output is in increasing lexicographic order.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if caps is not None and len(caps) != r:
        raise ValueError("caps must have length r")
    if total < 0:
        return
    # suffix capacity lets us skip dead branches early
    if caps is None:
        suffix = None
    else:
        suffix = [0] * (r + 1)
        for i in range(r - 1, -1, -1):
            suffix[i] = suffix[i + 1] + max(caps[i], 0)
        if suffix[0] < total:
            return

    prefix: List[int] = []

    def rec(i: int, left: int) -> Iterator[ExponentVector]:
        if i == r - 1:
            if caps is None or left <= caps[i]:
                yield tuple(prefix) + (left,)
            return
        hi = left if caps is None else min(left, caps[i])
        lo = 0 if suffix is None else max(0, left - suffix[i + 1])
        for v in range(lo, hi + 1):
            prefix.append(v)
            yield from rec(i + 1, left - v)
            prefix.pop()

    yield from rec(0, total)


def enumerate_compositions(
    r: int, total: int, caps: Optional[Sequence[int]] = None
) -> List[ExponentVector]:
    """List form of :func:`iter_compositions`."""
    return list(iter_compositions(r, total, caps))


def iter_positive_compositions(r: int, total: int) -> Iterator[ExponentVector]:
    """Compositions of ``total`` into ``r`` parts that are all at least 1."""
    for eps in iter_compositions(r, total - r):
        yield tuple(e + 1 for e in eps)


def poly_mul(a: Sequence[int], b: Sequence[int], limit: Optional[int] = None) -> List[int]:
    """Product of two integer coefficient lists, optionally truncated to ``limit`` terms."""
    if not a or not b:
        return []
    size = len(a) + len(b) - 1
    if limit is not None:
        size = min(size, limit)
    out = [0] * size
    for i, x in enumerate(a):
        if i >= size or not x:
            continue
        top = min(len(b), size - i)
        for j in range(top):
            out[i + j] += x * b[j]
    return out


def isqrt_ceil(n: int) -> int:
    """Least integer ``u >= 0`` with ``u * u >= n``."""
    if n <= 0:
        return 0
    u = math.isqrt(n)
    return u if u * u == n else u + 1

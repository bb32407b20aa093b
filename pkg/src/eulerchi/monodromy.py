"""The wedge-power system: counting sub-multisets of a weighted multiset.

An :class:`IndexFunction` ``m_H`` is a finitely supported multiplicity
function on the integers.  For ``k`` and an integer ``t``,

    lhs(m_H, k, t) = sum over m_S <= m_H with |m_S| = k and sum i m_S(i) = t
                     of prod_i C(m_H(i), m_S(i)),

i.e. the coefficient of ``y^k x^t`` in ``prod_i (1 + y x^i)^{m_H(i)}``.  A
candidate ``(m_H, k, s)`` solves a target sequence ``chi`` when
``lhs(m_H, k, s + q) = chi_q`` for the indexed ``q``.
"""
from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .chi import ChiSequence
from .combinatorics import binomial, iter_compositions


@dataclass(frozen=True)
class IndexFunction:
    """Multiplicities ``counts[i]`` at integer positions ``offset + i``."""

    offset: int
    counts: Tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError("multiplicities must be non-negative")
        if sum(counts) < 1:
            raise ValueError("total multiplicity must be at least 1")
        # canonical trimming of zero ends
        lo = next(i for i, c in enumerate(counts) if c)
        hi = max(i for i, c in enumerate(counts) if c)
        object.__setattr__(self, "offset", int(self.offset) + lo)
        object.__setattr__(self, "counts", counts[lo : hi + 1])

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "IndexFunction":
        items = {int(i): int(c) for i, c in mapping.items() if c}
        if not items:
            raise ValueError("total multiplicity must be at least 1")
        lo, hi = min(items), max(items)
        return cls(lo, tuple(items.get(i, 0) for i in range(lo, hi + 1)))

    @classmethod
    def parse(cls, text: str) -> "IndexFunction":
        """Parse ``"0:1,1:1,2:1"``."""
        mapping: Dict[int, int] = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            pos, _, count = part.partition(":")
            if not _:
                raise ValueError(f"expected position:count, got {part!r}")
            mapping[int(pos)] = mapping.get(int(pos), 0) + int(count)
        return cls.from_mapping(mapping)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def width(self) -> int:
        return len(self.counts)

    def __call__(self, i: int) -> int:
        j = i - self.offset
        return self.counts[j] if 0 <= j < len(self.counts) else 0

    def support(self) -> range:
        return range(self.offset, self.offset + len(self.counts))

    def as_dict(self) -> Dict[int, int]:
        return {self.offset + i: c for i, c in enumerate(self.counts) if c}

    def weighted_sum(self) -> int:
        return sum((self.offset + i) * c for i, c in enumerate(self.counts))

    def shifted(self, c: int) -> "IndexFunction":
        return IndexFunction(self.offset + c, self.counts)

    def mirrored(self) -> "IndexFunction":
        return IndexFunction(self.offset, self.counts[::-1])

    def to_json(self) -> dict:
        return {"offset": self.offset, "counts": list(self.counts)}


class Mode(str, enum.Enum):
    ALL_INTEGERS = "all_integers"
    BOUNDED_RANGE = "bounded_range"


@dataclass(frozen=True)
class SystemInstance:
    """Target right-hand sides ``chi_0..chi_{n-r}`` and the reading of the index range."""

    target: Tuple[int, ...]
    mode: Mode = Mode.ALL_INTEGERS

    def __post_init__(self):
        object.__setattr__(self, "target", tuple(int(v) for v in self.target))
        object.__setattr__(self, "mode", Mode(self.mode))
        if not self.target or self.target[0] <= 0:
            raise ValueError("target must start with a positive entry")
        if any(v < 0 for v in self.target):
            raise ValueError("target entries are magnitudes and must be non-negative")

    @classmethod
    def from_chi(cls, chi: ChiSequence, mode: Mode = Mode.ALL_INTEGERS) -> "SystemInstance":
        return cls(chi.values, mode)

    @property
    def span(self) -> int:
        """``n - r``: the number of equations minus one."""
        return len(self.target) - 1


@dataclass(frozen=True)
class SolutionCandidate:
    m_H: IndexFunction
    k: int
    s: int

    @property
    def in_range(self) -> bool:
        """``2 <= k <= m - 1``; outside it a matching candidate is not a solution."""
        return 2 <= self.k <= self.m_H.total - 1

    def canonical(self) -> "SolutionCandidate":
        """Translate the support to start at 0 (``s`` moves by ``k`` per unit shift)."""
        c = -self.m_H.offset
        return SolutionCandidate(self.m_H.shifted(c), self.k, self.s + self.k * c)

    def to_json(self) -> dict:
        return {"m_H": self.m_H.to_json(), "k": self.k, "s": self.s}


@dataclass(frozen=True)
class SearchBounds:
    """``time_budget`` in seconds; ``None`` means unlimited."""

    max_total_m: int
    max_support_width: int
    time_budget: Optional[float] = None

    def __post_init__(self):
        if self.max_total_m < 1 or self.max_support_width < 1:
            raise ValueError("bounds must be positive")
        if self.time_budget is not None and self.time_budget < 0:
            raise ValueError("time budget must be non-negative")

    def to_json(self) -> dict:
        return {
            "max_total_m": self.max_total_m,
            "max_support_width": self.max_support_width,
            "time_budget": self.time_budget,
        }


@lru_cache(maxsize=65536)
def _lhs_table(counts: Tuple[int, ...], k: int) -> Tuple[int, ...]:
    """Coefficients of ``y^k`` in ``prod (1 + y x^i)^counts[i]``, indexed by ``t`` from 0."""
    # dp[j] is a polynomial in x (list) for choosing j elements so far
    dp: List[List[int]] = [[1]] + [[] for _ in range(k)]
    for i, c in enumerate(counts):
        if not c:
            continue
        new: List[List[int]] = [list(p) for p in dp]
        for j in range(k + 1):
            if not dp[j]:
                continue
            for take in range(1, min(c, k - j) + 1):
                weight = binomial(c, take)
                shift = i * take
                target = new[j + take]
                src = dp[j]
                need = len(src) + shift
                if len(target) < need:
                    target.extend([0] * (need - len(target)))
                for t, v in enumerate(src):
                    if v:
                        target[t + shift] += weight * v
        dp = new
    return tuple(dp[k])


def lhs_row(m_H: IndexFunction, k: int) -> Tuple[int, Tuple[int, ...]]:
    """``(t_min, values)`` where ``values[j] = lhs(m_H, k, t_min + j)``, trimmed to its nonzero span."""
    if k < 0 or k > m_H.total:
        return 0, ()
    table = _lhs_table(m_H.counts, k)
    lo = next((i for i, v in enumerate(table) if v), None)
    if lo is None:
        return 0, ()
    hi = max(i for i, v in enumerate(table) if v)
    return lo + k * m_H.offset, table[lo : hi + 1]


def lhs_value(m_H: IndexFunction, k: int, target_sum: int) -> int:
    """``sum prod_i C(m_H(i), m_S(i))`` over ``m_S`` with ``|m_S| = k`` and weighted sum ``target_sum``."""
    start, values = lhs_row(m_H, k)
    j = target_sum - start
    return values[j] if 0 <= j < len(values) else 0


def lhs_value_brute_force(m_H: IndexFunction, k: int, target_sum: int) -> int:
    """Same quantity by enumerating every capped composition of ``k``."""
    if k < 0 or k > m_H.total:
        return 0
    total = 0
    for m_S in iter_compositions(m_H.width, k, caps=m_H.counts):
        if sum((m_H.offset + i) * c for i, c in enumerate(m_S)) != target_sum:
            continue
        prod = 1
        for c_h, c_s in zip(m_H.counts, m_S):
            prod *= binomial(c_h, c_s)
        total += prod
    return total


@dataclass(frozen=True)
class Assignments:
    m0: IndexFunction
    mmax: IndexFunction
    w: int
    w_prime: int


def _greedy(m_H: IndexFunction, k: int, positions: Sequence[int]) -> Dict[int, int]:
    left = k
    out: Dict[int, int] = {}
    for i in positions:
        if not left:
            break
        take = min(m_H(i), left)
        if take:
            out[i] = take
            left -= take
    return out


def min_max_assignments(m_H: IndexFunction, k: int) -> Assignments:
    """Greedy minimiser ``m0`` and maximiser ``mmax`` of ``sum i m_S(i)``.

    ``w`` is the last position used by ``m0`` (full below it, partial at it);
    ``w_prime`` is the first position used by ``mmax``.
    """
    if not 1 <= k <= m_H.total:
        raise ValueError(f"k must lie in [1, {m_H.total}], got {k}")
    support = list(m_H.support())
    m0 = _greedy(m_H, k, support)
    mmax = _greedy(m_H, k, support[::-1])
    return Assignments(
        m0=IndexFunction.from_mapping(m0),
        mmax=IndexFunction.from_mapping(mmax),
        w=max(m0),
        w_prime=min(mmax),
    )


class SpanOutcome(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INAPPLICABLE = "inapplicable"


def span_identity_holds(m_H: IndexFunction, k: int, n: int, r: int) -> SpanOutcome:
    """Check ``sum_{i<w} (w-i) m_H(i) + sum_{i>w'} (i-w') m_H(i) + k (w'-w) = n - r``.

    Reported as inapplicable when ``w > w'``; the greedy cutoffs can cross
    for ``k`` close to ``m``.
    """
    a = min_max_assignments(m_H, k)
    w, wp = a.w, a.w_prime
    if w > wp:
        return SpanOutcome.INAPPLICABLE
    lhs = sum((w - i) * m_H(i) for i in m_H.support() if i < w)
    lhs += sum((i - wp) * m_H(i) for i in m_H.support() if i > wp)
    lhs += k * (wp - w)
    return SpanOutcome.HOLDS if lhs == n - r else SpanOutcome.FAILS


def evaluate_candidate(cand: SolutionCandidate, system: SystemInstance) -> bool:
    """Whether every indexed equation holds.

    In all-integers mode the left side must also vanish outside ``[s, s + n - r]``.
    """
    start, values = lhs_row(cand.m_H, cand.k)
    target = system.target
    for q, v in enumerate(target):
        j = cand.s + q - start
        got = values[j] if 0 <= j < len(values) else 0
        if got != v:
            return False
    if system.mode is Mode.ALL_INTEGERS and values:
        lo, hi = start, start + len(values) - 1
        if lo < cand.s or hi > cand.s + len(target) - 1:
            return False
    return True


def is_solution(cand: SolutionCandidate, system: SystemInstance) -> bool:
    return cand.in_range and evaluate_candidate(cand, system)


def canonical_candidate(m_H: IndexFunction, k: int) -> SolutionCandidate:
    """The candidate with ``s = sum i m0(i)``, the only admissible shift in all-integers mode."""
    return SolutionCandidate(m_H, k, min_max_assignments(m_H, k).m0.weighted_sum())


def plant_instance(m_H: IndexFunction, k: int, mode: Mode = Mode.ALL_INTEGERS) -> SystemInstance:
    """Target built from ``(m_H, k)``: the full left-hand row over its nonzero span."""
    if not 2 <= k <= m_H.total - 1:
        raise ValueError("planting needs 2 <= k <= m - 1")
    _, values = lhs_row(m_H, k)
    return SystemInstance(values, mode)


def mirror_tag(m_H: IndexFunction, k: int) -> str:
    """Shared label for ``m_H`` and its reversal."""
    counts = min(m_H.counts, m_H.counts[::-1])
    return "k{}:{}".format(k, ",".join(map(str, counts)))


@dataclass(frozen=True)
class FoundSolution:
    candidate: SolutionCandidate
    mirror_tag: str

    def sort_key(self):
        c = self.candidate
        return (c.m_H.total, c.m_H.width, c.m_H.counts, c.k, c.s)

    def to_json(self) -> dict:
        out = self.candidate.to_json()
        out["mirror_tag"] = self.mirror_tag
        return out


@dataclass
class SearchReport:
    system: SystemInstance
    bounds: SearchBounds
    solutions: List[FoundSolution] = field(default_factory=list)
    budget_exhausted: bool = False
    interrupted: bool = False
    elapsed_ms: int = 0
    candidates_examined: int = 0

    @property
    def exhausted(self) -> bool:
        """True when the whole bounded search space was covered."""
        return not (self.budget_exhausted or self.interrupted)

    @property
    def candidates(self) -> List[SolutionCandidate]:
        return [f.candidate for f in self.solutions]

    def to_json(self, include_timing: bool = True) -> dict:
        return {
            "target": [str(v) for v in self.system.target],
            "mode": self.system.mode.value,
            "bounds": self.bounds.to_json(),
            "solutions": [f.to_json() for f in self.solutions],
            "exhausted": self.exhausted,
            "budget_exhausted": self.budget_exhausted,
            "interrupted": self.interrupted,
            "candidates_examined": self.candidates_examined,
            "elapsed_ms": self.elapsed_ms if include_timing else 0,
        }


def _shapes(m: int, width: int) -> Iterator[Tuple[int, ...]]:
    # compositions of m over `width` slots, first and last slot nonzero
    if width == 1:
        yield (m,)
        return
    if m < 2:
        return
    for inner in iter_compositions(width, m - 2):
        yield (inner[0] + 1,) + inner[1:-1] + (inner[-1] + 1,)


def _check_shape(
    counts: Tuple[int, ...], target: Tuple[int, ...], mode: Mode, total_target: int
) -> List[SolutionCandidate]:
    m = sum(counts)
    span = len(target) - 1
    m_H = IndexFunction(0, counts)
    found: List[SolutionCandidate] = []
    for k in range(2, m):
        c_mk = binomial(m, k)
        if mode is Mode.ALL_INTEGERS:
            if c_mk != total_target:
                continue
        elif c_mk < total_target:
            continue
        a = min_max_assignments(m_H, k)
        lo, hi = a.m0.weighted_sum(), a.mmax.weighted_sum()
        if mode is Mode.ALL_INTEGERS:
            # span of the nonzero row; equals the span identity's left side
            if hi - lo != span:
                continue
            if binomial(m_H(a.w), a.m0(a.w)) != target[0]:
                continue
            cand = SolutionCandidate(m_H, k, lo)
            if evaluate_candidate(cand, SystemInstance(target, mode)):
                found.append(cand)
        else:
            start, values = lhs_row(m_H, k)
            for s in range(lo, hi + 1):
                ok = True
                for q, v in enumerate(target):
                    j = s + q - start
                    if (values[j] if 0 <= j < len(values) else 0) != v:
                        ok = False
                        break
                if ok:
                    found.append(SolutionCandidate(m_H, k, s))
    return found


def _search_cell(
    m: int, width: int, target: Tuple[int, ...], mode: str, deadline: Optional[float]
) -> Tuple[List[SolutionCandidate], int, bool]:
    mode_e = Mode(mode)
    total_target = sum(target)
    found: List[SolutionCandidate] = []
    examined = 0
    for counts in _shapes(m, width):
        if deadline is not None and time.monotonic() >= deadline:
            return found, examined, True
        examined += 1
        found.extend(_check_shape(counts, target, mode_e, total_target))
    return found, examined, False


def _cells(system: SystemInstance, bounds: SearchBounds) -> List[Tuple[int, int]]:
    max_width = bounds.max_support_width
    if system.mode is Mode.ALL_INTEGERS:
        # with 1 <= k <= m-1 the row spans at least width-1 positions
        max_width = min(max_width, system.span + 1)
    return [(m, w) for m in range(3, bounds.max_total_m + 1) for w in range(1, max_width + 1)]


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("EULERCHI_WORKERS", "1")))
    except ValueError:
        return 1


def search(
    system: SystemInstance, bounds: SearchBounds, workers: Optional[int] = None
) -> SearchReport:
    """Exhaustive search over ``m <= max_total_m``, support width ``<= max_support_width``, ``2 <= k <= m-1``.

    Candidates are normalised to support offset 0.  Running out of time sets
    ``budget_exhausted``; Ctrl-C sets ``interrupted``.  Either way the
    solutions found so far are kept.
    """
    workers = default_workers() if workers is None else max(1, workers)
    started = time.monotonic()
    deadline = None if bounds.time_budget is None else started + bounds.time_budget
    report = SearchReport(system=system, bounds=bounds)
    cells = _cells(system, bounds)
    found: List[SolutionCandidate] = []
    target, mode = system.target, system.mode.value
    try:
        if deadline is not None and time.monotonic() >= deadline:
            report.budget_exhausted = True
        elif workers == 1 or len(cells) <= 1:
            for m, w in cells:
                part, examined, timed_out = _search_cell(m, w, target, mode, deadline)
                found.extend(part)
                report.candidates_examined += examined
                if timed_out:
                    report.budget_exhausted = True
                    break
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_search_cell, m, w, target, mode, deadline) for m, w in cells]
                try:
                    for fut in futures:
                        part, examined, timed_out = fut.result()
                        found.extend(part)
                        report.candidates_examined += examined
                        report.budget_exhausted |= timed_out
                except KeyboardInterrupt:
                    for fut in futures:
                        fut.cancel()
                    raise
    except KeyboardInterrupt:
        report.interrupted = True
    report.solutions = sorted(
        (FoundSolution(c, mirror_tag(c.m_H, c.k)) for c in found), key=FoundSolution.sort_key
    )
    report.elapsed_ms = int((time.monotonic() - started) * 1000)
    return report

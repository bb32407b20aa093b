"""Pointwise exact checks of the inequalities that rule out wedge-power solutions.

Each check takes a :class:`~eulerchi.chi.ChiSequence` (magnitudes) and returns
an :class:`IneqVerdict`.  Comparisons are done on integers with denominators
cleared.  The single check involving square roots brackets them with rational
bounds: an upper bracket can only prove "holds", a lower bracket can only
prove "fails", and anything in between is reported as inconclusive.
"""
from __future__ import annotations

import csv
import enum
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Union

from .chi import ChiSequence, DegreeProfile, IntersectionProfile, chi_same_class
from .combinatorics import isqrt_ceil
from .eulerian import generalized_eulerian_row, generalized_eulerian_row_via_sum
from .rational import sqrt_bracket

SQRT_ROUNDS = 32
LARGE_S_VALUES = (2, 3, 4, 5)
CHECK_NAMES = ("ratio-gt-16", "q2", "large-s", "s-lower", "remaining-q2", "m0-bound")


class Outcome(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"
    HYPOTHESIS_NOT_MET = "hypothesis_not_met"


@dataclass(frozen=True)
class IneqVerdict:
    name: str
    params: Dict[str, Union[int, str]]
    outcome: Outcome
    conservative: bool = False
    witness: Dict[str, Fraction] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "outcome": self.outcome.value,
            "holds": self.holds,
            "conservative": self.conservative,
            "witness": {k: str(v) for k, v in self.witness.items()},
        }


def _values(chi: Union[ChiSequence, Sequence[int]]) -> ChiSequence:
    if isinstance(chi, ChiSequence):
        return chi
    values = tuple(chi)
    # bare sequences: treat as n - r = len - 1 with r = 1
    return ChiSequence(len(values), 1, values)


def _base_params(chi: ChiSequence) -> Dict[str, Union[int, str]]:
    return {"r": chi.r, "n": chi.n}


def _decide(ok: bool) -> Outcome:
    return Outcome.HOLDS if ok else Outcome.FAILS


def _need(chi: ChiSequence, count: int, name: str) -> None:
    if len(chi) < count:
        raise ValueError(f"{name} needs at least {count} chi values, got {len(chi)}")


def ratio_gt_16(chi: Union[ChiSequence, Sequence[int]]) -> IneqVerdict:
    """``|chi_1| > 16 |chi_0|``."""
    chi = _values(chi)
    _need(chi, 2, "ratio_gt_16")
    margin = chi.value(1) - 16 * chi.value(0)
    return IneqVerdict("ratio-gt-16", _base_params(chi), _decide(margin > 0), witness={"margin": Fraction(margin)})


def q2_inequality(chi: Union[ChiSequence, Sequence[int]]) -> IneqVerdict:
    """``(chi_1 / chi_0)^2 / 48 > chi_2 / chi_0``, as ``chi_1^2 > 48 chi_2 chi_0``."""
    chi = _values(chi)
    _need(chi, 3, "q2_inequality")
    v0, v1, v2 = chi.value(0), chi.value(1), chi.value(2)
    margin = v1 * v1 - 48 * v2 * v0
    return IneqVerdict("q2", _base_params(chi), _decide(margin > 0), witness={"margin": Fraction(margin)})


def remaining_q2_inequality(
    chi: Union[ChiSequence, Sequence[int]], n: Optional[int] = None, r: Optional[int] = None
) -> IneqVerdict:
    """``chi_2/chi_0 > (n-r)/2 chi_1/chi_0 + sqrt(18 chi_5/chi_1) + sqrt(9 chi_3 chi_1 / (2 chi_0^2)) + 9 chi_3/chi_1 + 3``.

    First pass: each square root is replaced by the least integer whose
    square is at least the ceiling of its argument.  If that does not settle
    "holds", both roots are bracketed by 32 bisection rounds; the verdict is
    "fails" only if the right side using lower brackets already reaches the
    left side.
    """
    chi = _values(chi)
    _need(chi, 6, "remaining_q2_inequality")
    n = chi.n if n is None else n
    r = chi.r if r is None else r
    v0, v1, v2, v3, v5 = (chi.value(i) for i in (0, 1, 2, 3, 5))
    if v0 == 0 or v1 == 0:
        raise ValueError("chi_0 and chi_1 must be nonzero")
    params = {"r": r, "n": n}
    gap = Fraction(v2, v0) - Fraction((n - r) * v1, 2 * v0) - Fraction(9 * v3, v1) - 3
    x1 = Fraction(18 * v5, v1)
    x2 = Fraction(9 * v3 * v1, 2 * v0 * v0)

    def ceil_root(x: Fraction) -> int:
        return isqrt_ceil(-(-x.numerator // x.denominator))

    coarse = ceil_root(x1) + ceil_root(x2)
    if gap > coarse:
        return IneqVerdict(
            "remaining-q2", params, Outcome.HOLDS, conservative=True,
            witness={"gap": gap, "sqrt_upper_sum": Fraction(coarse), "margin": gap - coarse},
        )
    lo1, hi1 = sqrt_bracket(x1, SQRT_ROUNDS)
    lo2, hi2 = sqrt_bracket(x2, SQRT_ROUNDS)
    if gap > hi1 + hi2:
        outcome = Outcome.HOLDS
    elif gap <= lo1 + lo2:
        outcome = Outcome.FAILS
    else:
        outcome = Outcome.INCONCLUSIVE
    return IneqVerdict(
        "remaining-q2", params, outcome, conservative=True,
        witness={"gap": gap, "sqrt_lower_sum": lo1 + lo2, "sqrt_upper_sum": hi1 + hi2},
    )


def s_lower_bound_check(chi: Union[ChiSequence, Sequence[int]], r: Optional[int] = None) -> IneqVerdict:
    """``2 chi_s < chi_0 (chi_0 - 1)`` for every ``0 <= s <= r - 2``.

    Only meaningful for ``n >= 3r^2 + 100``; below that the verdict is
    ``hypothesis_not_met``.
    """
    chi = _values(chi)
    r = chi.r if r is None else r
    params = {"r": r, "n": chi.n}
    if chi.n < 3 * r * r + 100:
        return IneqVerdict("s-lower", params, Outcome.HYPOTHESIS_NOT_MET)
    v0 = chi.value(0)
    rhs = v0 * (v0 - 1)
    worst = min(rhs - 2 * chi.value(s) for s in range(max(r - 1, 1)))
    return IneqVerdict("s-lower", params, _decide(worst > 0), witness={"min_margin": Fraction(worst)})


def large_s_check(chi: Union[ChiSequence, Sequence[int]], s: int) -> IneqVerdict:
    """``chi_{3s-2} < chi_{s-1} (chi_{s-1} - 1) / 4``; out-of-range entries count as 0."""
    if s < 1:
        raise ValueError("s must be at least 1")
    chi = _values(chi)
    a = chi.value(s - 1)
    margin = a * (a - 1) - 4 * chi.value(3 * s - 2)
    params = dict(_base_params(chi), s=s)
    return IneqVerdict("large-s", params, _decide(margin > 0), witness={"margin": Fraction(margin)})


def m0_bound_arithmetic(r: int, n: int) -> IneqVerdict:
    """``2^(n-r+2) - (n-r+3) > 14^((n-r+3)/4)``, as ``(2^(n-r+2) - (n-r+3))^4 > 14^(n-r+3)``.

    The hypothesis is ``n >= r + 21``.
    """
    params = {"r": r, "n": n}
    if n < r + 21:
        return IneqVerdict("m0-bound", params, Outcome.HYPOTHESIS_NOT_MET)
    e = n - r + 3
    base = 2 ** (n - r + 2) - e
    witness = {"base": Fraction(base)}
    if e % 4 == 0:
        witness["rhs_root"] = Fraction(14 ** (e // 4))
    return IneqVerdict("m0-bound", params, _decide(base**4 > 14**e), witness=witness)


def run_checks(
    chi: ChiSequence,
    only: Optional[Iterable[str]] = None,
    s_values: Sequence[int] = LARGE_S_VALUES,
    profile_id: str = "",
) -> List[IneqVerdict]:
    """Every applicable check on one chi sequence, in a fixed order."""
    wanted = set(CHECK_NAMES if only is None else only)
    unknown = wanted - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    r, n = chi.r, chi.n
    out: List[IneqVerdict] = []

    def short(name: str, count: int) -> Optional[IneqVerdict]:
        if len(chi) < count:
            return IneqVerdict(name, {"r": r, "n": n}, Outcome.HYPOTHESIS_NOT_MET)
        return None

    if "ratio-gt-16" in wanted:
        out.append(short("ratio-gt-16", 2) or ratio_gt_16(chi))
    if "q2" in wanted:
        out.append(short("q2", 3) or q2_inequality(chi))
    if "large-s" in wanted:
        out.extend(large_s_check(chi, s) for s in s_values)
    if "s-lower" in wanted:
        out.append(s_lower_bound_check(chi, r))
    if "remaining-q2" in wanted:
        out.append(short("remaining-q2", 6) or remaining_q2_inequality(chi, n, r))
    if "m0-bound" in wanted:
        out.append(m0_bound_arithmetic(r, n))
    if profile_id:
        out = [
            IneqVerdict(v.name, dict(v.params, profile_id=profile_id), v.outcome, v.conservative, v.witness)
            for v in out
        ]
    return out


def mixed_log_concavity_flags(profile: IntersectionProfile) -> List[str]:
    """Pairs of classes whose sequence ``H_i^a H_j^(n-a)`` is not log-concave.

    The inequalities are only argued for profiles where these sequences are
    log-concave; this reports violations and leaves the caller to decide.
    """
    flags = []
    r, n = profile.r, profile.n
    for i in range(r):
        for j in range(i + 1, r):
            seq = []
            for a in range(n + 1):
                eps = [0] * r
                eps[i], eps[j] = a, n - a
                seq.append(profile[eps])
            bad = [a for a in range(1, n) if seq[a] * seq[a] < seq[a - 1] * seq[a + 1]]
            if bad:
                flags.append(f"classes {i + 1},{j + 1}: not log-concave at a={bad[0]}")
    return flags


def self_intersection(r: int, n: int) -> ChiSequence:
    """Default profile generator: all hypersurfaces in the class ``H`` with ``H^n / n! = 1``."""
    return chi_same_class(DegreeProfile(r, n, (1,) * r, 1))


def threshold_quadratic(r: int) -> int:
    return 10 * r * r + 1000


def threshold_quartic(r: int) -> int:
    return 10 * r**4 + 1000


ProfileGenerator = Callable[[int, int], ChiSequence]
NList = Union[Iterable[int], Callable[[int], Union[int, Iterable[int]]]]


def _grid_point(
    r: int, n: int, generator: ProfileGenerator, only, s_values, profile_id: str
) -> List[IneqVerdict]:
    chi = generator(r, n)
    return run_checks(chi, only=only, s_values=s_values, profile_id=profile_id)


def iter_sweep(
    r_range: Iterable[int],
    n_list: NList,
    profile_generator: ProfileGenerator = self_intersection,
    only: Optional[Iterable[str]] = None,
    s_values: Sequence[int] = LARGE_S_VALUES,
    workers: int = 1,
    profile_id: Optional[str] = None,
) -> Iterator[List[IneqVerdict]]:
    """Verdicts per ``(r, n)`` grid point, yielded in grid order.

    ``n_list`` is either a fixed iterable or a function of ``r`` returning an
    iterable or a single ``n``.  Grid points
    with ``n < r`` are skipped.  Output does not depend on ``workers``.
    """
    only = tuple(only) if only is not None else None
    if profile_id is None:
        profile_id = "self-intersection" if profile_generator is self_intersection else getattr(
            profile_generator, "__name__", "custom"
        )
    points = []
    for r in r_range:
        ns = n_list(r) if callable(n_list) else n_list
        if isinstance(ns, int):
            ns = (ns,)
        points.extend((r, n) for n in ns if n >= r)
    args = [(r, n, profile_generator, only, tuple(s_values), profile_id) for r, n in points]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            try:
                yield from pool.map(_grid_point, *zip(*args))
            except BaseException:
                pool.shutdown(wait=False, cancel_futures=True)
                raise
    else:
        for a in args:
            yield _grid_point(*a)


def sweep(
    r_range: Iterable[int],
    n_list: NList,
    profile_generator: ProfileGenerator = self_intersection,
    only: Optional[Iterable[str]] = None,
    s_values: Sequence[int] = LARGE_S_VALUES,
    workers: int = 1,
    profile_id: Optional[str] = None,
) -> List[IneqVerdict]:
    """All checks over the ``(r, n)`` grid, flattened in grid order."""
    chunks = iter_sweep(r_range, n_list, profile_generator, only, s_values, workers, profile_id)
    return [v for chunk in chunks for v in chunk]


def cross_check_self_intersection(r: int, n: int, prefix: int = 14) -> bool:
    """Compare verdicts on the lifted E_r row against the exponent-vector-sum route.

    Rows with ``n <= 60`` are recomputed in full by the sum route.  Longer rows
    only have their first ``prefix`` entries recomputed (the checks read
    indices below 14); the row is then reassembled by symmetry and must give
    identical verdicts.
    """
    fast = generalized_eulerian_row(r, n)
    if n <= 60:
        slow = generalized_eulerian_row_via_sum(r, n)
    else:
        head = generalized_eulerian_row_via_sum(r, n, kmax=prefix - 1)
        if tuple(head) != fast[: len(head)]:
            return False
        body = list(fast)
        body[: len(head)] = head
        body[len(body) - len(head) :] = head[::-1]
        slow = tuple(body)
    if tuple(slow) != fast:
        return False
    a = run_checks(ChiSequence(n, r, fast))
    b = run_checks(ChiSequence(n, r, slow))
    return [v.to_json() for v in a] == [v.to_json() for v in b]


def ratio_monotonicity(r: int = 2, ns: Sequence[int] = tuple(range(100, 1101, 100))) -> List[IneqVerdict]:
    """``ratio_gt_16`` along ``ns``; once it holds it must keep holding."""
    return [ratio_gt_16(self_intersection(r, n)) for n in ns]


def report_json(verdicts: Sequence[IneqVerdict]) -> str:
    return json.dumps([v.to_json() for v in verdicts], indent=2, sort_keys=True)


CSV_COLUMNS = ("name", "r", "n", "profile_id", "holds", "conservative", "outcome", "s")


def report_csv(verdicts: Sequence[IneqVerdict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for v in verdicts:
        p: Mapping = v.params
        writer.writerow([
            v.name, p.get("r", ""), p.get("n", ""), p.get("profile_id", ""),
            str(v.holds).lower(), str(v.conservative).lower(), v.outcome.value, p.get("s", ""),
        ])
    return buf.getvalue()

"""Check the large-n inequalities exactly at their threshold dimension."""
from __future__ import annotations

from eulerchi import appendix

for r in (2, 3):
    n = appendix.threshold_quadratic(r)
    seq = appendix.self_intersection(r, n)
    print(f"r={r}, n={n}")
    for v in (appendix.ratio_gt_16(seq), appendix.q2_inequality(seq),
              appendix.s_lower_bound_check(seq, r), appendix.remaining_q2_inequality(seq, n, r)):
        print(f"  {v.name}: {v.outcome.value}")

v = appendix.m0_bound_arithmetic(2, 23)
print("\nm0 bound at r=2, n=23:", v.outcome.value, {k: str(x) for k, x in v.witness.items()})

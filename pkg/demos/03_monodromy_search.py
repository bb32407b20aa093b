"""Plant a solution of the monodromy system and recover it by search.

Also runs the search on a genuine chi sequence, where nothing turns up
within the chosen bounds.
"""
from __future__ import annotations

from eulerchi import chi, monodromy

m_H = monodromy.IndexFunction.parse("0:1,1:1,2:1,3:1")
system = monodromy.plant_instance(m_H, 2)
print("planted target:", system.target)
report = monodromy.search(system, monodromy.SearchBounds(max_total_m=8, max_support_width=6))
for found in report.solutions:
    print("  found:", found.to_json())

seq = chi.chi_same_class(chi.DegreeProfile(2, 4, (1, 1), 1))
system = monodromy.SystemInstance.from_chi(seq)
report = monodromy.search(system, monodromy.SearchBounds(max_total_m=12, max_support_width=8))
print(f"\ntarget {seq.values}: {len(report.solutions)} solution(s), exhausted={report.exhausted}")

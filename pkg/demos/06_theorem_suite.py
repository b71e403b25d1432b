"""
Running the theorem suite
=========================

Each structural result about fuzzy derivatives (linearity, uniqueness,
Frechet => Gateaux, the chain rule, agreement with the scalar derivative)
is turned into a battery of concrete instances plus negative controls,
i.e. deliberately wrong candidates that must fail.
"""

from ifnderiv import THEOREM_IDS, CheckParams, run_all, run_theorem
from ifnderiv.theorems import uniqueness_bound

params = CheckParams()

for tid in THEOREM_IDS:
    rep = run_theorem(tid, params)
    n = len(rep.cases)
    controls = sum(not c.expected for c in rep.cases)
    print(f"{tid:28s} {'pass' if rep.passed else 'FAIL'}   {n:3d} cases ({controls} negative controls)")

# one case in detail
rep = run_theorem("chain_rule", params)
c = rep.cases[0]
print(f"\nfirst chain-rule case: {c.case_id}\n  expected={c.expected} observed={c.observed}\n  {c.detail}")

# Uniqueness is only "up to alpha" on a finite grid: two candidates that both
# pass can differ by a small amount.  The Frechet bound does not shrink with
# t because t cancels out of the scaled remainder.
print(f"\nGateaux candidates agree within {uniqueness_bound('gateaux', params):.3e}")
print(f"Frechet candidates agree within {uniqueness_bound('frechet', params):.3e}")

# everything at once, including the space and algebra axiom batteries
full = run_all(params)
print("\nrun_all:", "pass" if full.passed else "FAIL", "-", sum(full.counts()[k]["cases"] for k in full.counts()),
      "cases")
for note in full.notes:
    print("  note:", note)

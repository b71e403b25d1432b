"""
Intuitionistic fuzzy normed spaces on R^n
=========================================

The standard construction turns any classical norm into a membership pair

    mu(x, t) = t / (t + ||x||),    nu(x, t) = ||x|| / (t + ||x||)

so mu reads "x is within t of zero" and nu is its complement.  Here we
evaluate it, watch it saturate as t grows, and run the axiom battery.
"""

import numpy as np

from ifnderiv import CheckParams, check_ifn_axioms, membership, standard_space
from ifnderiv.tnorms import PRODUCT, PROBABILISTIC_SUM

E2 = standard_space(2)
x = np.array([3.0, 4.0])          # ||x||_2 = 5
for t in (0.1, 1.0, 5.0, 50.0, 5000.0):
    m = membership(E2, x, t)
    print(f"t={t:8.1f}   mu={m.mu:.6f}   nu={m.nu:.6f}   mu+nu={m.mu + m.nu:.3f}")

# vectorized evaluation: many vectors, many times at once
X = np.random.default_rng(0).normal(size=(4, 2))
mu, nu = E2.pairs(X, np.array([0.5, 0.5, 2.0, 2.0]))
print("\nbatch mu:", np.round(mu, 4))

# other classical norms
for kind, w in [("max", None), ("weighted", [1.0, 9.0])]:
    S = standard_space(2, kind, w)
    print(f"{S.label:36s} mu(x, 1) = {membership(S, x, 1.0).mu:.6f}")

# the axiom battery (sampled; four entries are limit heuristics)
params = CheckParams(sample_count=1000)
rep = check_ifn_axioms(standard_space(3), params)
print(f"\n{rep.space}: passed={rep.passed}")
for e in rep.entries:
    tag = " (heuristic)" if e.heuristic else ""
    print(f"  {e.axiom:9s} {'ok' if e.passed else 'FAIL'}{tag}")

# Swapping in product / probabilistic sum keeps most axioms but not the
# idempotency-type entry (xii), which needs min/max.
rep = check_ifn_axioms(standard_space(3, tnorm=PRODUCT, tconorm=PROBABILISTIC_SUM), params)
bad = [e for e in rep.entries if not e.passed]
print("\nproduct pair, failing entries:", [e.axiom for e in bad])
print("  witness:", bad[0].witness if bad else None)

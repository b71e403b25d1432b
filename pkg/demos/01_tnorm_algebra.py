"""
The t-norm / t-conorm algebra
=============================

The memberships of an intuitionistic fuzzy norm are combined with a
continuous t-norm (for mu) and a continuous t-conorm (for nu).  This walk
evaluates the three standard pairs, runs the sampled axiom checks and shows
what a failing witness looks like.
"""

import numpy as np

from ifnderiv import (LUKASIEWICZ, MINIMUM, PRODUCT, MAXIMUM, PROBABILISTIC_SUM, BOUNDED_SUM,
                      CheckParams, TNorm, check_tconorm_axioms, check_tnorm_axioms)

params = CheckParams(sample_count=2000)

# evaluate each pair on the same arguments
a, b = 0.7, 0.4
for t, s in [(MINIMUM, MAXIMUM), (PRODUCT, PROBABILISTIC_SUM), (LUKASIEWICZ, BOUNDED_SUM)]:
    print(f"{t.label:12s} T({a},{b}) = {t(a, b):.4f}    {s.label:16s} S({a},{b}) = {s(a, b):.4f}")

# `apply` is the vectorized form (inputs assumed already in [0, 1])
grid = np.linspace(0, 1, 5)
print("product on a grid:", PRODUCT.apply(grid, grid[::-1]))

# the sampled axiom checks; only minimum/maximum are idempotent
print()
for op in (MINIMUM, PRODUCT, LUKASIEWICZ):
    rep = check_tnorm_axioms(op, params)
    print(f"{op.label:12s} passed={rep.passed}  idempotent={rep.idempotent}")
for op in (MAXIMUM, PROBABILISTIC_SUM, BOUNDED_SUM):
    rep = check_tconorm_axioms(op, params)
    print(f"{op.label:16s} passed={rep.passed}  idempotent={rep.idempotent}")

# a binary operation that is not a t-norm: a * b^2 is not commutative
bogus = TNorm.custom(lambda x, y: x * y * y, name="a*b^2")
rep = check_tnorm_axioms(bogus, params)
print()
print("custom a*b^2 passed:", rep.passed)
for r in rep.results:
    if not r.passed:
        print(f"  {r.axiom:14s} first witness: {r.witness}")

# Note the "continuous" entry: it is a sampled modulus heuristic sized for
# operators with Lipschitz constant <= 2 (all built-ins).  a*b^2 is continuous
# but has modulus ~3 near (1, 1), so the heuristic flags it.  Heuristic
# entries are evidence, never proofs -- loosen continuity_bound to taste:
loose = params.replace(continuity_bound=5e-6)
print("with continuity_bound=5e-6:",
      check_tnorm_axioms(bogus, loose).result("continuous").passed)

"""
Limits as certificates
======================

A limit cannot be decided by sampling, so every limit in this package is a
*certificate* on a geometric step schedule h_k = h0 * rho^k: along the
schedule, mu of the residual must end above 1 - alpha and nu below alpha
for every t on the grid, with a non-degrading tail.  This demo makes the
schedule visible and then certifies a few sequences and maps.
"""

import numpy as np

from ifnderiv import CheckParams, check_continuity, check_convergence, limit_check, standard_space
from ifnderiv.battery import SEQUENCES

params = CheckParams()
print("schedule  :", params.schedule)
print("t grid    :", params.t_grid, "  alpha:", params.alpha, "  tail window:", params.tail_window)

# the raw primitive: a residual r(h) -> 0 as h -> 0
R1 = standard_space(1)
prof = limit_check(lambda h: h ** 2, R1, params, label="h^2")
print("\nh^2 certificate passed:", prof.passed)
print("   k      h_k        mu(t=0.1)   nu(t=0.1)")
for k in (0, 5, 10, 20, 29):
    print(f"  {k:2d}  {prof.steps[k]:.3e}   {prof.mu[k, 0]:.8f}  {prof.nu[k, 0]:.2e}")

# a residual that stalls at 0.01 never gets mu within alpha of 1 at t = 0.1
prof = limit_check(lambda h: 0.01 + h, R1, params, label="stalls")
print("\nstalling residual passed:", prof.passed)
print("  first failure:", prof.failures[0])

# sequences: n runs over an index horizon n_k = ceil(1/h_k), plus a block of
# consecutive indices at the end (so parity tricks cannot slip through)
print()
for name in ("inv_n", "geometric_half", "alternating"):
    fn, limit, desc = SEQUENCES[name]
    rep = check_convergence(R1, fn, [1.0 if limit is None else limit], params)
    print(f"{desc:28s} -> {1.0 if limit is None else limit}: {'pass' if rep.passed else 'fail'}")

# continuity of a map R^2 -> R^2 versus a jump
E2 = standard_space(2)
smooth = lambda x: np.array([np.sin(x[0]) + x[1] ** 2, x[0] * x[1]])
rep = check_continuity(smooth, [0.3, -1.0], (E2, E2), params)
print(f"\nsmooth map continuous at (0.3, -1): {rep.passed}  ({len(rep.profiles)} directions)")
jump = lambda x: 1.0 if x[0] >= 0 else 0.0
rep = check_continuity(jump, [0.0], (R1, R1), params)
print("step function continuous at 0    :", rep.passed)
w = rep.to_dict()["worst"]
print(f"  worst direction {w['profile']}: mu={w['mu']:.4f} at t={w['t']} ({len(w['reasons'])} reasons)")

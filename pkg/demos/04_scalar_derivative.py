"""
The fuzzy derivative of a real function
=======================================

f is fuzzy differentiable at x0 with derivative c when the difference
quotient residual (f(x) - f(x0))/(x - x0) - c tends to 0 in the fuzzy
norm sense.  With the standard norm on R this reduces to the classical
derivative -- which we confirm, and then look at where it breaks.
"""

import math

from ifnderiv import CheckParams, estimate_nth_derivative, estimate_scalar_derivative, verify_scalar_derivative
from ifnderiv.battery import scalar

params = CheckParams()
square = scalar("square")

# the right candidate passes, a slightly wrong one does not
for c in (2.0, 2.05):
    rep = verify_scalar_derivative(square, 1.0, c, params=params)
    print(f"d/dx x^2 at 1, candidate {c}: {'pass' if rep.passed else 'fail'}")

# where does the wrong candidate get stuck?  mu plateaus at t/(t + 0.05)
rep = verify_scalar_derivative(square, 1.0, 2.05, params=params)
print("  final mu per t:", [round(float(m), 4) for m in rep.profiles[0].mu[-1]])

# no candidate in hand: estimate one, then verify it
print()
for name, x0 in [("sin", 0.7), ("exp", -1.0), ("cube", 2.0)]:
    c, rep = estimate_scalar_derivative(scalar(name), x0, params)
    print(f"{name}'({x0}) ~ {c:.12f}   certified: {rep.passed}")
print(f"classical cos(0.7) = {math.cos(0.7):.12f}")

# |x| at 0: the quotients are +1 on the right and -1 on the left, so no
# candidate can pass -- the symmetric estimate 0 fails on both sides
c, rep = estimate_scalar_derivative(scalar("abs"), 0.0, params)
print(f"\n|x| at 0: estimate {c}, certified {rep.passed}")
for p in rep.profiles:
    print(f"  side {p.label}: passed={p.passed}")
for c in (-1.0, 1.0):
    print(f"  candidate {c:+}: {verify_scalar_derivative(scalar('abs'), 0.0, c, params=params).passed}")

# higher derivatives by iterated Richardson estimates
print("\nsecond derivative of sin at 0.7 ~", round(estimate_nth_derivative(scalar("sin"), 0.7, 2, params), 8),
      " (exact", round(-math.sin(0.7), 8), ")")

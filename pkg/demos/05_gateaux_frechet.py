"""
Gateaux and Frechet derivatives of maps R^n -> R^m
==================================================

A Gateaux candidate G must make (T(x0 + s d) - T(x0))/s - G d vanish for
every direction d; a Frechet candidate F must make the remainder
T(x0 + h) - T(x0) - F h small *relative to* h, uniformly in how h -> 0.
We check both for a quadratic map, then for a map that has every
directional derivative yet no Frechet derivative.
"""

import numpy as np

from ifnderiv import CheckParams, OperatorFunction, standard_space, verify_frechet, verify_gateaux
from ifnderiv.battery import operator

params = CheckParams()
E2 = standard_space(2)
T = operator("poly2map", 2)                   # (x^2, x y)
x0 = np.array([1.0, 2.0])
J = T.jacobian(x0)
print("T = poly2map, analytic Jacobian at (1, 2):\n", J)

print("\nGateaux, exact Jacobian :", verify_gateaux(T, x0, J, (E2, E2), params).passed)
print("Frechet, exact Jacobian :", verify_frechet(T, x0, J, (E2, E2), params).passed)

wrong = J + np.array([[0.0, 0.0], [0.01, 0.0]])
rep = verify_gateaux(T, x0, wrong, (E2, E2), params)
print("Gateaux, perturbed by 0.01:", rep.passed, f"({len(rep.witnesses)} failing directions)")

# extra user-chosen directions / approach points are added to the sampled ones
rep = verify_frechet(T, x0, J, (E2, E2), params, directions=[[1.0, -1.0]], points=[[1.5, 2.5]])
print("Frechet with extra direction and point:", rep.passed, f"({len(rep.profiles)} paths)")


# f(x, y) = x^3 y / (x^6 + y^2), f(0) = 0: directional derivatives at 0 all
# vanish, so Gateaux passes with G = 0.  Along a parabola y = a x^2 the
# scaled remainder tends to 1/a instead of 0, so Frechet must fail -- the
# curved probe paths are what catch it.
def _f(v):
    x, y = v
    d = x ** 6 + y ** 2
    return np.array([0.0 if d == 0 else x ** 3 * y / d])


F = OperatorFunction("x^3y/(x^6+y^2)", 2, 1, _f)
E1 = standard_space(1)
Z = np.zeros((1, 2))
print("\nx^3y/(x^6+y^2) at 0, zero candidate:")
print("  Gateaux:", verify_gateaux(F, [0.0, 0.0], Z, (E2, E1), params).passed)
rep = verify_frechet(F, [0.0, 0.0], Z, (E2, E1), params)
print("  Frechet:", rep.passed)
w = rep.to_dict()["worst"]
print(f"  worst path {w['profile']}: final mu={w['mu']:.4f} at t={w['t']}")

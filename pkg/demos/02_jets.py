"""Exact derivatives through truncated Taylor arithmetic.

A jet carries all partials up to degree 3 at one point, so composing
elementary functions gives derivatives without finite differences.
"""

import math

from trapgauss import jets
from trapgauss.jets import Jet

u = Jet.variable(0.25, 0.25, "u")
v = Jet.variable(0.25, 0.25, "v")

phi = jets.exp(1 / (u + v))  # Example-1 style height function, s = u + v = 0.5
print("phi       =", phi.value, "(e^2 =", math.e**2, ")")
print("phi_u     =", phi.deriv(1, 0), "(-4 e^2 =", -4 * math.e**2, ")")
print("phi_uv    =", phi.deriv(1, 1))
print("phi_uuv   =", phi.deriv(2, 1))

# partial() lowers the degree by one
phi_u = jets.partial(phi, "u")
print("degree of phi_u jet:", phi_u.degree)

# compare with a central difference
h = 1e-5
f = lambda a, b: math.exp(1 / (a + b))
print("central difference phi_u:", (f(0.25 + h, 0.25) - f(0.25 - h, 0.25)) / (2 * h))

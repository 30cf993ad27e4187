"""Graph surfaces (phi, u, v, phi): closed forms, predicted (f, C), null 2-type split."""

import math

import numpy as np

from trapgauss import jets
from trapgauss.catalog import UNIT_SQUARE, catalog, graph_closed_forms, null_two_type_split, prop3_predict

for entry in catalog():
    print(f"{entry.name:22s} {entry.spaceform.name:10s} {entry.description}")

cf = graph_closed_forms("sin(pi*u)*sin(pi*v)", 0.25, 0.25)
print("H at (1/4, 1/4):", cf.H, " expected", -math.pi**2 / 2)


def F(t):
    # Delta psi = F(psi) for psi = exp(1/(u+v))
    L = jets.log(t)
    return -2 * t * L**4 - 4 * t * L**3


grid = [(0.2, 0.3), (0.1, 0.15)]
pred = prop3_predict(F, "exp(1/(u+v))", grid=grid)
print("predicted f at s = 0.5:", pred.f(0.25, 0.25))
print("predicted C:", pred.C)

lam = 2 * math.pi**2
split = null_two_type_split("sin(pi*u)*sin(pi*v)", lam, grid=UNIT_SQUARE.grid(4, 4))
print("null 2-type residuals |Delta x0|, |Delta x1 - lam x1|:", split.residuals)
print("x0 + x1 at (0.3, 0.6):", split.x0.position(0.3, 0.6) + split.x1.position(0.3, 0.6))

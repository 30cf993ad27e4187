"""Placing sampled Gauss maps in the pointwise 1-type taxonomy."""

import numpy as np

from trapgauss.catalog import get_entry
from trapgauss.classify import classify, sample_gauss_map

for name in ("harmonic-gauss", "exp-example", "square-eigenfunction", "desitter-product"):
    entry = get_entry(name)
    grid = entry.immersion.domain.grid(8, 8)
    tax = classify(sample_gauss_map(entry.immersion, grid, entry.spaceform))
    print(f"{name:22s} {tax}")
    if tax.C is not None:
        print(" " * 23, "C =", np.round(tax.C, 12).tolist())

# exp(1/(u+v)) graph: the fitted f follows -12/s^2 - 12/s^3 - 2/s^4 with s = u + v
entry = get_entry("exp-example")
grid = entry.immersion.domain.grid(5, 5)
tax = classify(sample_gauss_map(entry.immersion, grid))
for (u, v), f in list(zip(grid, tax.fit.f))[:5]:
    s = u + v
    print(f"s = {s:.3f}  fitted f = {f:.6f}  formula = {-12 / s**2 - 12 / s**3 - 2 / s**4:.6f}")

"""Vectors and bivectors in Minkowski space E^4_1.

Run: python3 demos/01_minkowski_algebra.py
"""

import numpy as np

from trapgauss.algebra import Signature

E41 = Signature(4, 1)  # one time-like axis, listed first
print("metric weights:", E41.weights)
print("Pluecker slots:", E41.pairs)

# causal character of a few vectors
for v in ([1, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]):
    print(f"{v} -> {E41.causal_class(np.array(v, dtype=float)).value}")

# the wedge of two space-like axes is a unit space-like bivector
e1, e2 = E41.basis(1), E41.basis(2)
nu = E41.wedge(e1, e2)
print("e1^e2 =", nu, " <e1^e2, e1^e2> =", E41.bivector_inner(nu, nu))

# half of the six coordinate bivectors are time-like
print("index of the bivector space:", E41.bivector_index)

# Gram-Schmidt respects the indefinite metric
frame, signs = E41.orthonormalize([np.array([2.0, 1.0, 0, 0]), np.array([0, 1.0, 1.0, 0])])
print("frame:", np.round(frame, 6).tolist(), "signs:", signs)

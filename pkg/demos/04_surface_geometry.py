"""Point geometry and the two routes to the Laplacian of the Gauss map."""

import numpy as np

from trapgauss.catalog import get_entry
from trapgauss.geometry import point_geometry

for name in ("exp-example", "desitter-product"):
    entry = get_entry(name)
    u, v = entry.immersion.domain.random_points(1, np.random.default_rng(0))[0]
    pg = point_geometry(entry.immersion, u, v, entry.spaceform)
    print(f"--- {name} at ({u:.3f}, {v:.3f}) in {entry.spaceform.name}")
    print("H         =", np.round(pg.H, 6), "->", pg.Hclass.value)
    print("K, K_int  =", pg.K, pg.K_intrinsic)
    print("KD        =", pg.KD)
    d, s = pg.laplacian_nu_direct, pg.laplacian_nu_structural
    print("direct     dnu =", np.round(d, 6))
    print("structural dnu =", np.round(s, 6))
    print("relative gap   =", np.linalg.norm(d - s) / (1 + np.linalg.norm(d)))
    print("|h^|^2 vs 4 delta - 2K:", pg.hat_h_norm2, 4 * entry.spaceform.delta - 2 * pg.K)

# rotating the tangent frame or boosting the normal frame changes nothing invariant
entry = get_entry("user-graph")
a = point_geometry(entry.immersion, 0.3, -0.2)
b = point_geometry(entry.immersion, 0.3, -0.2, tangent_angle=0.8, normal_rapidity=0.5)
print("gauge change in dnu:", np.abs(a.laplacian_nu_structural - b.laplacian_nu_structural).max())

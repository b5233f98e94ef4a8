"""
Products of curves
==================

For ``X = C1 x C2`` the cup product on H^1 is explicit: the only nonzero
products are ``alpha_a ^ beta_b = psi_(a,b)``.  This walks through the local
model for ``g1 = g2 = 2`` and then tabulates the degree for a range of genera.
"""
from canonhilb import (
    build_complex,
    build_pencil,
    cohomology_dims,
    evaluate_pencil,
    find_smooth_witness,
    generic_cohomology_dims,
    localization_support,
    poincare_degree,
    product_of_curves,
)

spec = product_of_curves(2, 2)
print(f"{spec.label}: q={spec.q}, p_g={spec.p}, chi={spec.chi}")
for (i, j, k), v in spec.tensor.entries.items():
    print(f"  a({i},{j},{k}) = {v}")

###############################################################################
# The deformation complex 0 -> O -> O^4 -> O^4 -> 0 at the point t = (1,1,1,1):
# wedging with alpha_1 + alpha_2 + beta_1 + beta_2 kills only that class.
cx = build_complex(spec.tensor)
print("h at (1,1,1,1):", cohomology_dims(cx, (1, 1, 1, 1)))
print("generic h:", generic_cohomology_dims(cx).dims)

###############################################################################
# The skew pencil B(z) is [[0, M], [-M^T, 0]] with M the 2x2 matrix of z.
pencil = build_pencil(spec.tensor)
for row in evaluate_pencil(pencil, (1, 2, 3, 4)):
    print("  ", [int(x) for x in row])
w = find_smooth_witness(pencil)
print(f"generic rank {w.rank}, fiber dim {w.fiber_dim}, dim M = {w.dim_M}")

###############################################################################
# Degree (-1)^chi, supported at one canonical divisor.
print(poincare_degree(spec).degree, localization_support(spec))

###############################################################################
# A table over genera 2..5.
print(f"{'g1':>3} {'g2':>3} {'chi':>4} {'rank':>5} {'dim M':>6} {'deg':>4}")
for g1 in range(2, 6):
    for g2 in range(2, 6):
        r = poincare_degree(product_of_curves(g1, g2))
        print(f"{g1:>3} {g2:>3} {r.chi:>4} {r.witness.rank:>5} {r.dim_M:>6} {r.degree:>+4}")

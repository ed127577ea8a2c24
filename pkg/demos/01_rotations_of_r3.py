"""so(3) acting on R^3 by rotations, with the volume form as 2-plectic structure.

Every obstruction class vanishes, so the solver produces a homotopy co-moment
map. We print its components and check the L-infinity morphism equations.
"""

from comoment.catalogue import so3_r3_volume
from comoment.moment import build_g, decompose_obstruction, solve_comoment, verify_morphism

P = so3_r3_volume()
g = build_g(P.action, P.omega)
rep = decompose_obstruction(g, point=(0, 0, 0))
print("nonzero obstruction classes:", rep.nonzero() or "none")
print("point class at the origin:", [str(c) for c in rep.point_class.coordinates])

F = solve_comoment(P.action, P.omega)
for i in range(P.algebra.dim):
    pair = F.f1(i)
    print(f"f1(e{i + 1}): v = {pair.v}")
    print(f"         alpha = {pair.alpha}")
print("f2 =", F.f(2))

check = verify_morphism(F)
print("morphism equations hold:", check.ok)

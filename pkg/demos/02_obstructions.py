"""Three actions that have no co-moment map, and where the obstruction sits.

translations of the plane: the class h_2, the usual symplectic cocycle
translations of R^3: the class h_3
so(3) on itself with the Cartan 3-form: h_3 again, now on a compact model
"""

from comoment.catalogue import CATALOGUE
from comoment.moment import build_g, decompose_obstruction, solve_comoment

for name in ("translations_r2", "translations_r3", "cartan_so3", "heisenberg_invariant"):
    P = CATALOGUE[name]()
    rep = decompose_obstruction(build_g(P.action, P.omega))
    res = solve_comoment(P.action, P.omega)
    print(f"{name:22s} n={P.n}  nonzero classes {rep.nonzero()}  solver exists={res.exists}")
    for e in rep.entries:
        if not e.zero:
            print(f"    h_{e.k}: H^{e.k}(g) dim {e.dim_ce}, de Rham dim {e.dim_dr}, matrix {[[str(c) for c in row] for row in e.matrix]}")

"""Two constructive shortcuts.

1. An invariant potential eta with d(eta) = omega gives a co-moment map in
   closed form; it agrees with the solver's output up to a D-cocycle.
2. For an abelian pair of commuting rotation and translation on R^3 the
   multi-moment map on P_g is computed and checked.
"""

from comoment.applications import exact_comoment, multimoment_construct, multimoment_verify
from comoment.catalogue import rotation_translation_r3, so3_invariant_eta
from comoment.moment import gauge_check, solve_comoment, verify_morphism

P = so3_invariant_eta()
F = exact_comoment(P.action, P.eta, P.omega)
G = solve_comoment(P.action, P.omega)
print("exact co-moment verifies:", verify_morphism(F).ok)
print("same as solver up to gauge:", gauge_check(F, G).ok)

Q = rotation_translation_r3()
vbar = multimoment_construct(Q.action, Q.omega)
print("P_g basis:", [{I: str(c) for I, c in b.items()} for b in vbar.basis])
print("vbar(e1 ^ e2) =", vbar({(0, 1): 1}))
print("conditions (i), (ii) hold:", multimoment_verify(vbar).ok)

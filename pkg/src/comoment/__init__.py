"""Exact obstruction theory for homotopy co-moment maps.

The public surface is re-exported here; see the submodules for details:
``foundation`` (rationals, linear algebra, signs), ``liealg`` (Lie algebras
and CE cohomology), ``cartan`` (forms on R^m and invariant models),
``observables`` (the Lie n-algebra of observables), ``moment`` (cocycle g,
solver, obstruction classes), ``applications`` (weak, exact, covariant and
multi-moment maps), ``problem`` (file format) and ``cli``.
"""

from .applications import (
    CovariantObstruction, MultiMomentMap, PotentialError, StaircaseFailure, WeakComoment,
    WeakObstruction, covariant_momentum, covariant_obstruction, exact_comoment,
    iterate_full_comoment, multimoment_construct, multimoment_verify, universal_momentum_report,
    weak_comoment,
)
from .bicomplex import Bigraded, Total, total_differential
from .cartan import (
    AlgForm, AlgVectorField, EuclideanSpace, Form, InvariantModel, PolyForm, PolyVectorField,
    contract, d, de_rham_dims, evaluate_at, find_potential, lie_derivative, nondegeneracy_check, wedge,
)
from .foundation import (
    Echelon, GradedElementView, LinearSolution, RationalMatrix, format_q, index_sets, koszul_sign,
    nullspace, parse_q, perm_sign, solve_linear, unshuffles,
)
from .liealg import (
    LieAlgebra, P_g, abelian, adjoint_on_chains, aff1, betti_numbers, boundary_delta_star,
    cartan_three_cocycle, ce_cohomology, ce_differential, killing_form, so3, validate_lie_algebra,
)
from .moment import (
    ComomentMap, GCocycle, InconclusiveError, InfinitesimalAction, Obstructed, ObstructionReport,
    build_g, comoment_from_potential, decompose_obstruction, gauge_check, point_obstruction,
    potential_from_comoment, solve_comoment, validate_action, verify_morphism,
)
from .observables import (
    BracketTable, Observable, ObservablePair, PairingError, bracket_l1, bracket_l2, bracket_lk,
    linfty_identity_residual, make_observable,
)
from .problem import Problem, load_problem, parse_problem

__version__ = "0.1.0"

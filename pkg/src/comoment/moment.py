"""Actions, the cocycle g, co-moment maps and their obstruction classes.

Conventions.  For a closed (n+1)-form omega and an action zeta of g, the
cocycle g has components

    g_k(X_1..X_k) = -(-1)^{k(k+1)/2} i_{zeta X_k} ... i_{zeta X_1} omega

in Lambda^k g* (x) Omega^{n+1-k}.  A potential p (components p_1..p_n, no
p_0) with D p = g is the same thing as a co-moment map via
f_1(X) = (zeta X, -p_1(X)) and f_k = -p_k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bicomplex import Bigraded, Total, bigraded_from_coordinates, total_differential
from .foundation import Echelon, index_sets
from .liealg import LieAlgebra, ce_cohomology
from .observables import BracketTable, ObservablePair


def _sign_g(k: int) -> int:
    return 1 if (k * (k + 1) // 2) % 2 else -1


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

class InfinitesimalAction:
    """Linear map g -> vector fields, given on the basis of g."""

    def __init__(self, algebra: LieAlgebra, space, images):
        images = tuple(images)
        if len(images) != algebra.dim:
            raise ValueError(f"action needs {algebra.dim} images, got {len(images)}")
        for v in images:
            if v.space != space:
                raise ValueError("action image lives on a different space")
        self.algebra = algebra
        self.space = space
        self.images = images

    def __call__(self, x):
        out = self.space.zero_field()
        for c, v in zip(x, self.images):
            if c:
                out = out + v * c
        return out

    def image(self, i: int):
        return self.images[i]

    def __eq__(self, other):
        return (isinstance(other, InfinitesimalAction) and self.algebra == other.algebra
                and self.space == other.space and self.images == other.images)

    def __hash__(self):
        return hash((self.algebra, self.images))

    def __repr__(self):
        return f"InfinitesimalAction({self.algebra.name or self.algebra.dim}, {list(self.images)!r})"


def zero_action(algebra: LieAlgebra, space) -> InfinitesimalAction:
    return InfinitesimalAction(algebra, space, [space.zero_field() for _ in range(algebra.dim)])


@dataclass
class ActionReport:
    closed: bool
    bracket_residuals: list = field(default_factory=list)  # (i, j, field), 0-based
    lie_residuals: list = field(default_factory=list)  # (i, form)

    @property
    def ok(self) -> bool:
        return self.closed and not self.bracket_residuals and not self.lie_residuals

    def __bool__(self):
        return self.ok

    def describe(self) -> list:
        lines = [] if self.closed else ["omega is not closed"]
        for i, j, r in self.bracket_residuals:
            lines.append(f"[zeta e{i + 1}, zeta e{j + 1}] - zeta[e{i + 1}, e{j + 1}] = {r!r}")
        for i, r in self.lie_residuals:
            lines.append(f"L_(zeta e{i + 1}) omega = {r!r}")
        return lines


def validate_action(action: InfinitesimalAction, omega) -> ActionReport:
    sp = action.space
    L = action.algebra
    report = ActionReport(closed=sp.is_closed(omega))
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            res = sp.bracket(action.images[i], action.images[j]) - action(L.bracket(L.basis_vector(i), L.basis_vector(j)))
            if not res.is_zero():
                report.bracket_residuals.append((i, j, res))
    for i, v in enumerate(action.images):
        res = sp.lie_derivative(v, omega)
        if not res.is_zero():
            report.lie_residuals.append((i, res))
    return report


# ---------------------------------------------------------------------------
# the cocycle g
# ---------------------------------------------------------------------------

def _contract_all(action: InfinitesimalAction, I, omega):
    form = omega
    for i in I:
        form = action.space.contract(action.images[i], form)
    return form


@dataclass
class GCocycle:
    action: InfinitesimalAction
    omega: object
    n: int
    total: Total

    def component(self, k: int) -> Bigraded:
        return self.total.component(k)

    @property
    def degree(self) -> int:
        return self.n + 1


def g_components(action: InfinitesimalAction, omega, n: int) -> list:
    L, sp = action.algebra, action.space
    parts = []
    for k in range(1, min(n + 1, L.dim) + 1):
        s = _sign_g(k)
        comps = {I: _contract_all(action, I, omega) * s for I in index_sets(L.dim, k)}
        parts.append(Bigraded(L, sp, k, n + 1 - k, comps))
    return parts


def build_g(action: InfinitesimalAction, omega, n: int | None = None) -> GCocycle:
    n = omega.degree - 1 if n is None else n
    if omega.degree != n + 1:
        raise ValueError(f"omega has degree {omega.degree}, expected n + 1 = {n + 1}")
    total = Total(action.algebra, action.space, n + 1, g_components(action, omega, n))
    if not total_differential(n, total).is_zero():
        raise ValueError("D g != 0: the action does not preserve omega or is not a homomorphism")
    return GCocycle(action, omega, n, total)


# ---------------------------------------------------------------------------
# co-moment maps and the potential dictionary
# ---------------------------------------------------------------------------

class ComomentMap:
    """A homotopy co-moment map, stored through its potential.

    ``fields`` are the vector parts of f_1 (normally the action images);
    they are kept separately so that maps read from files can be checked.
    """

    def __init__(self, action: InfinitesimalAction, omega, potential: Total, fields=None):
        self.action = action
        self.omega = omega
        self.n = omega.degree - 1
        if potential.degree != self.n:
            raise ValueError(f"potential must have total degree {self.n}")
        if 0 in potential.parts:
            raise ValueError("a potential has no Lambda^0 component")
        self.potential = potential
        self.fields = tuple(fields) if fields is not None else action.images

    exists = True

    def f(self, k: int) -> Bigraded:
        """f_k for k >= 2; for k = 1 the form part pi_Omega f_1."""
        return -self.potential.component(k)

    def f1(self, i: int) -> ObservablePair:
        return ObservablePair(self.fields[i], -self.potential.component(1)[(i,)])

    def form_parts(self) -> dict:
        return {k: self.f(k) for k in range(1, min(self.n, self.action.algebra.dim) + 1)}

    def __eq__(self, other):
        return (isinstance(other, ComomentMap) and self.action == other.action
                and self.omega == other.omega and self.potential == other.potential
                and self.fields == other.fields)

    def __repr__(self):
        return f"ComomentMap(n={self.n}, f={self.form_parts()!r})"


def comoment_from_potential(potential: Total, action: InfinitesimalAction, omega) -> ComomentMap:
    n = omega.degree - 1
    g = build_g(action, omega, n)
    res = total_differential(n, potential) - g.total
    if not res.is_zero():
        raise ValueError(f"D p != g; residual {res!r}")
    return ComomentMap(action, omega, potential)


def potential_from_comoment(F: ComomentMap) -> Total:
    return F.potential


def comoment_from_forms(action: InfinitesimalAction, omega, forms: dict, fields=None) -> ComomentMap:
    """Build from ``{k: Bigraded f_k}``, where ``forms[1]`` is pi_Omega f_1."""
    n = omega.degree - 1
    parts = [-b for b in forms.values()]
    return ComomentMap(action, omega, Total(action.algebra, action.space, n, parts), fields)


@dataclass
class MorphismReport:
    residuals: list = field(default_factory=list)  # (label, bidegree, value)

    @property
    def ok(self) -> bool:
        return not self.residuals

    def __bool__(self):
        return self.ok

    @property
    def first(self):
        return self.residuals[0] if self.residuals else None


def verify_morphism(F: ComomentMap) -> MorphismReport:
    """Check the reduced morphism conditions for ``F``.

    Pairing condition for each f_1(e_i), vector parts equal to the action and
    forming a homomorphism, and for 1 <= k <= n the form identity
    ``delta f_k + d f_{k+1} + f_1^* l_{k+1} = 0`` with ``f_{n+1} = 0``.
    """
    action, omega, n = F.action, F.omega, F.n
    L, sp = action.algebra, action.space
    table = BracketTable(omega)
    report = MorphismReport()
    pairs = [F.f1(i) for i in range(L.dim)]
    for i, pr in enumerate(pairs):
        res = sp.d(pr.alpha) + sp.contract(pr.v, omega)
        if not res.is_zero():
            report.residuals.append((f"pairing e{i + 1}", (1, n - 1), res))
        if pr.v != action.images[i]:
            report.residuals.append((f"vector part e{i + 1}", (1, -1), pr.v - action.images[i]))
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = sp.bracket(F.fields[i], F.fields[j])
            rhs = sp.zero_field()
            for k, c in L.bracket_basis(i, j).items():
                rhs = rhs + F.fields[k] * c
            if lhs != rhs:
                report.residuals.append((f"equivariance e{i + 1},e{j + 1}", (2, -1), lhs - rhs))
    for k in range(1, n + 1):
        if k + 1 > L.dim:
            break
        fk = F.f(k)
        lhs = fk.delta()
        if k + 1 <= n:
            lhs = lhs + F.f(k + 1).d()
        comps = {}
        for I in index_sets(L.dim, k + 1):
            args = [pairs[i] for i in I]
            comps[I] = table.l2(*args).alpha if k + 1 == 2 else table.lk(*args)
        res = lhs + Bigraded(L, sp, k + 1, n - k, comps)
        if not res.is_zero():
            report.residuals.append((f"k={k}", (k + 1, n - k), res))
    return report


# ---------------------------------------------------------------------------
# obstruction classes
# ---------------------------------------------------------------------------

@dataclass
class ObstructionEntry:
    k: int
    dim_ce: int  # dim H^k(g)
    dim_dr: int  # dim H^{n+1-k}_dR
    matrix: list  # h_k[s][t] in the chosen bases

    @property
    def zero(self) -> bool:
        return not any(c for row in self.matrix for c in row)


@dataclass
class PointClass:
    point: tuple
    cochain: dict  # I -> value
    coordinates: list  # in the chosen H^{n+1}(g) basis

    @property
    def zero(self) -> bool:
        return not any(self.coordinates)


@dataclass
class ObstructionReport:
    n: int
    entries: list
    point_class: PointClass | None = None

    @property
    def exists(self) -> bool:
        return all(e.zero for e in self.entries)

    def entry(self, k: int) -> ObstructionEntry:
        return self.entries[k - 1]

    def nonzero(self) -> list:
        return [e.k for e in self.entries if not e.zero]


def _class_matrix(L: LieAlgebra, space, comps: Bigraded, k: int, j: int) -> tuple:
    if k > L.dim:
        return 0, space.de_rham(j).dim, []
    coh = ce_cohomology(L, k)
    dr = space.de_rham(j)
    matrix = []
    for val in coh.coordinates(comps.comps):
        if val is None or dr.dim == 0:
            matrix.append([Fraction(0)] * dr.dim)
        else:
            matrix.append([Fraction(c) for c in dr.coordinates(val)])
    return coh.dim, dr.dim, matrix


def _as_total(g) -> tuple:
    if isinstance(g, GCocycle):
        return g.total, g.n
    return g, g.degree - 1


def decompose_obstruction(g, point=None) -> ObstructionReport:
    """Kunneth components h_1..h_{n+1} of the class of g.

    ``h_k[s][t] = (phi_s (x) psi_t)(g_k)`` where ``phi_s`` kills the
    coboundaries of Lambda^k g* and is dual to the representatives of
    H^k(g), and ``psi_t`` does the same for forms.  Both are chain maps to
    cohomology, so the result only depends on the class of g.
    """
    total, n = _as_total(g)
    L, sp = total.algebra, total.space
    entries = []
    for k in range(1, n + 2):
        dim_ce, dim_dr, matrix = _class_matrix(L, sp, total.component(k), k, n + 1 - k)
        entries.append(ObstructionEntry(k, dim_ce, dim_dr, matrix))
    top = total.component(n + 1)
    cochain = {}
    for I, form in top.comps.items():
        val = sp.evaluate_at(form, point).get((), Fraction(0))
        if val:
            cochain[I] = -val
    pc = PointClass(_point_tuple(sp, point), cochain, _project_top(L, n + 1, cochain))
    return ObstructionReport(n, entries, pc)


def _point_tuple(space, point) -> tuple:
    if space.kind != "euclidean":
        return ()
    return space.base_point if point is None else tuple(Fraction(x) for x in point)


def _project_top(L: LieAlgebra, k: int, cochain: dict) -> list:
    if k > L.dim:
        return []
    return ce_cohomology(L, k).project(cochain)


def point_obstruction(action: InfinitesimalAction, omega, n: int | None = None, point=None) -> PointClass:
    """``c_p = -(-1)^n (-1)^{n(n+1)/2} omega(zeta X_1, ..., zeta X_{n+1})|_p``."""
    n = omega.degree - 1 if n is None else n
    L, sp = action.algebra, action.space
    sign = -1 if (n + n * (n + 1) // 2) % 2 == 0 else 1
    cochain = {}
    if n + 1 <= L.dim:
        for I in index_sets(L.dim, n + 1):
            val = sp.evaluate_at(_contract_all(action, I, omega), point).get((), Fraction(0))
            if val:
                cochain[I] = sign * val
    return PointClass(_point_tuple(sp, point), cochain, _project_top(L, n + 1, cochain))


# ---------------------------------------------------------------------------
# the solver
# ---------------------------------------------------------------------------

class InconclusiveError(RuntimeError):
    """No potential within the coefficient bound, yet every class vanishes."""

    def __init__(self, bound: int, report: ObstructionReport):
        super().__init__(f"no potential with coefficient degree <= {bound} and c_p = 0; raise the bound")
        self.bound = bound
        self.report = report


@dataclass
class Obstructed:
    report: ObstructionReport
    bound: int | None = None

    exists = False

    @property
    def nonzero(self) -> list:
        return self.report.nonzero()


def default_bound(g: GCocycle) -> int:
    return max(g.total.component(k).coefficient_degree() for k in range(1, g.n + 2)) + g.n


def _unit_columns(L, sp, n: int, stratum, bound):
    for k in range(1, min(n, L.dim) + 1):
        j = n - k
        for key in sp.stratum_keys(j, stratum, bound):
            for I in index_sets(L.dim, k):
                b = Bigraded(L, sp, k, j, {I: sp.form_class(sp, j, {key: Fraction(1)})})
                col = total_differential(n, Total(L, sp, n, [b])).coordinates()
                yield (k, I, key), col


def find_d_potential(g: GCocycle, max_coeff_degree: int | None = None, seed=None) -> Total | None:
    """Solve ``D p = g`` stratum by stratum; None if no solution within the bound."""
    L, sp, n = g.action.algebra, g.action.space, g.n
    bound = None
    if sp.kind == "euclidean":
        bound = default_bound(g) if max_coeff_degree is None else max_coeff_degree
    target = g.total.coordinates()
    strata: dict = {}
    for row, c in target.items():
        strata.setdefault(sp.stratum(row[2]), {})[row] = c
    rng = random.Random(seed) if seed is not None else None
    solution: dict = {}
    for stratum in sorted(strata, key=lambda s: () if s is None else s):
        columns = list(_unit_columns(L, sp, n, stratum, bound))
        if rng is not None:
            rng.shuffle(columns)
        ech = Echelon()
        for tag, col in columns:
            ech.add(tag, col)
        x = ech.express(strata[stratum])
        if x is None:
            return None
        for tag, c in x.items():
            solution[tag] = solution.get(tag, 0) + c
    by_k: dict = {}
    for (k, I, key), c in solution.items():
        by_k.setdefault(k, {})[(I, key)] = c
    parts = [bigraded_from_coordinates(L, sp, k, n - k, coords) for k, coords in by_k.items()]
    return Total(L, sp, n, parts)


def solve_comoment(action: InfinitesimalAction, omega, n: int | None = None,
                   max_coeff_degree: int | None = None, seed=None):
    """Return a verified :class:`ComomentMap` or an :class:`Obstructed` certificate.

    On the euclidean backend the search is restricted to coefficient degree
    at most the bound; with the default bound it is complete.  Raises
    :class:`InconclusiveError` when nothing is found at the bound but every
    obstruction class vanishes.
    """
    g = build_g(action, omega, n)
    bound = default_bound(g) if action.space.kind == "euclidean" and max_coeff_degree is None else max_coeff_degree
    p = find_d_potential(g, bound, seed)
    if p is not None:
        F = ComomentMap(action, omega, p)
        report = verify_morphism(F)
        if not report.ok:
            raise RuntimeError(f"solver produced an invalid co-moment: {report.first}")
        return F
    report = decompose_obstruction(g)
    if report.exists:
        raise InconclusiveError(bound if bound is not None else -1, report)
    return Obstructed(report, bound)


# ---------------------------------------------------------------------------
# unicity
# ---------------------------------------------------------------------------

@dataclass
class GaugeReport:
    difference: Total
    residual: Total

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()

    def __bool__(self):
        return self.ok


def gauge_check(F: ComomentMap, G: ComomentMap) -> GaugeReport:
    """Two co-moments for the same data differ by a D-cocycle."""
    if F.action != G.action or F.omega != G.omega:
        raise ValueError("co-moment maps for different actions or forms")
    diff = F.potential - G.potential
    return GaugeReport(diff, total_differential(F.n, diff))

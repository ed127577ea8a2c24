"""Special cases: weak co-moments, invariant potentials, covariant and
multi-moment maps, and the degree-by-degree construction of a co-moment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bicomplex import (
    Bigraded, ce_class_parts, ce_representatives, delta_potential, tensor,
)
from .foundation import Echelon, index_sets
from .liealg import P_g
from .moment import (
    ComomentMap, InfinitesimalAction, _class_matrix, _contract_all, build_g,
    comoment_from_forms, verify_morphism,
)


# ---------------------------------------------------------------------------
# weak co-moments
# ---------------------------------------------------------------------------

@dataclass
class WeakComoment:
    action: InfinitesimalAction
    omega: object
    forms: list  # j(e_i), forms of degree n - 1

    exists = True

    def __call__(self, x):
        out = self.omega.space.zero(self.omega.degree - 2)
        for c, f in zip(x, self.forms):
            if c:
                out = out + f * c
        return out

    def residuals(self) -> list:
        sp = self.omega.space
        out = []
        for i, (v, f) in enumerate(zip(self.action.images, self.forms)):
            r = sp.d(f) + sp.contract(v, self.omega)
            if not r.is_zero():
                out.append((i, r))
        return out


@dataclass
class WeakObstruction:
    """Nonzero class of g_1 in g* (x) H^n_dR; ``classes[i]`` are the coordinates for e_i."""
    classes: list

    exists = False


def weak_comoment(action: InfinitesimalAction, omega):
    sp = action.space
    forms, classes = [], []
    failed = False
    for v in action.images:
        res = sp.find_potential(sp.contract(v, omega))
        if res.found:
            forms.append(-res.potential)
            classes.append([Fraction(0)] * len(res.obstruction or sp.de_rham(omega.degree - 1).representatives))
        else:
            failed = True
            forms.append(None)
            classes.append(list(res.obstruction))
    if failed:
        return WeakObstruction(classes)
    return WeakComoment(action, omega, forms)


# ---------------------------------------------------------------------------
# invariant potentials
# ---------------------------------------------------------------------------

class PotentialError(ValueError):
    """eta is not a potential of omega, or is not invariant; ``generator`` is 0-based or None."""

    def __init__(self, message: str, generator: int | None = None, residual=None):
        super().__init__(message)
        self.generator = generator
        self.residual = residual


def exact_comoment(action: InfinitesimalAction, eta, omega=None) -> ComomentMap:
    """Closed-form co-moment from an invariant potential eta of omega.

    ``f_1(X) = (zeta X, i_{zeta X} eta)`` and
    ``f_k = (-1)^k (-1)^{k(k+1)/2} i_{zeta X_k} ... i_{zeta X_1} eta``.
    """
    sp = action.space
    d_eta = sp.d(eta)
    if omega is None:
        omega = d_eta
    elif d_eta != omega:
        raise PotentialError("d(eta) != omega", residual=d_eta - omega)
    for i, v in enumerate(action.images):
        lie = sp.lie_derivative(v, eta)
        if not lie.is_zero():
            raise PotentialError(f"eta is not invariant under e{i + 1}", generator=i, residual=lie)
    n = omega.degree - 1
    L = action.algebra
    forms = {}
    for k in range(1, min(n, L.dim) + 1):
        sign = (-1) ** k * (-1) ** (k * (k + 1) // 2)
        forms[k] = Bigraded(L, sp, k, n - k,
                            {I: _contract_all(action, I, eta) * sign for I in index_sets(L.dim, k)})
    F = comoment_from_forms(action, omega, forms)
    report = verify_morphism(F)
    if not report.ok:
        raise RuntimeError(f"exact co-moment failed verification: {report.first}")
    return F


@dataclass
class UniversalEntry:
    field: object
    J: object  # i_v eta
    invariant: bool  # L_v eta == 0
    matches: bool | None = None  # pi_Omega f_1 == J o zeta, when a co-moment was supplied


def universal_momentum_report(eta, fields, comoment: ComomentMap | None = None) -> list:
    sp = eta.space
    out = []
    for i, v in enumerate(fields):
        J = sp.contract(v, eta)
        entry = UniversalEntry(v, J, sp.lie_derivative(v, eta).is_zero())
        if comoment is not None and i < len(comoment.fields):
            entry.matches = comoment.f1(i).alpha == J and comoment.fields[i] == v
        out.append(entry)
    return out


# ---------------------------------------------------------------------------
# covariant momentum / multimomentum
# ---------------------------------------------------------------------------

def covariant_momentum(F: ComomentMap) -> list:
    """``J(X) := -pi_Omega f_1(X)``, so that ``d J(X) = i_{zeta X} omega``."""
    return [-F.f1(i).alpha for i in range(F.action.algebra.dim)]


@dataclass
class CovariantObstruction:
    c: Bigraded  # (X, Y) -> i_{zeta Y} i_{zeta X} omega - j([X, Y])
    h2: list

    @property
    def exists(self) -> bool:
        return not any(x for row in self.h2 for x in row)


def covariant_obstruction(action: InfinitesimalAction, omega, j: WeakComoment) -> CovariantObstruction:
    L, sp = action.algebra, action.space
    n = omega.degree - 1
    comps = {}
    for I in index_sets(L.dim, 2):
        a, b = I
        val = sp.contract(action.images[b], sp.contract(action.images[a], omega))
        comps[I] = val - j(L.bracket(L.basis_vector(a), L.basis_vector(b)))
    c = Bigraded(L, sp, 2, n - 1, comps)
    _, _, matrix = _class_matrix(L, sp, c, 2, n - 1)
    return CovariantObstruction(c, matrix)


# ---------------------------------------------------------------------------
# multi-moment maps
# ---------------------------------------------------------------------------

@dataclass
class MultiMomentMap:
    action: InfinitesimalAction
    omega: object
    n: int
    basis: list  # chains spanning P_g, {I: c}
    values: list  # v(basis[b]), functions normalized at the base point
    f_n: Bigraded | None = None
    f_n_minus_1: Bigraded | None = None

    exists = True

    def __call__(self, chain: dict):
        """Evaluate on any element of P_g."""
        coeffs = _express_in(self.basis, chain)
        if coeffs is None:
            raise ValueError("chain is not in P_g")
        out = self.omega.space.zero(0)
        for b, c in coeffs.items():
            out = out + self.values[b] * c
        return out


@dataclass
class StaircaseFailure:
    """The construction stopped at obstruction class ``k``; ``classes`` has the sign of g."""
    k: int
    classes: list

    exists = False


def _express_in(basis: list, chain: dict):
    ech = Echelon()
    for b, v in enumerate(basis):
        ech.add(b, v)
    return ech.express(chain)


def _contract_chain(action: InfinitesimalAction, n: int, chain: dict, omega):
    """``i_{zeta(p)} omega`` for ``p = sum c_I e_I``, contracting ``zeta e_{I_1}`` first."""
    out = action.space.zero(omega.degree - n)
    for I, c in chain.items():
        out = out + _contract_all(action, I, omega) * c
    return out


def _correct_with_potentials(R: Bigraded):
    """``sum_s rep_s (x) u_s`` with ``d u_s = phi_s(R)``; or the failing class."""
    L, sp = R.algebra, R.space
    total = Bigraded(L, sp, R.i, R.j - 1)
    failed = []
    for rep, part in zip(ce_representatives(L, R.i), ce_class_parts(R)):
        if part.is_zero():
            failed.append([])
            continue
        res = sp.find_potential(part)
        if not res.found:
            failed.append(list(res.obstruction))
            continue
        failed.append([])
        total = total + tensor(L, sp, R.i, rep, res.potential)
    if any(failed):
        return None, failed
    return total, None


def _class_of(b: Bigraded) -> list:
    L, sp = b.algebra, b.space
    _, _, matrix = _class_matrix(L, sp, b, b.i, b.j)
    return matrix


def multimoment_construct(action: InfinitesimalAction, omega, n: int | None = None):
    """Build f_n and f_{n-1} by hand and restrict ``(-1)^{n(n+1)/2} f_n`` to P_g."""
    n = omega.degree - 1 if n is None else n
    g = build_g(action, omega, n)
    L, sp = action.algebra, action.space
    basis = P_g(L, n) if n <= L.dim else []
    if n > L.dim:
        return MultiMomentMap(action, omega, n, [], [])
    # delta fhat_n = -g_{n+1}
    top = -g.component(n + 1)
    fhat = delta_potential(top) if n + 1 <= L.dim else Bigraded(L, sp, n, 0)
    if fhat is None:
        return StaircaseFailure(n + 1, _class_of(-top))
    # correct by a delta-closed p so that -g_n - d f_n is delta-exact
    R = -g.component(n) - fhat.d()
    p, failed = _correct_with_potentials(R)
    if p is None:
        return StaircaseFailure(n, _class_of(-R))
    f_n = fhat + p
    R2 = -g.component(n) - f_n.d()
    f_prev = delta_potential(R2)
    if f_prev is None:
        raise RuntimeError("residual is delta-closed with zero class but not delta-exact")
    sign = -1 if (n * (n + 1) // 2) % 2 else 1
    values = []
    for chain in basis:
        v = sp.zero(0)
        for I, c in chain.items():
            v = v + f_n[I] * (c * sign)
        values.append(_normalize(v))
    return MultiMomentMap(action, omega, n, basis, values, f_n, f_prev)


def _normalize(v):
    sp = v.space
    at = sp.evaluate_at(v, None).get((), Fraction(0))
    return v - sp.constant(at) if at else v


@dataclass
class MultiMomentReport:
    condition_i: list = field(default_factory=list)  # (basis index, residual form)
    condition_ii: list = field(default_factory=list)  # (generator, basis index, residual)

    @property
    def ok(self) -> bool:
        return not self.condition_i and not self.condition_ii

    def __bool__(self):
        return self.ok


def multimoment_verify(vbar: MultiMomentMap, action: InfinitesimalAction | None = None, omega=None) -> MultiMomentReport:
    action = vbar.action if action is None else action
    omega = vbar.omega if omega is None else omega
    sp, L = action.space, action.algebra
    report = MultiMomentReport()
    for b, (chain, val) in enumerate(zip(vbar.basis, vbar.values)):
        r = sp.d(val) - _contract_chain(action, vbar.n, chain, omega)
        if not r.is_zero():
            report.condition_i.append((b, r))
    for x in range(L.dim):
        for b, (chain, val) in enumerate(zip(vbar.basis, vbar.values)):
            moved = L.adjoint_on_chains(L.basis_vector(x), chain)
            lhs = vbar(moved) if moved else sp.zero(0)
            r = lhs - sp.lie_derivative(action.images[x], val)
            if not r.is_zero():
                report.condition_ii.append((x, b, r))
    return report


# ---------------------------------------------------------------------------
# degree-by-degree construction
# ---------------------------------------------------------------------------

def iterate_full_comoment(action: InfinitesimalAction, omega, n: int | None = None):
    """Continue the multi-moment staircase down to f_1.

    At step k (from n down to 0) the residual ``R = -g_{k+1} - d f_{k+1}``
    is delta-closed.  Its H^{k+1}(g) part is removed by adding
    ``rep_s (x) u_s`` to f_{k+1}; what is left is solved for f_k.  A failure
    at step k is reported as class k + 1.
    """
    n = omega.degree - 1 if n is None else n
    g = build_g(action, omega, n)
    L, sp = action.algebra, action.space
    f: dict = {}
    top = min(n, L.dim)
    for k in range(top, -1, -1):
        R = -g.component(k + 1)
        if k + 1 in f:
            R = R - f[k + 1].d()
        if R.i <= L.dim and any(not x.is_zero() for x in ce_class_parts(R)):
            if k + 1 > top or R.j == 0:
                return StaircaseFailure(k + 1, _class_of(-R))
            p, _ = _correct_with_potentials(R)
            if p is None:
                return StaircaseFailure(k + 1, _class_of(-R))
            f[k + 1] = f[k + 1] + p
            R = -g.component(k + 1) - f[k + 1].d()
        if k == 0:
            if not R.is_zero():
                raise RuntimeError("nonzero residual in Lambda^1 after removing its class")
            break
        x = delta_potential(R)
        if x is None:
            raise RuntimeError(f"delta-closed residual with zero class is not exact at k={k}")
        f[k] = x
    F = comoment_from_forms(action, omega, {k: b for k, b in f.items() if k >= 1})
    report = verify_morphism(F)
    if not report.ok:
        raise RuntimeError(f"iterated co-moment failed verification: {report.first}")
    return F

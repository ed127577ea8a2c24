"""Finite-dimensional Lie algebras given by rational structure constants.

Indices are 0-based in memory; the problem-file layer converts from the
1-based records ``{i, j, k, c}``.  Cochains are dicts from increasing index
tuples to coefficients, with the determinant convention
``(e^{i_1} ^ ... ^ e^{i_k})(e_{i_1}, ..., e_{i_k}) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .foundation import (
    Echelon,
    RationalMatrix,
    binomial,
    index_sets,
    inverse,
    nullspace,
    sort_sign,
    to_q,
)


class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c[i, j][k] e_k``.

    ``structure`` maps pairs ``(i, j)`` to ``{k: c}``.  Normally only ``i < j``
    is given and the rest follows by antisymmetry; entries with ``i >= j`` are
    kept verbatim so that :func:`validate_lie_algebra` can flag them.
    """

    def __init__(self, dim: int, structure: dict | None = None, name: str = ""):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.name = name
        raw = {}
        for (i, j), out in (structure or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index ({i}, {j}) outside 0..{dim - 1}")
            clean = {}
            for k, c in out.items():
                if not 0 <= k < dim:
                    raise ValueError(f"output index {k} outside 0..{dim - 1}")
                c = to_q(c)
                if c:
                    clean[k] = c
            if clean:
                raw[(i, j)] = clean
        self.structure = raw
        br = {}
        for (i, j), out in raw.items():
            br[(i, j)] = dict(out)
            if i != j and (j, i) not in raw:
                br[(j, i)] = {k: -c for k, c in out.items()}
        self._br = br

    @classmethod
    def from_records(cls, dim: int, records, name: str = ""):
        """Build from 1-based ``(i, j, k, c)`` tuples or ``{i, j, k, c}`` dicts."""
        structure: dict = {}
        for rec in records:
            if isinstance(rec, dict):
                i, j, k, c = rec["i"], rec["j"], rec["k"], rec["c"]
            else:
                i, j, k, c = rec
            slot = structure.setdefault((i - 1, j - 1), {})
            slot[k - 1] = slot.get(k - 1, 0) + to_q(c)
        return cls(dim, structure, name)

    def records(self) -> list:
        """1-based ``(i, j, k, c)`` tuples, sorted."""
        return sorted((i + 1, j + 1, k + 1, c)
                      for (i, j), out in self.structure.items() for k, c in out.items())

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.structure == other.structure

    def __hash__(self):
        return hash((self.dim, tuple(self.records())))

    def __repr__(self):
        label = self.name or "LieAlgebra"
        return f"<{label} dim={self.dim}>"

    def bracket_basis(self, i: int, j: int) -> dict:
        return self._br.get((i, j), {})

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in self._br.get((i, j), {}).items():
                    out[k] += xi * yj * c
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def ad(self, i: int) -> RationalMatrix:
        """Matrix of ad_{e_i}: column l holds [e_i, e_l]."""
        rows = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for l in range(self.dim):
            for k, c in self._br.get((i, l), {}).items():
                rows[k][l] = c
        return RationalMatrix.from_rows(rows, self.dim)

    # -- Chevalley-Eilenberg complex, trivial coefficients -----------------

    @cached_property
    def _delta_images(self) -> list:
        """``images[k][I] = delta(e^I)`` as ``{J: coeff}``."""
        images = []
        for k in range(self.dim + 1):
            img = {I: {} for I in index_sets(self.dim, k)}
            for J in index_sets(self.dim, k + 1):
                for a in range(k + 1):
                    for b in range(a + 1, k + 1):
                        rest = J[:a] + J[a + 1:b] + J[b + 1:]
                        # (-1)^{a+b} with 1-based positions
                        pos_sign = -1 if (a + b) % 2 else 1
                        for r, c in self._br.get((J[a], J[b]), {}).items():
                            s, srt = sort_sign((r,) + rest)
                            if s:
                                slot = img[srt]
                                slot[J] = slot.get(J, 0) + pos_sign * s * c
            images.append({I: {J: v for J, v in m.items() if v} for I, m in img.items()})
        return images

    def delta(self, cochain: dict, k: int) -> dict:
        """Apply the CE differential to a degree-k cochain ``{I: coeff}``.

        Coefficients may be any objects supporting ``+`` and scalar ``*``, so
        the same routine acts on form-valued cochains.
        """
        images = self._delta_images[k] if 0 <= k <= self.dim else {}
        out: dict = {}
        for I, val in cochain.items():
            for J, c in images.get(I, {}).items():
                out[J] = out[J] + val * c if J in out else val * c
        return out

    def ce_basis(self, k: int) -> list:
        return index_sets(self.dim, k)

    def adjoint_on_chains(self, x: Sequence, chain: dict) -> dict:
        """Leibniz extension of ad_x to a chain ``{I: coeff}`` in the exterior power."""
        out: dict = {}
        for I, val in chain.items():
            for pos, i in enumerate(I):
                bx = self.bracket(x, self.basis_vector(i))
                for r, c in enumerate(bx):
                    if not c:
                        continue
                    s, srt = sort_sign(I[:pos] + (r,) + I[pos + 1:])
                    if s:
                        out[srt] = out.get(srt, 0) + s * c * val
        return {I: v for I, v in out.items() if v}


def abelian(dim: int) -> LieAlgebra:
    return LieAlgebra(dim, {}, name=f"abelian{dim}")


def so3() -> LieAlgebra:
    return LieAlgebra.from_records(3, [(1, 2, 3, 1), (2, 3, 1, 1), (1, 3, 2, -1)], name="so3")


def aff1() -> LieAlgebra:
    return LieAlgebra.from_records(2, [(1, 2, 2, 1)], name="aff1")


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class JacobiReport:
    ok: bool
    triple: tuple | None = None  # 1-based
    residual: tuple | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


def validate_lie_algebra(L: LieAlgebra) -> JacobiReport:
    for (i, j), out in sorted(L.structure.items()):
        if i == j:
            return JacobiReport(False, (i + 1, i + 1, i + 1), tuple(L.bracket_basis(i, i).get(k, Fraction(0))
                                                               for k in range(L.dim)),
                                f"[e{i + 1}, e{i + 1}] is nonzero")
        if i > j and (j, i) in L.structure:
            other = L.structure[(j, i)]
            if any(out.get(k, 0) + other.get(k, 0) for k in set(out) | set(other)):
                return JacobiReport(False, (j + 1, i + 1, i + 1), None,
                                    f"[e{j + 1}, e{i + 1}] and [e{i + 1}, e{j + 1}] are not opposite")
    e = [L.basis_vector(i) for i in range(L.dim)]
    for i in range(L.dim):
        for j in range(i, L.dim):
            for k in range(j, L.dim):
                a = L.bracket(e[i], L.bracket(e[j], e[k]))
                b = L.bracket(e[j], L.bracket(e[k], e[i]))
                c = L.bracket(e[k], L.bracket(e[i], e[j]))
                res = tuple(x + y + z for x, y, z in zip(a, b, c))
                if any(res):
                    return JacobiReport(False, (i + 1, j + 1, k + 1), res,
                                        f"Jacobi identity fails on (e{i + 1}, e{j + 1}, e{k + 1})")
    return JacobiReport(True)


# ---------------------------------------------------------------------------
# CE matrices and cohomology
# ---------------------------------------------------------------------------

def _check_degree(L: LieAlgebra, k: int, lo: int = 0):
    if not lo <= k <= L.dim:
        raise ValueError(f"degree {k} outside {lo}..{L.dim}")


def ce_differential(L: LieAlgebra, k: int) -> RationalMatrix:
    """Matrix of delta: Lambda^k g* -> Lambda^{k+1} g* in the ordered-subset bases."""
    _check_degree(L, k)
    src = L.ce_basis(k)
    dst = L.ce_basis(k + 1)
    row_of = {J: r for r, J in enumerate(dst)}
    rows = [[Fraction(0)] * len(src) for _ in dst]
    for c, I in enumerate(src):
        for J, v in L._delta_images[k][I].items():
            rows[row_of[J]][c] = v
    return RationalMatrix.from_rows(rows, len(src))


class Cohomology:
    """Cohomology of one degree of a finite cochain complex.

    ``representatives`` are cocycles whose classes form a basis, chosen by
    echelon reduction of the cocycle space modulo the coboundaries.
    ``functionals[s]`` vanishes on coboundaries and is dual to
    ``representatives``; on non-closed vectors it is one fixed extension.
    """

    def __init__(self, basis: list, incoming: RationalMatrix | None, outgoing: RationalMatrix | None):
        self.basis = list(basis)
        n = len(self.basis)
        pos = {I: r for r, I in enumerate(self.basis)}
        self._pos = pos
        self._outgoing = outgoing
        boundaries = [] if incoming is None else [incoming.column(c) for c in range(incoming.cols)]
        cycles = nullspace(outgoing) if outgoing is not None and outgoing.rows else \
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

        ech = Echelon()
        chosen_b = []
        for v in boundaries:
            if ech.add(("b", len(chosen_b)), dict(enumerate(v))):
                chosen_b.append(v)
        reps = []
        for v in cycles:
            if ech.add(("z", len(reps)), dict(enumerate(v))):
                reps.append(v)
        extra = []
        for i in range(n):
            unit = [Fraction(int(i == j)) for j in range(n)]
            if ech.add(("w", i), {i: Fraction(1)}):
                extra.append(unit)
        self.boundary_rank = len(chosen_b)
        self.cycle_dim = len(cycles)
        self.representatives = [{self.basis[i]: x for i, x in enumerate(v) if x} for v in reps]
        if n:
            full = RationalMatrix.from_rows([list(r) for r in zip(*(chosen_b + reps + extra))], n)
            inv = inverse(full)
            start = len(chosen_b)
            self.functionals = [{self.basis[i]: x for i, x in enumerate(inv.row(start + s)) if x}
                                for s in range(len(reps))]
        else:
            self.functionals = []

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, vec: dict) -> list:
        """Apply every functional; linear in ``vec``, whose values may be any module elements."""
        out = []
        for phi in self.functionals:
            acc = None
            for I, c in phi.items():
                if I in vec:
                    term = vec[I] * c
                    acc = term if acc is None else acc + term
            out.append(acc)
        return out

    def is_closed(self, vec: dict) -> bool:
        if self._outgoing is None or self._outgoing.rows == 0:
            return True
        col = [vec.get(I, 0) for I in self.basis]
        return not any(self._outgoing @ col)

    def project(self, cocycle: dict) -> list:
        """Coordinates of the class of a cocycle; all zero iff it is a coboundary."""
        if not self.is_closed(cocycle):
            raise ValueError("input is not a cocycle")
        return [c if c is not None else Fraction(0) for c in self.coordinates(cocycle)]


def ce_cohomology(L: LieAlgebra, k: int) -> Cohomology:
    _check_degree(L, k)
    incoming = ce_differential(L, k - 1) if k >= 1 else None
    outgoing = ce_differential(L, k) if k < L.dim else None
    return _cached_cohomology(L, k, incoming, outgoing)


_COHOMOLOGY_CACHE: dict = {}


def _cached_cohomology(L, k, incoming, outgoing) -> Cohomology:
    key = (L.dim, tuple(L.records()), k)
    hit = _COHOMOLOGY_CACHE.get(key)
    if hit is None:
        hit = Cohomology(L.ce_basis(k), incoming, outgoing)
        _COHOMOLOGY_CACHE[key] = hit
    return hit


def betti_numbers(L: LieAlgebra) -> list:
    return [ce_cohomology(L, k).dim for k in range(L.dim + 1)]


def killing_form(L: LieAlgebra) -> RationalMatrix:
    ads = [L.ad(i) for i in range(L.dim)]
    rows = []
    for i in range(L.dim):
        row = []
        for j in range(L.dim):
            prod = ads[i] @ ads[j]
            row.append(sum((prod[t, t] for t in range(L.dim)), Fraction(0)))
        rows.append(row)
    return RationalMatrix.from_rows(rows, L.dim)


def cartan_three_cocycle(L: LieAlgebra) -> dict:
    """``(X, Y, Z) -> kappa(X, [Y, Z])`` as a degree-3 cochain."""
    kappa = killing_form(L)
    out = {}
    for I in index_sets(L.dim, 3):
        i, j, k = I
        br = L.bracket_basis(j, k)
        val = sum((kappa[i, r] * c for r, c in br.items()), Fraction(0))
        if val:
            out[I] = val
    return out


def boundary_delta_star(L: LieAlgebra, n: int) -> RationalMatrix:
    """Lambda^n g -> Lambda^{n-1} g, the transpose of delta on Lambda^{n-1} g*."""
    _check_degree(L, n, lo=1)
    return ce_differential(L, n - 1).T


def P_g(L: LieAlgebra, n: int) -> list:
    """Basis of ker(delta*) in Lambda^n g, as chains ``{I: coeff}``."""
    basis = L.ce_basis(n)
    return [{basis[i]: x for i, x in enumerate(v) if x} for v in nullspace(boundary_delta_star(L, n))]


def adjoint_on_chains(L: LieAlgebra, x: Sequence, chain: dict) -> dict:
    return L.adjoint_on_chains([to_q(t) for t in x], chain)


def euler_characteristic(L: LieAlgebra) -> int:
    return sum((-1) ** k * binomial(L.dim, k) for k in range(L.dim + 1))

"""Exact rationals, exact linear algebra and graded combinatorics.

Everything here works over :class:`fractions.Fraction`.  Dense matrices are
plain lists of rows; vectors that live in large, mostly empty coordinate spaces
are dicts ``key -> Fraction`` and go through :class:`Echelon`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Hashable, Iterable, Sequence

Q = Fraction


def to_q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_q(x: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


parse_q = to_q


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of Fractions

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        rows = [[to_q(x) for x in r] for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int):
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> list:
        return list(self.entries[r * self.cols:(r + 1) * self.cols])

    def column(self, c: int) -> list:
        return [self.entries[r * self.cols + c] for r in range(self.rows)]

    def to_rows(self) -> list:
        return [self.row(r) for r in range(self.rows)]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix.from_rows([self.column(c) for c in range(self.cols)], self.rows)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            cols = [other.column(c) for c in range(other.cols)]
            return RationalMatrix.from_rows(
                [[sum((a * b for a, b in zip(self.row(r), col)), Fraction(0)) for col in cols]
                 for r in range(self.rows)], other.cols)
        vec = [to_q(x) for x in other]
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * b for a, b in zip(self.row(r), vec)), Fraction(0)) for r in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def rank(self) -> int:
        return len(rref(self.to_rows())[1])


def rref(rows: list) -> tuple[list, list]:
    """Reduced row echelon form; the pivot is the first nonzero entry in each column."""
    m = [[to_q(x) for x in r] for r in rows]
    pivots = []
    if not m:
        return m, pivots
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def _normalize_leading(v: list) -> list:
    lead = next((x for x in v if x != 0), None)
    if lead is None or lead == 1:
        return v
    return [x / lead for x in v]


def nullspace(A: RationalMatrix) -> list:
    """Basis of ker A, each vector scaled so its first nonzero entry is 1."""
    red, pivots = rref(A.to_rows())
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * A.cols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(_normalize_leading(v))
    return basis


@dataclass
class LinearSolution:
    """Outcome of :func:`solve_linear`.

    ``x`` is None when the system is inconsistent; ``certificate`` is then a
    vector ``y`` with ``y @ A == 0`` and ``y . b != 0``.
    """
    x: list | None
    nullspace: list
    certificate: list | None = None

    @property
    def solvable(self) -> bool:
        return self.x is not None


def solve_linear(A: RationalMatrix, b: Sequence) -> LinearSolution:
    b = [to_q(x) for x in b]
    if len(b) != A.rows:
        raise ValueError(f"dimension mismatch: A has {A.rows} rows, b has {len(b)} entries")
    kernel = nullspace(A)
    aug = [row + [bi] for row, bi in zip(A.to_rows(), b)]
    red, pivots = rref(aug)
    if A.cols in pivots:
        for y in nullspace(A.T):
            if sum((yi * bi for yi, bi in zip(y, b)), Fraction(0)) != 0:
                return LinearSolution(None, kernel, y)
        raise AssertionError("inconsistent system without a left-kernel certificate")
    x = [Fraction(0)] * A.cols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return LinearSolution(x, kernel)


def inverse(A: RationalMatrix) -> RationalMatrix:
    if A.rows != A.cols:
        raise ValueError("matrix is not square")
    n = A.rows
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A.to_rows())]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return RationalMatrix.from_rows([r[n:] for r in red], n)


# ---------------------------------------------------------------------------
# sparse incremental echelon
# ---------------------------------------------------------------------------

def _axpy(target: dict, coeff: Fraction, source: dict) -> None:
    for k, v in source.items():
        nv = target.get(k, 0) + coeff * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class Echelon:
    """Incremental column echelon basis over sparse vectors.

    Columns are added one at a time under a tag.  Each stored row keeps the
    combination of tagged columns it equals, so :meth:`express` can write a
    target as a combination of columns and :attr:`kernel` collects the
    relations between dependent columns.  The pivot of a row is its smallest
    key, which makes the result independent of dict ordering.
    """

    def __init__(self):
        self._rows: dict = {}  # pivot key -> (vector, combo)
        self.kernel: list = []  # combos (tag -> coeff) summing to zero
        self.tags: list = []

    def __len__(self):
        return len(self._rows)

    def _reduce(self, vec: dict, combo: dict) -> None:
        rows = self._rows
        while True:
            hits = [k for k in vec if k in rows]
            if not hits:
                return
            k = min(hits)
            rvec, rcombo = rows[k]
            c = -vec[k]
            _axpy(vec, c, rvec)
            _axpy(combo, c, rcombo)

    def add(self, tag: Hashable, vec: dict) -> bool:
        """Add a column; return True if it enlarged the span."""
        self.tags.append(tag)
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        combo = {tag: Fraction(1)}
        self._reduce(vec, combo)
        if not vec:
            self.kernel.append(combo)
            return False
        k = min(vec)
        inv = 1 / vec[k]
        self._rows[k] = ({kk: vv * inv for kk, vv in vec.items()},
                         {kk: vv * inv for kk, vv in combo.items()})
        return True

    def residual(self, target: dict) -> dict:
        vec = {k: Fraction(v) for k, v in target.items() if v}
        self._reduce(vec, {})
        return vec

    def express(self, target: dict) -> dict | None:
        """Coefficients ``tag -> c`` with ``sum c*column == target``, or None."""
        vec = {k: Fraction(v) for k, v in target.items() if v}
        combo: dict = {}
        self._reduce(vec, combo)
        if vec:
            return None
        return {k: -v for k, v in combo.items()}


def express_sparse(columns: Iterable, target: dict):
    """Solve ``sum x_tag * column_tag = target`` for sparse ``(tag, column)`` pairs."""
    ech = Echelon()
    for tag, col in columns:
        ech.add(tag, col)
    return ech.express(target)


# ---------------------------------------------------------------------------
# multi-indices, permutations, signs
# ---------------------------------------------------------------------------

def index_sets(dim: int, k: int) -> list:
    """Strictly increasing k-tuples over ``range(dim)`` in lexicographic order."""
    return list(combinations(range(dim), k))


def sort_sign(seq: Sequence) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``seq`` and the sorted tuple; sign 0 on repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, tuple(sorted(seq))
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def perm_sign(perm: Sequence[int]) -> int:
    return sort_sign(perm)[0]


def unshuffles(i: int, j: int) -> list:
    """All (i, j)-unshuffles of {1..i+j} as image tuples ``(s(1), ..., s(i+j))``.

    Ordered lexicographically by the set ``{s(1), ..., s(i)}``.
    """
    if i < 0 or j < 0:
        raise ValueError("block sizes must be nonnegative")
    n = i + j
    out = []
    for first in combinations(range(1, n + 1), i):
        rest = tuple(x for x in range(1, n + 1) if x not in first)
        out.append(first + rest)
    return out


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Koszul sign of rearranging ``x_1 ... x_n`` into ``x_s(1) ... x_s(n)``.

    ``perm`` is the image tuple (1-based); ``degrees[i]`` is the degree of
    ``x_{i+1}``.  Only odd/odd transpositions contribute.
    """
    if len(perm) != len(degrees):
        raise ValueError("permutation and degree list differ in length")
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b] and degrees[perm[a] - 1] % 2 and degrees[perm[b] - 1] % 2:
                sign = -sign
    return sign


def compose(s: Sequence[int], t: Sequence[int]) -> tuple:
    """Image tuple of ``u -> s(t(u))``."""
    return tuple(s[t[u] - 1] for u in range(len(t)))


def permute(items: Sequence, perm: Sequence[int]) -> list:
    """``[items[s(1)], ..., items[s(n)]]`` for a 1-based image tuple."""
    return [items[p - 1] for p in perm]


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


@dataclass(frozen=True)
class GradedElementView:
    """A homogeneous element handed to a bracket evaluator."""
    degree: int
    payload: object = field(compare=False)

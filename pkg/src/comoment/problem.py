"""JSON problem files and artifact serialization.

Indices are 1-based in files and 0-based in memory.  Rationals are strings
``"p/q"`` (or ``"p"``); plain JSON integers are accepted on input.

A problem file::

    {
      "name": "so3_r3_volume",
      "lie_algebra": {"dim": 3, "structure": [{"i": 1, "j": 2, "k": 3, "c": "1"}, ...]},
      "backend": {"kind": "euclidean", "dim": 3, "base_point": ["0", "0", "0"]},
      "n": 2,
      "omega": [{"indices": [1, 2, 3], "exponents": [0, 0, 0], "coeff": "1"}],
      "action": [[[{"exponents": [0, 0, 1], "coeff": "1"}], [], []], ...],
      "eta": [...],
      "options": {"max_coeff_degree": 4, "sample_points": [["1", "0", "0"]]}
    }

For ``"kind": "invariant"`` the backend carries ``h_dim`` and
``h_structure`` (same record format), forms omit ``exponents`` and each
action image is a list of ``h_dim`` coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .bicomplex import Bigraded, Total
from .cartan import EuclideanSpace, InvariantModel
from .foundation import format_q, parse_q
from .liealg import LieAlgebra
from .moment import ComomentMap, InfinitesimalAction


class ProblemError(ValueError):
    """Semantic error; ``path`` is the offending key path, e.g. ``omega[0].coeff``."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class Problem:
    algebra: LieAlgebra
    space: object
    n: int
    omega: object
    action: InfinitesimalAction
    eta: object = None
    options: dict = field(default_factory=dict)
    name: str = ""

    @property
    def sample_points(self) -> list:
        return self.options.get("sample_points") or [None]


# ---------------------------------------------------------------------------
# scalars and small helpers
# ---------------------------------------------------------------------------

def _q(value, path: str) -> Fraction:
    if isinstance(value, bool):
        raise ProblemError(path, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_q(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ProblemError(path, f"bad rational {value!r}") from exc
    raise ProblemError(path, f"expected a rational string, got {type(value).__name__}")


def _int(value, path: str, lo: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProblemError(path, "expected an integer")
    if lo is not None and value < lo:
        raise ProblemError(path, f"must be >= {lo}")
    return value


def _get(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise ProblemError(path, "expected an object")
    if key not in obj:
        raise ProblemError(f"{path}.{key}" if path else key, "missing")
    return obj[key]


def _list(value, path: str) -> list:
    if not isinstance(value, list):
        raise ProblemError(path, "expected a list")
    return value


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Lie algebras
# ---------------------------------------------------------------------------

def algebra_from_json(data, path: str = "lie_algebra", name: str = "") -> LieAlgebra:
    dim = _int(_get(data, "dim", path), f"{path}.dim", lo=1)
    records = []
    for r, rec in enumerate(_list(data.get("structure", []), f"{path}.structure")):
        rp = f"{path}.structure[{r}]"
        i, j, k = (_int(_get(rec, key, rp), f"{rp}.{key}", lo=1) for key in "ijk")
        for key, v in zip("ijk", (i, j, k)):
            if v > dim:
                raise ProblemError(f"{rp}.{key}", f"index {v} exceeds dim {dim}")
        if i >= j:
            raise ProblemError(rp, "records need i < j")
        records.append((i, j, k, _q(_get(rec, "c", rp), f"{rp}.c")))
    return LieAlgebra.from_records(dim, records, name=data.get("name", name))


def algebra_to_json(L: LieAlgebra) -> dict:
    out = {"dim": L.dim, "structure": [{"i": i, "j": j, "k": k, "c": format_q(c)} for i, j, k, c in L.records()]}
    if L.name:
        out["name"] = L.name
    return out


# ---------------------------------------------------------------------------
# backends, forms, fields
# ---------------------------------------------------------------------------

def space_from_json(data, path: str = "backend"):
    kind = _get(data, "kind", path)
    if kind == "euclidean":
        m = _int(_get(data, "dim", path), f"{path}.dim", lo=1)
        bp = data.get("base_point")
        if bp is None:
            return EuclideanSpace(m)
        bp = [_q(x, f"{path}.base_point[{i}]") for i, x in enumerate(_list(bp, f"{path}.base_point"))]
        if len(bp) != m:
            raise ProblemError(f"{path}.base_point", f"has {len(bp)} coordinates, expected {m}")
        return EuclideanSpace(m, tuple(bp))
    if kind == "invariant":
        h = algebra_from_json({"dim": _get(data, "h_dim", path), "structure": data.get("h_structure", [])},
                              path, name=data.get("h_name", ""))
        return InvariantModel(h)
    raise ProblemError(f"{path}.kind", f"unknown backend {kind!r}")


def space_to_json(space) -> dict:
    if space.kind == "euclidean":
        return {"kind": "euclidean", "dim": space.m, "base_point": [format_q(x) for x in space.base_point]}
    out = {"kind": "invariant", "h_dim": space.h.dim,
           "h_structure": algebra_to_json(space.h)["structure"]}
    if space.h.name:
        out["h_name"] = space.h.name
    return out


def _indices(value, path: str, top: int) -> tuple:
    idx = [_int(x, f"{path}[{r}]", lo=1) for r, x in enumerate(_list(value, path))]
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ProblemError(path, "indices must be strictly increasing")
    if idx and idx[-1] > top:
        raise ProblemError(path, f"index {idx[-1]} exceeds dimension {top}")
    return tuple(x - 1 for x in idx)


def _exponents(value, path: str, m: int) -> tuple:
    exps = tuple(_int(x, f"{path}[{r}]", lo=0) for r, x in enumerate(_list(value, path)))
    if len(exps) != m:
        raise ProblemError(path, f"needs {m} exponents, got {len(exps)}")
    return exps


def form_from_json(space, data, path: str, degree: int | None = None):
    """Read a form given as a term list or as ``{"degree": j, "terms": [...]}``."""
    if isinstance(data, dict):
        degree = _int(_get(data, "degree", path), f"{path}.degree", lo=0)
        data, path = _get(data, "terms", path), f"{path}.terms"
    terms = {}
    for r, t in enumerate(_list(data, path)):
        tp = f"{path}[{r}]"
        J = _indices(_get(t, "indices", tp), f"{tp}.indices", space.top)
        if degree is None:
            degree = len(J)
        elif len(J) != degree:
            raise ProblemError(f"{tp}.indices", f"term of degree {len(J)} in a {degree}-form")
        c = _q(_get(t, "coeff", tp), f"{tp}.coeff")
        if space.kind == "euclidean":
            key = (J, _exponents(_get(t, "exponents", tp), f"{tp}.exponents", space.m))
        else:
            key = J
        terms[key] = terms.get(key, 0) + c
    if degree is None:
        raise ProblemError(path, "empty term list with unknown degree")
    if degree > space.top:
        raise ProblemError(path, f"degree {degree} exceeds dimension {space.top}")
    return space.form(degree, terms)


def form_terms_to_json(form) -> list:
    out = []
    for key in sorted(form.terms):
        c = form.terms[key]
        if form.space.kind == "euclidean":
            J, alpha = key
            out.append({"indices": [i + 1 for i in J], "exponents": list(alpha), "coeff": format_q(c)})
        else:
            out.append({"indices": [i + 1 for i in key], "coeff": format_q(c)})
    return out


def form_to_json(form) -> dict:
    return {"degree": form.degree, "terms": form_terms_to_json(form)}


def field_from_json(space, data, path: str):
    if space.kind == "invariant":
        coeffs = [_q(x, f"{path}[{i}]") for i, x in enumerate(_list(data, path))]
        if len(coeffs) != space.top:
            raise ProblemError(path, f"needs {space.top} coefficients, got {len(coeffs)}")
        return space.field(coeffs)
    comps = _list(data, path)
    if len(comps) != space.m:
        raise ProblemError(path, f"needs {space.m} components, got {len(comps)}")
    polys = []
    for k, comp in enumerate(comps):
        p = {}
        for r, t in enumerate(_list(comp, f"{path}[{k}]")):
            tp = f"{path}[{k}][{r}]"
            a = _exponents(_get(t, "exponents", tp), f"{tp}.exponents", space.m)
            p[a] = p.get(a, 0) + _q(_get(t, "coeff", tp), f"{tp}.coeff")
        polys.append(p)
    return space.field(polys)


def field_to_json(v) -> list:
    if v.space.kind == "invariant":
        return [format_q(c) for c in v.coeffs]
    return [[{"exponents": list(a), "coeff": format_q(p[a])} for a in sorted(p)] for p in v.comps]


# ---------------------------------------------------------------------------
# problems
# ---------------------------------------------------------------------------

def problem_from_json(data) -> Problem:
    if not isinstance(data, dict):
        raise ProblemError("", "problem file must be an object")
    algebra = algebra_from_json(_get(data, "lie_algebra", ""), "lie_algebra", name=data.get("name", ""))
    space = space_from_json(_get(data, "backend", ""), "backend")
    n = _int(_get(data, "n", ""), "n", lo=1)
    omega = form_from_json(space, _get(data, "omega", ""), "omega",
                           degree=None if data["omega"] else n + 1)
    if omega.degree != n + 1:
        raise ProblemError("omega", f"omega degree {omega.degree} != n+1 = {n + 1}")
    images = _list(_get(data, "action", ""), "action")
    if len(images) != algebra.dim:
        raise ProblemError("action", f"needs {algebra.dim} images, got {len(images)}")
    action = InfinitesimalAction(algebra, space, [field_from_json(space, v, f"action[{i}]")
                                                  for i, v in enumerate(images)])
    eta = None
    if data.get("eta") is not None:
        eta = form_from_json(space, data["eta"], "eta", degree=None if data["eta"] else n)
        if eta.degree != n:
            raise ProblemError("eta", f"eta degree {eta.degree} != n = {n}")
    options = dict(data.get("options") or {})
    if "max_coeff_degree" in options and options["max_coeff_degree"] is not None:
        options["max_coeff_degree"] = _int(options["max_coeff_degree"], "options.max_coeff_degree", lo=0)
    if "sample_points" in options:
        pts = []
        for r, pt in enumerate(_list(options["sample_points"], "options.sample_points")):
            pp = f"options.sample_points[{r}]"
            pt = tuple(_q(x, f"{pp}[{i}]") for i, x in enumerate(_list(pt, pp)))
            if space.kind == "euclidean" and len(pt) != space.m:
                raise ProblemError(pp, f"has {len(pt)} coordinates, expected {space.m}")
            pts.append(pt)
        options["sample_points"] = pts
    return Problem(algebra, space, n, omega, action, eta, options, data.get("name", ""))


def problem_to_json(P: Problem) -> dict:
    out = {
        "lie_algebra": algebra_to_json(P.algebra),
        "backend": space_to_json(P.space),
        "n": P.n,
        "omega": form_terms_to_json(P.omega),
        "action": [field_to_json(v) for v in P.action.images],
    }
    if P.name:
        out["name"] = P.name
    if P.eta is not None:
        out["eta"] = form_terms_to_json(P.eta)
    opts = {}
    if P.options.get("max_coeff_degree") is not None:
        opts["max_coeff_degree"] = P.options["max_coeff_degree"]
    if P.options.get("sample_points"):
        opts["sample_points"] = [[format_q(x) for x in pt] for pt in P.options["sample_points"]]
    if opts:
        out["options"] = opts
    return out


def load_problem(path) -> Problem:
    with open(path, encoding="utf-8") as fh:
        return problem_from_json(loads(fh.read()))


def parse_problem(text: str) -> Problem:
    return problem_from_json(loads(text))


# ---------------------------------------------------------------------------
# artifacts
# ---------------------------------------------------------------------------

def bigraded_to_json(b: Bigraded) -> dict:
    return {
        "bidegree": [b.i, b.j],
        "components": [{"generators": [i + 1 for i in I], "form": form_terms_to_json(b.comps[I])}
                       for I in sorted(b.comps)],
    }


def bigraded_from_json(algebra, space, data, path: str) -> Bigraded:
    bd = _list(_get(data, "bidegree", path), f"{path}.bidegree")
    if len(bd) != 2:
        raise ProblemError(f"{path}.bidegree", "expected [i, j]")
    i, j = (_int(x, f"{path}.bidegree[{r}]", lo=0) for r, x in enumerate(bd))
    comps = {}
    for r, c in enumerate(_list(_get(data, "components", path), f"{path}.components")):
        cp = f"{path}.components[{r}]"
        I = _indices(_get(c, "generators", cp), f"{cp}.generators", algebra.dim)
        if len(I) != i:
            raise ProblemError(f"{cp}.generators", f"expected {i} generators")
        comps[I] = form_from_json(space, _get(c, "form", cp), f"{cp}.form", degree=j)
    return Bigraded(algebra, space, i, j, comps)


def comoment_to_json(F: ComomentMap) -> dict:
    """``f`` maps k to f_k (k = 1 is the form part of f_1); ``fields`` are the vector parts."""
    return {
        "n": F.n,
        "fields": [field_to_json(v) for v in F.fields],
        "f": {str(k): bigraded_to_json(b) for k, b in sorted(F.form_parts().items())},
    }


def comoment_from_json(problem: Problem, data, path: str = "") -> ComomentMap:
    n = _int(_get(data, "n", path), f"{path}.n" if path else "n", lo=1)
    if n != problem.n:
        raise ProblemError(f"{path}.n" if path else "n", f"co-moment has n={n}, problem has n={problem.n}")
    sp, L = problem.space, problem.algebra
    fp = f"{path}.fields" if path else "fields"
    fields = [field_from_json(sp, v, f"{fp}[{i}]") for i, v in enumerate(_list(_get(data, "fields", path), fp))]
    if len(fields) != L.dim:
        raise ProblemError(fp, f"needs {L.dim} fields")
    parts = []
    fdata = _get(data, "f", path)
    if not isinstance(fdata, dict):
        raise ProblemError(f"{path}.f" if path else "f", "expected an object keyed by k")
    for key, b in fdata.items():
        bp = f"{path}.f.{key}" if path else f"f.{key}"
        big = bigraded_from_json(L, sp, b, bp)
        if str(big.i) != key or big.i + big.j != n:
            raise ProblemError(bp, f"bidegree {big.bidegree} does not fit f_{key}")
        parts.append(-big)
    return ComomentMap(problem.action, problem.omega, Total(L, sp, n, parts), fields)


def chain_to_json(chain: dict) -> list:
    return [{"generators": [i + 1 for i in I], "coeff": format_q(chain[I])} for I in sorted(chain)]

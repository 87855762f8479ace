"""Metric Lie algebras given by structure constants, and their bracket notation.

A Lie bracket on R^n is stored as a tensor ``c`` with
``[e_i, e_j] = sum_k c[i, j, k] e_k``; the inner product is a Gram matrix in
the same basis. Bracket notation lists, for each basis vector ``e_k``, the
monomials ``coeff*ij`` meaning ``[e_i, e_j]`` has ``coeff`` along ``e_k``,
e.g. ``(0,0,12)`` is the three-dimensional Heisenberg algebra.
"""

import json
import re
from dataclasses import dataclass, field

import numpy as np

from ._linalg import TOL, column_space
from .expressions import ExpressionError, evaluate_coefficient

__all__ = [
    "MetricLieAlgebra",
    "BracketNotationError",
    "NotNilpotentError",
    "parse_bracket_notation",
    "split_coordinates",
    "jacobi_defect",
    "nilpotency_step",
    "lower_central_series",
    "algebra_from_json",
    "algebra_to_json",
    "algebra_from_dict",
    "algebra_to_dict",
]


class BracketNotationError(ValueError):
    """Malformed bracket notation or JSON algebra document."""


class NotNilpotentError(ValueError):
    """The lower central series stabilizes at a nonzero ideal."""


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MetricLieAlgebra:
    """Structure constants plus an inner product on R^n.

    ``bracket_terms`` keeps the coefficient strings the algebra was built
    from, as ``(i, j, k, coeff)`` with 1-based indices, when known.
    """

    structure: np.ndarray
    gram: np.ndarray = None
    name: str = None
    bracket_terms: tuple = field(default=(), repr=False)

    def __post_init__(self):
        c = np.asarray(self.structure, dtype=float)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise ValueError(f"structure must be an n x n x n tensor, got {c.shape}")
        n = c.shape[0]
        if n < 1:
            raise ValueError("dimension must be positive")
        scale = max(1.0, float(np.abs(c).max(initial=0.0)))
        if np.abs(c + c.transpose(1, 0, 2)).max(initial=0.0) > TOL * scale:
            raise ValueError("structure constants are not antisymmetric")
        g = np.eye(n) if self.gram is None else np.asarray(self.gram, dtype=float)
        if g.shape != (n, n):
            raise ValueError(f"gram must be {n} x {n}")
        if np.abs(g - g.T).max() > TOL * max(1.0, np.abs(g).max()):
            raise ValueError("gram matrix is not symmetric")
        g = 0.5 * (g + g.T)
        if np.linalg.eigvalsh(g).min() <= 0:
            raise ValueError("gram matrix is not positive definite")
        object.__setattr__(self, "structure", _frozen(c))
        object.__setattr__(self, "gram", _frozen(g))
        object.__setattr__(self, "bracket_terms", tuple(self.bracket_terms))

    @property
    def dim(self):
        return self.structure.shape[0]

    @property
    def is_abelian(self):
        return not np.any(self.structure)

    @property
    def is_orthonormal(self):
        return bool(np.allclose(self.gram, np.eye(self.dim), atol=TOL))

    def bracket(self, x, y):
        return np.einsum("i,j,ijk->k", x, y, self.structure)

    def ad(self, x):
        """Matrix of ``ad x`` acting on column vectors."""
        return np.einsum("i,ijk->kj", x, self.structure)

    def ad_basis(self):
        """Stack ``A`` with ``A[i] = ad(e_i)``."""
        return self.structure.transpose(0, 2, 1).copy()

    def inner(self, x, y):
        return float(np.asarray(x) @ self.gram @ np.asarray(y))

    def scaled(self, t):
        """Same metric, all structure constants multiplied by ``t``."""
        return MetricLieAlgebra(t * self.structure, self.gram, self.name)

    def with_gram(self, gram):
        return MetricLieAlgebra(self.structure, gram, self.name, self.bracket_terms)

    def change_basis(self, h):
        """Express the metric Lie algebra in the basis given by the columns of ``h``."""
        h = np.asarray(h, dtype=float)
        hinv = np.linalg.inv(h)
        c = np.einsum("ai,bj,abm,km->ijk", h, h, self.structure, hinv)
        return MetricLieAlgebra(c, h.T @ self.gram @ h, self.name)

    def to_notation(self):
        """Bracket notation string, e.g. ``(0,0,12)``; float coefficients use repr."""
        coords = [[] for _ in range(self.dim)]
        if self.bracket_terms:
            for i, j, k, coeff in self.bracket_terms:
                coords[k - 1].append((coeff, i, j))
        else:
            n = self.dim
            for i in range(n):
                for j in range(i + 1, n):
                    for k in range(n):
                        v = self.structure[i, j, k]
                        if v != 0.0:
                            coords[k].append((repr(float(v)), i + 1, j + 1))
        parts = []
        for mons in coords:
            if not mons:
                parts.append("0")
                continue
            s = ""
            for coeff, i, j in mons:
                mon = f"{i}{j}" if coeff in ("1", "1.0") else f"{coeff}*{i}{j}"
                if s and not mon.startswith("-"):
                    s += "+"
                s += mon
            parts.append(s)
        return "(" + ",".join(parts) + ")"


_MONOMIAL = re.compile(r"^(?:(?P<coef>.*?)\s*(?:\*|\s)\s*)?(?P<i>[1-9])(?P<j>[1-9])$")


def split_coordinates(text):
    """Split ``"(0,0,12)"`` into its coordinate strings at top-level commas."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    out.append(cur.strip())
    return out


def _split_monomials(coord):
    """Split a coordinate into signed monomials at top-level ``+``/``-``."""
    pieces, depth, cur = [], 0, ""
    prev = ""
    for ch in coord.strip():
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        boundary = (
            ch in "+-" and depth == 0 and cur.strip() and prev not in "*/(eE"
        )
        if boundary:
            pieces.append(cur.strip())
            cur = ch
        else:
            cur += ch
        if not ch.isspace():
            prev = ch
    if cur.strip():
        pieces.append(cur.strip())
    return pieces


def _parse_monomial(mon):
    sign = ""
    body = mon.strip()
    while body and body[0] in "+-":
        sign = "-" if (sign == "-") != (body[0] == "-") else ""
        body = body[1:].strip()
    m = _MONOMIAL.match(body)
    if m is None:
        raise BracketNotationError(f"cannot read monomial {mon!r}")
    coef = (m.group("coef") or "").strip()
    coef = coef or "1"
    if sign:
        coef = coef[1:] if coef.startswith("-") else "-" + coef
    try:
        evaluate_coefficient(coef)
    except ExpressionError as exc:
        raise BracketNotationError(str(exc)) from exc
    return int(m.group("i")), int(m.group("j")), coef


def parse_bracket_notation(terms, name=None):
    """Build a :class:`MetricLieAlgebra` (orthonormal basis) from bracket notation.

    ``terms`` is either a list of coordinate strings or a single string such
    as ``"(0,0,0,0,12+34)"``. Monomials with ``i > j`` (the tables write
    ``52`` for ``[X5, X2]``) are accepted and antisymmetrized.
    """
    coords = split_coordinates(terms) if isinstance(terms, str) else list(terms)
    n = len(coords)
    c = np.zeros((n, n, n))
    recorded = []
    for k, coord in enumerate(coords, start=1):
        coord = coord.strip()
        if coord in ("", "0"):
            continue
        for mon in _split_monomials(coord):
            i, j, coef = _parse_monomial(mon)
            if i == j:
                raise BracketNotationError(f"monomial {mon!r} has i = j")
            if i > n or j > n:
                raise BracketNotationError(f"index out of range in {mon!r} (dim {n})")
            v = evaluate_coefficient(coef)
            c[i - 1, j - 1, k - 1] += v
            c[j - 1, i - 1, k - 1] -= v
            recorded.append((i, j, k, coef))
    return MetricLieAlgebra(c, np.eye(n), name, tuple(recorded))


def jacobi_defect(alg):
    """Largest norm of ``[[x,y],z] + [[y,z],x] + [[z,x],y]`` over basis triples."""
    c = alg.structure
    t = np.einsum("ijm,mlk->ijlk", c, c)
    cyc = t + np.einsum("jlik->ijlk", t) + np.einsum("lijk->ijlk", t)
    return float(np.linalg.norm(cyc, axis=-1).max(initial=0.0))


def _span_brackets(c, basis):
    """Orthonormal basis of ``[g, V]`` for ``V`` spanned by columns of ``basis``."""
    if basis.shape[1] == 0:
        return basis
    vecs = np.einsum("ijk,jb->kib", c, basis).reshape(c.shape[0], -1)
    return column_space(vecs)


def lower_central_series(alg, max_steps=None):
    """Dimensions of ``C^1 = [g,g], C^2 = [g, C^1], ...`` down to zero.

    Raises :class:`NotNilpotentError` if the series stops decreasing first.
    """
    n = alg.dim
    c = alg.structure
    current = np.eye(n)
    dims = []
    for _ in range(max_steps or n + 1):
        nxt = _span_brackets(c, current)
        dims.append(nxt.shape[1])
        if nxt.shape[1] == 0:
            return dims
        if nxt.shape[1] == current.shape[1]:
            raise NotNilpotentError(
                f"lower central series stabilizes at dimension {nxt.shape[1]}"
            )
        current = nxt
    raise NotNilpotentError("lower central series did not terminate")


def nilpotency_step(alg):
    """Length of the lower central series: 1 for abelian, 2 for Heisenberg, ..."""
    return len(lower_central_series(alg))


def algebra_to_dict(alg):
    n = alg.dim
    if alg.bracket_terms:
        terms = [
            {"i": i, "j": j, "k": k, "coeff": coeff} for i, j, k, coeff in alg.bracket_terms
        ]
    else:
        terms = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    v = float(alg.structure[i, j, k])
                    if v != 0.0:
                        terms.append({"i": i + 1, "j": j + 1, "k": k + 1, "coeff": repr(v)})
    doc = {"dim": n, "terms": terms}
    if alg.name:
        doc["name"] = alg.name
    if not np.array_equal(alg.gram, np.eye(n)):
        doc["gram"] = alg.gram.tolist()
    return doc


def algebra_from_dict(doc):
    try:
        n = int(doc["dim"])
        raw_terms = doc.get("terms", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise BracketNotationError(f"malformed algebra document: {exc}") from exc
    if n < 1:
        raise BracketNotationError("dim must be positive")
    c = np.zeros((n, n, n))
    recorded = []
    for t in raw_terms:
        try:
            i, j, k = int(t["i"]), int(t["j"]), int(t["k"])
            coeff = str(t["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            raise BracketNotationError(f"malformed term {t!r}") from exc
        if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
            raise BracketNotationError(f"index out of range in term {t!r}")
        if i == j:
            raise BracketNotationError(f"term {t!r} has i = j")
        try:
            v = evaluate_coefficient(coeff)
        except ExpressionError as exc:
            raise BracketNotationError(str(exc)) from exc
        c[i - 1, j - 1, k - 1] += v
        c[j - 1, i - 1, k - 1] -= v
        recorded.append((i, j, k, coeff))
    gram = doc.get("gram")
    try:
        return MetricLieAlgebra(c, None if gram is None else np.array(gram, float),
                                doc.get("name"), tuple(recorded))
    except ValueError as exc:
        raise BracketNotationError(str(exc)) from exc


def algebra_to_json(alg, **kwargs):
    return json.dumps(algebra_to_dict(alg), **kwargs)


def algebra_from_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BracketNotationError(f"invalid JSON: {exc}") from exc
    return algebra_from_dict(doc)

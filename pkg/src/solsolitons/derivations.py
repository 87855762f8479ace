"""Derivation algebras, their symmetric and skew parts, and orthogonal automorphisms."""

import itertools
from dataclasses import dataclass
from math import factorial
from typing import NamedTuple

import numpy as np

from ._linalg import TOL, canonical_basis, nullspace

__all__ = [
    "DerivationReport",
    "AutomorphismCheck",
    "derivation_constraints",
    "derivation_defect",
    "derivation_space",
    "symmetric_derivations",
    "skew_derivations",
    "derivation_report",
    "is_orthogonal_automorphism",
    "signed_permutation_automorphisms",
]


def derivation_constraints(alg):
    """Matrix of ``D -> (D[e_i,e_j] - [De_i,e_j] - [e_i,De_j])_{i<j}`` on row-major ``vec(D)``."""
    n = alg.dim
    c = alg.structure
    eye = np.eye(n)
    # t[i, j, k, a, b]: coefficient of D[a, b] in the k-th component for the pair (i, j)
    t = (
        np.einsum("ka,ijb->ijkab", eye, c)
        - np.einsum("bi,ajk->ijkab", eye, c)
        - np.einsum("bj,iak->ijkab", eye, c)
    )
    iu, ju = np.triu_indices(n, k=1)
    return t[iu, ju].reshape(-1, n * n)


def derivation_defect(d, alg):
    """Largest norm of ``D[x,y] - [Dx,y] - [x,Dy]`` over basis pairs."""
    d = np.asarray(d, dtype=float)
    c = alg.structure
    lhs = np.einsum("ijm,km->ijk", c, d)
    rhs = np.einsum("li,ljk->ijk", d, c) + np.einsum("lj,ilk->ijk", d, c)
    return float(np.linalg.norm(lhs - rhs, axis=-1).max(initial=0.0))


def _solve(alg, extra_rows=None):
    n = alg.dim
    rows = derivation_constraints(alg)
    if extra_rows is not None:
        scale = max(1.0, float(np.abs(rows).max(initial=0.0)))
        rows = np.vstack([rows, scale * extra_rows]) if rows.size else extra_rows
    null = nullspace(rows)
    basis = canonical_basis(null.T)
    return basis.reshape(-1, n, n)


def _symmetry_rows(gram, sign):
    # rows of X -> G X + sign * X^T G, i.e. vanish iff X is G-symmetric (sign=-1)
    # or G-skew (sign=+1)
    n = gram.shape[0]
    eye = np.eye(n)
    t = np.einsum("pa,bq->pqab", gram, eye) + sign * np.einsum("bp,aq->pqab", eye, gram)
    return t.reshape(n * n, n * n)


def derivation_space(alg):
    """Frobenius-orthonormal basis of Der(alg), shape ``(d, n, n)``.

    The basis depends only on the subspace: it is the Gram-Schmidt
    orthonormalization of the reduced echelon basis, signs fixed so the first
    nonzero entry is positive.
    """
    return _solve(alg)


def symmetric_derivations(alg):
    """Basis of the derivations that are symmetric for the metric."""
    return _solve(alg, _symmetry_rows(alg.gram, -1.0))


def skew_derivations(alg):
    """Basis of the derivations that are skew-symmetric for the metric."""
    return _solve(alg, _symmetry_rows(alg.gram, 1.0))


@dataclass(frozen=True, eq=False)
class DerivationReport:
    der_basis: np.ndarray
    sym_basis: np.ndarray
    skew_basis: np.ndarray

    @property
    def dims(self):
        return len(self.der_basis), len(self.sym_basis), len(self.skew_basis)

    def to_dict(self):
        return {
            "dim_der": len(self.der_basis),
            "dim_sym": len(self.sym_basis),
            "dim_skew": len(self.skew_basis),
            "der_basis": np.round(self.der_basis, 12).tolist(),
            "sym_basis": np.round(self.sym_basis, 12).tolist(),
            "skew_basis": np.round(self.skew_basis, 12).tolist(),
        }


def derivation_report(alg):
    return DerivationReport(
        derivation_space(alg), symmetric_derivations(alg), skew_derivations(alg)
    )


class AutomorphismCheck(NamedTuple):
    ok: bool
    defect: float

    def __bool__(self):
        return self.ok


def is_orthogonal_automorphism(h, alg, tol=TOL):
    """Check ``h^T G h = G`` and ``h[x,y] = [hx,hy]`` on all basis pairs.

    Returns an :class:`AutomorphismCheck`, truthy when both defects are at
    most ``tol`` (relative to the size of the structure constants).
    """
    h = np.asarray(h, dtype=float)
    n = alg.dim
    if h.shape != (n, n):
        raise ValueError(f"expected a {n} x {n} matrix, got {h.shape}")
    g = alg.gram
    orth = float(np.abs(h.T @ g @ h - g).max())
    c = alg.structure
    lhs = np.einsum("ijm,km->ijk", c, h)
    rhs = np.einsum("ai,bj,abk->ijk", h, h, c)
    hom = float(np.abs(lhs - rhs).max(initial=0.0))
    scale = max(1.0, float(np.abs(c).max(initial=0.0)))
    defect = max(orth, hom / scale)
    return AutomorphismCheck(defect <= tol, defect)


def signed_permutation_automorphisms(alg, max_dim=8):
    """Every signed permutation matrix that is an orthogonal automorphism.

    Enumerates the ``2^n n!`` candidates, pruning a permutation as soon as it
    fails to match the absolute values of the structure constants. Assumes an
    orthonormal basis (signed permutations are then orthogonal).
    """
    n = alg.dim
    if n > max_dim:
        raise ValueError(f"dimension {n} too large for enumeration (max {max_dim})")
    if not alg.is_orthonormal:
        raise ValueError("signed permutation search needs an orthonormal basis")
    c = alg.structure
    scale = max(1.0, float(np.abs(c).max(initial=0.0)))
    tol = TOL * scale
    idx = np.argwhere(np.abs(c) > tol)
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=n)))
    out = []
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        # h e_i = s_i e_{p(i)} is an automorphism iff
        # s_i s_j s_k c[p i, p j, p k] = c[i, j, k]
        cp = c[np.ix_(p, p, p)]
        if np.abs(np.abs(cp) - np.abs(c)).max(initial=0.0) > tol:
            continue
        if idx.size:
            i, j, k = idx.T
            ratio = np.sign(c[i, j, k] * cp[i, j, k])
            prod = signs[:, i] * signs[:, j] * signs[:, k]
            good = np.all(prod == ratio, axis=1)
            sel = signs[good]
        else:
            sel = signs
        for s in sel:
            h = np.zeros((n, n))
            h[p, np.arange(n)] = s
            out.append(h)
    assert len(out) <= 2 ** n * factorial(n)
    return out

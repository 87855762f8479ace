"""Maximal abelian subalgebras of symmetric derivations and their Weyl groups.

A frame stores a basis ``A_1..A_k`` of a maximal abelian subspace ``a`` of
``p = Der ∩ sym`` together with the parameter coordinates ``p -> sum p_i A_i``.
Orthogonal automorphisms ``g`` normalizing ``a`` act on parameters by the
matrix ``M`` with ``g A(p) g^T = A(M p)``; the finite group of such ``M`` is
the Weyl action used for canonical forms and equivalence tests.
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._linalg import TOL, canonical_basis, nullspace, same_span
from .catalog import get_entry
from .derivations import (
    derivation_defect,
    is_orthogonal_automorphism,
    signed_permutation_automorphisms,
    symmetric_derivations,
)
from .domains import domain_membership, get_domain

__all__ = [
    "AbelianFrame",
    "WeylAction",
    "RankUndeterminedError",
    "maximal_abelian",
    "random_maximal_abelian",
    "frame_from_basis",
    "weyl_group",
    "canonical_form",
    "orbit",
    "plucker",
    "plane_canonical_form",
    "planes_equivalent",
    "lines_equivalent",
    "grassmannian_duality",
    "trace_form",
    "entry_frame",
    "entry_action",
    "entry_rank",
]

MAX_ATTEMPTS = 8
_ROUND = 7


class RankUndeterminedError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class AbelianFrame:
    basis: np.ndarray
    joint_eigenbasis: np.ndarray
    functionals: np.ndarray
    params: str = ""

    @property
    def rank(self):
        return len(self.basis)

    @property
    def dim(self):
        return self.basis.shape[1] if self.rank else 0

    def matrix(self, point):
        """The element ``sum p_i A_i`` of ``a`` for a parameter vector."""
        point = np.asarray(point, dtype=float)
        return np.tensordot(point, self.basis, axes=1)

    def coordinates(self, mat, tol=1e-8):
        """Parameters of ``mat`` in this frame; raises if ``mat`` is not in ``a``."""
        vecs = self.basis.reshape(self.rank, -1).T
        target = np.asarray(mat, dtype=float).ravel()
        coef, *_ = np.linalg.lstsq(vecs, target, rcond=None)
        resid = np.linalg.norm(vecs @ coef - target)
        if resid > tol * max(1.0, np.linalg.norm(target)):
            raise ValueError(f"matrix is not in the abelian frame (residual {resid:.2e})")
        return coef

    def to_dict(self):
        return {
            "rank": self.rank,
            "params": self.params,
            "basis": self.basis.tolist(),
            "functionals": self.functionals.tolist(),
        }


@dataclass(frozen=True, eq=False)
class WeylAction:
    frame: AbelianFrame
    generators: tuple
    induced_maps: tuple
    domain: str = None
    domain_coords: tuple = None
    trace_gram: np.ndarray = field(default=None, repr=False)

    @property
    def order(self):
        return len(self.induced_maps)

    @property
    def rank(self):
        return self.frame.rank

    def to_dict(self):
        return {
            "rank": self.rank,
            "order": self.order,
            "domain": self.domain,
            "induced_maps": [np.round(m, 12).tolist() for m in self.induced_maps],
        }


def trace_form(basis):
    """Gram matrix ``tr(A_i A_j)`` of a family of symmetric matrices."""
    basis = np.asarray(basis, dtype=float)
    return np.einsum("iab,jba->ij", basis, basis)


def _joint_eigen(basis, rng=None):
    """Orthogonal matrix diagonalizing every element of a commuting family."""
    k = len(basis)
    n = basis.shape[1]
    if k == 0:
        return np.eye(n), np.zeros((n, 0))
    rng = np.random.default_rng(12345) if rng is None else rng
    weights = rng.normal(size=k)
    _, vecs = np.linalg.eigh(np.tensordot(weights, basis, axes=1))
    # eigenvalues of A_i along each joint eigenvector, row l = functional l
    funcs = np.einsum("al,kab,bl->lk", vecs, basis, vecs)
    funcs[np.abs(funcs) < 1e-12] = 0.0
    return vecs, funcs


def frame_from_basis(basis, params=""):
    """Wrap a commuting family of symmetric matrices as an :class:`AbelianFrame`."""
    basis = np.asarray(basis, dtype=float)
    if basis.ndim != 3:
        raise ValueError("basis must be a stack of square matrices")
    for a in basis:
        if np.abs(a - a.T).max(initial=0.0) > TOL * max(1.0, np.abs(a).max()):
            raise ValueError("frame elements must be symmetric")
    for a, b in itertools.combinations(basis, 2):
        if np.abs(a @ b - b @ a).max(initial=0.0) > 1e-8:
            raise ValueError("frame elements must commute")
    vecs, funcs = _joint_eigen(basis)
    return AbelianFrame(basis, vecs, funcs, params)


def _centralizer(space, elems):
    """Subspace of span(space) commuting with every matrix in ``elems``."""
    space = np.asarray(space, dtype=float)
    if len(space) == 0 or len(elems) == 0:
        return space
    n = space.shape[1]
    blocks = [np.stack([(b @ x - x @ b).ravel() for b in space], axis=1) for x in elems]
    null = nullspace(np.vstack(blocks))
    vecs = (space.reshape(len(space), -1).T @ null).T
    if len(vecs) == 0:
        return vecs.reshape(0, n, n)
    return canonical_basis(vecs).reshape(-1, n, n)


def _is_abelian(space, tol=1e-8):
    return all(np.abs(a @ b - b @ a).max(initial=0.0) <= tol
               for a, b in itertools.combinations(space, 2))


def _diagonal_part(space):
    """Subspace of span(space) consisting of diagonal matrices."""
    space = np.asarray(space, dtype=float)
    n = space.shape[1]
    off = ~np.eye(n, dtype=bool)
    rows = space[:, off].T
    if rows.size == 0:
        return space
    null = nullspace(rows)
    vecs = (space.reshape(len(space), -1).T @ null).T
    if len(vecs) == 0:
        return vecs.reshape(0, n, n)
    return canonical_basis(vecs).reshape(-1, n, n)


def random_maximal_abelian(p_basis, seed=0, within=None):
    """Centralizer of a seeded random element of ``p``, resampled until abelian.

    With ``within`` the random element is drawn from that subspace and the
    centralizer is taken inside it.
    """
    p_basis = np.asarray(p_basis, dtype=float)
    if len(p_basis) == 0:
        raise ValueError("p_basis must be nonempty")
    space = p_basis if within is None else np.asarray(within, dtype=float)
    rng = np.random.default_rng(seed)
    for _ in range(MAX_ATTEMPTS):
        x = np.tensordot(rng.normal(size=len(space)), space, axes=1)
        cent = _centralizer(space, [x])
        if _is_abelian(cent):
            return cent
    raise RankUndeterminedError(
        f"centralizers did not commute after {MAX_ATTEMPTS} resamples")


def maximal_abelian(p_basis, seed=0, anchor="diagonal"):
    """Maximal abelian subspace of ``p`` as an :class:`AbelianFrame`.

    ``anchor="diagonal"`` (the default) first restricts to the centralizer of
    the diagonal part of ``p``; when that centralizer is already abelian the
    result is independent of ``seed``. ``anchor=None`` is the plain randomized
    route through :func:`random_maximal_abelian`.
    """
    p_basis = np.asarray(p_basis, dtype=float)
    if len(p_basis) == 0:
        n = p_basis.shape[1] if p_basis.ndim == 3 else 0
        return frame_from_basis(np.zeros((0, n, n)))
    if anchor is None:
        return frame_from_basis(random_maximal_abelian(p_basis, seed))
    if anchor != "diagonal":
        raise ValueError(f"unknown anchor {anchor!r}")
    diag = _diagonal_part(p_basis)
    cent = _centralizer(p_basis, list(diag)) if len(diag) else p_basis
    if _is_abelian(cent):
        return frame_from_basis(cent)
    return frame_from_basis(random_maximal_abelian(p_basis, seed, within=cent))


def _induced_batch(gs, frame, tol):
    """Parameter maps of ``A -> g A g^T`` for a stack of ``g``.

    Entries for ``g`` that do not normalize ``a`` are None.
    """
    gs = np.asarray(gs, dtype=float).reshape(-1, frame.dim, frame.dim)
    k = frame.rank
    vecs = frame.basis.reshape(k, -1).T
    pinv = np.linalg.pinv(vecs)
    conj = (gs[:, None] @ frame.basis[None] @ np.swapaxes(gs, 1, 2)[:, None])
    conj = np.moveaxis(conj.reshape(len(gs), k, -1), 1, 2)
    maps = np.einsum("ij,gjk->gik", pinv, conj)
    resid = np.linalg.norm(np.einsum("ij,gjk->gik", vecs, maps) - conj, axis=(1, 2))
    scale = np.maximum(1.0, np.linalg.norm(conj, axis=(1, 2)))
    return [m if r <= tol * s else None for m, r, s in zip(maps, resid, scale)]


def _induced(g, frame, tol):
    """Parameter map of ``A -> g A g^T``, or None when ``g`` does not normalize ``a``."""
    return _induced_batch([g], frame, tol)[0]


def _key(m):
    return tuple(np.round(m, _ROUND).ravel() + 0.0)


def _close(gens, k, group=None, limit=100000):
    """Closure of ``group`` (default the identity) under left multiplication by ``gens``."""
    if group is None:
        ident = np.eye(k)
        group = {_key(ident): ident}
    frontier = list(group.values())
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = g @ x
                key = _key(y)
                if key not in group:
                    group[key] = y
                    new.append(y)
        if len(group) > limit:
            raise RuntimeError("induced Weyl group is not finite within the search limit")
        frontier = new
    return group


def _generate(pairs, k):
    """Keep only the (automorphism, map) pairs that enlarge the generated group."""
    gens, maps = [], []
    group = _close([], k)
    for g, m in pairs:
        if _key(m) in group:
            continue
        gens.append(g)
        maps.append(m)
        group = _close(maps, k, group)
    return gens, [group[key] for key in sorted(group)]


def weyl_group(alg, frame, extra_generators=(), domain=None, domain_coords=None,
               tol=1e-8, search=True):
    """Finite group of parameter maps induced by automorphisms normalizing ``a``.

    Candidates are every signed-permutation orthogonal automorphism (when
    ``search`` is set) together with ``extra_generators``. Supplied extras
    must be orthogonal automorphisms that normalize ``a``.
    """
    pairs = []
    for g in extra_generators:
        g = np.asarray(g, dtype=float)
        check = is_orthogonal_automorphism(g, alg)
        if not check:
            raise ValueError(f"extra generator is not an orthogonal automorphism "
                             f"(defect {check.defect:.2e})")
        m = _induced(g, frame, tol)
        if m is None:
            raise ValueError("extra generator does not normalize the abelian frame")
        pairs.append((g, m))
    if search and alg.is_orthonormal:
        cands = signed_permutation_automorphisms(alg)
        if cands:
            pairs.extend((g, m) for g, m in zip(cands, _induced_batch(cands, frame, tol))
                         if m is not None)
    gens, group = _generate(pairs, frame.rank)
    return WeylAction(frame, tuple(gens), tuple(group), domain, domain_coords,
                      trace_form(frame.basis))


def orbit(point, action, signs=True):
    """Images of ``point`` under the induced maps (and their negatives)."""
    point = np.asarray(point, dtype=float)
    imgs = np.array([m @ point for m in action.induced_maps])
    if signs:
        imgs = np.vstack([imgs, -imgs])
    return imgs


def _lex_max(rows):
    keys = [tuple(np.round(r, 9) + 0.0) for r in rows]
    return rows[max(range(len(rows)), key=keys.__getitem__)]


def _in_domain(vec, action, tol):
    if action.domain is None:
        return False
    coords = vec if action.domain_coords is None else vec[list(action.domain_coords)]
    return domain_membership(action.domain, coords, tol)


def canonical_form(point, action, tol=1e-9):
    """Representative of the line through ``point`` modulo the Weyl action.

    The orbit of the normalized point under the induced maps and the global
    sign flip is computed; the lexicographically greatest member lying in the
    action's fundamental domain is returned. Without a domain, or if no member
    tests inside it, the lexicographic maximum of the whole orbit is used.
    """
    point = np.asarray(point, dtype=float)
    norm = np.linalg.norm(point)
    if norm == 0.0:
        raise ValueError("canonical_form needs a nonzero point")
    imgs = orbit(point / norm, action)
    # renormalize against roundoff from non-permutation maps
    imgs /= np.linalg.norm(imgs, axis=1, keepdims=True)
    inside = [v for v in imgs if _in_domain(v, action, tol)]
    return _lex_max(inside if inside else list(imgs)).copy()


def lines_equivalent(p, q, action, tol=1e-8):
    return bool(np.linalg.norm(canonical_form(p, action) - canonical_form(q, action)) <= tol)


def _as_plane(vectors, k):
    v = np.asarray(vectors, dtype=float)
    if v.ndim == 1:
        v = v[:, None]
    if v.shape[0] != k and v.shape[1] == k:
        v = v.T
    return v


def plucker(vectors, k=None):
    """Unit Plücker vector of the column span (ordered minors, lexicographic rows)."""
    v = np.asarray(vectors, dtype=float)
    if v.ndim == 1:
        v = v[:, None]
    k = v.shape[0] if k is None else k
    v = _as_plane(v, k)
    r = v.shape[1]
    minors = np.array([np.linalg.det(v[list(rows), :])
                       for rows in itertools.combinations(range(k), r)])
    nrm = np.linalg.norm(minors)
    if nrm < 1e-12:
        raise ValueError("vectors do not span an r-plane")
    return minors / nrm


def plane_canonical_form(vectors, action):
    """Lexicographic maximum over the signed orbit of the Plücker vector."""
    k = action.rank
    v = _as_plane(vectors, k)
    if v.shape[1] == 1:
        return canonical_form(v[:, 0], action)
    imgs = []
    for m in action.induced_maps:
        pl = plucker(m @ v, k)
        imgs.extend([pl, -pl])
    return _lex_max(imgs).copy()


def planes_equivalent(a, b, action, tol=1e-8):
    """Whether two r-planes in parameter space lie in one Weyl orbit."""
    k = action.rank
    va, vb = _as_plane(a, k), _as_plane(b, k)
    if va.shape[1] != vb.shape[1]:
        raise ValueError("planes must have the same dimension")
    if va.shape[1] == 1:
        return lines_equivalent(va[:, 0], vb[:, 0], action, tol)
    target = plucker(vb, k)
    for m in action.induced_maps:
        pl = plucker(m @ va, k)
        if min(np.linalg.norm(pl - target), np.linalg.norm(pl + target)) <= tol:
            return True
    return False


def grassmannian_duality(vectors, gram, tol=1e-8):
    """Orthocomplement (columns) of a subspace of parameter space under ``gram``.

    ``gram`` is the trace form of the frame. The input may be empty (shape
    ``(k, 0)``), which yields the whole space.
    """
    gram = np.asarray(gram, dtype=float)
    k = gram.shape[0]
    v = np.asarray(vectors, dtype=float).reshape(k, -1) if np.size(vectors) else np.zeros((k, 0))
    if v.shape[1] == 0:
        return np.eye(k)
    comp = nullspace(v.T @ gram)
    if comp.shape[1] == 0:
        return np.zeros((k, 0))
    return canonical_basis(comp.T).T


def _frame_in_a(frame):
    return frame.basis.reshape(frame.rank, -1).T


@lru_cache(maxsize=None)
def entry_frame(entry_id):
    """Frame of a catalog entry in the tabulated parameters.

    The tabulated family must be a commuting family of symmetric derivations
    spanning the same subspace as the computed maximal abelian subspace.
    """
    entry = get_entry(entry_id)
    alg = entry.algebra()
    fam = entry.family_matrices()
    p_basis = symmetric_derivations(alg)
    if fam is None:
        return maximal_abelian(p_basis)
    for a in fam:
        if derivation_defect(a, alg) > 1e-9:
            raise RuntimeError(f"{entry.id}: tabulated family is not a space of derivations")
    computed = maximal_abelian(p_basis)
    frame = frame_from_basis(fam, entry.params)
    if computed.rank != frame.rank or not same_span(_frame_in_a(computed), _frame_in_a(frame)):
        raise RuntimeError(f"{entry.id}: tabulated family does not match the computed a")
    frame.basis.setflags(write=False)
    return frame


@lru_cache(maxsize=None)
def entry_action(entry_id):
    entry = get_entry(entry_id)
    frame = entry_frame(entry.id)
    return weyl_group(entry.algebra(), frame, entry.extra_generators,
                      domain=entry.domain, domain_coords=entry.domain_coords)


def entry_rank(entry_id, seed=0):
    """Rank of a catalog entry through the randomized centralizer route."""
    alg = get_entry(entry_id).algebra()
    p_basis = symmetric_derivations(alg)
    if len(p_basis) == 0:
        return 0
    return len(random_maximal_abelian(p_basis, seed))


def domain_for(action):
    return None if action.domain is None else get_domain(action.domain)

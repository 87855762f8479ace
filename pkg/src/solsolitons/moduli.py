"""Solvable extensions of nilsolitons and the moduli slices Sol(m).

Given a nilsoliton ``n`` with ``Ric = c I + D1`` and commuting symmetric
derivations ``A_1..A_r``, the extension ``s = a + n`` has ``[A_i, X] = A_i X``,
``a`` abelian and orthogonal to ``n``, and ``<A_i, A_j> = -(1/c) tr(A_i A_j)``.
It is a soliton with ``Ric = c I + D0`` where ``D0`` kills ``a`` and equals
``D1 - ad H`` on ``n``; ``H`` is the mean curvature vector.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._linalg import canonical_basis, project_coefficients
from .algebra import MetricLieAlgebra
from .catalog import catalog_ids, get_entry
from .curvature import negativity_scan, orthonormal_frame, ricci_fast, ricci_oracle
from .derivations import derivation_defect
from .soliton import SOLITON_TOL, einstein_check, nilsoliton_certificate
from .weyl import (
    entry_action,
    entry_frame,
    lines_equivalent,
    planes_equivalent,
)

__all__ = [
    "ExtensionError",
    "SolitonVerdict",
    "SolsolitonExtension",
    "extend",
    "extend_entry",
    "mean_curvature",
    "soliton_residual",
    "einstein_by_membership",
    "equivalent",
    "ModuliComponent",
    "ModuliSlice",
    "moduli_slice",
    "einstein_line",
    "NegativityReport",
    "negativity_near_einstein",
    "OrthogonalDirectionReport",
    "orthogonal_direction_check",
]


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class SolitonVerdict:
    c: float
    D0: np.ndarray
    residual: float
    derivation_defect: float
    is_soliton: bool
    is_einstein: bool
    einstein_residual: float


@dataclass(frozen=True, eq=False)
class SolsolitonExtension:
    algebra: MetricLieAlgebra
    entry_id: str
    subspace: tuple
    c: float
    D1: np.ndarray
    a_gram: np.ndarray
    H: np.ndarray
    verdict: SolitonVerdict = field(default=None, repr=False)

    @property
    def r(self):
        return len(self.subspace)

    @property
    def D0(self):
        return self.verdict.D0

    def to_dict(self):
        from .algebra import algebra_to_dict

        return {
            "entry": self.entry_id,
            "r": self.r,
            "subspace": [np.asarray(a).tolist() for a in self.subspace],
            "algebra": algebra_to_dict(self.algebra),
            "c": self.c,
            "H": self.H.tolist(),
            "soliton_residual": self.verdict.residual,
            "is_soliton": self.verdict.is_soliton,
            "is_einstein": self.verdict.is_einstein,
            "einstein_residual": self.verdict.einstein_residual,
        }


def _validate_subspace(subspace, alg, tol):
    mats = np.asarray(subspace, dtype=float)
    if mats.ndim == 2:
        mats = mats[None]
    n = alg.dim
    if mats.ndim != 3 or mats.shape[1:] != (n, n):
        raise ExtensionError(f"subspace must be a list of {n}x{n} matrices")
    for a in mats:
        scale = max(1.0, float(np.abs(a).max()))
        if np.abs(a - a.T).max() > tol * scale:
            raise ExtensionError("subspace elements must be symmetric")
        if derivation_defect(a, alg) > tol * scale:
            raise ExtensionError("subspace elements must be derivations")
    for i in range(len(mats)):
        for j in range(i):
            if np.abs(mats[i] @ mats[j] - mats[j] @ mats[i]).max() > tol:
                raise ExtensionError("subspace elements must commute")
    if np.linalg.matrix_rank(mats.reshape(len(mats), -1), tol=1e-10) < len(mats):
        raise ExtensionError("subspace basis is linearly dependent")
    return mats


def extend(cert, alg, subspace, entry_id=None, tol=1e-8):
    """Solvable extension of the nilsoliton ``alg`` by the given derivations."""
    if not alg.is_orthonormal:
        raise ExtensionError("the nilradical must be given in an orthonormal basis")
    if not cert.c < 0:
        raise ExtensionError("the soliton constant must be negative")
    mats = _validate_subspace(subspace, alg, tol)
    r, n = len(mats), alg.dim
    dim = r + n
    c = np.zeros((dim, dim, dim))
    c[r:, r:, r:] = alg.structure
    for i, a in enumerate(mats):
        # [A_i, e_j] = sum_k a[k, j] e_k
        c[i, r:, r:] = a.T
        c[r:, i, r:] = -a.T
    a_gram = -np.einsum("iab,jba->ij", mats, mats) / cert.c
    gram = np.eye(dim)
    gram[:r, :r] = a_gram
    name = None if entry_id is None else f"{entry_id}+a{r}"
    s = MetricLieAlgebra(c, gram, name=name)
    h = np.linalg.solve(a_gram, np.trace(mats, axis1=1, axis2=2))
    ext = SolsolitonExtension(s, entry_id, tuple(mats), float(cert.c),
                              np.asarray(cert.D1), a_gram, h)
    object.__setattr__(ext, "verdict", soliton_residual(ext))
    return ext


def mean_curvature(ext):
    """Coordinates of ``H`` in the basis ``A_i``, defined by ``<H, A> = tr ad A``."""
    mats = np.asarray(ext.subspace)
    return np.linalg.solve(ext.a_gram, np.trace(mats, axis1=1, axis2=2))


def _on_frame(alg, op):
    e = orthonormal_frame(alg)
    return np.linalg.inv(e) @ op @ e


def soliton_residual(ext, tol=SOLITON_TOL):
    """Oracle check of ``Ric = c I + D0`` on the extension."""
    r = ext.r
    s = ext.algebra
    mats = np.asarray(ext.subspace)
    h = mean_curvature(ext)
    d0 = np.zeros((s.dim, s.dim))
    d0[r:, r:] = ext.D1 - np.tensordot(h, mats, axes=1)
    ric = ricci_oracle(s)
    resid = float(np.linalg.norm(_on_frame(s, ric - ext.c * np.eye(s.dim) - d0)))
    scale = max(1.0, float(np.abs(s.structure).max()))
    ddef = derivation_defect(d0, s) / scale
    ein = einstein_check(s, tol, oracle=True)
    return SolitonVerdict(ext.c, d0, resid, ddef, resid <= tol and ddef <= tol,
                          ein.is_einstein, ein.residual)


def einstein_by_membership(cert, subspace, tol=1e-8):
    """Einstein criterion: ``D1`` lies in the span of the subspace."""
    mats = np.asarray(subspace, dtype=float)
    if mats.ndim == 2:
        mats = mats[None]
    _, resid = project_coefficients(mats.reshape(len(mats), -1), np.asarray(cert.D1).ravel())
    return bool(resid <= tol * max(1.0, np.linalg.norm(cert.D1)))


def extend_entry(entry_id, points, tol=1e-8):
    """Extension of a catalog entry by the span of parameter vectors."""
    entry = get_entry(entry_id)
    frame = entry_frame(entry.id)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != frame.rank:
        raise ExtensionError(f"{entry.id} has rank {frame.rank}; got points of length {pts.shape[1]}")
    mats = np.array([frame.matrix(p) for p in pts])
    return extend(_certificate(entry.id), entry.algebra(), mats, entry.id, tol)


@lru_cache(maxsize=None)
def _certificate(entry_id):
    return nilsoliton_certificate(get_entry(entry_id).algebra())


def _to_params(sub, action):
    arr = np.asarray(sub, dtype=float)
    k = action.rank
    if arr.ndim == 3 or (arr.ndim == 2 and arr.shape == (action.frame.dim,) * 2 and k != arr.shape[0]):
        arr = arr if arr.ndim == 3 else arr[None]
        return np.array([action.frame.coordinates(a) for a in arr]).T
    if arr.ndim == 1:
        return arr[:, None]
    return arr if arr.shape[0] == k else arr.T


def equivalent(action, subspace_a, subspace_b, tol=1e-8):
    """Whether two subspaces of ``a`` give isometric extensions up to scaling.

    ``action`` is a :class:`~solsolitons.weyl.WeylAction` or a catalog id.
    Subspaces are parameter vectors (columns or a single vector) or matrices
    of ``a``.
    """
    if isinstance(action, str):
        action = entry_action(get_entry(action).id)
    va, vb = _to_params(subspace_a, action), _to_params(subspace_b, action)
    if va.shape[1] != vb.shape[1]:
        raise ValueError("subspaces must have the same dimension")
    if va.shape[1] == 1:
        return lines_equivalent(va[:, 0], vb[:, 0], action, tol)
    return planes_equivalent(va, vb, action, tol)


@dataclass(frozen=True)
class ModuliComponent:
    entry_id: str
    r: int
    nil_dim: int
    rank: int
    parameter_dim: int
    weyl_order: int = None
    einstein: str = ""
    domain: str = None
    unclassified: bool = False

    def to_dict(self):
        return dict(self.__dict__)


@dataclass(frozen=True)
class ModuliSlice:
    m: int
    components: tuple

    def keys(self):
        return [(c.entry_id, c.r, c.parameter_dim) for c in self.components if not c.unclassified]

    def to_dict(self):
        return {"m": self.m, "components": [c.to_dict() for c in self.components]}


def _einstein_flag(entry, r, k):
    if r == 0:
        return "always" if entry.algebra().is_abelian else "never"
    if r == k:
        return "always"
    return "proper"


def moduli_slice(m):
    """Components ``(entry, r)`` of the solsolitons of dimension ``m``.

    Every catalog nilsoliton of dimension ``n = m - r`` with rank at least
    ``r`` contributes ``Gr_r(a)/W``, of dimension ``r (k - r)``. For ``m = 7``
    the nilsolitons of dimension seven themselves are not classified and are
    represented by one placeholder component.
    """
    if not 2 <= m <= 7:
        raise ValueError("ambient dimension must be between 2 and 7")
    comps = []
    if m == 7:
        comps.append(ModuliComponent("Nil(7)", 0, 7, None, None,
                                     einstein="never", unclassified=True))
    for r in range(m + 1):
        for eid in catalog_ids():
            entry = get_entry(eid)
            n, k = entry.dim, entry.expected_rank
            if n != m - r or r > k:
                continue
            weyl = entry_action(eid).order if r >= 1 else None
            domain = entry.domain if 0 < r < k and (r == 1 or r == k - 1) else None
            comps.append(ModuliComponent(eid, r, n, k, r * (k - r), weyl,
                                         _einstein_flag(entry, r, k), domain))
    return ModuliSlice(m, tuple(comps))


def einstein_line(entry_id):
    """Parameter vector of ``D1`` in the entry's abelian frame."""
    frame = entry_frame(get_entry(entry_id).id)
    return frame.coordinates(_certificate(get_entry(entry_id).id).D1)


@dataclass(frozen=True)
class NegativityReport:
    entry_id: str
    einstein: object
    neighbors: tuple

    @property
    def all_negative(self):
        return self.einstein.all_negative and all(s.all_negative for _, s in self.neighbors)


def negativity_near_einstein(entry_id, samples=4096, seed=0, neighbors=10, radius=0.05):
    """Sectional-curvature scans of the Einstein line and nearby lines.

    Neighbor lines are the Einstein direction (normalized) moved by a seeded
    random vector of length at most ``radius``; each must be a non-Einstein
    solsoliton for the scan to count.
    """
    eid = get_entry(entry_id).id
    p0 = einstein_line(eid)
    p0 = p0 / np.linalg.norm(p0)
    ext0 = extend_entry(eid, [p0])
    scan0 = negativity_scan(ext0.algebra, samples=samples, seed=seed)
    rng = np.random.default_rng(seed)
    out = []
    for i in range(neighbors):
        step = rng.normal(size=p0.size)
        step *= radius * rng.uniform(0.2, 1.0) / np.linalg.norm(step)
        ext = extend_entry(eid, [p0 + step])
        if not ext.verdict.is_soliton or ext.verdict.is_einstein:
            raise RuntimeError(f"neighbor {i} of {eid} is not a non-Einstein solsoliton")
        out.append((ext, negativity_scan(ext.algebra, samples=samples, seed=seed + 1 + i)))
    return NegativityReport(eid, scan0, tuple(out))


@dataclass(frozen=True)
class OrthogonalDirectionReport:
    entry_id: str
    direction: np.ndarray
    nil_block_defect: float
    eigenvalues: np.ndarray

    @property
    def indefinite(self):
        return bool(self.eigenvalues.min() < -1e-9 and self.eigenvalues.max() > 1e-9)


def orthogonal_direction_check(entry_id):
    """Extension by a direction of ``a`` trace-orthogonal to ``D1``.

    Returns the defect of ``Ric(s)|n = Ric(n)`` and the spectrum of ``Ric(s)``.
    The direction is the first canonical basis vector of the orthocomplement.
    """
    entry = get_entry(entry_id)
    frame = entry_frame(entry.id)
    if frame.rank < 2:
        raise ValueError(f"{entry.id} has rank {frame.rank}; no orthogonal direction")
    d1 = _certificate(entry.id).D1
    pairing = np.einsum("kab,ba->k", frame.basis, d1)
    normal = canonical_basis(np.eye(frame.rank) - np.outer(pairing, pairing) / (pairing @ pairing))
    direction = normal[0]
    ext = extend_entry(entry.id, [direction])
    s = ext.algebra
    ric = _on_frame(s, ricci_fast(s))
    block = ric[1:, 1:]
    defect = float(np.linalg.norm(block - ricci_fast(entry.algebra())))
    return OrthogonalDirectionReport(entry.id, direction, defect,
                                     np.linalg.eigvalsh(0.5 * (ric + ric.T)))

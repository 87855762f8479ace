"""Curvature of left-invariant metrics from structure constants.

Two independent routes to the Ricci operator are provided: the Koszul
formula followed by the full Riemann tensor (:func:`ricci_oracle`), and the
closed form in an orthonormal frame (:func:`ricci_fast`). Conventions::

    R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
    Ric(X,Y) = tr(Z -> R(Z,X)Y)
    K(X,Y) = <R(X,Y)Y, X> / (|X|^2 |Y|^2 - <X,Y>^2)

so round spheres have positive curvature and the Heisenberg center direction
has positive Ricci curvature.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import TOL

__all__ = [
    "CurvatureReport",
    "ScanResult",
    "orthonormal_frame",
    "levi_civita",
    "riemann_tensor",
    "ricci_oracle",
    "ricci_fast",
    "ricci_bilinear",
    "scalar_curvature",
    "sectional_curvature",
    "sectional_curvatures",
    "negativity_scan",
    "curvature_report",
]


def orthonormal_frame(alg):
    """Columns ``E`` with ``E^T G E = I``, from the Cholesky factor of the Gram matrix."""
    chol = np.linalg.cholesky(alg.gram)
    return np.linalg.inv(chol).T


def levi_civita(alg):
    """Connection coefficients ``Gamma[i,j,k]`` with ``nabla_{e_i} e_j = sum_k Gamma[i,j,k] e_k``."""
    g = alg.gram
    low = np.einsum("ijm,mk->ijk", alg.structure, g)  # <[e_i,e_j], e_k>
    koszul = 0.5 * (low - np.einsum("jki->ijk", low) + np.einsum("kij->ijk", low))
    return koszul @ np.linalg.inv(g)


def riemann_tensor(alg):
    """``R[i,j,k,l]`` with ``R(e_i,e_j)e_k = sum_l R[i,j,k,l] e_l``."""
    gam = levi_civita(alg)
    nab = gam.transpose(0, 2, 1)  # nab[i] is the matrix of nabla_{e_i}
    comp = np.einsum("iab,jbc->ijac", nab, nab)
    op = comp - comp.transpose(1, 0, 2, 3) - np.einsum("ijm,mac->ijac", alg.structure, nab)
    return op.transpose(0, 1, 3, 2)


def ricci_bilinear(alg):
    """Ricci tensor as a bilinear form in the algebra's basis, via the Riemann tensor."""
    r = riemann_tensor(alg)
    ric = np.einsum("ijki->jk", r)
    return 0.5 * (ric + ric.T)


def ricci_oracle(alg):
    """Ricci operator obtained by contracting the Koszul-built Riemann tensor."""
    return np.linalg.solve(alg.gram, ricci_bilinear(alg))


def ricci_fast(alg):
    """Ricci operator from the closed-form expression in an orthonormal frame.

    With ``H`` the mean curvature vector (``<H,X> = tr ad X``) and ``B`` the
    Killing form::

        Ric(X,Y) = -1/2 sum_i <[X,e_i],[Y,e_i]> - 1/2 B(X,Y)
                   + 1/4 sum_ij <[e_i,e_j],X><[e_i,e_j],Y> - <S(ad H) X, Y>
    """
    e = orthonormal_frame(alg)
    if alg.is_orthonormal:
        c = np.asarray(alg.structure)
    else:
        c = np.einsum("ai,bj,abm,km->ijk", e, e, alg.structure, np.linalg.inv(e))
    t1 = -0.5 * np.einsum("xik,yik->xy", c, c)
    killing = np.einsum("xik,yki->xy", c, c)
    t3 = 0.25 * np.einsum("ijx,ijy->xy", c, c)
    h = np.einsum("xii->x", c)
    s = np.einsum("h,hxy->xy", h, c)
    ric = t1 - 0.5 * killing + t3 - 0.5 * (s + s.T)
    ric = 0.5 * (ric + ric.T)
    if alg.is_orthonormal:
        return ric
    return e @ ric @ np.linalg.inv(e)


def scalar_curvature(alg, ricci=None):
    ricci = ricci_fast(alg) if ricci is None else ricci
    return float(np.trace(ricci))


def _lowered_riemann(alg):
    return np.einsum("ijkl,lm->ijkm", riemann_tensor(alg), alg.gram)


def sectional_curvatures(alg, xs, ys, rlow=None):
    """Vectorized sectional curvature for the planes spanned by rows of ``xs``, ``ys``."""
    xs = np.atleast_2d(xs)
    ys = np.atleast_2d(ys)
    rlow = _lowered_riemann(alg) if rlow is None else rlow
    g = alg.gram
    num = np.einsum("pi,pj,pk,pm,ijkm->p", xs, ys, ys, xs, rlow)
    xx = np.einsum("pi,ij,pj->p", xs, g, xs)
    yy = np.einsum("pi,ij,pj->p", ys, g, ys)
    xy = np.einsum("pi,ij,pj->p", xs, g, ys)
    return num / (xx * yy - xy ** 2)


def sectional_curvature(alg, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    g = alg.gram
    area = (x @ g @ x) * (y @ g @ y) - (x @ g @ y) ** 2
    if area <= TOL * max(1.0, (x @ g @ x) * (y @ g @ y)):
        raise ValueError("vectors span a degenerate plane")
    return float(sectional_curvatures(alg, x, y)[0])


@dataclass(frozen=True)
class ScanResult:
    all_negative: bool
    min: float
    max: float
    planes: int


def negativity_scan(alg, samples=256, seed=0, tol=TOL):
    """Sectional curvature extrema over seeded random planes plus all coordinate planes."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    n = alg.dim
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((samples, n))
    ys = rng.standard_normal((samples, n))
    iu, ju = np.triu_indices(n, k=1)
    eye = np.eye(n)
    xs = np.vstack([xs, eye[iu]])
    ys = np.vstack([ys, eye[ju]])
    ks = sectional_curvatures(alg, xs, ys)
    return ScanResult(bool(ks.max() < -tol), float(ks.min()), float(ks.max()), len(ks))


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    ricci_operator: np.ndarray
    ricci_eigenvalues: np.ndarray
    signature: tuple
    min_sectional_sample: float
    scalar_curvature: float

    def to_dict(self):
        return {
            "ricci_operator": np.round(self.ricci_operator, 12).tolist(),
            "ricci_eigenvalues": np.round(self.ricci_eigenvalues, 12).tolist(),
            "signature": list(self.signature),
            "min_sectional_sample": round(self.min_sectional_sample, 12),
            "scalar_curvature": round(self.scalar_curvature, 12),
        }


def curvature_report(alg, samples=256, seed=0, tol=TOL):
    ric = ricci_fast(alg)
    e = orthonormal_frame(alg)
    # eigenvalues of the operator via its symmetric form in an orthonormal frame
    eig = np.sort(np.linalg.eigvalsh(np.linalg.inv(e) @ ric @ e))
    scale = max(1.0, float(np.abs(eig).max(initial=0.0)))
    neg = int(np.sum(eig < -tol * scale))
    pos = int(np.sum(eig > tol * scale))
    scan = negativity_scan(alg, samples, seed)
    return CurvatureReport(ric, eig, (neg, len(eig) - neg - pos, pos), scan.min,
                           float(np.trace(ric)))

"""Small dense linear-algebra kernels shared by the structural modules."""

import numpy as np

#: relative tolerance used by every structural predicate
TOL = 1e-9
#: singular values below RANK_RTOL * sigma_max count as zero
RANK_RTOL = 1e-8
#: singular values below RANK_ATOL are zero regardless of the largest one
RANK_ATOL = 1e-11


def _rank(s, rtol, atol):
    if s.size == 0:
        return 0
    return int(np.sum(s > max(rtol * s[0], atol)))


def nullspace(mat, rtol=RANK_RTOL, atol=RANK_ATOL):
    """Orthonormal basis (as columns) of the kernel of ``mat``."""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    ncols = mat.shape[1]
    if mat.size == 0:
        return np.eye(ncols)
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    rank = _rank(s, rtol, atol)
    return vh[rank:].T.copy()


def column_space(mat, rtol=RANK_RTOL, atol=RANK_ATOL):
    """Orthonormal basis (as columns) of the range of ``mat``."""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    if mat.size == 0:
        return np.zeros((mat.shape[0], 0))
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    rank = _rank(s, rtol, atol)
    return u[:, :rank].copy()


def canonical_basis(rows, tol=1e-9):
    """Deterministic orthonormal basis of the row span of ``rows``.

    The span is first brought to reduced row echelon form, which depends only
    on the subspace, then Gram-Schmidt orthonormalized in echelon order. Each
    vector is sign-fixed so its first nonzero entry is positive.
    """
    rows = np.atleast_2d(np.array(rows, dtype=float))
    if rows.shape[0] == 0:
        return rows.reshape(0, rows.shape[1])
    m = rows.copy()
    nrows, ncols = m.shape
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == nrows:
            break
        p = pivot_row + int(np.argmax(np.abs(m[pivot_row:, col])))
        if abs(m[p, col]) < tol:
            m[pivot_row:, col] = 0.0
            continue
        m[[pivot_row, p]] = m[[p, pivot_row]]
        m[pivot_row] /= m[pivot_row, col]
        others = np.arange(nrows) != pivot_row
        m[others] -= np.outer(m[others, col], m[pivot_row])
        pivot_row += 1
    echelon = m[:pivot_row]
    if echelon.shape[0] == 0:
        return echelon
    q, _ = np.linalg.qr(echelon.T)
    basis = q.T
    for v in basis:
        nz = np.flatnonzero(np.abs(v) > 1e-12)
        if nz.size and v[nz[0]] < 0:
            v *= -1.0
    basis[np.abs(basis) < 1e-15] = 0.0
    return basis


def same_span(a, b, tol=1e-8):
    """True when the column spans of ``a`` and ``b`` coincide."""
    qa = column_space(a)
    qb = column_space(b)
    if qa.shape[1] != qb.shape[1]:
        return False
    if qa.shape[1] == 0:
        return True
    return np.linalg.norm(qa @ qa.T - qb @ qb.T) <= tol


def project_coefficients(basis, target):
    """Least-squares coordinates of ``target`` in the span of ``basis``.

    ``basis`` is a stack of arrays of the same shape as ``target``. Returns the
    coordinate vector and the Frobenius norm of the residual.
    """
    basis = np.asarray(basis, dtype=float)
    target = np.asarray(target, dtype=float)
    if basis.shape[0] == 0:
        return np.zeros(0), float(np.linalg.norm(target))
    mat = basis.reshape(basis.shape[0], -1).T
    coef, *_ = np.linalg.lstsq(mat, target.ravel(), rcond=None)
    resid = float(np.linalg.norm(mat @ coef - target.ravel()))
    return coef, resid

"""Nilsoliton certificates, eigenvalue types and the Einstein test."""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .algebra import nilpotency_step
from .curvature import orthonormal_frame, ricci_fast, ricci_oracle
from .derivations import derivation_constraints, derivation_space

__all__ = [
    "NotNilsolitonError",
    "EigenvalueType",
    "NilsolitonCertificate",
    "EinsteinCheck",
    "nilsoliton_certificate",
    "eigenvalue_type",
    "einstein_check",
]

SOLITON_TOL = 1e-8


class NotNilsolitonError(ValueError):
    """The metric does not satisfy ``Ric = cI + D`` with ``c < 0`` in this basis."""


@dataclass(frozen=True)
class EigenvalueType:
    """Coprime positive integers ``k_1 < ... < k_r`` with multiplicities ``d_i``."""

    ks: tuple
    ds: tuple

    def __post_init__(self):
        ks, ds = tuple(int(k) for k in self.ks), tuple(int(d) for d in self.ds)
        if len(ks) != len(ds) or not ks:
            raise ValueError("ks and ds must be nonempty and of equal length")
        if any(b <= a for a, b in zip(ks, ks[1:])) or ks[0] <= 0:
            raise ValueError(f"ks must be strictly increasing positive integers: {ks}")
        if any(d <= 0 for d in ds):
            raise ValueError("multiplicities must be positive")
        if reduce(math.gcd, ks) != 1:
            raise ValueError(f"ks must have no common divisor: {ks}")
        object.__setattr__(self, "ks", ks)
        object.__setattr__(self, "ds", ds)

    @property
    def dim(self):
        return sum(self.ds)

    @property
    def multiplicity_free(self):
        return all(d == 1 for d in self.ds)

    @classmethod
    def parse(cls, text):
        """Read ``(1<2;2,1)``; ``1,...,1`` expands to one per eigenvalue."""
        m = re.fullmatch(r"\s*\(([^;]*);([^)]*)\)\s*", text)
        if m is None:
            raise ValueError(f"cannot parse eigenvalue type {text!r}")
        ks = [int(k) for k in m.group(1).split("<")]
        raw = m.group(2).replace(" ", "")
        if re.fullmatch(r"1,\.\.\.,?1|1,\.\.\.", raw):
            ds = [1] * len(ks)
        else:
            ds = [int(d) for d in raw.split(",")]
        return cls(tuple(ks), tuple(ds))

    def __str__(self):
        return "(" + "<".join(map(str, self.ks)) + ";" + ",".join(map(str, self.ds)) + ")"


@dataclass(frozen=True, eq=False)
class NilsolitonCertificate:
    c: float
    D1: np.ndarray
    residual: float
    ricci: np.ndarray

    @property
    def eigen_type(self):
        return eigenvalue_type(self)

    def to_dict(self):
        return {
            "c": self.c,
            "D1_spectrum": np.round(np.sort(np.linalg.eigvals(self.D1).real), 12).tolist(),
            "residual": self.residual,
            "eigen_type": str(self.eigen_type),
        }


def nilsoliton_certificate(alg, tol=SOLITON_TOL):
    """Certify ``Ric = cI + D1`` with ``D1`` a derivation and ``c < 0``.

    ``c`` minimizes the derivation defect of ``Ric - cI`` (affine in ``c``, so
    the one-dimensional least squares solution is exact). ``D1`` is the
    Frobenius projection of ``Ric - cI`` onto Der, and the residual is the
    norm of what the projection removes. Abelian algebras use ``c = -1``,
    ``D1 = I``.
    """
    nilpotency_step(alg)
    n = alg.dim
    ric = ricci_fast(alg)
    if alg.is_abelian:
        resid = float(np.linalg.norm(ric))
        if resid > tol:
            raise NotNilsolitonError(f"abelian algebra with nonzero Ricci ({resid:.3g})")
        return NilsolitonCertificate(-1.0, np.eye(n), resid, ric)
    m = derivation_constraints(alg)
    r = m @ ric.ravel()
    q = m @ np.eye(n).ravel()
    c = float(q @ r / (q @ q))
    target = ric - c * np.eye(n)
    der = derivation_space(alg)
    flat = der.reshape(len(der), -1)
    d1 = (flat.T @ (flat @ target.ravel())).reshape(n, n)
    resid = float(np.linalg.norm(target - d1))
    if resid > tol:
        raise NotNilsolitonError(
            f"not a nilsoliton in this basis (residual {resid:.3g})"
        )
    if not c < 0:
        raise NotNilsolitonError(f"soliton constant {c:.6g} is not negative")
    return NilsolitonCertificate(c, d1, resid, ric)


def eigenvalue_type(cert, tol=1e-6, max_denominator=64):
    """Eigenvalue type of the soliton derivation, rescaled to coprime integers."""
    d1 = np.asarray(cert.D1 if hasattr(cert, "D1") else cert, dtype=float)
    eig = np.linalg.eigvals(d1)
    if np.abs(eig.imag).max() > tol:
        raise ValueError("soliton derivation has non-real spectrum")
    eig = np.sort(eig.real)
    if eig[0] <= tol * max(1.0, abs(eig[-1])):
        raise ValueError("soliton derivation is not positive")
    clusters = []
    for v in eig:
        if clusters and abs(v - clusters[-1][0]) <= tol * eig[-1]:
            clusters[-1][1] += 1
        else:
            clusters.append([v, 1])
    ratios = []
    for v, _ in clusters:
        x = v / clusters[0][0]
        f = Fraction(x).limit_denominator(max_denominator)
        if abs(float(f) - x) > tol * max(1.0, x):
            raise ValueError(f"eigenvalues not rationally related (ratio {x!r})")
        ratios.append(f)
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in ratios))
    ints = [int(f * den) for f in ratios]
    g = reduce(math.gcd, ints)
    return EigenvalueType(tuple(k // g for k in ints), tuple(m for _, m in clusters))


@dataclass(frozen=True)
class EinsteinCheck:
    is_einstein: bool
    c: float
    residual: float


def einstein_check(alg, tol=SOLITON_TOL, oracle=False):
    """``Ric`` within ``tol`` (Frobenius, orthonormal frame) of ``(tr Ric / n) I``."""
    ric = ricci_oracle(alg) if oracle else ricci_fast(alg)
    n = alg.dim
    c = float(np.trace(ric) / n)
    e = orthonormal_frame(alg)
    sym = np.linalg.inv(e) @ ric @ e
    resid = float(np.linalg.norm(sym - c * np.eye(n)))
    return EinsteinCheck(resid <= tol, c, resid)

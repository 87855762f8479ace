"""Fundamental-domain predicates for projectivized abelian families.

Each domain is a semialgebraic subset of a unit sphere (the ``D`` set lives in
R^4) that picks representatives of lines modulo a Weyl group.  Predicates are
written exactly as the inequalities read, with equalities and non-strict
inequalities relaxed by ``tol`` and strict ones tightened by it.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "FundamentalDomain",
    "DOMAINS",
    "domain_membership",
    "get_domain",
    "UnknownDomainError",
]

DOMAIN_TOL = 1e-9


class UnknownDomainError(KeyError):
    pass


@dataclass(frozen=True)
class FundamentalDomain:
    id: str
    dim: int
    predicate: Callable
    description: str
    on_sphere: bool = True

    def contains(self, point, tol=DOMAIN_TOL):
        return domain_membership(self.id, point, tol)


class _Cmp:
    """Tolerant comparisons, so predicates read like the inequalities."""

    def __init__(self, tol):
        self.tol = tol

    def gt(self, x, y=0.0):
        return x > y + self.tol

    def ge(self, x, y=0.0):
        return x >= y - self.tol

    def eq(self, x, y=0.0):
        return abs(x - y) <= self.tol


def _f11(p, t):
    a, b = p
    return t.ge(b, abs(a))


def _f21(p, t):
    a, b, c = p
    if t.gt(c):
        return t.ge(b, a)
    return t.eq(c) and t.ge(b, abs(a))


def _f22(p, t):
    a, b, c = p
    return (t.gt(a) and t.ge(2 * c, a + b) and t.ge(a + b)
            and t.ge(a, c) and t.ge(c, b))


def _f23(p, t):
    a, b, c = p
    if t.gt(a):
        return t.ge(c)
    return t.eq(a) and t.ge(b) and t.ge(c)


def _f24(p, t):
    a, b, c = p
    if t.gt(b):
        return t.ge(a, b) and t.ge(b, c)
    return t.eq(b) and t.ge(a, abs(c))


def _f31(p, t):
    a, b, c, d = p
    if t.gt(a) and t.ge(a, b) and t.ge(c, d):
        return True
    return t.eq(a) and t.eq(b) and t.ge(c, abs(d))


def _f32(p, t):
    a, b, c, d = p
    if t.gt(a):
        return t.ge(d, c)
    return t.eq(a) and _f21((c, d, b), t)


def _big_d(p, t):
    a, b, c, d = p
    if not (t.ge(a, b) and t.ge(c, d)):
        return False
    if t.gt(a + b, c + d):
        return True
    return t.eq(a + b, c + d) and t.ge(a, c)


def _f33(p, t):
    a, b, c, d = p
    if not (_big_d(p, t) and t.gt(a) and t.ge(a + b)):
        return False
    if d < -t.tol and c + d < -t.tol:
        return t.gt(a, abs(d))
    return True


def _f34(p, t):
    a, b, c, d = p
    if t.gt(d):
        return t.ge(a, c) and t.ge(c, b) and t.ge(2 * c, a + b)
    return t.eq(d) and _f22((a, b, c), t)


def _f41(p, t):
    a, b, c, d, e = p
    if t.gt(e):
        return t.ge(a, b) and t.ge(d, c) and t.ge(e, d)
    return t.eq(e) and _f31((a, b, c, d), t)


def _projective(p, t):
    """P(R^k): last coordinate positive, or zero with the rest in P(R^(k-1))."""
    if len(p) == 1:
        return t.gt(p[0])
    if len(p) == 2:
        x, y = p
        return t.ge(y) and t.gt(x, -1.0)
    if t.gt(p[-1]):
        return True
    return t.eq(p[-1]) and _projective(p[:-1], t)


DOMAINS = {
    "F1_1": FundamentalDomain("F1_1", 2, _f11, "|a| <= b"),
    "F2_1": FundamentalDomain("F2_1", 3, _f21, "c > 0, a <= b; or c = 0, |a| <= b"),
    "F2_2": FundamentalDomain("F2_2", 3, _f22, "a > 0, 2c >= a+b >= 0, a >= c >= b"),
    "F2_3": FundamentalDomain("F2_3", 3, _f23, "a > 0, c >= 0; or a = 0, b, c >= 0"),
    "F2_4": FundamentalDomain("F2_4", 3, _f24, "b > 0, a >= b >= c; or b = 0, |c| <= a"),
    "F3_1": FundamentalDomain(
        "F3_1", 4, _f31, "a > 0, a >= b, c >= d; or a = b = 0, c >= |d|"),
    "F3_2": FundamentalDomain(
        "F3_2", 4, _f32, "a > 0, c <= d; or a = 0, (c,d,b) in F2_1"),
    "F3_3": FundamentalDomain(
        "F3_3", 4, _f33,
        "(a,b,c,d) in D, a > 0, a+b >= 0, and a > |d| whenever d < 0 and c+d < 0"),
    "F3_4": FundamentalDomain(
        "F3_4", 4, _f34,
        "d > 0, a >= c >= b, 2c >= a+b; or d = 0, (a,b,c) in F2_2"),
    "F4_1": FundamentalDomain(
        "F4_1", 5, _f41,
        "e > 0, a >= b, c <= d <= e; or e = 0, (a,b,c,d) in F3_1"),
    "D": FundamentalDomain(
        "D", 4, _big_d,
        "a >= b, c >= d, and a+b > c+d or (a+b = c+d and a >= c)", on_sphere=False),
}
for _k in range(1, 7):
    DOMAINS[f"PR{_k}"] = FundamentalDomain(
        f"PR{_k}", _k, _projective, f"projective space of R^{_k}")

_ALIASES = {"F11": "F1_1", "F21": "F2_1", "F22": "F2_2", "F23": "F2_3",
            "F24": "F2_4", "F31": "F3_1", "F32": "F3_2", "F33": "F3_3",
            "F34": "F3_4", "F41": "F4_1"}


def get_domain(domain_id):
    key = _ALIASES.get(domain_id, domain_id)
    try:
        return DOMAINS[key]
    except KeyError:
        raise UnknownDomainError(f"unknown fundamental domain {domain_id!r}") from None


def domain_membership(domain_id, point, tol=DOMAIN_TOL):
    """Whether ``point`` satisfies the predicate of ``domain_id``.

    Sphere domains require a unit vector (at ``tol``-scaled slack); the
    ``D`` set accepts any point of R^4.
    """
    dom = get_domain(domain_id)
    p = np.asarray(point, dtype=float).ravel()
    if p.size != dom.dim:
        raise ValueError(f"{dom.id} lives in dimension {dom.dim}, got {p.size}")
    if dom.on_sphere and abs(np.linalg.norm(p) - 1.0) > 1e3 * tol:
        raise ValueError(f"point must lie on the unit sphere for {dom.id}")
    return bool(dom.predicate(tuple(float(x) for x in p), _Cmp(tol)))

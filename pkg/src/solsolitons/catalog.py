"""Embedded catalog of the nilsoliton metrics of dimension at most six.

Each entry keeps the bracket notation in the orthonormal basis the metric is
a nilsoliton in, the eigenvalue type and rank as tabulated, and (where known)
the diagonal family describing a maximal abelian subalgebra of symmetric
derivations, its Einstein point, the fundamental domain of the projectivized
family and any transcribed orthogonal automorphisms needed for the Weyl group.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import jacobi_defect, nilpotency_step, parse_bracket_notation
from .expressions import parse_linear_form

__all__ = [
    "CatalogEntry",
    "load_catalog",
    "get_entry",
    "catalog_ids",
    "resolve_id",
]


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    label: str
    table: str
    notation: str
    eigen_type: str
    expected_rank: int
    family: tuple = None
    params: str = ""
    offdiag: tuple = ()
    basis_order: tuple = None
    domain: str = None
    domain_coords: tuple = None
    einstein: str = None
    einstein_point: tuple = None
    extra_generators: tuple = ()
    notes: str = ""
    aliases: tuple = field(default=(), repr=False)

    @property
    def dim(self):
        return len(self.algebra().structure)

    def algebra(self):
        return _algebra(self.id)

    @property
    def bracket_terms(self):
        return self.algebra().bracket_terms

    def expected_type(self):
        from .soliton import EigenvalueType

        return EigenvalueType.parse(self.eigen_type)

    def family_matrices(self):
        """Basis of the tabulated abelian family, one matrix per parameter.

        Matrices are expressed in the catalog basis even when the family is
        written in a reordered basis.
        """
        if self.family is None:
            return None
        n = len(self.family)
        k = len(self.params)
        mats = np.zeros((k, n, n))
        for pos, form in enumerate(self.family):
            mats[:, pos, pos] = parse_linear_form(form, self.params)
        for r, c, form in self.offdiag:
            coef = parse_linear_form(form, self.params)
            mats[:, r - 1, c - 1] = coef
            mats[:, c - 1, r - 1] = coef
        if self.basis_order is not None:
            p = np.zeros((n, n))
            for col, old in enumerate(self.basis_order):
                p[old - 1, col] = 1.0
            mats = np.einsum("ab,kbc,dc->kad", p, mats, p)
        return mats


_S3 = 3 ** 0.5


def _block(*blocks):
    n = sum(np.atleast_2d(b).shape[0] for b in blocks)
    out = np.zeros((n, n))
    i = 0
    for b in blocks:
        b = np.atleast_2d(np.asarray(b, dtype=float))
        out[i:i + b.shape[0], i:i + b.shape[0]] = b
        i += b.shape[0]
    return out


_SW = [[0, 1], [1, 0]]
_NSW = [[0, -1], [-1, 0]]
_ROT = [[0, 1], [-1, 0]]
_MROT = [[0, -1], [1, 0]]

_LAMBDA4_T1 = _block(np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]]), 1)
_LAMBDA4_T2 = _block(_ROT, _ROT, 1)
_LAMBDA5_A = _block(_SW, -1, _NSW)
# written in the reordered basis (X1, X3, X2, X4, X5, X6); see _reorder
_MU15_A = _block(_ROT, 1, _MROT, -1)
_MU20_A = _block(_SW, [[0.5, _S3 / 2], [_S3 / 2, -0.5]], _NSW)
_MU28_A = _block(np.fliplr(np.eye(4)), 1, -1)
# the sign on the last block makes H preserve [X1,X2] = X5 and [X3,X4] = X6
_MU30_H = _block(np.block([[np.zeros((2, 2)), np.array(_SW)],
                           [np.array(_SW), np.zeros((2, 2))]]), _NSW)


def _reorder(mat, order):
    n = len(order)
    p = np.zeros((n, n))
    for col, old in enumerate(order):
        p[old - 1, col] = 1.0
    return p @ mat @ p.T


_BETA = (1, 3, 2, 4, 5, 6)


def _abelian(id_, label, n, table, aliases=()):
    letters = "abcdef"[:n]
    return CatalogEntry(
        id_, label, table, "(" + ",".join("0" * n) + ")", f"(1;{n})", n,
        family=tuple(letters), params=letters,
        domain={2: "F1_1", 3: "F2_4"}.get(n),
        einstein="all equal", einstein_point=(1.0,) * n,
        aliases=aliases,
    )


def _rank_one(id_, label, table, notation, eigen_type, diag, notes=""):
    return CatalogEntry(
        id_, label, table, notation, eigen_type, 1,
        family=tuple(f"{d}a" for d in diag), params="a",
        einstein="always", einstein_point=(1.0,), notes=notes,
    )


def _mf(id_, label, table, notation, eigen_type, rank, family, params,
        einstein, point, notes=""):
    """Multiplicity-free entry of rank >= 2: the Weyl group acts trivially."""
    return CatalogEntry(
        id_, label, table, notation, eigen_type, rank,
        family=family, params=params, domain=f"PR{rank}",
        einstein=einstein, einstein_point=point, notes=notes,
    )


_ENTRIES = [
    # dimension <= 3
    _abelian("R1", "R", 1, "1"),
    _abelian("R2", "R^2", 2, "1"),
    _abelian("R3", "R^3", 3, "1"),
    CatalogEntry(
        "h3", "h_3", "1", "(0,0,12)", "(1<2;2,1)", 2,
        family=("a", "b", "a+b"), params="ab", domain="F1_1",
        einstein="a = b", einstein_point=(1, 1),
    ),
    # dimension 4
    _mf("eta1", "eta_1", "2", "(0,0,12,13)", "(1<2<3<4;1,...,1)", 2,
        ("a", "b", "a+b", "2a+b"), "ab", "2a = b", (1, 2)),
    CatalogEntry(
        "eta2", "eta_2", "2", "(0,0,0,12)", "(2<3<4;2,1,1)", 3,
        family=("a", "b", "c", "a+b"), params="abc", domain="F2_1",
        einstein="a = b = 2/3 c", einstein_point=(2, 2, 3),
    ),
    _abelian("eta3", "R^4", 4, "2", aliases=("R4",)),
    # dimension 5
    _mf("lambda1", "lambda_1", "3", "(0,0,3*12,sqrt(12)*13,3*14)",
        "(2<9<11<13<15;1,...,1)", 2,
        ("a", "b", "a+b", "2a+b", "3a+b"), "ab", "9a = 2b", (2, 9),
        notes="printed as (0,0,3*12,4*13,3*14), which is isomorphic but not "
              "a nilsoliton; the soliton equations force the middle "
              "coefficient to be sqrt(12)"),
    _rank_one("lambda2", "lambda_2", "3",
              "(0,0,sqrt(3)*12,sqrt(3)*13,sqrt(2)*14+sqrt(2)*23)",
              "(1<2<3<4<5;1,...,1)", (1, 2, 3, 4, 5)),
    _mf("lambda3", "lambda_3", "3", "(0,0,0,sqrt(2)*12,23+sqrt(2)*14)",
        "(3<4<6<7<10;1,...,1)", 2,
        ("a", "b", "2a", "a+b", "2a+b"), "ab", "4a = 3b", (3, 4)),
    CatalogEntry(
        "lambda4", "lambda_4", "3", "(0,0,0,0,12+34)", "(1<2;4,1)", 3,
        family=("a", "b", "c", "a+b-c", "a+b"), params="abc", domain="F2_2",
        einstein="a = b = c", einstein_point=(1, 1, 1),
        extra_generators=(_LAMBDA4_T1, _LAMBDA4_T2),
    ),
    CatalogEntry(
        "lambda5", "lambda_5", "3", "(0,0,2*12,sqrt(3)*13,sqrt(3)*23)",
        "(1<2<3;2,1,2)", 2,
        family=("a", "b", "a+b", "2a+b", "a+2b"), params="ab", domain="F1_1",
        einstein="a = b", einstein_point=(1, 1),
        extra_generators=(_LAMBDA5_A,),
    ),
    CatalogEntry(
        "lambda6", "lambda_6", "3", "(0,0,0,12,13)", "(2<3<5;1,2,2)", 3,
        family=("a", "b", "c", "a+b", "a+c"), params="abc", domain="F2_1",
        domain_coords=(2, 1, 0),
        einstein="3/2 a = b = c", einstein_point=(2, 3, 3),
    ),
    CatalogEntry(
        "lambda7", "lambda_7", "3", "(0,0,0,0,12)", "(2<3<4;2,2,1)", 4,
        family=("a", "b", "c", "d", "a+b"), params="abcd", domain="F3_1",
        einstein="a = b, c = d, 3a = 2c", einstein_point=(2, 2, 3, 3),
    ),
    CatalogEntry(
        "lambda8", "lambda_8", "3", "(0,0,0,12,14)", "(1<2<3<4;1,1,2,1)", 3,
        family=("a", "b", "c", "a+b", "2a+b"), params="abc", domain="PR3",
        einstein="2a = b = 2/3 c", einstein_point=(1, 2, 3),
    ),
    _abelian("lambda9", "R^5", 5, "3", aliases=("R5",)),
    # dimension 6, 4- and 5-step
    _rank_one("mu1", "mu_1", "4",
              "(0,0,sqrt(13)*12,4*13,sqrt(12)*14+2*23,sqrt(12)*34+sqrt(13)*52)",
              "(1<2<3<4<5<7;1,...,1)", (1, 2, 3, 4, 5, 7)),
    _mf("mu2", "mu_2", "4", "(0,0,12,sqrt(4/3)*13,14,34+52)",
        "(1<3<4<5<6<9;1,...,1)", 2,
        ("a", "b", "a+b", "2a+b", "3a+b", "3a+2b"), "ab", "3a = b", (1, 3)),
    _mf("mu3", "mu_3", "4", "(0,0,2*12,sqrt(6)*13,sqrt(6)*14,2*15)",
        "(1<9<10<11<12<13;1,...,1)", 2,
        ("a", "b", "a+b", "2a+b", "3a+b", "4a+b"), "ab", "9a = b", (1, 9)),
    _rank_one("mu4", "mu_4", "4",
              "(0,0,sqrt(22)*12,6*13,sqrt(22)*14+sqrt(30)*23,5*24+sqrt(30)*15)",
              "(1<2<3<4<5<6;1,...,1)", (1, 2, 3, 4, 5, 6)),
    _rank_one("mu5", "mu_5", "4",
              "(0,0,sqrt(7)*12,sqrt(15/2)*13,3*14,sqrt(15/2)*23+2*15)",
              "(1<3<4<5<6<7;1,...,1)", (1, 3, 4, 5, 6, 7)),
    CatalogEntry(
        "mu6", "mu_6", "4", "(0,0,12,13,23,14)", "(1<2<3<4<5;1,1,1,1,2)", 2,
        family=("a", "b", "a+b", "2a+b", "a+2b", "3a+b"), params="ab",
        domain="PR2", einstein="2a = b", einstein_point=(1, 2),
    ),
    CatalogEntry(
        "mu7", "mu_7", "4", "(0,0,2*12,sqrt(5)*13,sqrt(5)*23,2*14-2*25)",
        "(1<2<3<4;2,1,2,1)", 2,
        family=("a", "a", "2a", "3a", "3a", "4a"), params="ab",
        offdiag=((1, 2, "b"), (4, 5, "b")),
        domain="PR2", einstein="b = 0", einstein_point=(1, 0),
    ),
    _rank_one("mu8", "mu_8", "4", "(0,0,2*12,sqrt(5)*13,sqrt(5)*23,2*14+2*25)",
              "(1<2<3<4;2,1,2,1)", (1, 1, 2, 3, 3, 4)),
    _mf("mu9", "mu_9", "4", "(0,0,0,sqrt(5/4)*12,14-23,sqrt(5/4)*15+34)",
        "(6<11<12<17<23<29;1,...,1)", 2,
        ("a", "b", "2a", "a+b", "2a+b", "3a+b"), "ab", "11a = 6b", (6, 11)),
    _mf("mu10", "mu_10", "4", "(0,0,0,12,sqrt(5/3)*14,15+23)",
        "(4<9<12<13<17<21;1,...,1)", 2,
        ("a", "b", "3a", "a+b", "2a+b", "3a+b"), "ab", "9a = 4b", (4, 9)),
    _rank_one("mu11", "mu_11", "4",
              "(0,0,-sqrt(25/56)*12,sqrt(3/7)*12,"
              "sqrt(5/28)*14-sqrt(15/14)*13,sqrt(3/4)*15+sqrt(7/8)*24)",
              "(1<2<3<4<5;1,1,2,1,1)", (1, 2, 3, 3, 4, 5),
              notes="printed with radicals 35/136, 21/34, 25/68, 15/17 on "
                    "the first four terms; that metric has Ric_34 != 0. "
                    "These values are the nilsoliton in the same GL-orbit"),
    _mf("mu12", "mu_12", "4", "(0,0,0,sqrt(3)*12,sqrt(3)*14,sqrt(2)*15+sqrt(2)*24)",
        "(3<6<9<11<12<15;1,...,1)", 2,
        ("a", "2a", "b", "3a", "4a", "5a"), "ab", "11a = 3b", (3, 11),
        notes="printed family (a,2a,b,3a,a+b,2a+b) is not a space of derivations"),
    _mf("mu13", "mu_13", "4", "(0,0,0,sqrt(3)*12,2*14,sqrt(3)*15)",
        "(2<9<11<12<13<15;1,...,1)", 3,
        ("a", "b", "c", "a+b", "2a+b", "3a+b"), "abc", "a/2 = b/9 = c/12", (2, 9, 12)),
    # dimension 6, at most 3-step
    _mf("mu14", "mu_14", "5", "(0,0,0,sqrt(3)*12,sqrt(2)*13,sqrt(2)*14+sqrt(3)*35)",
        "(2<3<4<5<6<8;1,...,1)", 2,
        ("a", "b", "(a+b)/2", "a+b", "(3a+b)/2", "2a+b"), "ab", "2a = b", (1, 2)),
    CatalogEntry(
        "mu15", "mu_15", "5", "(0,0,0,12,23,14+35)", "(1<2<3;3,2,1)", 3,
        family=("a", "a", "b", "a+b", "a+b", "2a+b"), params="abc",
        offdiag=((1, 2, "c"), (4, 5, "-c")), basis_order=_BETA,
        domain="F2_3", einstein="a = b, c = 0", einstein_point=(1, 1, 0),
        extra_generators=(_reorder(_MU15_A, _BETA),),
        notes="family written in the basis (X1,X3,X2,X4,X5,X6)",
    ),
    CatalogEntry(
        "mu16", "mu_16", "5", "(0,0,0,12,23,14-35)", "(1<2<3;3,2,1)", 2,
        family=("a", "a", "b", "a+b", "a+b", "2a+b"), params="ab",
        basis_order=_BETA, domain="PR2",
        einstein="a = b", einstein_point=(1, 1),
        notes="family written in the basis (X1,X3,X2,X4,X5,X6)",
    ),
    CatalogEntry(
        "mu17", "mu_17", "5", "(0,0,0,2*12,sqrt(3)*14,sqrt(3)*24)",
        "(5<10<12<15;2,1,1,2)", 3,
        family=("a", "b", "c", "a+b", "2a+b", "a+2b"), params="abc",
        domain="F2_1", einstein="a = b = 5/12 c", einstein_point=(5, 5, 12),
    ),
    _rank_one("mu18", "mu_18", "5",
              "(0,0,0,sqrt(2)*12,sqrt(1/2)*13+sqrt(3/2)*42,sqrt(3/2)*14+sqrt(1/2)*23)",
              "(1<2<3;2,2,2)", (1, 1, 2, 2, 3, 3)),
    _mf("mu19", "mu_19", "5", "(0,0,0,2*12,sqrt(3)*14,13+sqrt(3)*42)",
        "(5<6<11<12<16<17;1,...,1)", 2,
        ("a", "b", "2b", "a+b", "2a+b", "a+2b"), "ab", "6a = 5b", (5, 6),
        notes="sixth coordinate read as 1*13 + sqrt(3)*42"),
    CatalogEntry(
        "mu20", "mu_20", "5", "(0,0,-12,sqrt(3)*12,2*14,24-sqrt(3)*23)",
        "(1<2<3;2,2,2)", 2,
        family=("a", "b", "a+b", "a+b", "2a+b", "a+2b"), params="ab",
        domain="F1_1", einstein="a = b", einstein_point=(1, 1),
        extra_generators=(_MU20_A,),
    ),
    _mf("mu21", "mu_21", "5", "(0,0,0,sqrt(2)*12,13,sqrt(2)*14+23)",
        "(3<5<6<8<9<11;1,...,1)", 2,
        ("a", "b", "2a", "a+b", "3a", "2a+b"), "ab", "5a = 3b", (3, 5)),
    _mf("mu22", "mu_22", "5", "(0,0,0,sqrt(3/4)*12,sqrt(3/4)*13,24)",
        "(5<6<9<11<15<16;1,...,1)", 3,
        ("a", "b", "c", "a+b", "a+c", "a+2b"), "abc", "a/6 = b/5 = c/9", (6, 5, 9)),
    _mf("mu23", "mu_23", "5", "(0,0,0,sqrt(2)*12,13,sqrt(2)*14)",
        "(2<5<6<7<8<9;1,...,1)", 3,
        ("a", "b", "c", "a+b", "a+c", "2a+b"), "abc", "a/2 = b/5 = c/6", (2, 5, 6)),
    CatalogEntry(
        "mu24", "mu_24", "5", "(0,0,0,12,13,23)", "(1<2;3,3)", 3,
        family=("a", "b", "c", "a+b", "a+c", "b+c"), params="abc",
        domain="F2_4", einstein="a = b = c", einstein_point=(1, 1, 1),
    ),
    CatalogEntry(
        "mu25", "mu_25", "5", "(0,0,0,0,2*12,sqrt(3)*15+sqrt(3)*34)",
        "(5<8<9<13<18;1,1,2,1,1)", 3,
        family=("a", "b", "c", "2a+b-c", "a+b", "2a+b"), params="abc",
        domain="PR3", einstein="a/5 = b/8 = c/9", einstein_point=(5, 8, 9),
    ),
    CatalogEntry(
        "mu26", "mu_26", "5", "(0,0,0,0,12,15)", "(1<2<3<4;1,1,3,1)", 4,
        family=("a", "b", "c", "d", "a+b", "2a+b"), params="abcd",
        domain="F3_2", einstein="6a = 3b = 2c = 2d", einstein_point=(1, 2, 3, 3),
    ),
    CatalogEntry(
        "mu27", "mu_27", "5", "(0,0,0,0,sqrt(2)*12,14+sqrt(2)*25)",
        "(3<4<6<7<10;1,1,1,2,1)", 3,
        family=("a", "b", "c", "2b", "a+b", "a+2b"), params="abc",
        domain="PR3", einstein="3a = 4b, 7b = 3c", einstein_point=(4, 3, 7),
        notes="printed Einstein condition 4a = 3b = 2c does not meet D1",
    ),
    CatalogEntry(
        "mu28", "mu_28", "5", "(0,0,0,0,13+42,14+23)", "(1<2;4,2)", 2,
        family=("a", "a", "b", "b", "a+b", "a+b"), params="ab",
        domain="F1_1", einstein="a = b", einstein_point=(1, 1),
        extra_generators=(_MU28_A,),
    ),
    CatalogEntry(
        "mu29", "mu_29", "5", "(0,0,0,0,12,14+23)", "(3<4<6<7;2,2,1,1)", 3,
        family=("a", "b", "c", "c-a+b", "a+b", "b+c"), params="abc",
        domain="PR3", einstein="a = b, 4a = 3c", einstein_point=(3, 3, 4),
    ),
    CatalogEntry(
        "mu30", "mu_30", "5", "(0,0,0,0,12,34)", "(1<2;4,2)", 4,
        family=("a", "b", "c", "d", "a+b", "c+d"), params="abcd",
        domain="F3_3", einstein="a = b = c = d", einstein_point=(1, 1, 1, 1),
        extra_generators=(_MU30_H,),
    ),
    CatalogEntry(
        "mu31", "mu_31", "5", "(0,0,0,0,12,13)", "(2<3<4<5;1,2,1,2)", 4,
        family=("a", "b", "c", "d", "a+b", "a+c"), params="abcd",
        domain="F3_2", domain_coords=(0, 3, 1, 2),
        einstein="4b = 4c = 6a = 3d", einstein_point=(2, 3, 3, 4),
    ),
    CatalogEntry(
        "mu32", "mu_32", "5", "(0,0,0,0,0,12+34)", "(3<4<6;4,1,1)", 4,
        family=("a", "b", "c", "a+b-c", "d", "a+b"), params="abcd",
        domain="F3_4", einstein="a = b = c = 3/4 d", einstein_point=(3, 3, 3, 4),
        extra_generators=(_block(_LAMBDA4_T1[:4, :4], 1, 1),
                          _block(_LAMBDA4_T2[:4, :4], 1, 1)),
    ),
    CatalogEntry(
        "mu33", "mu_33", "5", "(0,0,0,0,0,12)", "(2<3<4;2,3,1)", 5,
        family=("a", "b", "c", "d", "e", "a+b"), params="abcde",
        domain="F4_1", einstein="3a = 3b = 2c = 2d = 2e",
        einstein_point=(2, 2, 3, 3, 3),
    ),
    _abelian("mu34", "R^6", 6, "5", aliases=("R6",)),
]


_BY_ID = {e.id: e for e in _ENTRIES}
_ALIASES = {}
for _e in _ENTRIES:
    for _a in (_e.id, *_e.aliases):
        _ALIASES[_a.lower()] = _e.id

_GREEK = {"η": "eta", "λ": "lambda", "μ": "mu", "ℝ": "R"}
_SUB = str.maketrans("₀₁₂₃₄₅₆₇₈₉⁰¹²³⁴⁵⁶⁷⁸⁹", "01234567890123456789")


def resolve_id(name):
    """Map user spellings (``mu18``, ``μ18``, ``μ₁₈``, ``R^6``, ``ℝ⁶``) to a catalog id."""
    key = name.strip().translate(_SUB)
    for g, latin in _GREEK.items():
        key = key.replace(g, latin)
    key = key.replace("_", "").replace("^", "").lower()
    if key not in _ALIASES:
        raise KeyError(f"unknown catalog id {name!r}")
    return _ALIASES[key]


@lru_cache(maxsize=None)
def _algebra(id_):
    e = _BY_ID[id_]
    return parse_bracket_notation(e.notation, name=id_)


def get_entry(name):
    return _BY_ID[resolve_id(name)]


def catalog_ids():
    return [e.id for e in _ENTRIES]


@lru_cache(maxsize=1)
def load_catalog():
    """All fifty entries, in table order, each checked to be a nilpotent Lie algebra."""
    for e in _ENTRIES:
        alg = e.algebra()
        scale = max(1.0, float(np.abs(alg.structure).max()) ** 2)
        if jacobi_defect(alg) > 1e-12 * scale:
            raise RuntimeError(f"catalog entry {e.id} violates the Jacobi identity")
        nilpotency_step(alg)
        if not 0 <= e.expected_rank <= alg.dim:
            raise RuntimeError(f"catalog entry {e.id} has rank out of range")
    return tuple(_ENTRIES)

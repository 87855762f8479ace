import numpy as np
import pytest

from solsolitons.algebra import algebra_from_json, algebra_to_json, jacobi_defect, nilpotency_step
from solsolitons.catalog import catalog_ids, get_entry, load_catalog, resolve_id
from solsolitons.derivations import derivation_defect

IDS = catalog_ids()


def test_catalog_size():
    assert len(IDS) == 50
    assert [e.id for e in load_catalog()] == IDS
    assert IDS[:4] == ["R1", "R2", "R3", "h3"]


def test_ids_by_family():
    assert [i for i in IDS if i.startswith("eta")] == ["eta1", "eta2", "eta3"]
    assert [i for i in IDS if i.startswith("lambda")] == [f"lambda{k}" for k in range(1, 10)]
    assert [i for i in IDS if i.startswith("mu")] == [f"mu{k}" for k in range(1, 35)]


@pytest.mark.parametrize("name, expected", [
    ("h3", 2), ("mu18", 1), ("mu34", 6), ("R6", 6), ("lambda9", 5), ("eta3", 4),
])
def test_expected_ranks(name, expected):
    assert get_entry(name).expected_rank == expected


@pytest.mark.parametrize("alias, eid", [("R4", "eta3"), ("R5", "lambda9"), ("R6", "mu34"),
                                        ("μ18", "mu18"), ("λ4", "lambda4")])
def test_aliases(alias, eid):
    assert resolve_id(alias) == eid


def test_unknown_id():
    with pytest.raises(KeyError):
        get_entry("mu99")


@pytest.mark.parametrize("eid", IDS)
def test_entry_is_nilpotent_lie_algebra(eid):
    e = get_entry(eid)
    alg = e.algebra()
    scale = max(1.0, np.abs(alg.structure).max())
    assert jacobi_defect(alg) < 1e-12 * scale
    assert nilpotency_step(alg) <= 5
    assert 0 <= e.expected_rank <= alg.dim
    assert e.expected_type().dim == alg.dim
    assert np.array_equal(alg.structure, -alg.structure.transpose(1, 0, 2))


@pytest.mark.parametrize("eid", IDS)
def test_json_roundtrip(eid):
    alg = get_entry(eid).algebra()
    back = algebra_from_json(algebra_to_json(alg))
    assert np.array_equal(back.structure, alg.structure)
    assert back.bracket_terms == alg.bracket_terms


@pytest.mark.parametrize("eid", IDS)
def test_family_consists_of_commuting_symmetric_derivations(eid):
    e = get_entry(eid)
    mats = e.family_matrices()
    assert len(mats) == e.expected_rank
    alg = e.algebra()
    for a in mats:
        assert np.allclose(a, a.T)
        assert derivation_defect(a, alg) < 1e-10
    for a in mats:
        for b in mats:
            assert np.allclose(a @ b, b @ a)
    assert np.linalg.matrix_rank(mats.reshape(len(mats), -1)) == len(mats)


def test_reordered_basis_is_recorded():
    for eid in ("mu15", "mu16"):
        assert get_entry(eid).basis_order == (1, 3, 2, 4, 5, 6)

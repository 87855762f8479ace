import numpy as np
import pytest

from solsolitons.algebra import jacobi_defect
from solsolitons.catalog import catalog_ids, get_entry
from solsolitons.curvature import ricci_fast
from solsolitons.moduli import (
    ExtensionError,
    einstein_by_membership,
    einstein_line,
    equivalent,
    extend,
    extend_entry,
    mean_curvature,
    moduli_slice,
    negativity_near_einstein,
    orthogonal_direction_check,
)
from solsolitons.soliton import einstein_check, nilsoliton_certificate
from solsolitons.weyl import entry_frame


def _h3(point):
    return extend_entry("h3", [point])


def test_h3_einstein_extension():
    ext = _h3([1.0, 1.0])
    assert ext.a_gram[0, 0] == pytest.approx(4.0)
    a, b = 1.0, 1.0
    assert ext.a_gram[0, 0] == pytest.approx(4 / 3 * (a * a + b * b + a * b))
    assert np.allclose(ext.H, [1.0])
    assert np.allclose(ext.D0, 0, atol=1e-14)
    assert ext.verdict.is_einstein and ext.verdict.is_soliton
    e = np.linalg.inv(np.linalg.cholesky(ext.algebra.gram)).T
    ric = np.linalg.inv(e) @ ricci_fast(ext.algebra) @ e
    assert np.allclose(ric, -1.5 * np.eye(4), atol=1e-12)


def test_h3_non_einstein_extension():
    ext = _h3([0.0, 1.0])
    assert ext.a_gram[0, 0] == pytest.approx(4 / 3)
    assert ext.verdict.residual <= 1e-8
    assert not ext.verdict.is_einstein
    assert np.abs(ext.D0).max() > 0.1


def test_extension_structure():
    ext = _h3([2.0, -1.0])
    s = ext.algebra
    r = ext.r
    assert np.all(s.structure[:r, :r] == 0)
    assert np.allclose(s.gram[:r, r:], 0)
    assert np.allclose(s.gram[r:, r:], np.eye(3))
    a = ext.subspace[0]
    assert np.allclose(s.structure[0, r:, r:], a.T)
    assert jacobi_defect(s) < 1e-12
    assert np.allclose(ext.D0[:r], 0) and np.allclose(ext.D0[:, :r], 0)


def test_line_extension_of_r1():
    ext = extend_entry("R1", [[1.0]])
    c = ext.algebra.structure
    assert ext.algebra.dim == 2
    assert c[0, 1, 1] == 1.0 and c[1, 0, 1] == -1.0
    assert ext.a_gram[0, 0] == pytest.approx(1.0)
    assert ext.verdict.is_einstein


def test_mean_curvature():
    ext = _h3([1.0, 1.0])
    assert np.allclose(mean_curvature(ext), [1.0])
    ext = extend_entry("R3", [[1.0, 1.0, 1.0]])
    assert np.allclose(mean_curvature(ext), [1.0])
    # a traceless direction has no component along itself
    ext = extend_entry("R3", [[1.0, -1.0, 0.0]])
    assert np.allclose(mean_curvature(ext), [0.0])


def test_full_frame_is_einstein():
    for eid in ("h3", "eta2", "lambda7", "mu33", "R3"):
        frame = entry_frame(eid)
        ext = extend_entry(eid, np.eye(frame.rank))
        assert ext.verdict.is_soliton and ext.verdict.is_einstein
        assert einstein_by_membership(nilsoliton_certificate(get_entry(eid).algebra()),
                                      ext.subspace)


def test_membership_examples():
    cert = nilsoliton_certificate(get_entry("h3").algebra())
    assert einstein_by_membership(cert, [np.diag([1.0, 1.0, 2.0])])
    assert not einstein_by_membership(cert, [np.diag([0.0, 1.0, 1.0])])


def test_extension_errors():
    alg = get_entry("h3").algebra()
    cert = nilsoliton_certificate(alg)
    with pytest.raises(ExtensionError):
        extend(cert, alg, [np.diag([1.0, 0.0, 0.0])])  # not a derivation
    with pytest.raises(ExtensionError):
        extend(cert, alg, [np.array([[0.0, 1, 0], [0, 0, 0], [0, 0, 0]])])  # not symmetric
    with pytest.raises(ExtensionError):
        extend(cert, alg, [np.diag([1.0, 0, 1]), np.diag([2.0, 0, 2])])  # dependent
    off = np.array([[0.0, 1, 0], [1, 0, 0], [0, 0, 0]])
    with pytest.raises(ExtensionError):
        extend(cert, alg, [off, np.diag([1.0, 0, 1])])  # not commuting
    with pytest.raises(ExtensionError):
        extend(cert, alg.with_gram(np.diag([1.0, 2.0, 3.0])), [np.diag([1.0, 1, 2])])
    with pytest.raises(ExtensionError):
        extend_entry("h3", [[1.0, 2.0, 3.0]])


@pytest.mark.parametrize("eid", catalog_ids())
def test_random_lines_are_solsolitons(eid):
    frame = entry_frame(eid)
    cert = nilsoliton_certificate(get_entry(eid).algebra())
    rng = np.random.default_rng(catalog_ids().index(eid))
    points = rng.normal(size=(20, frame.rank))
    for p in points:
        ext = extend_entry(eid, [p])
        assert ext.verdict.residual <= 1e-8
        assert ext.verdict.derivation_defect <= 1e-8
        ein = einstein_check(ext.algebra)
        assert einstein_by_membership(cert, ext.subspace) == ein.is_einstein


def test_equivalence_examples():
    assert equivalent("h3", [2.0, 1.0], [1.0, 2.0])
    assert not equivalent("h3", [1.0, 2.0], [1.0, 3.0])
    assert equivalent("lambda7", np.eye(4)[:, :2], np.eye(4)[:, :2])
    frame = entry_frame("h3")
    assert equivalent("h3", frame.matrix([2.0, 1.0]), frame.matrix([1.0, 2.0]))
    with pytest.raises(ValueError):
        equivalent("lambda7", np.eye(4)[:, :2], np.eye(4)[:, 0])


def test_moduli_small_dimensions():
    assert moduli_slice(2).keys() == [("R2", 0, 0), ("R1", 1, 0)]
    s3 = moduli_slice(3)
    assert sorted(s3.keys()) == sorted([("R3", 0, 0), ("h3", 0, 0), ("R2", 1, 1)])
    f11 = [c for c in s3.components if c.r == 1]
    assert f11[0].domain == "F1_1" and f11[0].weyl_order == 2
    s4 = {(k[0], k[1]): k[2] for k in moduli_slice(4).keys()}
    assert s4[("h3", 1)] == 1 and s4[("R3", 1)] == 2 and s4[("R2", 2)] == 0
    for c in moduli_slice(5).components:
        assert c.r + c.nil_dim == 5
        assert 0 <= c.r <= c.rank


def test_moduli_seven():
    s7 = moduli_slice(7)
    placeholder = [c for c in s7.components if c.unclassified]
    assert len(placeholder) == 1 and placeholder[0].entry_id == "Nil(7)"
    points = {c.entry_id for c in s7.components if c.r == 2 and c.parameter_dim == 0}
    assert points == {"lambda1", "lambda3", "lambda5"}


@pytest.mark.parametrize("m", [1, 8])
def test_moduli_range(m):
    with pytest.raises(ValueError):
        moduli_slice(m)


def test_einstein_flags():
    flags = {(c.entry_id, c.r): c.einstein for c in moduli_slice(4).components}
    assert flags[("eta1", 0)] == "never"
    assert flags[("eta3", 0)] == "always"
    assert flags[("h3", 1)] == "proper"
    assert flags[("R2", 2)] == "always"


def test_einstein_line_is_d1():
    p = einstein_line("h3")
    assert np.allclose(p / p[0], [1.0, 1.0])


def test_orthogonal_direction_for_h3():
    rep = orthogonal_direction_check("h3")
    frame = entry_frame("h3")
    d1 = np.diag([1.0, 1.0, 2.0])
    assert abs(np.trace(d1 @ frame.matrix(rep.direction))) < 1e-12
    assert rep.nil_block_defect < 1e-12
    assert rep.indefinite
    a = frame.matrix(rep.direction)
    assert np.allclose(a / a[0, 0], np.diag([1.0, -1.0, 0.0]))
    with pytest.raises(ValueError):
        orthogonal_direction_check("mu18")


def test_abelian_orthogonal_direction_is_semidefinite():
    # Ric(s_A) = diag(-tr A^2 / |X0|^2, 0, ..., 0) for an abelian nilradical
    rep = orthogonal_direction_check("R3")
    assert rep.nil_block_defect < 1e-12
    assert not rep.indefinite
    assert rep.eigenvalues.min() < 0 and rep.eigenvalues.max() <= 1e-12


def test_density_of_non_einstein_lines():
    for eid in ("h3", "lambda6", "mu24", "mu33"):
        frame = entry_frame(eid)
        rng = np.random.default_rng(1)
        flags = [extend_entry(eid, [p]).verdict.is_einstein
                 for p in rng.normal(size=(100, frame.rank))]
        assert not any(flags)
        assert extend_entry(eid, [einstein_line(eid)]).verdict.is_einstein


def test_negativity_near_einstein_small():
    rep = negativity_near_einstein("lambda6", samples=128, neighbors=3)
    assert rep.all_negative
    assert len(rep.neighbors) == 3
    for ext, _ in rep.neighbors:
        assert ext.verdict.is_soliton and not ext.verdict.is_einstein


def test_to_dict():
    doc = _h3([1.0, 1.0]).to_dict()
    assert doc["entry"] == "h3" and doc["r"] == 1 and doc["is_einstein"]
    assert moduli_slice(3).to_dict()["m"] == 3

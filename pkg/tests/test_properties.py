"""Property-based checks of the structural invariants."""

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from _helpers import random_solvable
from solsolitons.algebra import algebra_from_json, algebra_to_json, parse_bracket_notation
from solsolitons.catalog import catalog_ids, get_entry
from solsolitons.curvature import ricci_fast, ricci_oracle, sectional_curvature
from solsolitons.derivations import derivation_defect, derivation_space
from solsolitons.soliton import eigenvalue_type, nilsoliton_certificate
from solsolitons.weyl import (
    canonical_form,
    entry_action,
    grassmannian_duality,
    lines_equivalent,
    planes_equivalent,
)
from solsolitons._linalg import same_span

SETTINGS = settings(max_examples=40, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
entry_ids = st.sampled_from(catalog_ids())
ranked = st.sampled_from([i for i in catalog_ids() if get_entry(i).expected_rank >= 2])
coeffs = st.sampled_from(["1", "-1", "2", "1/2", "sqrt(2)", "-sqrt(3/5)", "3*sqrt(7)"])


@st.composite
def notations(draw):
    n = draw(st.integers(min_value=2, max_value=6))
    coords = []
    for k in range(n):
        mons = []
        for _ in range(draw(st.integers(min_value=0, max_value=2))):
            i, j = draw(st.sampled_from([(i, j) for i in range(1, n + 1)
                                         for j in range(1, n + 1) if i != j]))
            mons.append(f"{draw(coeffs)}*{i}{j}")
        text = ""
        for mon in mons:
            text += mon if not text or mon.startswith("-") else "+" + mon
        coords.append(text or "0")
    return "(" + ",".join(coords) + ")"


@SETTINGS
@given(notations())
def test_parse_is_antisymmetric_and_roundtrips(text):
    alg = parse_bracket_notation(text)
    assert np.array_equal(alg.structure, -alg.structure.transpose(1, 0, 2))
    back = algebra_from_json(algebra_to_json(alg))
    assert np.array_equal(back.structure, alg.structure)
    again = parse_bracket_notation(alg.to_notation())
    assert np.allclose(again.structure, alg.structure, atol=1e-15)


@SETTINGS
@given(seeds)
def test_ricci_routes_agree(seed):
    alg = random_solvable(np.random.default_rng(seed))
    assert np.abs(ricci_fast(alg) - ricci_oracle(alg)).max() <= 1e-10


@SETTINGS
@given(seeds)
def test_ricci_is_basis_covariant(seed):
    rng = np.random.default_rng(seed)
    alg = random_solvable(rng)
    p = np.eye(alg.dim) + 0.3 * rng.normal(size=(alg.dim, alg.dim))
    moved = alg.change_basis(p)
    # the operator in the new basis is P^-1 Ric P
    assert np.allclose(ricci_fast(moved), np.linalg.solve(p, ricci_fast(alg) @ p), atol=1e-8)


@SETTINGS
@given(seeds)
def test_sectional_curvature_depends_on_plane_only(seed):
    rng = np.random.default_rng(seed)
    alg = random_solvable(rng)
    x, y = rng.normal(size=(2, alg.dim))
    m = rng.normal(size=(2, 2))
    if abs(np.linalg.det(m)) < 0.1:
        m += np.eye(2)
    u, v = m[0, 0] * x + m[0, 1] * y, m[1, 0] * x + m[1, 1] * y
    k1 = sectional_curvature(alg, x, y)
    k2 = sectional_curvature(alg, u, v)
    assert np.isclose(k1, k2, rtol=1e-7, atol=1e-9)


@SETTINGS
@given(entry_ids, seeds)
def test_random_derivations_satisfy_identity(eid, seed):
    alg = get_entry(eid).algebra()
    der = derivation_space(alg)
    d = np.tensordot(np.random.default_rng(seed).normal(size=len(der)), der, axes=1)
    assert derivation_defect(d, alg) <= 1e-9 * max(1.0, np.abs(d).max())


@SETTINGS
@given(st.sampled_from([i for i in catalog_ids() if get_entry(i).algebra().structure.any()]),
       st.floats(min_value=0.1, max_value=5.0))
def test_certificate_scaling(eid, t):
    alg = get_entry(eid).algebra()
    base = nilsoliton_certificate(alg)
    scaled = nilsoliton_certificate(alg.scaled(t))
    assert np.isclose(scaled.c, t * t * base.c, rtol=1e-10)
    assert np.allclose(scaled.D1, t * t * base.D1, atol=1e-9 * t * t)
    assert eigenvalue_type(scaled) == eigenvalue_type(base)


@SETTINGS
@given(entry_ids, seeds)
def test_certificate_under_orthogonal_change(eid, seed):
    alg = get_entry(eid).algebra()
    q, _ = np.linalg.qr(np.random.default_rng(seed).normal(size=(alg.dim, alg.dim)))
    base = nilsoliton_certificate(alg)
    moved = nilsoliton_certificate(alg.change_basis(q))
    assert np.isclose(moved.c, base.c, rtol=1e-9)
    assert np.allclose(moved.D1, q.T @ base.D1 @ q, atol=1e-8)


@SETTINGS
@given(ranked, seeds)
def test_canonical_form_is_orbit_invariant(eid, seed):
    act = entry_action(eid)
    rng = np.random.default_rng(seed)
    p = rng.normal(size=act.rank)
    m = act.induced_maps[rng.integers(act.order)]
    scale = rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 10.0)
    a = canonical_form(p, act)
    b = canonical_form(scale * (m @ p), act)
    assert np.allclose(a, b, atol=1e-8)
    assert abs(np.linalg.norm(a) - 1.0) < 1e-12
    assert lines_equivalent(p, m @ p, act)


@SETTINGS
@given(ranked, seeds)
def test_canonical_equality_matches_orbit_search(eid, seed):
    act = entry_action(eid)
    rng = np.random.default_rng(seed)
    p, q = rng.normal(size=(2, act.rank))
    if rng.random() < 0.5:
        q = act.induced_maps[rng.integers(act.order)] @ p
    qn = q / np.linalg.norm(q)
    images = [m @ p / np.linalg.norm(m @ p) for m in act.induced_maps]
    direct = any(min(np.linalg.norm(u - qn), np.linalg.norm(u + qn)) <= 1e-8
                 for u in images)
    assert lines_equivalent(p, q, act) == direct


@SETTINGS
@given(ranked, seeds)
def test_duality_is_involutive_and_equivariant(eid, seed):
    act = entry_action(eid)
    g = act.trace_gram
    rng = np.random.default_rng(seed)
    r = int(rng.integers(1, act.rank))
    v = rng.normal(size=(act.rank, r))
    dual = grassmannian_duality(v, g)
    assert dual.shape == (act.rank, act.rank - r)
    assert np.allclose(v.T @ g @ dual, 0, atol=1e-9)
    assert same_span(grassmannian_duality(dual, g), v)
    m = act.induced_maps[rng.integers(act.order)]
    assert planes_equivalent(grassmannian_duality(m @ v, g), dual, act) if act.rank - r > 1 \
        else lines_equivalent(grassmannian_duality(m @ v, g)[:, 0], dual[:, 0], act)

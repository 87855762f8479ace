import numpy as np
import pytest

from solsolitons.domains import DOMAINS, UnknownDomainError, domain_membership, get_domain


def unit(*xs):
    v = np.array(xs, float)
    return v / np.linalg.norm(v)


@pytest.mark.parametrize("dom, point, inside", [
    ("F1_1", (0, 1), True),
    ("F1_1", (1, 0), False),
    ("F1_1", unit(1, 1), True),
    ("F1_1", unit(-1, 1), True),
    ("F1_1", unit(1, -1), False),
    ("F2_4", unit(1, 1, 1), True),
    ("F2_4", unit(3, 2, 1), True),
    ("F2_4", unit(1, 2, 3), False),
    ("F2_4", unit(1, 0, -1), True),
    ("F2_4", unit(1, 0, -2), False),
    ("F2_1", unit(1, 2, 1), True),
    ("F2_1", unit(2, 1, 1), False),
    ("F2_1", unit(-1, 2, 0), True),
    ("F2_1", unit(-3, 2, 0), False),
    ("F2_2", unit(3, 1, 2), True),
    ("F2_2", unit(3, 2, 1), False),
    ("F2_3", unit(1, -5, 0), True),
    ("F2_3", unit(0, 1, 1), True),
    ("F2_3", unit(0, -1, 1), False),
    ("F3_1", unit(2, 1, 1, 0), True),
    ("F3_1", unit(0, 0, 1, -1), True),
    ("F3_1", unit(0, 0, 1, -2), False),
    ("F3_2", unit(1, 5, 0, 1), True),
    ("F3_2", unit(1, 5, 1, 0), False),
    ("F3_2", unit(0, 1, 1, 2), True),
    ("F3_4", unit(3, 1, 2, 1), True),
    ("F3_4", unit(3, 1, 2, -1), False),
    ("F4_1", unit(2, 1, 0, 1, 2), True),
    ("F4_1", unit(1, 2, 0, 1, 2), False),
    ("PR2", unit(3, 1), True),
    ("PR2", unit(3, -1), False),
    ("PR2", (1, 0), True),
    ("PR2", (-1, 0), False),
    ("PR3", unit(-1, -1, 1), True),
    ("PR3", unit(-1, 1, 0), True),
    ("PR3", unit(1, -1, 0), False),
])
def test_membership(dom, point, inside):
    assert domain_membership(dom, point) is inside


def test_f33_extra_condition():
    # a+b > c+d with d < 0 and c + d < 0 requires a > |d|
    assert domain_membership("F3_3", unit(3, 0, -1, -2))
    assert not domain_membership("F3_3", unit(1, 0, -1, -2))
    assert domain_membership("F3_3", unit(2, 1, 1, 0))


def test_big_d_set_is_not_on_sphere():
    assert not DOMAINS["D"].on_sphere
    assert domain_membership("D", (5, 1, 3, 2))
    assert domain_membership("D", (3, 1, 2, 2))
    assert not domain_membership("D", (2, 2, 3, 1))


def test_boundary_tolerance():
    v = unit(1, 1)
    v_out = v + np.array([1e-12, -1e-12])
    assert domain_membership("F1_1", v_out / np.linalg.norm(v_out))
    tilt = unit(1 + 1e-6, 1)
    assert not domain_membership("F1_1", tilt)


def test_errors():
    with pytest.raises(UnknownDomainError):
        get_domain("F9_9")
    with pytest.raises(KeyError):
        domain_membership("nope", (0, 1))
    with pytest.raises(ValueError):
        domain_membership("F1_1", (0, 1, 0))
    with pytest.raises(ValueError):
        domain_membership("F1_1", (0, 2))


def test_aliases():
    assert get_domain("F11") is DOMAINS["F1_1"]
    assert DOMAINS["F3_1"].contains(unit(2, 1, 1, 0))


@pytest.mark.parametrize("k", range(1, 7))
def test_projective_space_picks_one_of_each_pair(k):
    rng = np.random.default_rng(k)
    for _ in range(200):
        v = unit(*rng.normal(size=k))
        assert domain_membership(f"PR{k}", v) != domain_membership(f"PR{k}", -v)

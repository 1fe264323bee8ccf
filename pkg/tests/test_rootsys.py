from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import W, rs_of
from hwcheck.rootsys import (
    build_root_system,
    components,
    d3_to_a3_index,
    is_connected,
    normalize_name,
    pairing,
    subsystem_positive,
)
from hwcheck.weights import rho


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_d_root_count(m):
    assert len(rs_of("D", m).roots) == m * (m - 1)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_a_root_count(m):
    assert len(rs_of("A", m).roots) == m * (m + 1) // 2


def test_a1_single_root():
    rs = rs_of("A", 1)
    assert [r.name for r in rs.roots] == ["a[1,1]"]


def test_gamma_coefficients(d4):
    assert d4.root("g[1,2]").coeffs == (1, 2, 1, 1)
    assert d4.root("gamma_12").coeffs == (1, 2, 1, 1)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_eps_realization_is_bijective(m):
    rs = rs_of("D", m)
    expected = set()
    for i in range(m):
        for j in range(i + 1, m):
            for s in (1, -1):
                v = [0] * m
                v[i], v[j] = 1, -s
                expected.add(tuple(v))
    assert {r.eps for r in rs.roots} == expected
    assert len({r.name for r in rs.roots}) == len(rs.roots)


def test_named_roots_d5():
    rs = rs_of("D", 5)
    assert rs.root("b[1]").eps == (1, 0, 0, 0, 1)
    assert rs.root("a[2,5]").eps == (0, 1, 0, 1, 0)
    assert rs.root("g[1,3]").eps == (1, 0, 1, 0, 0)
    assert rs.root("a[5,5]").eps == (0, 0, 0, 1, 1)


def test_name_forms():
    assert normalize_name("alpha_1") == "a[1,1]"
    assert normalize_name("a[2]") == "a[2,2]"
    assert normalize_name("beta1") == "b[1]"
    assert normalize_name("g12") == "g[1,2]"


def test_unknown_root(d4):
    with pytest.raises(KeyError):
        d4.root("g[1,3]")
    with pytest.raises(ValueError):
        build_root_system("E", 6)


def test_pairings(d4):
    r = rho(d4)
    assert all(pairing(r, s) == 1 for s in d4.simple)
    assert pairing(r, d4.root("g[1,2]")) == 5
    lam = W(-3, 0, 0, 0)
    shifted = tuple(x + 1 for x in lam)
    assert pairing(shifted, d4.root("a[1,3]")) == 0


def test_connectivity(d4):
    assert not is_connected(d4, {0, 2, 3})
    assert is_connected(d4, {0, 1, 3})
    assert is_connected(d4, {2})
    assert len(components(d4, {0, 2, 3})) == 3


def test_subsystems(d4):
    assert subsystem_positive(d4, set()) == []
    assert len(subsystem_positive(d4, {1, 2, 3})) == 6
    assert len(subsystem_positive(d4, range(4))) == 12


def test_d3_is_a3():
    d3, a3 = rs_of("D", 3), rs_of("A", 3)
    for i in range(3):
        for j in range(3):
            assert d3.cartan[i][j] == a3.cartan[d3_to_a3_index(i)][d3_to_a3_index(j)]


@given(st.sampled_from([("D", 4), ("D", 5), ("A", 3)]), st.data())
def test_sum_of_roots_is_root_or_not(sys, data):
    """alpha + beta is a root exactly when the eps vectors add to a root vector."""
    rs = rs_of(*sys)
    a = data.draw(st.sampled_from(rs.roots))
    b = data.draw(st.sampled_from(rs.roots))
    s = tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
    e = tuple(x + y for x, y in zip(a.eps, b.eps))
    assert (rs.index_of(s) is not None) == (e in {r.eps for r in rs.roots})


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=4, max_size=4))
def test_pairing_is_linear(lam):
    rs = rs_of("D", 4)
    for r in rs.roots:
        assert pairing(lam, r) == sum(c * Fraction(x) for c, x in zip(r.coeffs, lam))

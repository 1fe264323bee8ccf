from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import W, alg_of, rs_of
from hwcheck.hwsearch import (
    hw_prop_conditions,
    induction_certificate,
    is_singular,
    positive_control,
    singular_in_subspace,
    singular_vectors,
)
from hwcheck.modules import build_gvm, build_verma
from hwcheck.weights import delta_lambda
from hwcheck.weyl import reflect


def gvm_for(lam, d):
    rs = rs_of("D", 4)
    return build_gvm(alg_of("D", 4), delta_lambda(rs, lam), lam, d)


def test_singular_block_examples(g4):
    M = build_verma(g4, W(0, 0, 0, 0), 2)
    assert singular_vectors(M, (1, 0, 0, 0)).dim == 1
    assert singular_vectors(M, (0, 0, 0, 0)).dim == 1
    M = build_verma(g4, W("1/2", "1/2", "1/2", "1/2"), 2)
    assert singular_vectors(M, (1, 0, 0, 0)).dim == 0


@pytest.mark.parametrize("lam,S", [
    (W("1/2", 0, 0, 0), ["g[1,2]"]),
    (W("1/2", "1/2", 0, 0), ["g[1,2]"]),
    (W("1/2", "-1/2", 0, 0), ["g[1,2]"]),
    (W("1/2", "-1/2", 0, 0), ["g[1,2]", "a[1,2]"]),
    (W("1/2", 0, 0, "1/2"), ["g[1,2]", "a[1,2]", "a[1,3]"]),
    (W(0, 0, 0, -1), ["g[1,2]"]),
    (W(1, -2, 1, 1), ["g[1,2]"]),
])
def test_absence(lam, S):
    rep = singular_in_subspace(gvm_for(lam, 5), S, 5)
    assert rep.empty
    assert rep.caveat == "certified only to depth 5"


def test_empty_generator_set():
    rep = singular_in_subspace(gvm_for(W("1/2", 0, 0, 0), 4), [], 4)
    assert rep.empty and rep.block_dims == {}


def test_depth_zero_is_vacuous():
    rep = singular_in_subspace(gvm_for(W("1/2", 0, 0, 0), 0), ["g[1,2]"], 0)
    assert rep.caveat == "vacuous at depth 0"


def test_search_finds_planted_singular_vector(g4):
    # f_{alpha_1} v is singular in M(0); the search over U(n){f_{alpha_1}}V must see it
    M = build_gvm(g4, set(), W(0, 0, 0, 0), 2)
    rep = singular_in_subspace(M, ["a[1,1]"], 2)
    assert not rep.empty and (1, 0, 0, 0) in rep.witnesses


def test_hw_prop_examples(d4):
    assert hw_prop_conditions(d4, {2, 3}, ["g[1,2]"], ["a[2,2]"])
    assert hw_prop_conditions(d4, {2, 3}, ["g[1,2]", "a[1,2]"], ["a[1,2]", "a[2,2]"])
    assert not hw_prop_conditions(d4, {2, 3}, ["a[1,1]"], ["a[1,1]"])
    with pytest.raises(ValueError):
        hw_prop_conditions(d4, {2, 3}, ["g[1,2]"], [])


@pytest.mark.parametrize("sys", [("D", 4), ("A", 2)])
@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_positive_controls(sys, a):
    rs, alg = rs_of(*sys), alg_of(*sys)
    for i in range(rs.rank):
        lam = tuple(Fraction(a) if k == i else Fraction(1, 3) for k in range(rs.rank))
        M = build_verma(alg, lam, a + 1)
        v = positive_control(M, rs.simple[i].index)
        assert v is not None and is_singular(M, v)
        assert M.weight_of_nu(M.key_nu(next(iter(v)))) == reflect(rs, i, lam, dot=True)


def test_positive_control_rejects_non_natural(g4):
    M = build_verma(g4, W("1/2", 0, 0, 0), 2)
    with pytest.raises(ValueError):
        positive_control(M, g4.rs.root("a[1,1]").index)


def test_induction_certificate(d4):
    cert = induction_certificate(d4, W("1/2", "1/2", 0, 0), 4)
    assert cert["walpha_generators"]["inductioncor2"] == ["g[1,2]"]
    assert cert["no_singular_vector"]
    assert cert["recursion_target"]["weight"] == ["1/2", "0", "0"]


def test_induction_certificate_standing_assumption(d4):
    with pytest.raises(ValueError):
        induction_certificate(d4, W("1/2", 0, 0, 0), 4)
    cert = induction_certificate(d4, W("1/2", 0, 0, 0), 4, strict=False)
    assert cert["no_singular_vector"]
    assert cert["recursion_target"]["weight"] == ["0", "0", "0"]


entry = st.sampled_from([Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(1, 3)])
free = st.sampled_from([Fraction(x) for x in range(-2, 3)] + [Fraction(1, 2)])


@given(entry, free, free, free)
def test_hw_prop_consistent_with_search(a1, b, c, d):
    """Whenever the root conditions hold for gamma = g[1,2], the brute-force search is empty."""
    rs = rs_of("D", 4)
    lam = (a1, b, c, d)
    dl = delta_lambda(rs, lam)
    if any(lam[i] != 0 for i in dl):
        return
    betas = [r.name for r in rs.roots if r.coeffs[0] == 0]
    if not any(hw_prop_conditions(rs, dl, ["g[1,2]"], [b_]) for b_ in betas):
        return
    assert singular_in_subspace(gvm_for(lam, 5), ["g[1,2]"], 5).empty

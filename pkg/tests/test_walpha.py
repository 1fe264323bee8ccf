from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import W, alg_of, rs_of
from hwcheck import linalg
from hwcheck.modules import DepthExceeded, build_gvm
from hwcheck.walpha import (
    applicable_corollaries,
    check_commutation,
    check_walpha_description,
    commutation_report,
    ideal_subspace,
    w_alpha1_cap_n1V,
    w_alpha1_layer,
    w_alpha1_layer_definitional,
)
from hwcheck.weights import delta_lambda

D4_I = frozenset({1, 2, 3})


def gvm_for(lam, d):
    rs = rs_of("D", 4)
    return build_gvm(alg_of("D", 4), delta_lambda(rs, lam), lam, d)


def key(gvm, *names):
    rs = gvm.rs
    exps = {}
    for n in names:
        i = rs.root(n).index
        exps[i] = exps.get(i, 0) + 1
    return gvm.monomial_key(exps)


def test_layer_zero_is_zero():
    gvm = gvm_for(W("1/2", 0, 0, 0), 4)
    assert w_alpha1_layer(gvm, 0).dim == 0


def test_layer_one_membership():
    gvm = gvm_for(W("1/2", 0, 0, 0), 6)
    layer = w_alpha1_layer(gvm, 1).vectors
    assert linalg.contained_in([{key(gvm, "g[1,2]"): Fraction(1)}], layer)
    assert not linalg.contained_in([{key(gvm, "a[1,1]"): Fraction(1)}], layer)


def test_cap_n1v_scalar_levi():
    # e_{alpha_1} f_beta w = [e_{alpha_1}, f_beta] w, and the bracket is a Levi lowering
    # operator (killing the scalar V) for every n-root except alpha_1 itself
    gvm = gvm_for(W("1/2", 0, 0, 0), 5)
    layer = w_alpha1_cap_n1V(gvm, 5)[1]
    expected = [{key(gvm, n): Fraction(1)} for n in ("a[1,2]", "a[1,3]", "a[1,4]", "b[1]", "g[1,2]")]
    assert layer.dim == 5 and linalg.same_span(layer.vectors, expected)


def test_cap_n1v_half_half():
    gvm = gvm_for(W("1/2", "1/2", 0, 0), 7)
    w = w_alpha1_cap_n1V(gvm, 7)
    s = ideal_subspace(gvm, ["g[1,2]"], 7)
    assert w[1].dim == 1 and linalg.same_span(w[1].vectors, s[1].vectors)


def test_ideal_subspace_examples():
    gvm = gvm_for(W("1/2", 0, 0, 0), 10)
    assert all(x.dim == 0 for x in ideal_subspace(gvm, [], 10))
    s = ideal_subspace(gvm, ["g[1,2]"], 10)
    assert linalg.same_span(s[1].vectors, [{key(gvm, "g[1,2]"): Fraction(1)}])
    assert s[2].dim == 6
    with pytest.raises(ValueError):
        ideal_subspace(gvm, ["a[2,2]"], 4)


def test_layer_beyond_depth():
    gvm = gvm_for(W("1/2", 0, 0, 0), 3)
    with pytest.raises(ValueError):
        w_alpha1_layer(gvm, 4)
    with pytest.raises(DepthExceeded):
        w_alpha1_cap_n1V(gvm, 5)


def test_description_no_closed_form():
    rep = check_walpha_description(gvm_for(W("1/2", 0, 0, 0), 4), 4)
    assert rep["verdict"] == "no applicable closed form"
    assert rep["general"]["holds"]


@pytest.mark.parametrize("lam,name", [
    (W("1/2", "1/2", 0, 0), "inductioncor2"),
    (W(0, 0, 0, -1), "inductioncorscalar"),
    (W("1/2", 0, 0, "1/2"), "inductioncor1"),
    (W(1, -2, 1, 1), "inductioncor3"),
])
@pytest.mark.parametrize("d", [4, 7])
def test_description_holds(lam, name, d):
    rep = check_walpha_description(gvm_for(lam, d), d)
    assert name in [c["name"] for c in rep["corollaries"]]
    assert rep["verdict"] == "holds"


def test_description_requires_delta_lambda_levi():
    gvm = build_gvm(alg_of("D", 4), set(), W("1/2", 0, 0, 0), 3)
    with pytest.raises(ValueError):
        check_walpha_description(gvm, 3)


def test_corollary_hypotheses(d4):
    names = dict(applicable_corollaries(d4, W("1/2", 0, 0, "1/2")))
    assert names["inductioncor1"] == ["g[1,2]", "a[1,2]", "a[1,3]"]
    names = dict(applicable_corollaries(d4, W("1/2", "1/2", 0, 0)))
    assert names["inductioncor1"] == ["g[1,2]"]
    # only alpha_{m-1} outside Delta_lambda: excluded by the k != m-1 clause
    assert "inductioncor1" not in dict(applicable_corollaries(d4, W("1/2", 0, "1/2", 0)))


def test_commutation_examples(g4):
    assert check_commutation(g4, 0, "a[2,2]", 5)
    assert check_commutation(g4, 1, "a[2,3]", 5)
    rep = commutation_report(g4, 2, "a[1,2]", 5)
    assert rep["holds"] and rep["vacuous"]


@pytest.mark.parametrize("a", [0, 1, 2])
def test_commutation_all_roots(g4, a):
    for r in g4.rs.roots:
        rep = commutation_report(g4, a, r.index, 5)
        assert rep["holds"], rep
        if not rep["vacuous"]:
            assert rep["identity"] and rep["containment"]


entry = st.sampled_from([Fraction(x) for x in range(-2, 3)] + [Fraction(1, 2), Fraction(-1, 2)])


@given(st.tuples(entry, entry, entry, entry), st.integers(1, 3))
def test_layer_matches_definition(lam, l):
    rs = rs_of("D", 4)
    if 0 in delta_lambda(rs, lam):
        lam = (lam[0] + Fraction(1, 2),) + lam[1:]
    gvm = gvm_for(lam, 4)
    a = w_alpha1_layer(gvm, l, 4)
    b = w_alpha1_layer_definitional(gvm, l, 4)
    assert linalg.same_span(a.vectors, b.vectors)

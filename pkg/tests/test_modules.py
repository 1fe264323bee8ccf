import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import W, alg_of, rs_of
from hwcheck.modules import (
    DepthExceeded,
    IrreducibleModule,
    a_basis_check,
    alpha1_free,
    build_gvm,
    build_irreducible,
    build_verma,
    contravariant_gram,
    gram_rank,
    kostant_partitions,
    weyl_completed_dimension,
    weyl_dim,
)
from hwcheck.weights import fundamental

D4_I = {1, 2, 3}
entry = st.sampled_from([Fraction(x) for x in range(-2, 3)] + [Fraction(1, 2), Fraction(-2, 3)])


def test_verma_block_example(g4):
    M = build_verma(g4, W(0, 0, 0, 0), 2)
    assert M.block_dim((1, 1, 0, 0)) == 2
    assert M.block_dim((0, 0, 0, 0)) == 1


def test_a1_verma_one_per_degree():
    M = build_verma(alg_of("A", 1), W("7/3"), 5)
    assert [M.block_dim((k,)) for k in range(7)] == [1] * 6 + [0]


def test_gvm_layer_sizes(g4):
    gvm = build_gvm(g4, D4_I, W("1/2", 0, 0, 0), 10)
    assert gvm.v_dim == 1
    for l in range(3):
        assert len(gvm.omega_layer(l)) == comb(l + 5, 5)


def test_gvm_levi_dimension_from_oracle(g4):
    lam = W("1/2", 1, 0, 0)
    gvm = build_gvm(g4, D4_I, lam, 0)
    assert gvm.v_dim == weyl_dim(rs_of("D", 4), lam, D4_I)


def test_empty_levi_is_verma(g4):
    lam = W("1/2", -1, 0, 2)
    a, b = build_gvm(g4, set(), lam, 4), build_verma(g4, lam, 4)
    assert a.block_dims() == b.block_dims()


def test_gvm_rejects_non_natural(g4):
    with pytest.raises(ValueError):
        build_gvm(g4, {0}, W("1/2", 0, 0, 0), 2)


@pytest.mark.parametrize("lam,expected", [((0, 0, 0, 0), 1), ((1, 0, 0, 0), 8), ((0, 0, 1, 0), 8), ((0, 0, 0, 1), 8)])
def test_irreducible_small(g4, lam, expected):
    L = build_irreducible(g4, W(*lam), 6)
    assert L.dimension() == expected == weyl_dim(rs_of("D", 4), W(*lam))


def test_adjoint_needs_completion(g4):
    L = build_irreducible(g4, fundamental(rs_of("D", 4), 1), 6)
    assert L.dimension() < 28
    assert weyl_completed_dimension(L) == 28
    assert build_irreducible(g4, fundamental(rs_of("D", 4), 1), None).dimension() == 28


def test_a2_vector_rep():
    assert build_irreducible(alg_of("A", 2), W(1, 0), 3).dimension() == 3


def test_trivial_module_blocks(g4):
    L = build_irreducible(g4, W(0, 0, 0, 0), 3)
    assert L.block_dims() == {(0, 0, 0, 0): 1}


@pytest.mark.parametrize("i", range(1, 7))
def test_raising_lowering_closed_form(g4, i):
    lam = W("5/2", -1, 3, 0)
    M = build_verma(g4, lam, 6)
    e, f = g4.e("a[1,1]"), g4.f("a[1,1]")
    v = {M.top: Fraction(1)}
    for _ in range(i - 1):
        v = M.act_vec(f, v)
    got = M.act_vec(e, M.act_vec(f, v))
    c = i * (1 + lam[0] - i)
    assert got == {k: c * x for k, x in v.items()}


def test_h_acts_by_weight(g4):
    M = build_verma(g4, W("1/2", 0, 2, -1), 3)
    for nu, keys in M.blocks.items():
        for k in keys:
            for i in range(4):
                c = M.h_value(i, nu)
                assert M.act_vec(g4.h(i), {k: Fraction(1)}) == ({k: c} if c else {})


def test_e2_on_f_gamma_in_gvm(g4):
    gvm = build_gvm(g4, D4_I, W("1/2", 0, 0, 0), 6)
    w = {gvm.monomial_key({g4.rs.root("g[1,2]").index: 1}): Fraction(1)}
    out = gvm.act_vec(g4.e("a[2,2]"), w)
    target = gvm.monomial_key({g4.rs.root("a[1,4]").index: 1})
    assert list(out) == [target] and abs(out[target]) == 1


def test_gram_examples(g4):
    lam = W("3/2", 0, 0, 0)
    M = build_verma(g4, lam, 2)
    assert contravariant_gram(M, (1, 0, 0, 0)) == [[lam[0]]]
    assert contravariant_gram(M, (0, 0, 0, 0)) == [[1]]
    M0 = build_verma(g4, W(0, 0, 0, 0), 2)
    assert contravariant_gram(M0, (1, 0, 0, 0)) == [[0]]


def test_depth_guard(g4):
    M = build_verma(g4, W(0, 0, 0, 0), 1)
    x = M.act(g4.f("a[1,1]"), M.highest_weight_vector())
    with pytest.raises(DepthExceeded):
        M.act(g4.f("a[2,2]"), x)
    with pytest.raises(DepthExceeded):
        contravariant_gram(M, (1, 1, 0, 0))


def test_alpha1_free(g4):
    M = build_verma(g4, W(1, 1, 1, 1), 2)
    v = M.highest_weight_vector()
    assert alpha1_free(v) == v
    assert alpha1_free(M.act(g4.f("a[1,1]"), v)).is_zero()


def test_kostant_and_weyl(d4):
    assert kostant_partitions(d4, (1, 1, 0, 0)) == 2
    assert weyl_dim(d4, W(0, 0, 0, 0)) == 1
    assert weyl_dim(d4, W(0, 0, 0, 1)) == 8


@pytest.mark.parametrize("k,a", [(k, a) for k in (1, 2, 3) for a in range(4)])
def test_a_basis_lemma(k, a):
    r = a_basis_check(k, a, alg_of("A", k))
    assert r["dimension"] == comb(a + k, k) == r["monomials"]
    assert r["independent"]


def _brute_partitions(rs, nu):
    """Count N_0-combinations of positive roots by plain enumeration."""
    roots = [r.coeffs for r in rs.roots]
    bounds = [min(nu[i] // c for i, c in enumerate(r) if c) for r in roots]
    count = 0
    for t in itertools.product(*(range(b + 1) for b in bounds)):
        if all(sum(e * r[i] for e, r in zip(t, roots)) == nu[i] for i in range(len(nu))):
            count += 1
    return count


@given(st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_kostant_dp_matches_enumeration(nu):
    rs = rs_of("D", 4)
    assert kostant_partitions(rs, tuple(nu)) == _brute_partitions(rs, tuple(nu))


@given(st.tuples(entry, entry, entry))
def test_verma_blocks_match_kostant(lam):
    rs = rs_of("A", 3)
    M = build_verma(alg_of("A", 3), lam, 4)
    for nu in itertools.product(range(5), repeat=3):
        if sum(nu) <= 4:
            assert M.block_dim(nu) == kostant_partitions(rs, nu)


@given(st.tuples(entry, entry, entry))
def test_irreducible_blocks_are_gram_ranks(lam):
    alg = alg_of("A", 3)
    M = build_verma(alg, lam, 3)
    L = IrreducibleModule(alg, lam, 3)
    for nu in M.blocks:
        assert L.block_dim(nu) == gram_rank(contravariant_gram(M, nu))


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_irreducible_dimension_is_weyl(lam):
    for fam in ("A", "D"):
        rs = rs_of(fam, 3)
        assert build_irreducible(alg_of(fam, 3), lam, None).dimension() == weyl_dim(rs, lam)

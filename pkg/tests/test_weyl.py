import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import W, rs_of
from hwcheck.rootsys import is_connected, subsystem_positive
from hwcheck.weights import classify, fundamental, is_dominant_integral, is_integral, is_regular, phi_lambda, rho
from hwcheck.weyl import (
    apply_word,
    apply_word_root,
    check_connected_components_lemma,
    check_orbit_lemma,
    connect_subsystem,
    missing_simple,
    reduce_regular_integral,
    reduce_to_Sg,
    reflect,
    replay,
    subsystem_image,
    subsystem_orbits,
    weyl_orbit,
)

entry = st.sampled_from([Fraction(x) for x in range(-3, 4)] + [Fraction(1, 2), Fraction(-1, 2)])
d4_weights = st.tuples(entry, entry, entry, entry)


@pytest.mark.parametrize("a", [0, 1, 2, 5])
def test_s1_dot_on_multiple_of_omega1(d4, a):
    assert reflect(d4, 0, W(a, 0, 0, 0), dot=True) == W(-a - 2, a + 1, 0, 0)


def test_reflection_fixes_orthogonal(d4):
    lam = W(0, 3, 1, 1)
    assert reflect(d4, 0, lam) == lam


def test_orbit_sizes(d4):
    assert weyl_orbit(d4, W(0, 0, 0, 0)) == {W(0, 0, 0, 0)}
    assert len(weyl_orbit(d4, fundamental(d4, 0))) == 8
    assert len(weyl_orbit(d4, W(0, 0, 0, 0), dot=True)) == 192


def test_orbit_lemma_instance(d4):
    assert apply_word_root(d4, [1, 0], (1, 0, 0, 0)) == (0, 1, 0, 0)
    assert check_orbit_lemma(d4)[0]
    assert check_orbit_lemma(rs_of("D", 5))[0]


def test_connect_subsystem_examples(d4):
    assert connect_subsystem(d4, subsystem_positive(d4, {1, 2, 3})) == []
    assert connect_subsystem(d4, []) == []
    psi = subsystem_positive(d4, {0, 2, 3})
    word = connect_subsystem(d4, psi)
    rest = missing_simple(d4, subsystem_image(d4, word, psi))
    assert 0 in rest and is_connected(d4, rest)


@pytest.mark.parametrize("I", [I for n in range(1, 4) for I in itertools.combinations(range(4), n)])
def test_connect_every_proper_levi(d4, I):
    psi = subsystem_positive(d4, I)
    rest = missing_simple(d4, subsystem_image(d4, connect_subsystem(d4, psi), psi))
    assert 0 in rest and is_connected(d4, rest)


def test_connected_components_lemma(d4):
    seeds = [subsystem_positive(d4, I) for n in range(1, 4) for I in itertools.combinations(range(4), n)]
    seeds += [phi_lambda(d4, lam) for lam in itertools.product([Fraction(0), Fraction(1, 2)], repeat=4)]
    subs = subsystem_orbits(d4, [s for s in seeds if s])
    ok, checked, witness = check_connected_components_lemma(d4, subs)
    assert ok and checked > 0 and witness is None


def test_worked_reduction(d4):
    cert = reduce_to_Sg(d4, W(-3, 0, 0, 0))
    assert cert.word == [0, 1]
    assert [s.value for s in cert.steps] == [-3, -2]
    assert cert.output == W(0, 0, -1, -1)
    assert replay(d4, cert)


@pytest.mark.parametrize("lam", [W("1/2", 0, 0, 0), W(0, 0, -1, -1)])
def test_already_in_s_g(d4, lam):
    assert reduce_to_Sg(d4, lam).word == []


def test_regular_integral_one_step(d4):
    cert = reduce_regular_integral(d4, W(-2, 1, 0, 0))
    assert cert.word == [0] and cert.output == W(0, 0, 0, 0)
    assert cert.penultimate == W(-2, 1, 0, 0)
    cert = reduce_regular_integral(d4, W(2, -3, 2, 2))
    assert cert.word == [1] and cert.output == fundamental(d4, 1)


def test_reduction_errors(d4):
    with pytest.raises(ValueError, match="already dominant"):
        reduce_regular_integral(d4, rho(d4))
    with pytest.raises(ValueError):
        reduce_to_Sg(d4, rho(d4))


def test_tampered_certificate_fails_replay(d4):
    cert = reduce_to_Sg(d4, W(-3, 0, 0, 0))
    cert.steps[1].value = Fraction(-5)
    assert not replay(d4, cert)


@given(d4_weights)
def test_reductions_replay(lam):
    rs = rs_of("D", 4)
    if is_dominant_integral(lam):
        return
    if is_integral(lam) and is_regular(rs, lam):
        cert = reduce_regular_integral(rs, lam)
        assert is_dominant_integral(cert.output)
        assert all(s.value < -1 for s in cert.steps)
    else:
        cert = reduce_to_Sg(rs, lam)
        assert classify(rs, cert.output).in_S_g
    assert replay(rs, cert)
    assert apply_word(rs, cert.word, lam) == cert.output


@given(d4_weights, st.integers(0, 3))
def test_dot_reflection_is_involution(lam, i):
    rs = rs_of("D", 4)
    assert reflect(rs, i, reflect(rs, i, lam, dot=True), dot=True) == lam
    assert reflect(rs, i, reflect(rs, i, lam)) == lam

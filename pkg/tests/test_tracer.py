from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import W, rs_of
from hwcheck.suite import LEAF_SEEDS, seeded_corpus
from hwcheck.tracer import LEAVES, PREDICATES, VERDICTS, trace_strategy, verify_trace
from hwcheck.weights import rho

entry = st.sampled_from([Fraction(x) for x in range(-3, 4)] + [Fraction(1, 2), Fraction(-1, 2)])


def results(trace):
    return [s.result for s in trace.steps]


def test_scalar_s_g_example(d4):
    t = trace_strategy(d4, W(0, 0, -1, -1))
    assert t.verdict == "S_g chain"
    r = results(t)
    for name in ("Sgcase1", "Sgscalar", "inductioncase1", "A3case"):
        assert name in r
    assert r.index("Sgscalar") < r.index("inductioncase1") < r.index("A3case")
    assert any(s.family == "D" and s.rank == 3 for s in t.steps)
    assert not verify_trace(t)


def test_regular_integral_example(d4):
    t = trace_strategy(d4, W(2, -3, 2, 2))
    assert t.verdict == "regular-integral chain"
    step = next(s for s in t.steps if s.result == "regintprop")
    assert "i = 2" in step.note and "a = 1" in step.note and "(0,1,0,0)" in step.note
    assert "inductioncase3" in results(t)
    assert any(s.rank == 3 for s in t.steps)
    assert not verify_trace(t)


@pytest.mark.parametrize("sys", [("D", 4), ("D", 5), ("A", 2)])
def test_rho_is_finite_dimensional(sys):
    rs = rs_of(*sys)
    t = trace_strategy(rs, rho(rs))
    assert t.verdict == "finite-dimensional" and len(t.steps) == 1


def test_unsupported_systems():
    with pytest.raises(ValueError):
        trace_strategy(rs_of("A", 4), W(0, 0, 0, -1))


def test_tampered_record_is_rejected(d4):
    t = trace_strategy(d4, W(0, 0, -1, -1))
    t.steps[0].weight = W(5, 5, 5, 5)
    assert verify_trace(t)


def test_unknown_leaf_rejected(d4):
    t = trace_strategy(d4, W(0, 0, -1, -1))
    t.leaf = "elsewhere"
    assert any("leaf" in f for f in verify_trace(t))


def test_render_and_dict(d4):
    t = trace_strategy(d4, W(0, 0, -1, -1))
    d = t.as_dict()
    assert d["verdict"] in VERDICTS and d["leaf"] in LEAVES
    assert t.render().splitlines()[-1].strip().startswith("verdict")
    for s in d["steps"]:
        for h in s["hypotheses"]:
            assert h["predicate"] in PREDICATES


def test_symmetry_swap_is_recorded():
    # a weight whose recursion needs the alpha_{m-1} <-> alpha_m automorphism
    found = False
    for f, m, lam in seeded_corpus(500, 0):
        if f != "D":
            continue
        t = trace_strategy(rs_of(f, m), lam)
        if any(s.result == "diagram-automorphism" for s in t.steps):
            found = True
            assert not verify_trace(t)
            break
    assert found


def test_leaf_seeds_cover_all_leaves():
    hit = {trace_strategy(rs_of(f, m), lam).leaf for f, m, lam in seeded_corpus(len(LEAF_SEEDS), 0)}
    assert hit == set(LEAVES)


def test_deterministic(d4):
    a = trace_strategy(d4, W("1/2", -3, 2, 0)).as_dict()
    b = trace_strategy(d4, W("1/2", -3, 2, 0)).as_dict()
    assert a == b


@given(st.sampled_from([("D", 3), ("D", 4), ("D", 5), ("A", 1), ("A", 2), ("A", 3)]), st.data())
def test_traces_verify(sys, data):
    rs = rs_of(*sys)
    lam = tuple(data.draw(entry) for _ in range(rs.rank))
    t = trace_strategy(rs, lam)
    assert t.verdict in VERDICTS and t.leaf in LEAVES
    assert verify_trace(t) == []

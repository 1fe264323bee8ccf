from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from hwcheck import linalg

small = st.integers(-3, 3).map(Fraction)
matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=6))


def as_vecs(rows):
    return [{j: c for j, c in enumerate(r) if c} for r in rows]


@given(matrices)
def test_rank_matches_sympy(rows):
    assert linalg.rank(as_vecs(rows)) == sympy.Matrix(rows).rank()


@given(matrices)
def test_kernel_vectors_are_in_kernel(rows):
    cols = as_vecs(rows)
    sources = [{("s", i): Fraction(1)} for i in range(len(cols))]
    ker = linalg.kernel_vectors(cols, sources)
    assert len(ker) == len(cols) - linalg.rank(cols)
    for v in ker:
        combo = {}
        for (_, i), c in v.items():
            linalg.axpy(combo, c, cols[i])
        assert not combo


@given(matrices, matrices)
def test_intersection_is_contained_in_both(a, b):
    va, vb = as_vecs(a), as_vecs(b)
    inter = linalg.intersection(va, vb)
    assert linalg.contained_in(inter, va) and linalg.contained_in(inter, vb)
    # dim(A + B) = dim A + dim B - dim(A cap B)
    assert linalg.rank(va + vb) == linalg.rank(va) + linalg.rank(vb) - len(inter)


def test_echelon_coordinates():
    eb = linalg.EchelonBasis()
    eb.insert({0: Fraction(1), 1: Fraction(1)})
    eb.insert({1: Fraction(1)})
    assert eb.contains({0: Fraction(2)})
    assert not eb.contains({2: Fraction(1)})
    assert linalg.same_span([{0: Fraction(1)}, {1: Fraction(1)}], [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(2)}])

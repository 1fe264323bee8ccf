"""Exact linear algebra over the rationals on sparse vectors.

A vector is a dict mapping hashable, mutually comparable keys to nonzero
Fractions.  All routines are exact; nothing here ever touches floats.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Vec = Dict[Hashable, Fraction]


def clean(v: Vec) -> Vec:
    return {k: c for k, c in v.items() if c != 0}


def axpy(target: Vec, scale, source: Vec) -> None:
    """target += scale * source, in place, dropping zeros."""
    if scale == 0:
        return
    for k, c in source.items():
        s = target.get(k, 0) + scale * c
        if s:
            target[k] = s
        else:
            target.pop(k, None)


def scaled(v: Vec, scale) -> Vec:
    if scale == 0:
        return {}
    return {k: scale * c for k, c in v.items()}


def add(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    axpy(out, 1, v)
    return out


def combine(vectors: Sequence[Vec], coeffs: Sequence) -> Vec:
    out: Vec = {}
    for v, c in zip(vectors, coeffs):
        axpy(out, c, v)
    return out


class EchelonBasis:
    """Incrementally maintained reduced row echelon form.

    Each stored row remembers which combination of the inserted vectors it
    equals, so membership tests can also return coordinates.
    """

    def __init__(self) -> None:
        self.rows: Dict[Hashable, Tuple[Vec, Vec]] = {}
        self.count = 0  # number of inserted vectors, independent or not

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Vec) -> Tuple[Vec, Vec]:
        residual = dict(v)
        combo: Vec = {}
        for p in [k for k in residual if k in self.rows]:
            c = residual.get(p)
            if not c:
                continue
            row, rcombo = self.rows[p]
            axpy(residual, -c, row)
            axpy(combo, c, rcombo)
        return residual, combo

    def contains(self, v: Vec) -> bool:
        residual, _ = self._reduce(v)
        return not residual

    def coordinates(self, v: Vec) -> Optional[Vec]:
        """Coefficients over the inserted independent vectors, or None."""
        residual, combo = self._reduce(v)
        if residual:
            return None
        return combo

    def insert(self, v: Vec, label: Optional[Hashable] = None) -> Optional[Vec]:
        """Insert v.  Returns None if v was independent, else a relation.

        The relation maps labels to coefficients with sum(c * vec) == 0 and
        contains the new label with coefficient 1.
        """
        if label is None:
            label = self.count
        self.count += 1
        residual, combo = self._reduce(v)
        if not residual:
            relation = scaled(combo, -1)
            relation[label] = Fraction(1)
            return relation
        pivot = min(residual)
        inv = 1 / Fraction(residual[pivot])
        row = scaled(residual, inv)
        rcombo = scaled(combo, -inv)
        rcombo[label] = rcombo.get(label, 0) + inv
        for p, (other, ocombo) in self.rows.items():
            c = other.get(pivot)
            if c:
                axpy(other, -c, row)
                axpy(ocombo, -c, rcombo)
        self.rows[pivot] = (row, rcombo)
        return None


def rank(vectors: Iterable[Vec]) -> int:
    eb = EchelonBasis()
    for v in vectors:
        eb.insert(v)
    return len(eb)


def independent_subset(vectors: Sequence[Vec]) -> List[int]:
    """Indices of a greedily chosen maximal independent subset."""
    eb = EchelonBasis()
    keep = []
    for i, v in enumerate(vectors):
        if eb.insert(v, i) is None:
            keep.append(i)
    return keep


def span_basis(vectors: Iterable[Vec]) -> List[Vec]:
    vs = list(vectors)
    return [vs[i] for i in independent_subset(vs)]


def kernel(columns: Sequence[Vec]) -> List[Vec]:
    """Basis of {x : sum_j x_j * columns[j] = 0}, as dicts over column indices."""
    eb = EchelonBasis()
    rels = []
    for j, col in enumerate(columns):
        rel = eb.insert(col, j)
        if rel is not None:
            rels.append(clean(rel))
    return rels


def kernel_vectors(images: Sequence[Vec], sources: Sequence[Vec]) -> List[Vec]:
    """Vectors in span(sources) mapped to zero, given images[j] = A(sources[j])."""
    out = [combine(sources, [rel.get(j, 0) for j in range(len(sources))]) for rel in kernel(images)]
    return span_basis([v for v in out if v])


def intersection(a: Sequence[Vec], b: Sequence[Vec]) -> List[Vec]:
    cols = list(a) + [scaled(v, -1) for v in b]
    out = []
    for rel in kernel(cols):
        v = combine(a, [rel.get(j, 0) for j in range(len(a))])
        if v:
            out.append(v)
    return span_basis(out)


def same_span(a: Sequence[Vec], b: Sequence[Vec]) -> bool:
    ra, rb = rank(a), rank(b)
    return ra == rb and rank(list(a) + list(b)) == ra


def contained_in(a: Sequence[Vec], b: Sequence[Vec]) -> bool:
    eb = EchelonBasis()
    for v in b:
        eb.insert(v)
    return all(eb.contains(v) for v in a)

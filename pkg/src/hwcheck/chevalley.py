"""Chevalley bases with integer structure constants.

Sign convention: every root vector is a matrix in the defining
representation (sl_{m+1} for type A, so(2m) preserving the form
[[0, I], [I, 0]] for type D):

    e_{e_i - e_j} = E_{i,j}                     (type A)
    e_{e_i - e_j} = E_{i,j} - E_{m+j,m+i}       (type D, i < j)
    e_{e_i + e_j} = E_{i,m+j} - E_{j,m+i}       (type D, i < j)
    f_alpha = transpose(e_alpha),  h_i = [e_{alpha_i}, f_{alpha_i}]

Transposition is an anti-automorphism of both matrix algebras, which gives
C_{alpha,beta} = C_{-beta,-alpha} for free.  The table is read off from
matrix commutators once and then stored as exact integers.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from . import linalg
from .rootsys import Root, RootSystem, root_pairing, subsystem_positive

Term = Tuple[int, int]  # (basis index, integer coefficient)


def _root_matrix(rs: RootSystem, root: Root) -> np.ndarray:
    eps = root.eps
    if rs.family == "A":
        n = rs.rank + 1
        mat = np.zeros((n, n), dtype=np.int64)
        i = eps.index(1)
        j = eps.index(-1)
        mat[i, j] = 1
        return mat
    m = rs.rank
    mat = np.zeros((2 * m, 2 * m), dtype=np.int64)
    nz = [k for k, c in enumerate(eps) if c]
    i, j = nz
    if eps[j] == -1:
        mat[i, j] += 1
        mat[m + j, m + i] -= 1
    else:
        mat[i, m + j] += 1
        mat[j, m + i] -= 1
    return mat


@dataclass
class ChevalleyAlgebra:
    rs: RootSystem
    table: Dict[Tuple[int, int], Tuple[Term, ...]]
    flipped: Tuple = field(default=())

    @property
    def n_pos(self) -> int:
        return len(self.rs.roots)

    @property
    def dim(self) -> int:
        return 2 * self.n_pos + self.rs.rank

    def e(self, root) -> int:
        return self.rs.root(root).index

    def f(self, root) -> int:
        return self.n_pos + self.rs.root(root).index

    def h(self, i: int) -> int:
        return 2 * self.n_pos + i

    def kind(self, b: int) -> Tuple[str, int]:
        """('e', root index) | ('f', root index) | ('h', simple index)."""
        n = self.n_pos
        if b < n:
            return "e", b
        if b < 2 * n:
            return "f", b - n
        return "h", b - 2 * n

    def weight(self, b: int) -> Tuple[int, ...]:
        """Root-lattice grading of a basis element, as coefficients."""
        k, r = self.kind(b)
        if k == "h":
            return (0,) * self.rs.rank
        c = self.rs.roots[r].coeffs
        return c if k == "e" else tuple(-x for x in c)

    def name(self, b: int) -> str:
        k, r = self.kind(b)
        if k == "h":
            return f"h_{r + 1}"
        return f"{k}_{self.rs.roots[r].name}"

    def basis_index(self, name: str) -> int:
        name = name.strip()
        if name.startswith("h_"):
            return self.h(int(name[2:]) - 1)
        k, root = name[0], name[2:]
        return self.e(root) if k == "e" else self.f(root)

    def bracket_basis(self, a: int, b: int) -> Tuple[Term, ...]:
        return self.table.get((a, b), ())

    def coroot(self, root) -> Dict[int, int]:
        """h_alpha = sum_i c_i h_i for simply-laced systems."""
        c = self.rs.root(root).coeffs
        return {self.h(i): ci for i, ci in enumerate(c) if ci}

    def element(self, coeffs: Dict[int, object]) -> "AlgebraElement":
        return AlgebraElement(self, {k: Fraction(v) for k, v in coeffs.items() if v})

    def basis_element(self, b: int) -> "AlgebraElement":
        return AlgebraElement(self, {b: Fraction(1)})

    def with_flipped_sign(self, a: int, b: int) -> "ChevalleyAlgebra":
        """Copy with the sign of [x_a, x_b] (and [x_b, x_a]) negated; a negative control."""
        table = dict(self.table)
        for key in ((a, b), (b, a)):
            if key in table:
                table[key] = tuple((k, -c) for k, c in table[key])
        return ChevalleyAlgebra(self.rs, table, self.flipped + ((a, b),))

    def structure_constant(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        """C_{alpha,beta} for signed roots given as coefficient vectors."""
        a, b = self._signed_index(alpha), self._signed_index(beta)
        target = tuple(x + y for x, y in zip(alpha, beta))
        t = self._signed_index(target)
        if t is None:
            return 0
        for k, c in self.bracket_basis(a, b):
            if k == t:
                return c
        return 0

    def _signed_index(self, coeffs: Sequence[int]) -> Optional[int]:
        coeffs = tuple(coeffs)
        if all(c >= 0 for c in coeffs):
            idx = self.rs.index_of(coeffs)
            return None if idx is None else idx
        idx = self.rs.index_of(tuple(-c for c in coeffs))
        return None if idx is None else self.n_pos + idx

    def to_json(self) -> str:
        out = {}
        for (a, b), terms in sorted(self.table.items()):
            if not terms:
                continue
            out[f"[{self.name(a)},{self.name(b)}]"] = " + ".join(
                f"{c}*{self.name(k)}" for k, c in terms
            )
        return json.dumps({"system": self.rs.label, "table": out}, indent=1, sort_keys=True)


@dataclass
class AlgebraElement:
    alg: ChevalleyAlgebra
    coeffs: Dict[int, Fraction]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same(self, other)
        return AlgebraElement(self.alg, linalg.add(self.coeffs, other.coeffs))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same(self, other)
        return AlgebraElement(self.alg, linalg.add(self.coeffs, linalg.scaled(other.coeffs, -1)))

    def __rmul__(self, scalar) -> "AlgebraElement":
        return AlgebraElement(self.alg, linalg.scaled(self.coeffs, Fraction(scalar)))

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and other.alg is self.alg and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{self.alg.name(k)}" for k, c in sorted(self.coeffs.items()))


def _same(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.alg is not y.alg:
        raise ValueError("elements belong to different algebras")


def bracket_dicts(alg: ChevalleyAlgebra, x: Dict[int, Fraction], y: Dict[int, Fraction]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for k, c in alg.table.get((a, b), ()):
                s = out.get(k, 0) + ca * cb * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
    return out


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _same(x, y)
    return AlgebraElement(x.alg, bracket_dicts(x.alg, x.coeffs, y.coeffs))


def build_chevalley(rs: RootSystem) -> ChevalleyAlgebra:
    n = len(rs.roots)
    mats: List[np.ndarray] = []
    e_mats = [_root_matrix(rs, r) for r in rs.roots]
    f_mats = [m.T.copy() for m in e_mats]
    simple_idx = [rs.index_of(tuple(1 if k == i else 0 for k in range(rs.rank))) for i in range(rs.rank)]
    h_mats = [e_mats[s] @ f_mats[s] - f_mats[s] @ e_mats[s] for s in simple_idx]
    mats = e_mats + f_mats + h_mats
    dim = len(mats)
    h_diag = [{k: Fraction(int(v)) for k, v in enumerate(np.diag(h)) if v} for h in h_mats]
    h_basis = linalg.EchelonBasis()
    for i, d in enumerate(h_diag):
        h_basis.insert(d, i)

    def weight(b):
        if b < n:
            return rs.roots[b].coeffs
        if b < 2 * n:
            return tuple(-c for c in rs.roots[b - n].coeffs)
        return (0,) * rs.rank

    by_weight = {}
    for b in range(2 * n):
        by_weight[weight(b)] = b

    table: Dict[Tuple[int, int], Tuple[Term, ...]] = {}
    for a in range(dim):
        for b in range(dim):
            comm = mats[a] @ mats[b] - mats[b] @ mats[a]
            if not comm.any():
                continue
            w = tuple(x + y for x, y in zip(weight(a), weight(b)))
            if all(c == 0 for c in w):
                off = comm - np.diag(np.diag(comm))
                assert not off.any()
                coords = h_basis.coordinates({k: Fraction(int(v)) for k, v in enumerate(np.diag(comm)) if v})
                assert coords is not None
                terms = tuple(sorted((2 * n + i, int(c)) for i, c in coords.items() if c))
                assert all(Fraction(c) == cc for (_, c), cc in zip(terms, [coords[i - 2 * n] for i, _ in terms]))
            else:
                t = by_weight[w]
                target = mats[t]
                pos = tuple(np.argwhere(target != 0)[0])
                c = Fraction(int(comm[pos]), int(target[pos]))
                assert c.denominator == 1 and (comm == int(c) * target).all()
                terms = ((t, int(c)),)
            table[(a, b)] = terms
    return ChevalleyAlgebra(rs, table)


# ----------------------------------------------------------------------------
# axiom verification

def _jacobi(alg: ChevalleyAlgebra, a: int, b: int, c: int) -> bool:
    t = alg.table
    acc: Dict[int, int] = {}
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        for k, ck in t.get((y, z), ()):
            for r, cr in t.get((x, k), ()):
                acc[r] = acc.get(r, 0) + ck * cr
    return all(v == 0 for v in acc.values())


def verify_chevalley_axioms(alg: ChevalleyAlgebra, sample: Optional[int] = None, seed: int = 0,
                            exhaustive_rank: int = 5) -> Dict[str, dict]:
    """Check every axiom family; returns {family: {passed, checked, witness}}."""
    rs = alg.rs
    report: Dict[str, dict] = {}

    def record(name, checked, witness):
        report[name] = {"passed": witness is None, "checked": checked, "witness": witness}

    hs = [alg.h(i) for i in range(rs.rank)]
    wit, cnt = None, 0
    for a in hs:
        for b in hs:
            cnt += 1
            if alg.bracket_basis(a, b) and wit is None:
                wit = (alg.name(a), alg.name(b))
    record("h_commutative", cnt, wit)

    wit, cnt = None, 0
    for i in range(rs.rank):
        for r in rs.roots:
            val = root_pairing(rs, r.coeffs, tuple(1 if k == i else 0 for k in range(rs.rank)))
            for b, sgn in ((alg.e(r), 1), (alg.f(r), -1)):
                cnt += 1
                expect = ((b, sgn * val),) if val else ()
                if alg.bracket_basis(alg.h(i), b) != expect and wit is None:
                    wit = (alg.name(alg.h(i)), alg.name(b))
    record("h_eigenvalues", cnt, wit)

    wit, cnt = None, 0
    for r in rs.roots:
        cnt += 1
        got = dict(alg.bracket_basis(alg.e(r), alg.f(r)))
        if got != alg.coroot(r) and wit is None:
            wit = (alg.name(alg.e(r)), alg.name(alg.f(r)))
    record("e_f_coroot", cnt, wit)

    signed = [r.coeffs for r in rs.roots] + [tuple(-c for c in r.coeffs) for r in rs.roots]
    wit_c, wit_t, cnt = None, None, 0
    for al in signed:
        for be in signed:
            s = tuple(x + y for x, y in zip(al, be))
            if all(c == 0 for c in s):
                continue
            cnt += 1
            is_root = alg._signed_index(s) is not None
            c = alg.structure_constant(al, be)
            raw = alg.bracket_basis(alg._signed_index(al), alg._signed_index(be))
            ok = (abs(c) == 1) if is_root else (not raw)
            if is_root and len(raw) != 1:
                ok = False
            if not ok and wit_c is None:
                wit_c = (al, be)
            neg = lambda v: tuple(-x for x in v)
            if c != alg.structure_constant(neg(be), neg(al)) and wit_t is None:
                wit_t = (al, be)
    record("structure_constants_unit", cnt, wit_c)
    record("transpose_symmetry", cnt, wit_t)

    dim = alg.dim
    if sample is None and rs.rank <= exhaustive_rank:
        triples: Iterable = itertools.product(range(dim), repeat=3)
        total = dim ** 3
    else:
        rng = random.Random(seed)
        k = sample or 20000
        triples = [(rng.randrange(dim), rng.randrange(dim), rng.randrange(dim)) for _ in range(k)]
        total = k
    wit = None
    for a, b, c in triples:
        if not _jacobi(alg, a, b, c):
            wit = (alg.name(a), alg.name(b), alg.name(c))
            break
    record("jacobi", total, wit)
    return report


# ----------------------------------------------------------------------------
# subalgebras of section-3 style

SUBALGEBRA_KINDS = ("p_I", "n_I", "l_I", "g_I", "p_minus_I")


def subalgebra(alg: ChevalleyAlgebra, kind: str, subset: Iterable[int]) -> Set[int]:
    rs = alg.rs
    I = set(subset)
    levi = {r.index for r in subsystem_positive(rs, I)}
    outside = {r.index for r in rs.roots} - levi
    hs = {alg.h(i) for i in range(rs.rank)}
    es = {alg.e(r) for r in range(alg.n_pos)}
    fs = {alg.f(r) for r in range(alg.n_pos)}
    if kind == "n_I":
        return {alg.f(r) for r in outside}
    if kind == "p_I":
        return hs | es | {alg.f(r) for r in levi}
    if kind == "l_I":
        return hs | {alg.e(r) for r in levi} | {alg.f(r) for r in levi}
    if kind == "g_I":
        return {alg.h(i) for i in I} | {alg.e(r) for r in levi} | {alg.f(r) for r in levi}
    if kind == "p_minus_I":
        return hs | fs | {alg.e(r) for r in levi}
    raise ValueError(f"unknown subalgebra kind {kind!r}")


def is_ideal_in(alg: ChevalleyAlgebra, sub: Iterable[int], ambient: Iterable[int]) -> bool:
    """[ambient, sub] contained in span(sub), checked on basis pairs."""
    sub = set(sub)
    span = linalg.EchelonBasis()
    for s in sub:
        span.insert({s: Fraction(1)})
    for a in ambient:
        for s in sub:
            v = {k: Fraction(c) for k, c in alg.bracket_basis(a, s)}
            if v and not span.contains(v):
                return False
    return True


def adjoint_closure(alg: ChevalleyAlgebra, seeds: Iterable[Dict[int, object]], acting: Iterable[int]) -> int:
    """Dimension of the smallest ad(acting)-stable subspace containing the seeds."""
    acting = list(acting)
    span = linalg.EchelonBasis()
    queue = []
    for s in seeds:
        v = linalg.clean({k: Fraction(c) for k, c in s.items()})
        if v and span.insert(v) is None:
            queue.append(v)
    while queue:
        v = queue.pop()
        for a in acting:
            w = bracket_dicts(alg, {a: Fraction(1)}, v)
            if w and span.insert(w) is None:
                queue.append(w)
    return len(span)

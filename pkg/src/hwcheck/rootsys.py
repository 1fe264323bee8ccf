"""Root systems of types A_m and D_m.

Simple roots are indexed 0..m-1 internally; names and CLI strings use the
1-based labels (a[1,2] is alpha_1 + alpha_2).

Type D_m uses alpha_i = e_i - e_{i+1} for i < m and alpha_m = e_{m-1} + e_m,
so for m = 3 the node alpha_1 sits in the middle of the chain
alpha_2 - alpha_1 - alpha_3.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class Root:
    coeffs: Tuple[int, ...]
    eps: Tuple[int, ...]
    name: str
    index: int

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def contains(self, i: int) -> bool:
        """True when simple root i has nonzero coefficient."""
        return self.coeffs[i] != 0

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    simple_eps: Tuple[Tuple[int, ...], ...]
    roots: Tuple[Root, ...]
    cartan: Tuple[Tuple[int, ...], ...]
    adjacency: FrozenSet[FrozenSet[int]]
    _by_coeffs: Dict[Tuple[int, ...], int] = field(repr=False, compare=False, hash=False)
    _by_name: Dict[str, int] = field(repr=False, compare=False, hash=False)

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def simple(self) -> Tuple[Root, ...]:
        return tuple(self.roots[self._by_coeffs[unit(self.rank, i)]] for i in range(self.rank))

    def root(self, key) -> Root:
        """Look up a positive root by name ('g[1,2]') or coefficient vector."""
        if isinstance(key, Root):
            return key
        if isinstance(key, int):
            return self.roots[key]
        if isinstance(key, str):
            k = normalize_name(key)
            if k not in self._by_name:
                raise KeyError(f"no positive root named {key!r} in {self.label}")
            return self.roots[self._by_name[k]]
        k = tuple(int(c) for c in key)
        if k not in self._by_coeffs:
            raise KeyError(f"{k} is not a positive root of {self.label}")
        return self.roots[self._by_coeffs[k]]

    def is_positive_root(self, coeffs: Sequence[int]) -> bool:
        return tuple(coeffs) in self._by_coeffs

    def index_of(self, coeffs: Sequence[int]) -> Optional[int]:
        return self._by_coeffs.get(tuple(coeffs))

    def neighbours(self, i: int) -> List[int]:
        return [j for j in range(self.rank) if frozenset((i, j)) in self.adjacency]

    def simple_root_weight(self, i: int) -> Tuple[int, ...]:
        """alpha_i in fundamental-weight coordinates (row i of the Cartan matrix)."""
        return self.cartan[i]

    def root_weight(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        """A root-lattice element in fundamental-weight coordinates."""
        return tuple(sum(coeffs[i] * self.cartan[i][j] for i in range(self.rank)) for j in range(self.rank))


def unit(n: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


def normalize_name(name: str) -> str:
    s = name.strip().replace(" ", "")
    m = re.fullmatch(r"(alpha|a|α|gamma|g|γ)_?(\d)(\d)?", s)
    if m:
        i, j = m.group(2), m.group(3) or m.group(2)
        s = f"{m.group(1)}[{i},{j}]"
    m = re.fullmatch(r"(alpha|a|α)_?\[?(\d+)(?:,(\d+))?\]?", s)
    if m:
        i = int(m.group(2))
        j = int(m.group(3)) if m.group(3) else i
        return f"a[{i},{j}]"
    m = re.fullmatch(r"(beta|b|β)_?\[?(\d+)\]?", s)
    if m:
        return f"b[{int(m.group(2))}]"
    m = re.fullmatch(r"(gamma|g|γ)_?\[?(\d+),(\d+)\]?", s)
    if m:
        return f"g[{int(m.group(2))},{int(m.group(3))}]"
    return s


def _eps_of(simple_eps, coeffs) -> Tuple[int, ...]:
    n = len(simple_eps[0])
    return tuple(sum(c * e[k] for c, e in zip(coeffs, simple_eps)) for k in range(n))


def _named_roots_D(m: int) -> List[Tuple[str, Tuple[int, ...]]]:
    out = []

    def vec(d):
        return tuple(d.get(k, 0) for k in range(1, m + 1))

    for i in range(1, m + 1):
        for j in range(i, m + 1):
            if j == m and i == m - 1:
                continue  # alpha_{m-1} + alpha_m is not a root
            if j == m and i < m - 1:
                # e_i + e_{m-1}: alpha_i + ... + alpha_m
                out.append((f"a[{i},{j}]", vec({k: 1 for k in range(i, m + 1)})))
            elif j == m and i == m:
                out.append((f"a[{m},{m}]", vec({m: 1})))
            else:
                out.append((f"a[{i},{j}]", vec({k: 1 for k in range(i, j + 1)})))
    for i in range(1, m - 1):
        d = {k: 1 for k in range(i, m - 1)}
        d[m] = 1
        out.append((f"b[{i}]", vec(d)))
    for i in range(1, m - 1):
        for j in range(i + 1, m - 1):
            d = {k: 1 for k in range(i, j)}
            for k in range(j, m - 1):
                d[k] = 2
            d[m - 1] = 1
            d[m] = 1
            out.append((f"g[{i},{j}]", vec(d)))
    return out


def _named_roots_A(m: int) -> List[Tuple[str, Tuple[int, ...]]]:
    return [
        (f"a[{i},{j}]", tuple(1 if i <= k <= j else 0 for k in range(1, m + 1)))
        for i in range(1, m + 1)
        for j in range(i, m + 1)
    ]


def build_root_system(family: str, rank: int) -> RootSystem:
    family = family.upper()
    if family not in ("A", "D"):
        raise ValueError(f"unsupported family {family!r}")
    if (family == "A" and rank < 1) or (family == "D" and rank < 3):
        raise ValueError("unsupported rank")
    m = rank
    if family == "A":
        n = m + 1
        simple_eps = tuple(tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)) for i in range(m))
        named = _named_roots_A(m)
    else:
        n = m
        rows = [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)) for i in range(m - 1)]
        rows.append(tuple(1 if k in (m - 2, m - 1) else 0 for k in range(n)))
        simple_eps = tuple(rows)
        named = _named_roots_D(m)
    named.sort(key=lambda nc: (sum(nc[1]), nc[1]))
    roots = tuple(Root(c, _eps_of(simple_eps, c), name, idx) for idx, (name, c) in enumerate(named))
    cartan = tuple(
        tuple(sum(a * b for a, b in zip(simple_eps[i], simple_eps[j])) for j in range(m)) for i in range(m)
    )
    adjacency = frozenset(frozenset((i, j)) for i in range(m) for j in range(m) if i != j and cartan[i][j] != 0)
    return RootSystem(
        family,
        m,
        simple_eps,
        roots,
        cartan,
        adjacency,
        {r.coeffs: r.index for r in roots},
        {r.name: r.index for r in roots},
    )


def _coeffs(x) -> Tuple:
    return x.coeffs if isinstance(x, Root) else tuple(x)


def pairing(lam, alpha) -> Fraction:
    """<lam, alpha^vee> = sum_i c_i(alpha) * lam_i for simply-laced systems.

    lam is a weight in fundamental coordinates; alpha a Root or a
    coefficient vector.
    """
    c = _coeffs(alpha)
    lam = tuple(lam)
    if len(c) != len(lam):
        raise ValueError("dimension mismatch")
    return sum((Fraction(ci) * Fraction(li) for ci, li in zip(c, lam)), Fraction(0))


def root_pairing(rs: RootSystem, beta, alpha) -> int:
    """<beta, alpha^vee> for two root-lattice elements given by coefficients."""
    b, a = _coeffs(beta), _coeffs(alpha)
    return sum(b[i] * rs.cartan[i][j] * a[j] for i in range(rs.rank) for j in range(rs.rank))


def is_connected(rs: RootSystem, subset: Iterable[int]) -> bool:
    s = set(subset)
    if not s:
        return True
    start = next(iter(s))
    return connected_component(rs, s, start) == frozenset(s)


def connected_component(rs: RootSystem, subset: Iterable[int], i: int) -> FrozenSet[int]:
    s = set(subset)
    if i not in s:
        raise ValueError(f"simple root {i + 1} is not in the given subset")
    seen = {i}
    stack = [i]
    while stack:
        x = stack.pop()
        for y in rs.neighbours(x):
            if y in s and y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def components(rs: RootSystem, subset: Iterable[int]) -> List[FrozenSet[int]]:
    s = set(subset)
    out = []
    while s:
        c = connected_component(rs, s, min(s))
        out.append(c)
        s -= c
    return out


def subsystem_positive(rs: RootSystem, subset: Iterable[int]) -> List[Root]:
    s = set(subset)
    return [r for r in rs.roots if all(c == 0 or i in s for i, c in enumerate(r.coeffs))]


def d3_to_a3_index(i: int) -> int:
    """Index relabelling D_3 -> A_3: D-labels (2,1,3) become the A-chain (1,2,3)."""
    return {0: 1, 1: 0, 2: 2}[i]


def restrict_drop_first(values: Sequence) -> Tuple:
    """Induction relabelling D_m -> D_{m-1}: drop alpha_1 and shift indices down."""
    return tuple(values[1:])


def lower_rank(rs: RootSystem) -> RootSystem:
    """The system spanned by Delta minus alpha_1, relabelled as D_{m-1}."""
    if rs.family != "D" or rs.rank < 4:
        raise ValueError("induction step needs D_m with m >= 4")
    return build_root_system("D", rs.rank - 1)

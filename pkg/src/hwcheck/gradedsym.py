"""Associated graded of a generalized Verma module for the PBW-degree filtration.

gr M is K[x_alpha : alpha in n] tensor V, with the polynomial monomial x^t w_j
sharing its key (t, j) with the PBW basis vector f^t w_j.  Raising operators
descend to first-order differential operators x_{alpha-beta} d/dx_alpha plus
the Levi action on V.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .modules import ModuleElement, PBWModule, _monomials

Vec = Dict


def _coeffs(x) -> Vec:
    return x.coeffs if isinstance(x, ModuleElement) else x


def symbol(gvm: PBWModule, x, i: int) -> Vec:
    """Degree-i part of x; x must lie in the filtration piece Omega_i."""
    v = _coeffs(x)
    if any(gvm.key_degree(k) > i for k in v):
        raise ValueError(f"element does not lie in Omega_{i}")
    return {k: c for k, c in v.items() if gvm.key_degree(k) == i}


def poly_name(gvm: PBWModule, key) -> str:
    t, j = key
    parts = []
    for p, e in enumerate(t):
        if e:
            name = gvm.rs.roots[gvm.nroots[p]].name
            parts.append(f"x_{name}" + (f"^{e}" if e > 1 else ""))
    return ("*".join(parts) or "1") + f" (x) w{j}"


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    source: int  # root index alpha, differentiated
    target: int  # root index alpha - beta, multiplied


@dataclass
class DifferentialOperator:
    gvm: PBWModule
    beta: int
    terms: Tuple[Term, ...]
    phi: Dict[int, Vec] = field(default_factory=dict)  # V basis j -> image in V

    def apply(self, v: Vec) -> Vec:
        g = self.gvm
        out: Vec = {}
        for (t, j), c in v.items():
            for term in self.terms:
                p = g.npos[term.source]
                if not t[p]:
                    continue
                t2 = list(t)
                t2[p] -= 1
                t2[g.npos[term.target]] += 1
                linalg.axpy(out, c * term.coeff * t[p], {(tuple(t2), j): Fraction(1)})
            for j2, c2 in self.phi.get(j, {}).items():
                linalg.axpy(out, c * c2, {(t, j2): Fraction(1)})
        return out

    def with_coefficient(self, k: int, value) -> "DifferentialOperator":
        terms = list(self.terms)
        terms[k] = replace(terms[k], coeff=Fraction(value))
        return replace(self, terms=tuple(terms))

    def describe(self) -> List[str]:
        rs = self.gvm.rs
        out = [f"{t.coeff} x_{rs.roots[t.target].name} d_{rs.roots[t.source].name}" for t in self.terms]
        if any(self.phi.values()):
            out.append(f"1 (x) phi(e_{rs.roots[self.beta].name})")
        return out

    def gamma_degree(self, term: Term, gammas: Sequence[int]) -> int:
        return (term.target in gammas) - (term.source in gammas)


def ebar_operator(gvm: PBWModule, beta) -> DifferentialOperator:
    alg, rs = gvm.alg, gvm.rs
    b = rs.root(beta)
    eb = alg.e(b.index)
    terms = []
    for a in gvm.nroots:
        diff = tuple(x - y for x, y in zip(rs.roots[a].coeffs, b.coeffs))
        target = rs.index_of(diff)
        if target is None or target not in gvm.npos:
            continue
        c = dict(alg.bracket_basis(eb, alg.f(a))).get(alg.f(target), 0)
        if c == 0:
            raise AssertionError("vanishing structure constant")
        terms.append(Term(Fraction(c), a, target))
    phi = {}
    if b.index in gvm.levi_roots:
        for j, vk in enumerate(gvm.vkeys):
            img = gvm.V.act_key(eb, vk)
            if img:
                phi[j] = {gvm.vindex[k]: c for k, c in img.items()}
    return DifferentialOperator(gvm, b.index, tuple(terms), phi)


def pbw_monomials(gvm: PBWModule, d: int):
    """Keys (t, j) of PBW degree at most d, independent of any height window."""
    ones = [1] * len(gvm.nroots)
    for j in range(gvm.v_dim):
        for t in _monomials(ones, d):
            yield (t, j)


@dataclass
class EbarCheck:
    holds: bool
    checked: int
    witness: Optional[str] = None


def verify_ebar(gvm: PBWModule, beta, d: int, op: Optional[DifferentialOperator] = None) -> EbarCheck:
    """Compare op(sigma_i(m)) with sigma_i(e_beta m) for every PBW monomial m of degree i <= d."""
    op = ebar_operator(gvm, beta) if op is None else op
    eb = gvm.alg.e(gvm.rs.root(beta).index)
    n = 0
    for key in pbw_monomials(gvm, d):
        i = gvm.key_degree(key)
        lhs = op.apply({key: Fraction(1)})
        rhs = symbol(gvm, gvm.act_key(eb, key), i)
        n += 1
        if lhs != rhs:
            return EbarCheck(False, n, gvm.key_name(key))
    return EbarCheck(True, n)


def leading_terms(gvm: PBWModule, gammas: Sequence, betas: Sequence) -> Dict[int, List[str]]:
    """Terms of each ebar_{beta_j} of degree -1 in the gamma variables."""
    rs = gvm.rs
    g = [rs.root(x).index for x in gammas]
    out = {}
    for j, b in enumerate(betas):
        op = ebar_operator(gvm, b)
        out[j] = [rs.roots[t.source].name for t in op.terms if op.gamma_degree(t, g) < 0]
    return out


def check_leading_terms(gvm: PBWModule, gammas: Sequence, betas: Sequence) -> bool:
    """ebar_{beta_j} has a degree -1 gamma-term exactly at the gamma_i, i <= j, with
    gamma_i - beta_j outside the Levi, and always at gamma_j itself."""
    rs = gvm.rs
    g = [rs.root(x) for x in gammas]
    lead = leading_terms(gvm, gammas, betas)
    for j, b in enumerate(betas):
        b = rs.root(b)
        expected = []
        for i, gi in enumerate(g):
            diff = rs.index_of(tuple(x - y for x, y in zip(gi.coeffs, b.coeffs)))
            if diff is not None and diff in gvm.npos and rs.roots[diff] not in g:
                expected.append(gi.name)
                if i > j:
                    return False
        if sorted(lead[j]) != sorted(expected) or g[j].name not in lead[j]:
            return False
    return True


def multiply_monomials(gvm: PBWModule, s: Sequence[int], t: Sequence[int], j: int = 0) -> Vec:
    """f^s (f^t w_j) in normal form."""
    v = {(tuple(t), j): Fraction(1)}
    for p in reversed(range(len(s))):
        for _ in range(s[p]):
            v = gvm._left_f_vec(p, v)
    return v

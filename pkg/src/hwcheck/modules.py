"""Depth-truncated highest-weight modules.

Weights inside a module are recorded by their offset nu = lambda - mu in
simple-root coordinates; the depth of a module bounds the height of nu.

Two realizations:

* PBWModule: Verma and generalized Verma modules.  Basis vectors are pairs
  (t, j): a normal-ordered PBW monomial prod f_{beta_k}^{t_k} over the
  negative root vectors outside the Levi part (global root order) applied to
  the j-th basis vector of V_lambda.  Actions are computed by rewriting.
* IrreducibleModule: L(lambda), or the finite-dimensional Levi module
  V_lambda.  A block is the quotient of the Verma block by the radical of
  the contravariant form.  The radical is computed recursively: a vector of
  weight below lambda lies in it exactly when every simple raising operator
  sends it into the radical, so each block is realized through its images
  under the e_{alpha_i}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .chevalley import ChevalleyAlgebra
from .rootsys import RootSystem, pairing, subsystem_positive, unit
from .weights import as_weight, is_nat

Key = Hashable
Vec = Dict[Key, Fraction]


class DepthExceeded(ValueError):
    pass


def _add_nu(a, b, sign=1):
    return tuple(x + sign * y for x, y in zip(a, b))


@dataclass
class ModuleElement:
    module: "TruncatedModule"
    coeffs: Vec

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other):
        if other.module is not self.module:
            raise ValueError("elements belong to different modules")

    def __add__(self, other):
        self._check(other)
        return ModuleElement(self.module, linalg.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return ModuleElement(self.module, linalg.add(self.coeffs, linalg.scaled(other.coeffs, -1)))

    def __rmul__(self, scalar):
        return ModuleElement(self.module, linalg.scaled(self.coeffs, Fraction(scalar)))

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and other.module is self.module and other.coeffs == self.coeffs

    def __repr__(self):
        return " + ".join(f"{c}*{self.module.key_name(k)}" for k, c in sorted(self.coeffs.items())) or "0"


@dataclass
class Subspace:
    module: "TruncatedModule"
    label: object
    vectors: List[Vec]

    @property
    def dim(self) -> int:
        return len(self.vectors)


class TruncatedModule:
    """Shared interface of the two realizations."""

    kind: str
    alg: ChevalleyAlgebra
    rs: RootSystem
    lam: Tuple[Fraction, ...]
    depth: Optional[int]

    def __init__(self, alg: ChevalleyAlgebra, lam, depth: Optional[int]):
        if depth is not None and depth < 0:
            raise ValueError("depth must be non-negative")
        self.alg = alg
        self.rs = alg.rs
        self.lam = as_weight(lam, self.rs.rank)
        self.depth = depth
        self._memo: Dict[Tuple[int, Key], Vec] = {}

    # -- to be provided by subclasses
    blocks: Dict[Tuple[int, ...], List[Key]]

    def key_nu(self, key: Key) -> Tuple[int, ...]:
        raise NotImplementedError

    def _act_key(self, g: int, key: Key) -> Vec:
        raise NotImplementedError

    def key_name(self, key: Key) -> str:
        return str(key)

    # -- shared helpers
    @property
    def top(self) -> Key:
        return self.blocks[(0,) * self.rs.rank][0]

    def highest_weight_vector(self) -> ModuleElement:
        return ModuleElement(self, {self.top: Fraction(1)})

    def element(self, coeffs: Dict[Key, object]) -> ModuleElement:
        return ModuleElement(self, linalg.clean({k: Fraction(v) for k, v in coeffs.items()}))

    def weight_of_nu(self, nu: Sequence[int]) -> Tuple[Fraction, ...]:
        return tuple(self.lam[i] - sum(nu[j] * self.rs.cartan[j][i] for j in range(self.rs.rank))
                     for i in range(self.rs.rank))

    def h_value(self, i: int, nu: Sequence[int]) -> Fraction:
        return self.lam[i] - sum(nu[j] * self.rs.cartan[j][i] for j in range(self.rs.rank))

    def block_dim(self, nu: Sequence[int]) -> int:
        return len(self.blocks.get(tuple(nu), ()))

    def dimension(self) -> int:
        return sum(len(b) for b in self.blocks.values())

    def block_dims(self) -> Dict[Tuple[int, ...], int]:
        return {nu: len(b) for nu, b in self.blocks.items() if b}

    def act_key(self, g: int, key: Key) -> Vec:
        m = (g, key)
        if m not in self._memo:
            self._memo[m] = self._act_key(g, key)
        return self._memo[m]

    def act_vec(self, g: int, v: Vec) -> Vec:
        out: Vec = {}
        for k, c in v.items():
            linalg.axpy(out, c, self.act_key(g, k))
        return out

    def act_lie(self, x: Dict[int, object], v: Vec) -> Vec:
        out: Vec = {}
        for g, c in x.items():
            linalg.axpy(out, Fraction(c), self.act_vec(g, v))
        return out

    def _check_depth(self, v: Vec) -> None:
        if self.depth is None:
            return
        for k in v:
            if sum(self.key_nu(k)) > self.depth:
                raise DepthExceeded("depth exceeded")

    def act(self, g, x: ModuleElement) -> ModuleElement:
        if x.module is not self:
            raise ValueError("element belongs to a different module")
        if isinstance(g, str):
            g = self.alg.basis_index(g)
        out = self.act_vec(g, x.coeffs)
        self._check_depth(out)
        return ModuleElement(self, out)

    def apply_word(self, gens: Sequence[int], v: Vec) -> Vec:
        """gens[0] acts last: apply_word([a, b], v) = a.(b.v)."""
        for g in reversed(gens):
            v = self.act_vec(g, v)
        return v

    def action_matrix(self, g: int, nu: Sequence[int]) -> Dict[str, object]:
        nu = tuple(nu)
        src = self.blocks.get(nu, [])
        target = _add_nu(nu, self.alg.weight(g), -1)
        tgt = self.blocks.get(target, [])
        index = {k: r for r, k in enumerate(tgt)}
        entries = {}
        for col, k in enumerate(src):
            for k2, c in self.act_key(g, k).items():
                if k2 not in index:
                    raise DepthExceeded("depth exceeded")
                entries[(index[k2], col)] = c
        return {"source": nu, "target": target, "shape": (len(tgt), len(src)), "entries": entries}

    def omega_layer(self, l: int) -> List[Key]:
        return [k for nu, keys in self.blocks.items() if nu[0] == l for k in keys]

    def alpha1_free(self, x: ModuleElement) -> ModuleElement:
        return ModuleElement(self, {k: c for k, c in x.coeffs.items() if self.key_nu(k)[0] == 0})


# ----------------------------------------------------------------------------
# irreducible modules

class IrreducibleModule(TruncatedModule):
    kind = "irreducible"

    def __init__(self, alg: ChevalleyAlgebra, lam, depth: Optional[int], simple: Optional[Iterable[int]] = None,
                 max_height: int = 200):
        super().__init__(alg, lam, depth)
        rank = self.rs.rank
        self.simple = tuple(sorted(range(rank) if simple is None else set(simple)))
        self.levi_roots = {r.index for r in subsystem_positive(self.rs, self.simple)}
        zero = (0,) * rank
        self.blocks = {zero: [(zero, 0)]}
        # e_img[nu][k]: {(i, k2): c} meaning e_i (nu,k) = sum c (nu - alpha_i, k2)
        self.e_img: Dict[Tuple[int, ...], List[Vec]] = {zero: [{}]}
        # f_img[(j, nu)][k]: coordinates of f_j (nu,k) in block nu + alpha_j
        self.f_img: Dict[Tuple[int, Tuple[int, ...]], List[Vec]] = {}
        self.complete = False
        frontier = [zero]
        h = 0
        while True:
            if depth is not None and h >= depth:
                break
            if h >= max_height:
                raise RuntimeError("irreducible construction did not terminate")
            h += 1
            targets = sorted({_add_nu(nu, unit(rank, j)) for nu in frontier for j in self.simple})
            new_frontier = []
            for nu in targets:
                if self._build_block(nu):
                    new_frontier.append(nu)
            frontier = new_frontier
            if not frontier:
                self.complete = True
                break

    def _build_block(self, nu) -> bool:
        rank = self.rs.rank
        cands = []  # (j, k) meaning f_j applied to basis k of nu - alpha_j
        images = []
        for j in self.simple:
            src = _add_nu(nu, unit(rank, j), -1)
            if min(src) < 0 or not self.blocks.get(src):
                continue
            for k in range(len(self.blocks[src])):
                cands.append((j, k))
                images.append(self._raise_image(j, src, k))
        chosen = linalg.independent_subset(images)
        if not chosen:
            for j in self.simple:
                src = _add_nu(nu, unit(rank, j), -1)
                if min(src) >= 0 and self.blocks.get(src):
                    self.f_img[(j, src)] = [{} for _ in self.blocks[src]]
            return False
        self.blocks[nu] = [(nu, b) for b in range(len(chosen))]
        self.e_img[nu] = [images[c] for c in chosen]
        eb = linalg.EchelonBasis()
        for b, c in enumerate(chosen):
            eb.insert(images[c], b)
        for j in self.simple:
            src = _add_nu(nu, unit(rank, j), -1)
            if min(src) < 0 or not self.blocks.get(src):
                continue
            col = []
            for k in range(len(self.blocks[src])):
                idx = cands.index((j, k))
                coords = eb.coordinates(images[idx])
                col.append({(nu, b): c for b, c in coords.items() if c})
            self.f_img[(j, src)] = col
        return True

    def _raise_image(self, j: int, src, k: int) -> Vec:
        """{(i, k2): c} with e_i f_j (src, k) = sum c (src + alpha_j - alpha_i, k2)."""
        rank = self.rs.rank
        out: Vec = {}
        for (i, k3), c in self.e_img[src][k].items():
            lower = _add_nu(src, unit(rank, i), -1)
            for (nu2, k4), c2 in self.f_img[(j, lower)][k3].items():
                linalg.axpy(out, c * c2, {(i, k4): Fraction(1)})
        hv = self.h_value(j, src)
        if hv:
            linalg.axpy(out, hv, {(j, k): Fraction(1)})
        return out

    def key_nu(self, key):
        return key[0]

    def key_name(self, key):
        nu, b = key
        return f"v[{','.join(map(str, nu))}#{b}]"

    def _act_key(self, g: int, key) -> Vec:
        nu, b = key
        kind, r = self.alg.kind(g)
        rank = self.rs.rank
        if kind == "h":
            c = self.h_value(r, nu)
            return {key: c} if c else {}
        root = self.rs.roots[r]
        if r not in self.levi_roots:
            if kind == "e":
                return {}
            raise ValueError(f"{self.alg.name(g)} does not act on this Levi module")
        if root.height == 1:
            i = root.coeffs.index(1)
            if kind == "e":
                return {(_add_nu(nu, unit(rank, i), -1), k2): c for (ii, k2), c in self.e_img[nu][b].items() if ii == i}
            tgt = _add_nu(nu, unit(rank, i))
            if (i, nu) not in self.f_img:
                if self.depth is not None and sum(tgt) > self.depth:
                    raise DepthExceeded("depth exceeded")
                return {}
            return dict(self.f_img[(i, nu)][b])
        # non-simple root vector from a bracket of a simple one and a shorter one
        for i in self.simple:
            rest = tuple(c - (1 if t == i else 0) for t, c in enumerate(root.coeffs))
            if self.rs.is_positive_root(rest):
                break
        else:  # pragma: no cover
            raise RuntimeError("no decomposition of root")
        si = self.rs.simple[i].index
        ri = self.rs.index_of(rest)
        if kind == "e":
            a, bb = self.alg.e(si), self.alg.e(ri)
        else:
            a, bb = self.alg.f(si), self.alg.f(ri)
        terms = dict(self.alg.bracket_basis(a, bb))
        c = terms[g]
        v = {key: Fraction(1)}
        out = self.act_vec(a, self.act_vec(bb, v))
        linalg.axpy(out, -1, self.act_vec(bb, self.act_vec(a, v)))
        return linalg.scaled(out, Fraction(1, c))


# ----------------------------------------------------------------------------
# PBW modules

class PBWModule(TruncatedModule):
    """Generalized Verma module M_I(lambda) (Verma module when I is empty)."""

    def __init__(self, alg: ChevalleyAlgebra, levi: Iterable[int], lam, depth: Optional[int]):
        super().__init__(alg, lam, depth)
        self.levi = frozenset(levi)
        bad = [i for i in self.levi if not is_nat(self.lam[i])]
        if bad:
            raise ValueError(f"lambda(h_alpha) not in N_0 for simple roots {[i + 1 for i in sorted(bad)]}")
        self.kind = "verma" if not self.levi else "gvm"
        levi_roots = {r.index for r in subsystem_positive(self.rs, self.levi)}
        self.levi_roots = levi_roots
        self.nroots = [r.index for r in self.rs.roots if r.index not in levi_roots]
        self.npos = {r: p for p, r in enumerate(self.nroots)}
        self.V = IrreducibleModule(alg, self.lam, None, simple=self.levi)
        self.vkeys = [k for nu in sorted(self.V.blocks, key=lambda n: (sum(n), n)) for k in self.V.blocks[nu]]
        self.vindex = {k: j for j, k in enumerate(self.vkeys)}
        self.blocks = {}
        heights = [self.rs.roots[r].height for r in self.nroots]
        for j, vk in enumerate(self.vkeys):
            base = vk[0]
            budget = None if depth is None else depth - sum(base)
            if budget is not None and budget < 0:
                continue
            for t in _monomials(heights, budget if budget is not None else 0):
                nu = base
                for p, e in enumerate(t):
                    if e:
                        nu = _add_nu(nu, tuple(e * c for c in self.rs.roots[self.nroots[p]].coeffs))
                self.blocks.setdefault(nu, []).append((t, j))
        for nu in self.blocks:
            self.blocks[nu].sort()
        self._lf: Dict[Tuple[int, Tuple[int, ...], int], Vec] = {}

    @property
    def v_dim(self) -> int:
        return len(self.vkeys)

    def key_nu(self, key):
        t, j = key
        nu = self.vkeys[j][0]
        for p, e in enumerate(t):
            if e:
                nu = _add_nu(nu, tuple(e * c for c in self.rs.roots[self.nroots[p]].coeffs))
        return nu

    def key_degree(self, key) -> int:
        return sum(key[0])

    def key_name(self, key):
        t, j = key
        parts = []
        for p, e in enumerate(t):
            if e:
                name = self.rs.roots[self.nroots[p]].name
                parts.append(f"f_{name}" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts + [f"w{j}"])

    def monomial_key(self, exps: Dict[int, int], j: int = 0):
        """Key of prod f_beta^e (beta given by root index) applied to V basis j."""
        t = [0] * len(self.nroots)
        for r, e in exps.items():
            t[self.npos[r]] += e
        return (tuple(t), j)

    # -- rewriting engine
    def left_f(self, p: int, t: Tuple[int, ...], j: int) -> Vec:
        """f_{nroots[p]} * (f^t (x) v_j) in normal form."""
        key = (p, t, j)
        hit = self._lf.get(key)
        if hit is not None:
            return hit
        first = next((q for q, e in enumerate(t) if e), None)
        if first is None or p <= first:
            t2 = list(t)
            t2[p] += 1
            out = {(tuple(t2), j): Fraction(1)}
        else:
            rest = list(t)
            rest[first] -= 1
            rest = tuple(rest)
            out = {}
            for (t3, j3), c in self.left_f(p, rest, j).items():
                t4 = list(t3)
                t4[first] += 1
                linalg.axpy(out, c, {(tuple(t4), j3): Fraction(1)})
            fa = self.alg.f(self.nroots[p])
            fb = self.alg.f(self.nroots[first])
            for g, c in self.alg.bracket_basis(fa, fb):
                q = self.npos[self.alg.kind(g)[1]]
                linalg.axpy(out, c, self.left_f(q, rest, j))
        self._lf[key] = out
        return out

    def _left_f_vec(self, p: int, v: Vec) -> Vec:
        out: Vec = {}
        for (t, j), c in v.items():
            linalg.axpy(out, c, self.left_f(p, t, j))
        return out

    def _act_key(self, g: int, key) -> Vec:
        t, j = key
        kind, r = self.alg.kind(g)
        if kind == "h":
            c = self.h_value(r, self.key_nu(key))
            return {key: c} if c else {}
        if kind == "f" and r in self.npos:
            return self.left_f(self.npos[r], t, j)
        first = next((q for q, e in enumerate(t) if e), None)
        if first is None:
            if kind == "e" and r not in self.levi_roots:
                return {}
            zero = (0,) * len(self.nroots)
            return {(zero, self.vindex[k]): c for k, c in self.V.act_key(g, self.vkeys[j]).items()}
        rest = list(t)
        rest[first] -= 1
        rest = (tuple(rest), j)
        out = self._left_f_vec(first, self.act_key(g, rest))
        fb = self.alg.f(self.nroots[first])
        for g2, c in self.alg.bracket_basis(g, fb):
            linalg.axpy(out, c, self.act_key(g2, rest))
        return out


def _monomials(heights: Sequence[int], budget: int):
    """Exponent vectors t with sum t_k * heights[k] <= budget."""
    n = len(heights)

    def rec(p, left):
        if p == n:
            yield ()
            return
        for e in range(left // heights[p] + 1):
            for tail in rec(p + 1, left - e * heights[p]):
                yield (e,) + tail

    return rec(0, budget)


# ----------------------------------------------------------------------------
# public constructors

DEFAULT_DEPTH = 6


def build_verma(alg: ChevalleyAlgebra, lam, depth: int = DEFAULT_DEPTH) -> PBWModule:
    return PBWModule(alg, (), lam, depth)


def build_gvm(alg: ChevalleyAlgebra, levi: Iterable[int], lam, depth: int = DEFAULT_DEPTH) -> PBWModule:
    return PBWModule(alg, levi, lam, depth)


def build_irreducible(alg: ChevalleyAlgebra, lam, depth: Optional[int] = DEFAULT_DEPTH) -> IrreducibleModule:
    return IrreducibleModule(alg, lam, depth)


def act(module: TruncatedModule, generator, x: ModuleElement) -> ModuleElement:
    return module.act(generator, x)


def omega_layer(module: TruncatedModule, l: int) -> List[Key]:
    return module.omega_layer(l)


def alpha1_free(x: ModuleElement) -> ModuleElement:
    return x.module.alpha1_free(x)


def tau_word(module: PBWModule, key) -> List[int]:
    """Generators of tau(f^t) = e_{beta_k}^{t_k} ... e_{beta_1}^{t_1}, leftmost acting last."""
    t, _ = key
    word: List[int] = []
    for p, e in enumerate(t):
        word = [module.alg.e(module.nroots[p])] * e + word
    return word


def contravariant_gram(module: PBWModule, nu: Sequence[int]) -> List[List[Fraction]]:
    """<f^s v, f^t v> = coefficient of v in tau(f^s) f^t v, on the block lambda - nu."""
    if module.kind != "verma":
        raise ValueError("contravariant_gram needs a Verma module")
    nu = tuple(nu)
    if module.depth is not None and sum(nu) > module.depth:
        raise DepthExceeded("depth exceeded")
    keys = module.blocks.get(nu, [])
    top = module.top
    gram = []
    for s in keys:
        word = tau_word(module, s)
        row = []
        for t in keys:
            row.append(module.apply_word(word, {t: Fraction(1)}).get(top, Fraction(0)))
        gram.append(row)
    return gram


def gram_rank(gram: List[List[Fraction]]) -> int:
    return linalg.rank([{j: c for j, c in enumerate(row) if c} for row in gram])


# ----------------------------------------------------------------------------
# oracles

def kostant_partitions(rs: RootSystem, nu: Sequence[int]) -> int:
    """Number of ways to write nu as an unordered sum of positive roots."""
    roots = [r.coeffs for r in rs.roots]

    @lru_cache(maxsize=None)
    def count(k: int, rest: Tuple[int, ...]) -> int:
        if all(x == 0 for x in rest):
            return 1
        if k == len(roots):
            return 0
        total = 0
        cur = rest
        while min(cur) >= 0:
            total += count(k + 1, cur)
            cur = tuple(a - b for a, b in zip(cur, roots[k]))
        return total

    return count(0, tuple(nu))


def weyl_dim(rs: RootSystem, lam, simple: Optional[Iterable[int]] = None) -> int:
    """Weyl dimension formula, optionally for the Levi factor on the given simple roots."""
    lam = as_weight(lam, rs.rank)
    roots = rs.roots if simple is None else subsystem_positive(rs, simple)
    num = Fraction(1)
    for r in roots:
        num *= (pairing(lam, r) + r.height) / r.height
    if num.denominator != 1:
        raise ValueError("weight is not dominant integral on this system")
    return int(num)


def weyl_completed_dimension(module: IrreducibleModule) -> int:
    """Total dimension of a finite-dimensional L(lambda) from a truncated window.

    Every dominant weight of L(lambda) must lie inside the window; the
    character is then W-invariant, so each dominant weight contributes its
    multiplicity times its orbit size.  Raises if the window is too shallow.
    """
    from .weyl import weyl_orbit
    from .weights import is_dominant_integral

    rs = module.rs
    if not is_dominant_integral(module.lam):
        raise ValueError("highest weight is not dominant integral")
    dominant = _dominant_offsets(rs, module.lam)
    if module.depth is not None and any(sum(nu) > module.depth for nu in dominant):
        raise DepthExceeded("window misses a dominant weight")
    total = 0
    for nu in dominant:
        mult = module.block_dim(nu)
        if mult:
            total += mult * len(weyl_orbit(rs, module.weight_of_nu(nu)))
    return total


def _dominant_offsets(rs: RootSystem, lam) -> List[Tuple[int, ...]]:
    """All nu in N_0 Delta with lambda - nu dominant.

    A dominant weight has nonnegative simple-root coordinates, so nu is
    bounded coordinatewise by lambda written in simple roots.
    """
    bound = [int(x) for x in lambda_in_roots(rs, lam)]
    out = []
    for nu in itertools.product(*(range(b + 1) for b in bound)):
        w = tuple(lam[i] - sum(nu[j] * rs.cartan[j][i] for j in range(rs.rank)) for i in range(rs.rank))
        if all(x >= 0 for x in w):
            out.append(tuple(nu))
    return out


def lambda_in_roots(rs: RootSystem, lam) -> Tuple[Fraction, ...]:
    """Coordinates x with lambda = sum_j x_j alpha_j (Cartan matrix is symmetric)."""
    n = rs.rank
    rows = [[Fraction(rs.cartan[i][j]) for j in range(n)] + [Fraction(lam[i])] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if rows[r][c] != 0)
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = 1 / rows[c][c]
        rows[c] = [x * inv for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return tuple(rows[i][n] for i in range(n))


def a_basis_check(k: int, a: int, alg: Optional[ChevalleyAlgebra] = None) -> Dict[str, object]:
    """L(a omega_k) for A_k: dimension against C(a+k, k) and independence of
    the monomials prod_i f_{alpha_{i,k}}^{t_i} v with |t| <= a."""
    from .chevalley import build_chevalley
    from .rootsys import build_root_system

    if alg is None:
        alg = build_chevalley(build_root_system("A", k))
    rs = alg.rs
    lam = tuple(Fraction(a) if i == k - 1 else Fraction(0) for i in range(k))
    L = IrreducibleModule(alg, lam, None)
    gens = [alg.f(rs.root(f"a[{i},{k}]").index) for i in range(1, k + 1)]
    vectors = []
    for t in itertools.product(range(a + 1), repeat=k):
        if sum(t) > a:
            continue
        v = {L.top: Fraction(1)}
        for g, e in zip(gens, t):
            for _ in range(e):
                v = L.act_vec(g, v)
        vectors.append(v)
    independent = all(vectors) and linalg.rank(vectors) == len(vectors)
    return {"k": k, "a": a, "dimension": L.dimension(), "expected": comb(a + k, k),
            "monomials": len(vectors), "independent": independent, "complete": L.complete}

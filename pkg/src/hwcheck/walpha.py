"""The subspace W_{alpha_1} of a generalized Verma module, layer by layer.

x lies in W_{alpha_1} when e_{alpha_1}^r x has zero alpha_1-free part for
every r.  Inside the layer Omega_l (weights whose alpha_1-coefficient below
lambda is l), e_{alpha_1}^r x sits in Omega_{l-r}, which is alpha_1-free only
for r = l.  So W_{alpha_1} meets Omega_l in the kernel of e_{alpha_1}^l, and
W_{alpha_1} is the direct sum of these layer kernels.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .chevalley import ChevalleyAlgebra
from .modules import DepthExceeded, IrreducibleModule, PBWModule, Subspace, _monomials
from .rootsys import Root, RootSystem
from .weights import as_weight, delta_lambda, fundamental, is_nat, is_scalar
from .weyl import reflect

Vec = Dict


def _depth(gvm: PBWModule, d: Optional[int]) -> int:
    d = gvm.depth if d is None else d
    if gvm.depth is not None and d > gvm.depth:
        raise DepthExceeded("requested depth exceeds the module depth")
    return d


def _first_root(gvm: PBWModule) -> int:
    return gvm.rs.simple[0].index


def _check_alpha1(gvm: PBWModule) -> None:
    if any(r.coeffs[0] > 1 for r in gvm.rs.roots):
        raise ValueError("some positive root has alpha_1-coefficient above 1")


def n1_positions(gvm: PBWModule) -> List[int]:
    """PBW positions of the root vectors of n_1 (alpha_1 occurs in the root)."""
    return [p for p, r in enumerate(gvm.nroots) if gvm.rs.roots[r].coeffs[0] == 1]


def _layer_blocks(gvm: PBWModule, l: int, d: int):
    return [nu for nu in sorted(gvm.blocks) if nu[0] == l and sum(nu) <= d]


def _e1_power(gvm: PBWModule, l: int, key) -> Vec:
    g = gvm.alg.e(_first_root(gvm))
    v = {key: Fraction(1)}
    for _ in range(l):
        v = gvm.act_vec(g, v)
    return v


def _kernel_on(gvm: PBWModule, l: int, keys: Sequence) -> List[Vec]:
    sources = [{k: Fraction(1)} for k in keys]
    images = [_e1_power(gvm, l, k) for k in keys]
    return linalg.kernel_vectors(images, sources)


def w_alpha1_layer(gvm: PBWModule, l: int, d: Optional[int] = None) -> Subspace:
    _check_alpha1(gvm)
    d = _depth(gvm, d)
    if l > d:
        raise ValueError("layer index exceeds depth")
    vecs: List[Vec] = []
    if l > 0:
        for nu in _layer_blocks(gvm, l, d):
            vecs.extend(_kernel_on(gvm, l, gvm.blocks[nu]))
    return Subspace(gvm, ("layer", l), vecs)


def w_alpha1_layer_definitional(gvm: PBWModule, l: int, d: Optional[int] = None) -> Subspace:
    """Same subspace from the raw definition: every r <= l is imposed."""
    d = _depth(gvm, d)
    g = gvm.alg.e(_first_root(gvm))
    vecs: List[Vec] = []
    for nu in _layer_blocks(gvm, l, d):
        keys = gvm.blocks[nu]
        images = []
        for k in keys:
            img: Vec = {}
            v = {k: Fraction(1)}
            for r in range(l + 1):
                free = {kk: c for kk, c in v.items() if gvm.key_nu(kk)[0] == 0}
                for kk, c in free.items():
                    img[(r, kk)] = c
                v = gvm.act_vec(g, v)
            images.append(img)
        vecs.extend(linalg.kernel_vectors(images, [{k: Fraction(1)} for k in keys]))
    return Subspace(gvm, ("layer", l), vecs)


def _n1_keys(gvm: PBWModule, nu) -> List:
    allowed = set(n1_positions(gvm))
    return [k for k in gvm.blocks[nu] if all(e == 0 or p in allowed for p, e in enumerate(k[0]))]


def w_alpha1_cap_n1V(gvm: PBWModule, d: Optional[int] = None) -> List[Subspace]:
    _check_alpha1(gvm)
    d = _depth(gvm, d)
    out = []
    for l in range(d + 1):
        vecs: List[Vec] = []
        if l > 0:
            for nu in _layer_blocks(gvm, l, d):
                keys = _n1_keys(gvm, nu)
                if keys:
                    vecs.extend(_kernel_on(gvm, l, keys))
        out.append(Subspace(gvm, ("layer", l), vecs))
    return out


def generated_vectors(gvm: PBWModule, S: Iterable, d: int, positions: Sequence[int]) -> List[Vec]:
    """Spanning vectors m f_alpha w_j, m a monomial in the root vectors at the
    given PBW positions, alpha in S, truncated at height d."""
    rs = gvm.rs
    roots = [rs.root(a) for a in S]
    for r in roots:
        if r.index not in gvm.npos:
            raise ValueError(f"{r.name} is a Levi root")
    heights = [rs.roots[gvm.nroots[p]].height for p in positions]
    zero = (0,) * len(gvm.nroots)
    out = []
    for r in roots:
        for j, vk in enumerate(gvm.vkeys):
            budget = d - r.height - sum(vk[0])
            if budget < 0:
                continue
            base = gvm.left_f(gvm.npos[r.index], zero, j)
            for t in _monomials(heights, budget):
                v = base
                for p, e in zip(positions, t):
                    for _ in range(e):
                        v = gvm._left_f_vec(p, v)
                if v:
                    out.append(v)
    return out


def by_block(gvm: PBWModule, vectors: Iterable[Vec]) -> Dict[Tuple[int, ...], List[Vec]]:
    """Split weight vectors by block; every vector must be homogeneous."""
    out: Dict = {}
    for v in vectors:
        nus = {gvm.key_nu(k) for k in v}
        if len(nus) != 1:
            raise ValueError("vector is not a weight vector")
        out.setdefault(nus.pop(), []).append(v)
    return out


def ideal_subspace(gvm: PBWModule, S: Iterable, d: Optional[int] = None) -> List[Subspace]:
    """Layers of U(n_1){f_alpha : alpha in S} V_lambda, built by acting with the module."""
    d = _depth(gvm, d)
    roots = [gvm.rs.root(a) for a in S]
    for r in roots:
        if r.index not in gvm.npos or r.coeffs[0] != 1:
            raise ValueError(f"{r.name} is not a root vector of n_1")
    layers: Dict[int, List[Vec]] = {l: [] for l in range(d + 1)}
    for nu, vecs in by_block(gvm, generated_vectors(gvm, roots, d, n1_positions(gvm))).items():
        layers[nu[0]].extend(linalg.span_basis(vecs))
    return [Subspace(gvm, ("layer", l), layers[l]) for l in range(d + 1)]


# ----------------------------------------------------------------------------
# closed-form descriptions

def walpha_generator_set(gvm: PBWModule) -> List[Root]:
    """S_1: roots alpha outside the Levi with alpha_1 in alpha, alpha != alpha_1,
    and alpha - alpha_1 not a root outside the Levi."""
    rs = gvm.rs
    out = []
    for r in rs.roots:
        if r.index not in gvm.npos or r.coeffs[0] != 1 or r.height == 1:
            continue
        rest = tuple(c - (1 if i == 0 else 0) for i, c in enumerate(r.coeffs))
        idx = rs.index_of(rest)
        if idx is not None and idx in gvm.npos:
            continue
        out.append(r)
    return out


def applicable_corollaries(rs: RootSystem, lam) -> List[Tuple[str, List[str]]]:
    """Corollaries whose hypotheses hold, with their generator sets (root names)."""
    lam = as_weight(lam, rs.rank)
    m = rs.rank
    if rs.family != "D" or m < 4:
        return []
    dl = delta_lambda(rs, lam)
    scalar = is_scalar(rs, lam)
    out = []
    outside = [k for k in range(2, m + 1) if (k - 1) not in dl]
    if scalar and 0 not in dl and any(k != m - 1 for k in outside):
        kmin = min(outside)
        out.append(("inductioncor1", ["g[1,2]"] + [f"a[1,{j}]" for j in range(2, kmin)]))
    if 0 not in dl and 1 not in dl:
        out.append(("inductioncor2", ["g[1,2]"]))
    if 0 in dl and scalar:
        out.append(("inductioncorscalar", ["g[1,2]"]))
    for k in range(1, m - 2):
        if all(lam[i - 1] == 0 for i in range(1, k)) and is_nat(lam[k - 1]) and not is_nat(lam[k]):
            out.append(("inductioncor3", ["g[1,2]"]))
            break
    return out


def _proposition_hypotheses(gvm: PBWModule, d: int) -> Dict[str, bool]:
    rs = gvm.rs
    first = _first_root(gvm)
    coeff_ok = all(r.coeffs[0] <= 1 for r in rs.roots)
    # W meets sum_i f_{alpha_1}^i V trivially
    if first in gvm.npos:
        p = gvm.npos[first]
        span_keys = [k for nu in gvm.blocks for k in gvm.blocks[nu]
                     if all(e == 0 for q, e in enumerate(k[0]) if q != p)]
    else:
        span_keys = [k for nu in gvm.blocks for k in gvm.blocks[nu] if not any(k[0])]
    trivial = True
    by_block: Dict = {}
    for k in span_keys:
        nu = gvm.key_nu(k)
        if sum(nu) <= d:
            by_block.setdefault(nu, []).append(k)
    for nu, keys in by_block.items():
        if nu[0] > 0 and _kernel_on(gvm, nu[0], keys):
            trivial = False
    # f_{alpha - alpha_1} kills V whenever alpha - alpha_1 is a Levi root
    kills = True
    for r in rs.roots:
        if r.index not in gvm.npos or r.coeffs[0] != 1 or r.height == 1:
            continue
        rest = tuple(c - (1 if i == 0 else 0) for i, c in enumerate(r.coeffs))
        idx = rs.index_of(rest)
        if idx is not None and idx in gvm.levi_roots:
            g = gvm.alg.f(idx)
            if any(gvm.V.act_key(g, vk) for vk in gvm.vkeys):
                kills = False
    return {"alpha1_coefficients_at_most_1": coeff_ok, "W_meets_f_alpha1_span_trivially": trivial,
            "levi_lowering_kills_V": kills}


def compare_layers(a: List[Subspace], b: List[Subspace]) -> Tuple[bool, List[dict]]:
    rows = []
    ok = True
    for sa, sb in zip(a, b):
        eq = linalg.same_span(sa.vectors, sb.vectors)
        witness = None
        if not eq:
            ok = False
            eb = linalg.EchelonBasis()
            for v in sb.vectors:
                eb.insert(v)
            extra = [v for v in sa.vectors if not eb.contains(v)]
            witness = extra[0] if extra else next(
                v for v in sb.vectors if not linalg.contained_in([v], sa.vectors))
        rows.append({"layer": sa.label[1], "dim_left": sa.dim, "dim_right": sb.dim, "equal": eq,
                     "witness": None if witness is None else {sa.module.key_name(k): str(c) for k, c in witness.items()}})
    return ok, rows


def check_walpha_description(gvm: PBWModule, d: Optional[int] = None) -> dict:
    rs = gvm.rs
    d = _depth(gvm, d)
    if gvm.levi != delta_lambda(rs, gvm.lam):
        raise ValueError("module must be the generalized Verma module for I = Delta_lambda")
    w = w_alpha1_cap_n1V(gvm, d)
    report = {"weight": [str(x) for x in gvm.lam], "depth": d,
              "W_dims": [s.dim for s in w], "corollaries": []}
    for name, S in applicable_corollaries(rs, gvm.lam):
        ok, rows = compare_layers(w, ideal_subspace(gvm, S, d))
        report["corollaries"].append({"name": name, "generators": S, "holds": ok, "layers": rows})
    hyp = _proposition_hypotheses(gvm, d)
    S1 = [r.name for r in walpha_generator_set(gvm)]
    general = {"hypotheses": hyp, "generators": S1}
    if all(hyp.values()):
        ok, rows = compare_layers(w, ideal_subspace(gvm, S1, d))
        general.update({"holds": ok, "layers": rows})
    report["general"] = general
    if not report["corollaries"]:
        report["verdict"] = "no applicable closed form"
    else:
        report["verdict"] = "holds" if all(c["holds"] for c in report["corollaries"]) else "fails"
    return report


# ----------------------------------------------------------------------------
# commutation identity in L(s_1 . a omega_1)

def commutation_weight(rs: RootSystem, a: int):
    return reflect(rs, 0, fundamental(rs, 0, a), dot=True)


def check_commutation(alg: ChevalleyAlgebra, a: int, beta, d: int, module: Optional[IrreducibleModule] = None) -> bool:
    return commutation_report(alg, a, beta, d, module)["holds"]


def commutation_report(alg: ChevalleyAlgebra, a: int, beta, d: int,
                       module: Optional[IrreducibleModule] = None) -> dict:
    rs = alg.rs
    beta = rs.root(beta)
    lam = commutation_weight(rs, a)
    if beta.coeffs[0] != 0:
        return {"beta": beta.name, "holds": True, "vacuous": True}
    if 1 + beta.height > d:
        raise DepthExceeded("depth too small for this root")
    L = module if module is not None else IrreducibleModule(alg, lam, d)
    if tuple(L.lam) != tuple(lam) or (L.depth is not None and L.depth < d):
        raise ValueError("module does not match s_1 . a omega_1 at this depth")
    first = rs.simple[0].index
    f1, fb = alg.f(first), alg.f(beta.index)
    v = {L.top: Fraction(1)}
    lhs = L.act_vec(f1, L.act_vec(fb, v))
    br = dict(alg.bracket_basis(fb, f1))
    linalg.axpy(lhs, -(a + 1), L.act_lie(br, v))
    identity = not lhs
    # f_{alpha_1} f_beta x v in U(n) v for monomials x over n = n_{Delta - alpha_1}
    n_roots = [r for r in rs.roots if r.coeffs[0] == 1]
    heights = [r.height for r in n_roots]
    spans: Dict = {}

    def span_for(nu):
        if nu not in spans:
            eb = linalg.EchelonBasis()
            for t in _monomials(heights, sum(nu)):
                tot = tuple(sum(e * r.coeffs[i] for e, r in zip(t, n_roots)) for i in range(rs.rank))
                if tot != nu:
                    continue
                w = v
                for e, r in zip(t, n_roots):
                    for _ in range(e):
                        w = L.act_vec(alg.f(r.index), w)
                if w:
                    eb.insert(w)
            spans[nu] = eb
        return spans[nu]

    contained = True
    checked = 0
    witness = None
    budget = d - 1 - beta.height
    for t in _monomials(heights, budget):
        w = v
        for e, r in zip(t, n_roots):
            for _ in range(e):
                w = L.act_vec(alg.f(r.index), w)
        w = L.act_vec(f1, L.act_vec(fb, w))
        checked += 1
        if not w:
            continue
        nu = L.key_nu(next(iter(w)))
        if not span_for(nu).contains(w):
            contained = False
            witness = {rs.roots[r.index].name: e for e, r in zip(t, n_roots) if e}
            break
    return {"beta": beta.name, "a": a, "weight": [str(x) for x in lam], "identity": identity,
            "containment": contained, "monomials_checked": checked, "witness": witness,
            "holds": identity and contained, "vacuous": False}

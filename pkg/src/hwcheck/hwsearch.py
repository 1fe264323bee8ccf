"""Highest-weight (singular) vectors: e_alpha w = 0 for every simple alpha."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .chevalley import build_chevalley
from .modules import PBWModule, Subspace, TruncatedModule, _monomials, build_gvm
from .rootsys import RootSystem, build_root_system, restrict_drop_first, subsystem_positive
from .walpha import (
    _depth,
    applicable_corollaries,
    by_block,
    generated_vectors,
    n1_positions,
    w_alpha1_cap_n1V,
    walpha_generator_set,
)
from .weights import as_weight, classify, delta_lambda, is_dominant_integral

Vec = Dict
CAVEAT = "certified only to depth {d}"


def _simple_e(module: TruncatedModule) -> List[int]:
    return [module.alg.e(r.index) for r in module.rs.simple]


def _joint_kernel(module: TruncatedModule, vectors: Sequence[Vec]) -> List[Vec]:
    es = _simple_e(module)
    images = []
    for v in vectors:
        img: Vec = {}
        for i, g in enumerate(es):
            for k, c in module.act_vec(g, v).items():
                img[(i, k)] = c
        images.append(img)
    return linalg.kernel_vectors(images, list(vectors))


def is_singular(module: TruncatedModule, w: Vec) -> bool:
    return bool(w) and all(not module.act_vec(g, w) for g in _simple_e(module))


def singular_vectors(module: TruncatedModule, nu: Sequence[int]) -> Subspace:
    """Joint kernel of the simple raising operators on the block lambda - nu."""
    nu = tuple(nu)
    keys = module.blocks.get(nu, [])
    vecs = _joint_kernel(module, [{k: Fraction(1)} for k in keys])
    return Subspace(module, ("block", nu), vecs)


@dataclass
class SingularReport:
    module: str
    searched: str
    depth: int
    block_dims: Dict[Tuple[int, ...], int] = field(default_factory=dict)
    witnesses: Dict[Tuple[int, ...], List[Vec]] = field(default_factory=dict)
    caveat: str = ""

    @property
    def empty(self) -> bool:
        return not self.witnesses

    def as_dict(self, module: Optional[TruncatedModule] = None) -> dict:
        def show(v):
            return {(module.key_name(k) if module else str(k)): str(c) for k, c in v.items()}

        return {
            "module": self.module,
            "searched": self.searched,
            "depth": self.depth,
            "empty": self.empty,
            "subspace_dims": {",".join(map(str, nu)): n for nu, n in sorted(self.block_dims.items())},
            "witnesses": {",".join(map(str, nu)): [show(v) for v in ws] for nu, ws in sorted(self.witnesses.items())},
            "caveat": self.caveat,
        }


def _module_id(gvm: PBWModule) -> str:
    levi = ",".join(str(i + 1) for i in sorted(gvm.levi))
    lam = ",".join(str(x) for x in gvm.lam)
    return f"M_{{{levi}}}({lam}) in {gvm.rs.label}"


def search_blocks(gvm: PBWModule, blocks: Dict[Tuple[int, ...], List[Vec]], searched: str, d: int) -> SingularReport:
    report = SingularReport(_module_id(gvm), searched, d,
                            caveat="vacuous at depth 0" if d == 0 else CAVEAT.format(d=d))
    for nu in sorted(blocks):
        basis = linalg.span_basis(blocks[nu])
        report.block_dims[nu] = len(basis)
        found = _joint_kernel(gvm, basis)
        for w in found:
            if not is_singular(gvm, w):
                raise AssertionError("emitted witness is not singular")
        if found:
            report.witnesses[nu] = found
    return report


def singular_in_subspace(gvm: PBWModule, S: Iterable, d: Optional[int] = None) -> SingularReport:
    """Singular vectors inside U(n){f_gamma : gamma in S} V_lambda up to height d."""
    d = _depth(gvm, d)
    roots = [gvm.rs.root(a) for a in S]
    vecs = generated_vectors(gvm, roots, d, list(range(len(gvm.nroots))))
    searched = "U(n){" + ",".join(f"f_{r.name}" for r in roots) + "}V"
    return search_blocks(gvm, by_block(gvm, vecs), searched, d)


def hw_prop_conditions(rs: RootSystem, delta: Iterable[int], gammas: Sequence, betas: Sequence) -> bool:
    """Root conditions under which U(n){f_gamma_i}V holds no singular vector.

    delta is the set of simple root indices spanning the Levi."""
    if len(gammas) != len(betas):
        raise ValueError("gamma and beta lists must have equal length")
    levi = {r.coeffs for r in subsystem_positive(rs, delta)}
    n = {r.coeffs for r in rs.roots} - levi
    g = [rs.root(x).coeffs for x in gammas]
    b = [rs.root(x).coeffs for x in betas]
    if any(x not in n for x in g):
        return False

    def diff(x, y):
        return tuple(p - q for p, q in zip(x, y))

    gset = set(g)
    for i in range(len(g)):
        di = diff(g[i], b[i])
        if di not in n or di in gset:
            return False
        for j in range(i):
            if diff(g[i], b[j]) in n:
                return False
    return True


def positive_control(gvm: PBWModule, alpha) -> Optional[Vec]:
    """f_alpha^{lambda(h_alpha)+1} v for simple alpha with lambda(h_alpha) in N_0, checked singular."""
    rs = gvm.rs
    r = rs.root(alpha)
    i = r.coeffs.index(1)
    a = gvm.lam[i]
    if r.height != 1 or a.denominator != 1 or a < 0:
        raise ValueError("need a simple root with lambda(h_alpha) in N_0")
    g = gvm.alg.f(r.index)
    v = {gvm.top: Fraction(1)}
    for _ in range(int(a) + 1):
        v = gvm.act_vec(g, v)
    return v if is_singular(gvm, v) else None


def induction_certificate(rs: RootSystem, lam, d: int, module: Optional[PBWModule] = None,
                          strict: bool = True) -> dict:
    """Evidence for the two hypotheses of the alpha_1 induction step.

    strict=False skips the standing assumption on the restricted weight."""
    lam = as_weight(lam, rs.rank)
    rest = restrict_drop_first(lam)
    if strict and is_dominant_integral(rest):
        raise ValueError("restriction of lambda to Delta minus alpha_1 is dominant integral")
    gvm = module if module is not None else build_gvm(_alg_for(rs), delta_lambda(rs, lam), lam, d)
    d = _depth(gvm, d)
    layers = w_alpha1_cap_n1V(gvm, d)
    n2 = [p for p in range(len(gvm.nroots)) if p not in set(n1_positions(gvm))]
    heights = [rs.roots[gvm.nroots[p]].height for p in n2]
    vecs = []
    for layer in layers:
        for w in layer.vectors:
            h = sum(gvm.key_nu(next(iter(w))))
            for t in _monomials(heights, d - h):
                v = w
                for p, e in zip(n2, t):
                    for _ in range(e):
                        v = gvm._left_f_vec(p, v)
                if v:
                    vecs.append(v)
    search = search_blocks(gvm, by_block(gvm, vecs), "U(n_2)(W cap U(n_1)V)", d)
    lower = build_root_system("D", rs.rank - 1) if rs.family == "D" and rs.rank >= 4 else None
    cls = classify(lower, rest).as_dict() if lower is not None else None
    return {
        "weight": [str(x) for x in lam],
        "depth": d,
        "walpha_dims": [s.dim for s in layers],
        "walpha_generators": {name: S for name, S in applicable_corollaries(rs, lam)},
        "general_generators": [r.name for r in walpha_generator_set(gvm)],
        "singular_search": search.as_dict(gvm),
        "no_singular_vector": search.empty,
        "recursion_target": {"rank": rs.rank - 1, "weight": [str(x) for x in rest], "classification": cls},
        "obligation": "condition (1) for the restricted weight (recorded, not computed)",
    }


_ALG_CACHE: Dict = {}


def _alg_for(rs: RootSystem):
    key = (rs.family, rs.rank)
    if key not in _ALG_CACHE:
        _ALG_CACHE[key] = build_chevalley(rs)
    return _ALG_CACHE[key]

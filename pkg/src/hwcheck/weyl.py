"""Weyl group actions and the reduction procedures with replayable certificates.

A word [b1, ..., br] denotes w = s_{br} ... s_{b1}: letters are applied in
list order.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .rootsys import (
    Root,
    RootSystem,
    components,
    is_connected,
    root_pairing,
    unit,
)
from .weights import (
    Weight,
    as_weight,
    in_S_g,
    is_dominant_integral,
    is_int,
    is_integral,
    is_nat,
    is_regular,
    nonintegral_simple,
)

ORBIT_RANK_CAP = 5


def reflect(rs: RootSystem, i: int, lam: Sequence, dot: bool = False) -> Weight:
    lam = as_weight(lam, rs.rank)
    k = lam[i] + (1 if dot else 0)
    row = rs.simple_root_weight(i)
    return tuple(x - k * a for x, a in zip(lam, row))


def reflect_root(rs: RootSystem, i: int, coeffs: Sequence[int]) -> Tuple[int, ...]:
    """s_{alpha_i} applied to a root-lattice vector in simple-root coordinates."""
    k = root_pairing(rs, coeffs, unit(rs.rank, i))
    return tuple(c - (k if j == i else 0) for j, c in enumerate(coeffs))


def apply_word(rs: RootSystem, word: Sequence[int], lam: Sequence, dot: bool = True) -> Weight:
    for i in word:
        lam = reflect(rs, i, lam, dot)
    return as_weight(lam, rs.rank)


def apply_word_root(rs: RootSystem, word: Sequence[int], coeffs: Sequence[int]) -> Tuple[int, ...]:
    coeffs = tuple(coeffs)
    for i in word:
        coeffs = reflect_root(rs, i, coeffs)
    return coeffs


def weyl_orbit(rs: RootSystem, lam: Sequence, dot: bool = False) -> Set[Weight]:
    if rs.rank > ORBIT_RANK_CAP:
        raise ValueError("orbit enumeration capped")
    start = as_weight(lam, rs.rank)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for i in range(rs.rank):
            y = reflect(rs, i, x, dot)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# ----------------------------------------------------------------------------
# subsystems

def _signed(roots: Iterable) -> FrozenSet[Tuple[int, ...]]:
    out = set()
    for r in roots:
        c = r.coeffs if isinstance(r, Root) else tuple(r)
        out.add(c)
        out.add(tuple(-x for x in c))
    return frozenset(out)


def validate_subsystem(rs: RootSystem, psi: Iterable) -> FrozenSet[Tuple[int, ...]]:
    """Return the signed closure of psi after checking it is a root subsystem."""
    full = _signed(psi)
    for c in full:
        if not rs.is_positive_root(tuple(abs(x) for x in c)) or (min(c) < 0 < max(c)):
            raise ValueError(f"{c} is not a root")
    for a in full:
        for b in full:
            k = root_pairing(rs, b, a)
            img = tuple(y - k * x for x, y in zip(a, b))
            if img not in full:
                raise ValueError("subset is not closed under its own reflections")
    return full


def missing_simple(rs: RootSystem, signed: FrozenSet[Tuple[int, ...]]) -> FrozenSet[int]:
    return frozenset(i for i in range(rs.rank) if unit(rs.rank, i) not in signed)


def connect_subsystem(rs: RootSystem, psi: Iterable, target: int = 0) -> List[int]:
    """Shortest word w with Delta minus w(psi) connected and containing the target."""
    if rs.rank > ORBIT_RANK_CAP:
        raise ValueError("orbit enumeration capped")
    start = validate_subsystem(rs, psi)
    if len(start) == 2 * len(rs.roots):
        raise ValueError("subsystem must be proper")

    def good(state):
        rest = missing_simple(rs, state)
        return target in rest and is_connected(rs, rest)

    seen = {start: []}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        word = seen[state]
        if good(state):
            return word
        for i in range(rs.rank):
            nxt = frozenset(reflect_root(rs, i, c) for c in state)
            if nxt not in seen:
                seen[nxt] = word + [i]
                queue.append(nxt)
    raise RuntimeError("no connecting Weyl group element found")


def subsystem_image(rs: RootSystem, word: Sequence[int], psi: Iterable) -> FrozenSet[Tuple[int, ...]]:
    return frozenset(apply_word_root(rs, word, c) for c in _signed(psi))


# ----------------------------------------------------------------------------
# reductions

@dataclass
class ReductionStep:
    index: int  # simple root index (0-based)
    value: Fraction  # current weight evaluated at h_{alpha_index}
    rule: str  # 'nonintegral-preprocess' | 'below-minus-one' | 'regular-integral'


@dataclass
class ReductionCertificate:
    input: Weight
    steps: List[ReductionStep]
    output: Weight
    penultimate: Optional[Weight] = None

    @property
    def word(self) -> List[int]:
        return [s.index for s in self.steps]

    def as_dict(self) -> dict:
        return {
            "input": [str(x) for x in self.input],
            "word": [s.index + 1 for s in self.steps],
            "values": [str(s.value) for s in self.steps],
            "rules": [s.rule for s in self.steps],
            "output": [str(x) for x in self.output],
            "penultimate": None if self.penultimate is None else [str(x) for x in self.penultimate],
        }


def replay(rs: RootSystem, cert: ReductionCertificate) -> bool:
    """Independently re-apply the word and compare every recorded value."""
    lam = as_weight(cert.input, rs.rank)
    prev = None
    for step in cert.steps:
        if lam[step.index] != step.value:
            return False
        if step.rule == "nonintegral-preprocess" and is_nat(step.value):
            return False
        if step.rule in ("below-minus-one", "regular-integral") and not (is_int(step.value) and step.value < -1):
            return False
        prev = lam
        lam = reflect(rs, step.index, lam, dot=True)
    if lam != tuple(cert.output):
        return False
    if cert.penultimate is not None and tuple(cert.penultimate) != prev:
        return False
    return True


def _anchored(rs: RootSystem, lam: Weight) -> bool:
    bad = nonintegral_simple(rs, lam)
    return not bad or (0 in bad and is_connected(rs, bad))


def reduce_to_Sg(rs: RootSystem, lam: Sequence) -> ReductionCertificate:
    lam = as_weight(lam, rs.rank)
    if is_dominant_integral(lam):
        raise ValueError("weight is dominant integral")
    if is_integral(lam) and is_regular(rs, lam):
        raise ValueError("weight is regular integral: use reduce_regular_integral")
    steps: List[ReductionStep] = []
    cur = lam
    if not _anchored(rs, cur):
        # breadth-first search over steps whose value is not in N_0
        parent: Dict[Weight, Tuple[Weight, int]] = {cur: None}
        queue = deque([cur])
        found = None
        while queue and found is None:
            x = queue.popleft()
            for i in range(rs.rank):
                if is_nat(x[i]):
                    continue
                y = reflect(rs, i, x, dot=True)
                if y in parent:
                    continue
                parent[y] = (x, i)
                if _anchored(rs, y):
                    found = y
                    break
                queue.append(y)
        if found is None:
            raise RuntimeError("no anchoring word found")
        chain = []
        y = found
        while parent[y] is not None:
            x, i = parent[y]
            chain.append((x, i))
            y = x
        for x, i in reversed(chain):
            steps.append(ReductionStep(i, x[i], "nonintegral-preprocess"))
        cur = found
    while True:
        cand = [i for i, x in enumerate(cur) if is_int(x) and x < -1]
        if not cand:
            break
        i = cand[0]
        steps.append(ReductionStep(i, cur[i], "below-minus-one"))
        cur = reflect(rs, i, cur, dot=True)
    if rs.family == "D" and not in_S_g(rs, cur):
        raise RuntimeError("reduction did not land in S_g")
    return ReductionCertificate(lam, steps, cur)


def reduce_regular_integral(rs: RootSystem, lam: Sequence) -> ReductionCertificate:
    lam = as_weight(lam, rs.rank)
    if not is_integral(lam):
        raise ValueError("weight is not integral")
    if not is_regular(rs, lam):
        raise ValueError("weight is singular")
    if is_dominant_integral(lam):
        raise ValueError("already dominant")
    steps: List[ReductionStep] = []
    cur, prev = lam, None
    while True:
        cand = [i for i, x in enumerate(cur) if x < 0]
        if not cand:
            break
        i = cand[0]
        assert cur[i] < -1
        steps.append(ReductionStep(i, cur[i], "regular-integral"))
        prev = cur
        cur = reflect(rs, i, cur, dot=True)
    assert is_dominant_integral(cur)
    return ReductionCertificate(lam, steps, cur, prev)


# ----------------------------------------------------------------------------
# lemmas on simple roots and subsystems, checked exhaustively

def check_orbit_lemma(rs: RootSystem) -> Tuple[bool, int]:
    """s_a s_b (a) = b for adjacent simple a, b, and all simple roots share one W-orbit."""
    checked = 0
    for i in range(rs.rank):
        for j in rs.neighbours(i):
            checked += 1
            if apply_word_root(rs, [j, i], unit(rs.rank, i)) != unit(rs.rank, j):
                return False, checked
    seen = {unit(rs.rank, 0)}
    queue = deque(seen)
    while queue:
        c = queue.popleft()
        for i in range(rs.rank):
            d = reflect_root(rs, i, c)
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return all(unit(rs.rank, i) in seen for i in range(rs.rank)), checked


def subsystem_orbits(rs: RootSystem, seeds: Iterable[Iterable]) -> Set[FrozenSet[Tuple[int, ...]]]:
    """All W-images of the given subsystems (as signed coefficient sets)."""
    out = set()
    queue = deque()
    for s in seeds:
        full = validate_subsystem(rs, s) if not isinstance(s, frozenset) else s
        if full not in out:
            out.add(full)
            queue.append(full)
    while queue:
        x = queue.popleft()
        for i in range(rs.rank):
            y = frozenset(reflect_root(rs, i, c) for c in x)
            if y not in out:
                out.add(y)
                queue.append(y)
    return out


def check_connected_components_lemma(rs: RootSystem, subsystems: Iterable[FrozenSet]) -> Tuple[bool, int, Optional[tuple]]:
    """For a component C of Delta minus Phi' and alpha outside C, C avoids s_alpha(Phi')."""
    checked = 0
    for sub in subsystems:
        rest = missing_simple(rs, sub)
        for comp in components(rs, rest):
            for a in range(rs.rank):
                if a in comp:
                    continue
                image = frozenset(reflect_root(rs, a, c) for c in sub)
                checked += 1
                if not comp <= missing_simple(rs, image):
                    return False, checked, (sorted(sub), sorted(comp), a)
    return True, checked, None

"""Replay of the case analysis that proves faithfulness for a given highest weight.

A trace is a list of steps.  Each step names the result it applies, the
weight (and root system) it is applied to, and a list of hypotheses as
(predicate name, arguments).  verify_trace recomputes every predicate from
the recorded data alone, so a trace can be checked without the code that
built it.

Conditions (1) and (2) concern completed modules and appear only as labels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .rootsys import RootSystem, build_root_system, is_connected, pairing, restrict_drop_first
from .weights import (
    Weight,
    as_weight,
    delta_lambda,
    fmt_weight,
    in_S_g,
    in_T_g,
    is_dominant_integral,
    is_int,
    is_integral,
    is_nat,
    is_regular,
    is_scalar,
    nonintegral_simple,
    phi_lambda,
    same_facet,
    sub,
)
from .weyl import reduce_regular_integral, reduce_to_Sg, reflect

VERDICTS = ("finite-dimensional", "regular-integral chain", "S_g chain")

LEAVES = (
    "finite-dimensional",
    "abelianintegral/regular-integral",
    "abelianintegral/S_g",
    "abeliannonintegral",
    "A3case/integral",
    "A3case/ainductionlem",
    "A3case/nonintegral",
    "A2case",
)


@lru_cache(maxsize=None)
def root_system(family: str, rank: int) -> RootSystem:
    return build_root_system(family, rank)


# ----------------------------------------------------------------------------
# predicates: name -> f(rs, lam, **args) -> bool

def _abelian_at(rs, lam, i):
    return all(r.coeffs[i] <= 1 for r in rs.roots)


def _abelianintegral(rs, lam, i=0):
    lr = tuple(x + 1 for x in lam)
    return (
        is_integral(lam)
        and lam[i] < 0
        and _abelian_at(rs, lam, i)
        and all(pairing(lr, r) > 0 for r in rs.roots if r.coeffs != tuple(int(j == i) for j in range(rs.rank)))
    )


def _abeliannonintegral(rs, lam):
    return rs.family in ("A", "D") and not is_int(lam[0]) and all(is_nat(x) for x in lam[1:]) and _abelian_at(rs, lam, 0)


def _replays(rs, lam, word, output, rule):
    cur = lam
    for i in word:
        v = cur[i]
        if rule == "S_g" and is_nat(v):
            return False
        if rule == "regular" and not (is_int(v) and v < -1):
            return False
        cur = reflect(rs, i, cur, dot=True)
    return cur == as_weight(output, rs.rank)


def _translation_pair(rs, lam, target):
    mu = as_weight(target, rs.rank)
    return is_dominant_integral(sub(lam, mu)) and same_facet(rs, lam, mu)


def _sgcase1_mu(rs, lam, mu):
    dl = delta_lambda(rs, lam)
    mu = as_weight(mu, rs.rank)
    expected = tuple(Fraction(0) if i in dl else lam[i] for i in range(rs.rank))
    return mu == expected and {r.index for r in phi_lambda(rs, lam)} == {r.index for r in phi_lambda(rs, mu)}


def _inductioncase1(rs, lam):
    dl = delta_lambda(rs, lam)
    return is_scalar(rs, lam) and any(k not in dl for k in range(1, rs.rank))


def _inductioncase3(rs, lam, k):
    # k is 1-based as in the statement
    return (
        1 <= k < rs.rank - 2
        and all(lam[i] == 0 for i in range(k - 1))
        and is_nat(lam[k - 1])
        and not is_nat(lam[k])
    )


def _reflected_dominant(rs, lam, i, mu):
    mu = as_weight(mu, rs.rank)
    return is_dominant_integral(mu) and reflect(rs, i, mu, dot=True) == lam


def _swap(lam):
    return tuple(lam[:-2]) + (lam[-1], lam[-2])


def _relabel(lam):
    return (lam[1], lam[0]) + tuple(lam[2:])


def _a3case(rs, lam):
    bad = nonintegral_simple(rs, lam)
    return (
        rs.family == "A" and rs.rank == 3 and not is_dominant_integral(lam)
        and all(not (is_int(x) and x < -1) for x in lam)
        and is_connected(rs, bad)
    )


PREDICATES: Dict[str, Callable[..., bool]] = {
    "dominant_integral": lambda rs, lam: is_dominant_integral(lam),
    "not_dominant_integral": lambda rs, lam: not is_dominant_integral(lam),
    "regular_integral": lambda rs, lam: is_integral(lam) and is_regular(rs, lam),
    "not_regular_integral": lambda rs, lam: not (is_integral(lam) and is_regular(rs, lam)),
    "in_S_g": lambda rs, lam: rs.family == "D" and in_S_g(rs, lam),
    "in_T_g": lambda rs, lam: in_T_g(rs, lam),
    "integral": lambda rs, lam: is_integral(lam),
    "not_integral": lambda rs, lam: not is_integral(lam),
    "scalar": lambda rs, lam: is_scalar(rs, lam),
    "nonintegral_count_at_most_1": lambda rs, lam: len(nonintegral_simple(rs, lam)) <= 1,
    "nonintegral_count_at_least_2": lambda rs, lam: len(nonintegral_simple(rs, lam)) >= 2,
    "restriction_dominant_integral": lambda rs, lam: is_dominant_integral(lam[1:]),
    "restriction_not_dominant_integral": lambda rs, lam: not is_dominant_integral(lam[1:]),
    "alpha1_outside_delta": lambda rs, lam: 0 not in delta_lambda(rs, lam),
    "alpha2_outside_delta": lambda rs, lam: rs.rank >= 2 and 1 not in delta_lambda(rs, lam),
    "alpha2_in_delta": lambda rs, lam: 1 in delta_lambda(rs, lam),
    "alpha1_equals_minus_one": lambda rs, lam: lam[0] == -1,
    "alpha1_not_integral": lambda rs, lam: not is_int(lam[0]),
    "abelianintegral": _abelianintegral,
    "abeliannonintegral": _abeliannonintegral,
    "certificate_replays": _replays,
    "translation_pair": _translation_pair,
    "sgcase1_mu": _sgcase1_mu,
    "inductioncase1": _inductioncase1,
    "inductioncase2": lambda rs, lam: 0 not in delta_lambda(rs, lam) and 1 not in delta_lambda(rs, lam),
    "inductioncase3": _inductioncase3,
    "reflected_dominant": _reflected_dominant,
    "only_fork_outside": lambda rs, lam: (
        0 not in delta_lambda(rs, lam)
        and [k for k in range(1, rs.rank) if k not in delta_lambda(rs, lam)] == [rs.rank - 2]
    ),
    "swap_of": lambda rs, lam, source: _swap(as_weight(source, rs.rank)) == lam,
    "relabel_of": lambda rs, lam, source: _relabel(as_weight(source, rs.rank)) == lam,
    "restriction_of": lambda rs, lam, source: restrict_drop_first(as_weight(source)) == lam,
    "A3case": _a3case,
    "A2case": lambda rs, lam: rs.family == "A" and rs.rank <= 2 and not is_dominant_integral(lam),
    "ainductionlem": lambda rs, lam: rs.family == "A" and rs.rank >= 2 and 1 not in delta_lambda(rs, lam),
    "rank_at_least_4": lambda rs, lam: rs.rank >= 4,
    "rank_is_3": lambda rs, lam: rs.rank == 3,
    "index_abelian": lambda rs, lam, i: _abelian_at(rs, lam, i),
}

Hyp = Tuple[str, dict]


@dataclass
class TraceStep:
    result: str
    family: str
    rank: int
    weight: Weight
    hypotheses: List[Hyp]
    note: str = ""
    condition: Optional[str] = None

    def as_dict(self) -> dict:
        def enc(v):
            if isinstance(v, tuple):
                return [str(x) for x in v]
            return v

        return {
            "result": self.result,
            "system": f"{self.family}{self.rank}",
            "weight": [str(x) for x in self.weight],
            "hypotheses": [{"predicate": n, **{k: enc(v) for k, v in a.items()}} for n, a in self.hypotheses],
            "note": self.note,
            "condition": self.condition,
        }


@dataclass
class ProofTrace:
    family: str
    rank: int
    input: Weight
    steps: List[TraceStep] = field(default_factory=list)
    verdict: str = ""
    leaf: str = ""

    def as_dict(self) -> dict:
        return {
            "system": f"{self.family}{self.rank}",
            "input": [str(x) for x in self.input],
            "verdict": self.verdict,
            "leaf": self.leaf,
            "steps": [s.as_dict() for s in self.steps],
        }

    def render(self) -> str:
        lines = [f"{self.family}{self.rank} {fmt_weight(self.input)}"]
        for n, s in enumerate(self.steps, 1):
            line = f"  {n}. [{s.family}{s.rank}] {s.result} at {fmt_weight(s.weight)}"
            if s.note:
                line += f": {s.note}"
            lines.append(line)
        lines.append(f"  verdict: {self.verdict} (leaf {self.leaf})")
        return "\n".join(lines)


class _Builder:
    def __init__(self, trace: ProofTrace):
        self.trace = trace

    def step(self, result, rs, lam, hyps, note="", condition=None):
        self.trace.steps.append(TraceStep(result, rs.family, rs.rank, tuple(lam), list(hyps), note, condition))

    def leaf(self, name):
        self.trace.leaf = name

    # -- S_g chain -------------------------------------------------------
    def sg(self, rs, lam):
        m = rs.rank
        if m == 3:
            self.step("Sgprop", rs, lam, [("in_S_g", {}), ("rank_is_3", {})], "base case D3 = A3")
            return self.a3_from_d3(rs, lam)
        if len(nonintegral_simple(rs, lam)) <= 1:
            self.step("Sgprop", rs, lam, [("in_S_g", {}), ("nonintegral_count_at_most_1", {})],
                      "at most one non-integral simple root")
            mu = tuple(Fraction(0) if i in delta_lambda(rs, lam) else lam[i] for i in range(m))
            self.step("Sgcase1", rs, lam,
                      [("sgcase1_mu", {"mu": mu}), ("translation_pair", {"target": mu})],
                      f"translate to the scalar weight mu = {fmt_weight(mu)}",
                      "condition (1) transferred from mu by translation")
            return self.sgscalar(rs, mu)
        self.step("Sgprop", rs, lam, [("in_S_g", {}), ("nonintegral_count_at_least_2", {})],
                  "two or more non-integral simple roots")
        rest = restrict_drop_first(lam)
        low = root_system("D", m - 1)
        self.step("inductioncase2", rs, lam, [("inductioncase2", {}), ("restriction_not_dominant_integral", {})],
                  f"W_alpha1 part generated by f_g[1,2]; recurse on {fmt_weight(rest)}",
                  "condition (1) from the restricted weight")
        self.step("restrict", low, rest, [("restriction_of", {"source": lam}), ("in_S_g", {})])
        return self.sg(low, rest)

    def sgscalar(self, rs, lam):
        m = rs.rank
        if m == 3:
            self.step("Sgscalar", rs, lam, [("in_S_g", {}), ("scalar", {}), ("rank_is_3", {})], "base case")
            return self.a3_from_d3(rs, lam)
        if is_dominant_integral(lam[1:]):
            self.step("Sgscalar", rs, lam, [("in_S_g", {}), ("scalar", {}), ("restriction_dominant_integral", {})],
                      "restriction to the lower system is dominant integral")
            if not is_int(lam[0]):
                self.step("abeliannonintegral", rs, lam, [("abeliannonintegral", {})], "",
                          "condition (2), hence (1)")
                return self.leaf("abeliannonintegral")
            self.step("abelianintegral", rs, lam, [("alpha1_equals_minus_one", {}), ("abelianintegral", {"i": 0})],
                      "", "condition (2), hence (1)")
            return self.leaf("abelianintegral/S_g")
        self.step("Sgscalar", rs, lam,
                  [("in_S_g", {}), ("scalar", {}), ("restriction_not_dominant_integral", {}), ("rank_at_least_4", {})])
        cur = lam
        if 0 not in delta_lambda(rs, lam) and [k for k in range(1, m) if k not in delta_lambda(rs, lam)] == [m - 2]:
            cur = _swap(lam)
            self.step("diagram-automorphism", rs, cur, [("swap_of", {"source": lam})],
                      "exchange alpha_{m-1} and alpha_m")
        cors = "inductioncorscalar, hwcor1" if 0 in delta_lambda(rs, cur) else "inductioncor1, hwcor2"
        rest = restrict_drop_first(cur)
        low = root_system("D", m - 1)
        self.step("inductioncase1", rs, cur, [("inductioncase1", {}), ("restriction_not_dominant_integral", {})],
                  f"via {cors}; recurse on {fmt_weight(rest)}", "condition (1) from the restricted weight")
        self.step("restrict", low, rest, [("restriction_of", {"source": cur}), ("in_S_g", {}), ("scalar", {})])
        return self.sgscalar(low, rest)

    # -- type A base -----------------------------------------------------
    def a3_from_d3(self, rs, lam):
        a3 = root_system("A", 3)
        al = _relabel(lam)
        self.step("relabel", a3, al, [("relabel_of", {"source": lam})], "D3 read as A3")
        return self.a3case(a3, al)

    def a3case(self, rs, lam):
        base = [("A3case", {})]
        if is_integral(lam):
            self.step("A3case", rs, lam, base + [("integral", {}), ("in_T_g", {})], "integral: weight lies in T_g",
                      "condition (1) for T_g")
            return self.leaf("A3case/integral")
        if 1 not in delta_lambda(rs, lam):
            self.step("A3case", rs, lam, base + [("not_integral", {}), ("alpha2_outside_delta", {})])
            self.step("ainductionlem", rs, lam, [("ainductionlem", {})], "", "condition (1) from the restriction")
            a2 = root_system("A", 2)
            rest = restrict_drop_first(lam)
            self.step("A2case", a2, rest, [("restriction_of", {"source": lam}), ("A2case", {})], "",
                      "condition (1)")
            return self.leaf("A3case/ainductionlem")
        self.step("A3case", rs, lam, base + [("not_integral", {}), ("alpha2_in_delta", {}), ("in_T_g", {})],
                  "non-integral: Phi_lambda is a standard subsystem", "condition (1) for T_g")
        return self.leaf("A3case/nonintegral")

    # -- regular integral chain -----------------------------------------
    def regint(self, rs, lam, i, mu):
        m = rs.rank
        hyps = [("reflected_dominant", {"i": i, "mu": mu})]
        if m == 3 or i in (0, m - 2, m - 1):
            self.step("regintprop", rs, lam, hyps + [("index_abelian", {"i": i})], f"i = {i + 1}")
            self.step("abelianintegral", rs, lam, [("abelianintegral", {"i": i})], "",
                      "condition (2), hence (1)")
            return self.leaf("abelianintegral/regular-integral")
        a = mu[i]
        mu2 = tuple(a if j == i else Fraction(0) for j in range(m))
        lam2 = reflect(rs, i, mu2, dot=True)
        self.step("regintprop", rs, lam, hyps, f"i = {i + 1}, a = {a}, mu' = {fmt_weight(mu2)}")
        if lam2 != lam:
            self.step("translation", rs, lam, [("translation_pair", {"target": lam2})],
                      f"translate to {fmt_weight(lam2)}", "condition (1) transferred by translation")
        low = root_system("D", m - 1)
        rest = restrict_drop_first(lam2)
        mu_low = restrict_drop_first(mu2)
        self.step("inductioncase3", rs, lam2, [("inductioncase3", {"k": i}), ("reflected_dominant", {"i": i, "mu": mu2})],
                  f"k = {i}; recurse on {fmt_weight(rest)}", "condition (1) from the restricted weight")
        self.step("restrict", low, rest, [("restriction_of", {"source": lam2}),
                                          ("reflected_dominant", {"i": i - 1, "mu": mu_low})])
        return self.regint(low, rest, i - 1, mu_low)

    # -- entry -----------------------------------------------------------
    def run_d(self, rs, lam):
        if is_integral(lam) and is_regular(rs, lam):
            cert = reduce_regular_integral(rs, lam)
            pen = cert.penultimate
            i = cert.steps[-1].index
            self.step("integralreductionlem", rs, lam,
                      [("regular_integral", {}), ("not_dominant_integral", {}),
                       ("certificate_replays", {"word": cert.word[:-1], "output": pen, "rule": "regular"})],
                      f"word {[s + 1 for s in cert.word[:-1]]} to s_{i + 1} . {fmt_weight(cert.output)}")
            self.trace.verdict = "regular-integral chain"
            return self.regint(rs, pen, i, cert.output)
        cert = reduce_to_Sg(rs, lam)
        self.step("reducetoSg", rs, lam,
                  [("not_regular_integral", {}), ("not_dominant_integral", {}),
                   ("certificate_replays", {"word": cert.word, "output": cert.output, "rule": "S_g"})],
                  f"word {[s + 1 for s in cert.word]} to {fmt_weight(cert.output)}")
        self.trace.verdict = "S_g chain"
        self.step("nonregintcor", rs, cert.output, [("in_S_g", {})])
        return self.sg(rs, cert.output)


def trace_strategy(rs: RootSystem, lam) -> ProofTrace:
    lam = as_weight(lam, rs.rank)
    if not ((rs.family == "D" and rs.rank >= 3) or (rs.family == "A" and 1 <= rs.rank <= 3)):
        raise ValueError(f"unsupported rank/type {rs.label}")
    trace = ProofTrace(rs.family, rs.rank, lam)
    b = _Builder(trace)
    if is_dominant_integral(lam):
        b.step("finite-dimensional", rs, lam, [("dominant_integral", {})], "outside the theorem")
        trace.verdict = "finite-dimensional"
        b.leaf("finite-dimensional")
        return trace
    if rs.family == "A":
        trace.verdict = "regular-integral chain" if is_integral(lam) and is_regular(rs, lam) else "S_g chain"
        if rs.rank <= 2:
            b.step("A2case", rs, lam, [("A2case", {})], "", "condition (1)")
            b.leaf("A2case")
            return trace
        if _a3case(rs, lam):
            b.a3case(rs, lam)
            return trace
        d3 = root_system("D", 3)
        dl = _relabel(lam)
        b.step("relabel", d3, dl, [("relabel_of", {"source": lam})], "A3 read as D3")
        b.run_d(d3, dl)
        return trace
    b.run_d(rs, lam)
    return trace


def verify_trace(trace: ProofTrace) -> List[str]:
    """Recompute every hypothesis; returns descriptions of the failures."""
    failures = []
    if trace.verdict not in VERDICTS:
        failures.append(f"unknown verdict {trace.verdict!r}")
    if trace.leaf not in LEAVES:
        failures.append(f"unknown leaf {trace.leaf!r}")
    for n, s in enumerate(trace.steps):
        rs = root_system(s.family, s.rank)
        for name, args in s.hypotheses:
            try:
                ok = PREDICATES[name](rs, as_weight(s.weight, rs.rank), **args)
            except Exception as exc:  # a malformed record counts as a failure
                ok = False
                name = f"{name} ({exc})"
            if not ok:
                failures.append(f"step {n + 1} {s.result}: {name}")
    return failures


def run_verification_suite(config: Optional[dict] = None) -> dict:
    """Run the numbered verification checks; see hwcheck.suite."""
    from .suite import run_verification_suite as run

    return run(config)

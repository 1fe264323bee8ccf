"""Full verification suite: twelve numbered checks, each pass/fail with witnesses."""
from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, List, Optional

from .chevalley import adjoint_closure, build_chevalley, is_ideal_in, subalgebra, verify_chevalley_axioms
from .gradedsym import ebar_operator, verify_ebar
from .hwsearch import hw_prop_conditions, positive_control, singular_in_subspace
from .modules import (
    DepthExceeded,
    IrreducibleModule,
    a_basis_check,
    build_gvm,
    build_verma,
    kostant_partitions,
    weyl_completed_dimension,
    weyl_dim,
)
from .rootsys import build_root_system, is_connected, subsystem_positive
from .walpha import check_commutation, check_walpha_description
from .weights import (
    as_weight,
    classify,
    delta_lambda,
    fundamental,
    in_S_g,
    is_dominant_integral,
    is_integral,
    is_regular,
    phi_lambda,
)
from .weyl import (
    check_connected_components_lemma,
    check_orbit_lemma,
    connect_subsystem,
    missing_simple,
    reduce_regular_integral,
    reduce_to_Sg,
    reflect,
    replay,
    subsystem_image,
    subsystem_orbits,
)

VACUOUS = "vacuous at depth 0"
DEFAULTS = {"depth": None, "checks": None, "mutate_table": None, "seed": 0, "jobs": 1, "corpus": 500}

CHECK_NAMES = {
    "01": "root inventories",
    "02": "chevalley axioms",
    "03": "raising-lowering closed form",
    "04": "verma dimensions vs kostant partitions",
    "05": "irreducible dimensions vs weyl formula",
    "06": "W_alpha1 closed forms",
    "07": "singular vector absence",
    "08": "graded raising operators",
    "09": "commutation identities",
    "10": "nilradical structure",
    "11": "reduction procedures",
    "12": "tracer corpus",
}


@lru_cache(maxsize=None)
def _rs(family: str, rank: int):
    return build_root_system(family, rank)


@lru_cache(maxsize=None)
def _alg(family: str, rank: int):
    return build_chevalley(_rs(family, rank))


def _w(*xs):
    return tuple(Fraction(x) for x in xs)


# ----------------------------------------------------------------------------
# 01

def _expected_eps(family: str, m: int, name: str):
    """epsilon vector of a named root, from the standard realization."""
    n = m + 1 if family == "A" else m
    e = [0] * n

    def unit(i, s=1):
        e[i - 1] += s

    kind, idx = name[0], [int(x) for x in name[2:-1].split(",")]
    if family == "A":
        unit(idx[0])
        unit(idx[1] + 1, -1)
    elif kind == "a":
        i, j = idx
        if j < m:
            unit(i)
            unit(j + 1, -1)
        elif i == m:
            unit(m - 1)
            unit(m)
        else:
            unit(i)
            unit(m - 1)
    elif kind == "b":
        unit(idx[0])
        unit(m)
    else:
        unit(idx[0])
        unit(idx[1])
    return tuple(e)


def _brute_positive_eps(family: str, m: int):
    n = m + 1 if family == "A" else m
    out = set()
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i], v[j] = 1, -1
            out.add(tuple(v))
            if family == "D":
                v = [0] * n
                v[i], v[j] = 1, 1
                out.add(tuple(v))
    return out


def check_01(cfg) -> dict:
    rows = []
    for family, ranks, count in (("D", (3, 4, 5), lambda m: m * (m - 1)), ("A", (1, 2, 3), lambda m: m * (m + 1) // 2)):
        for m in ranks:
            rs = _rs(family, m)
            names = [r.name for r in rs.roots]
            eps = {r.eps for r in rs.roots}
            ok = (len(rs.roots) == count(m) and len(set(names)) == len(names)
                  and eps == _brute_positive_eps(family, m)
                  and all(_expected_eps(family, m, r.name) == r.eps for r in rs.roots))
            rows.append({"system": rs.label, "positive_roots": len(rs.roots), "expected": count(m), "ok": ok})
    bad = [r for r in rows if not r["ok"]]
    return {"passed": not bad, "details": rows, "witness": bad or None}


# ----------------------------------------------------------------------------
# 02

def check_02(cfg) -> dict:
    rows, witness = [], None
    for family, m in (("D", 4), ("D", 5), ("A", 3)):
        alg = _alg(family, m)
        mut = cfg.get("mutate_table")
        if mut:
            a, b = _mutation_pair(alg) if mut is True else tuple(mut)
            alg = alg.with_flipped_sign(a, b)
        rep = verify_chevalley_axioms(alg)
        ok = all(v["passed"] for v in rep.values())
        rows.append({"system": f"{family}{m}", "passed": ok,
                     "checked": {k: v["checked"] for k, v in rep.items()}})
        if not ok and witness is None:
            witness = {f"{family}{m}": {k: v["witness"] for k, v in rep.items() if not v["passed"]}}
    return {"passed": witness is None, "details": rows, "witness": witness}


def _mutation_pair(alg):
    """First pair of root vectors with a nonzero bracket."""
    for a in range(alg.dim):
        for b in range(a + 1, alg.dim):
            if alg.kind(a)[0] == "e" and alg.kind(b)[0] == "e" and alg.bracket_basis(a, b):
                return a, b
    raise ValueError("no nonzero bracket")


# ----------------------------------------------------------------------------
# 03

def check_03(cfg) -> dict:
    rng = random.Random(cfg["seed"])
    rs = _rs("D", 4)
    alg = _alg("D", 4)
    pool = [Fraction(x) for x in range(-3, 6)] + [Fraction(1, 2), Fraction(-5, 3)]
    rows, witness = [], None
    modules: Dict = {}
    for n in range(50):
        lam = tuple(rng.choice(pool) for _ in range(4))
        a = rng.randrange(4)
        i = rng.randint(1, 6)
        M = modules.get(lam) or modules.setdefault(lam, build_verma(alg, lam, 6))
        e, f = alg.e(rs.simple[a].index), alg.f(rs.simple[a].index)
        v = {M.top: Fraction(1)}
        powers = [v]
        for _ in range(i):
            powers.append(M.act_vec(f, powers[-1]))
        got = M.act_vec(e, powers[i])
        c = i * (1 + lam[a] - i)
        ok = got == {k: c * x for k, x in powers[i - 1].items() if c}
        # e^i f^i v = prod_k k(1+lambda-k) v, nonzero iff lambda(h_a) not in {0..i-1}
        w = powers[i]
        for _ in range(i):
            w = M.act_vec(e, w)
        nonzero = bool(w)
        predicted = lam[a] not in {Fraction(k) for k in range(i)}
        ok = ok and nonzero == predicted
        rows.append({"weight": [str(x) for x in lam], "alpha": a + 1, "i": i, "ok": ok})
        if not ok and witness is None:
            witness = rows[-1]
    return {"passed": witness is None, "details": {"instances": len(rows)}, "witness": witness}


# ----------------------------------------------------------------------------
# 04

def check_04(cfg) -> dict:
    rows, witness = [], None
    for family, m, d, lam in (("D", 4, 5, _w(0, 0, 0, 0)), ("D", 5, 4, _w("1/2", -1, 2, 0, "-1/3"))):
        rs = _rs(family, m)
        M = build_verma(_alg(family, m), lam, d)
        blocks = 0
        for nu in itertools.product(range(d + 1), repeat=m):
            if sum(nu) > d:
                continue
            blocks += 1
            if M.block_dim(nu) != kostant_partitions(rs, nu) and witness is None:
                witness = {"system": rs.label, "nu": nu, "module": M.block_dim(nu),
                           "kostant": kostant_partitions(rs, nu)}
        rows.append({"system": rs.label, "depth": d, "blocks": blocks, "dimension": M.dimension()})
    return {"passed": witness is None, "details": rows, "witness": witness}


# ----------------------------------------------------------------------------
# 05

def check_05(cfg) -> dict:
    rs, alg = _rs("D", 4), _alg("D", 4)
    rows, witness = [], None
    cases = [("L(0)", _w(0, 0, 0, 0))] + [(f"L(omega_{i + 1})", fundamental(rs, i)) for i in (0, 2, 3, 1)]
    for label, lam in cases:
        L = IrreducibleModule(alg, lam, 6)
        raw = L.dimension()
        try:
            completed = weyl_completed_dimension(L)
        except DepthExceeded:
            completed = None
        expected = weyl_dim(rs, lam)
        ok = completed == expected
        row = {"module": label, "depth": 6, "raw_window": raw, "completed": completed, "weyl": expected}
        if raw != expected:
            # the window holds fewer weights than the module: confirm with an exhaustive build
            full = IrreducibleModule(alg, lam, None).dimension()
            row["exhaustive"] = full
            ok = ok and full == expected
        rows.append(row)
        if not ok and witness is None:
            witness = row
    for k in (1, 2, 3):
        for a in range(4):
            r = a_basis_check(k, a, _alg("A", k))
            ok = r["dimension"] == comb(a + k, k) == r["monomials"] and r["independent"]
            rows.append({"module": f"A{k} L({a} omega_{k})", "dimension": r["dimension"],
                         "expected": comb(a + k, k), "independent": r["independent"]})
            if not ok and witness is None:
                witness = rows[-1]
    return {"passed": witness is None, "details": rows, "witness": witness}


# ----------------------------------------------------------------------------
# 06

WALPHA_INSTANCES = (
    ("inductioncor1", _w("1/2", 0, 0, "1/2")),
    ("inductioncor2", _w("1/2", "1/2", 0, 0)),
    ("inductioncorscalar", _w(0, 0, 0, -1)),
    ("inductioncor3", _w(1, -2, 1, 1)),
)


def check_06(cfg) -> dict:
    depths = (4, 7) if cfg.get("depth") is None else (cfg["depth"],)
    if depths == (0,):
        return {"status": VACUOUS, "details": [], "witness": None}
    rs, alg = _rs("D", 4), _alg("D", 4)
    rows, witness = [], None
    for name, lam in WALPHA_INSTANCES:
        for d in depths:
            gvm = build_gvm(alg, delta_lambda(rs, lam), lam, d)
            rep = check_walpha_description(gvm, d)
            names = [c["name"] for c in rep["corollaries"]]
            ok = name in names and rep["verdict"] == "holds"
            rows.append({"corollary": name, "weight": rep["weight"], "depth": d,
                         "W_dims": rep["W_dims"], "applicable": names, "verdict": rep["verdict"]})
            if not ok and witness is None:
                witness = {"row": rows[-1], "corollaries": rep["corollaries"]}
    return {"passed": witness is None, "details": rows, "witness": witness}


# ----------------------------------------------------------------------------
# 07

ABSENCE_INSTANCES = (
    ("hwcor1", _w("1/2", 0, 0, 0), ("g[1,2]",)),
    ("hwcor1", _w("1/2", "1/2", 0, 0), ("g[1,2]",)),
    ("hwcor1", _w(0, 0, 0, -1), ("g[1,2]",)),
    ("hwcor1", _w(1, -2, 1, 1), ("g[1,2]",)),
    ("hwcor2", _w("1/2", "-1/2", 0, 0), ("g[1,2]", "a[1,2]")),
    ("hwcor2", _w("1/2", 0, 0, "1/2"), ("g[1,2]", "a[1,2]", "a[1,3]")),
)

# (Delta_lambda, gammas, betas, expected, weight with that Delta_lambda for a brute-force search)
HW_PROP_EXAMPLES = (
    ((2, 3), ("g[1,2]",), ("a[2,2]",), True, _w("1/2", "1/2", 0, 0)),
    ((2, 3), ("g[1,2]", "a[1,2]"), ("a[1,2]", "a[2,2]"), True, _w("1/2", "-1/2", 0, 0)),
    ((2, 3), ("a[1,1]",), ("a[1,1]",), False, None),
)


def check_07(cfg) -> dict:
    depths = (5, 8) if cfg.get("depth") is None else (cfg["depth"],)
    rs, alg = _rs("D", 4), _alg("D", 4)
    rows, witness = [], None
    if depths != (0,):
        for name, lam, S in ABSENCE_INSTANCES:
            for d in depths:
                gvm = build_gvm(alg, delta_lambda(rs, lam), lam, d)
                rep = singular_in_subspace(gvm, S, d)
                rows.append({"result": name, "weight": [str(x) for x in lam], "generators": list(S),
                             "depth": d, "empty": rep.empty, "searched_dim": sum(rep.block_dims.values())})
                if not rep.empty and witness is None:
                    witness = rep.as_dict(gvm)
    controls = []
    for family, m in (("D", 4), ("A", 2)):
        r2 = _rs(family, m)
        for i in range(m):
            for a in range(4):
                lam = tuple(Fraction(a) if k == i else Fraction(1, 2) for k in range(m))
                gvm = build_verma(_alg(family, m), lam, a + 1)
                v = positive_control(gvm, r2.simple[i].index)
                nu = gvm.key_nu(next(iter(v))) if v else None
                ok = v is not None and gvm.weight_of_nu(nu) == reflect(r2, i, lam, dot=True)
                controls.append(ok)
                if not ok and witness is None:
                    witness = {"positive_control": r2.label, "alpha": i + 1, "a": a}
    consistency = []
    for delta, g, b, expected, lam in HW_PROP_EXAMPLES:
        got = hw_prop_conditions(rs, delta, g, b)
        if got != expected and witness is None:
            witness = {"hw_prop_conditions": [delta, g, b], "got": got}
        if got and lam is not None and depths != (0,):
            assert delta_lambda(rs, lam) == frozenset(delta)
            d = max(depths)
            gvm = build_gvm(alg, delta, lam, d)
            empty = singular_in_subspace(gvm, g, d).empty
            consistency.append(empty)
            if not empty and witness is None:
                witness = {"hw_prop_consistency": [str(x) for x in lam], "generators": list(g)}
    if depths == (0,):
        status = "fail" if witness else VACUOUS
        return {"status": status, "details": {"positive_controls": len(controls)}, "witness": witness}
    return {"passed": witness is None, "details": {"absence": rows, "positive_controls": len(controls),
                                                  "hw_prop_consistency": len(consistency)},
            "witness": witness}


# ----------------------------------------------------------------------------
# 08

def check_08(cfg) -> dict:
    rs, alg = _rs("D", 4), _alg("D", 4)
    levi = frozenset(range(1, 4))
    rows, witness = [], None
    for lam, d in ((_w("1/2", 0, 0, 0), 4), (_w("1/2", 1, 0, 0), 4)):
        gvm = build_gvm(alg, levi, lam, d)
        for r in rs.roots:
            rep = verify_ebar(gvm, r.index, d)
            rows.append({"weight": [str(x) for x in lam], "beta": r.name, "holds": rep.holds, "checked": rep.checked})
            if not rep.holds and witness is None:
                witness = rows[-1] | {"at": rep.witness}
    gvm = build_gvm(alg, levi, _w("1/2", 0, 0, 0), 4)
    mutations, undetected = 0, []
    for r in rs.roots:
        op = ebar_operator(gvm, r.index)
        for k, t in enumerate(op.terms):
            for value in (-t.coeff, t.coeff + 1):
                mutations += 1
                if verify_ebar(gvm, r.index, 4, op.with_coefficient(k, value)).holds:
                    undetected.append((r.name, k, str(value)))
    if undetected and witness is None:
        witness = {"undetected_mutations": undetected}
    return {"passed": witness is None, "details": {"checks": rows, "mutations": mutations}, "witness": witness}


# ----------------------------------------------------------------------------
# 09

def check_09(cfg) -> dict:
    rs, alg = _rs("D", 4), _alg("D", 4)
    rows, witness = [], None
    for a in (0, 1, 2):
        lam = reflect(rs, 0, fundamental(rs, 0, a), dot=True)
        L = IrreducibleModule(alg, lam, 5)
        for r in rs.roots:
            ok = check_commutation(alg, a, r.index, 5, L)
            rows.append({"a": a, "beta": r.name, "holds": ok})
            if not ok and witness is None:
                witness = rows[-1]
    return {"passed": witness is None, "details": {"instances": len(rows)}, "witness": witness}


# ----------------------------------------------------------------------------
# 10

def check_10(cfg) -> dict:
    rows, witness = [], None
    for m in (4, 5):
        rs, alg = _rs("D", m), _alg("D", m)
        I = set(range(1, m))
        n = subalgebra(alg, "n_I", I)
        pminus = subalgebra(alg, "p_minus_I", I)
        ideal = is_ideal_in(alg, n, pminus)
        levi = subalgebra(alg, "l_I", I)
        closures = {alg.name(b): adjoint_closure(alg, [{b: 1}], levi | n) for b in sorted(n)}
        ok = ideal and all(v == len(n) for v in closures.values())
        rows.append({"system": rs.label, "dim_n": len(n), "ideal": ideal,
                     "closures_full": all(v == len(n) for v in closures.values())})
        if not ok and witness is None:
            witness = {"system": rs.label, "ideal": ideal,
                       "short": {k: v for k, v in closures.items() if v != len(n)}}
    return {"passed": witness is None, "details": rows, "witness": witness}


# ----------------------------------------------------------------------------
# 11

def check_11(cfg) -> dict:
    rng = random.Random(cfg["seed"] + 11)
    rs = _rs("D", 4)
    pool = [Fraction(x) for x in range(-3, 4)] + [Fraction(1, 2), Fraction(-1, 2)]
    witness, counts = None, {"S_g": 0, "regular": 0, "skipped": 0}
    for _ in range(200):
        lam = tuple(rng.choice(pool) for _ in range(4))
        if is_dominant_integral(lam):
            counts["skipped"] += 1
            continue
        if is_integral(lam) and is_regular(rs, lam):
            cert = reduce_regular_integral(rs, lam)
            ok = (replay(rs, cert) and is_dominant_integral(cert.output)
                  and all(s.value < -1 for s in cert.steps))
            counts["regular"] += 1
        else:
            cert = reduce_to_Sg(rs, lam)
            ok = replay(rs, cert) and classify(rs, cert.output).in_S_g and in_S_g(rs, cert.output)
            counts["S_g"] += 1
        if not ok and witness is None:
            witness = cert.as_dict()
    cert = reduce_to_Sg(rs, _w(-3, 0, 0, 0))
    worked = cert.word == [0, 1] and cert.output == _w(0, 0, -1, -1) and replay(rs, cert)
    if not worked and witness is None:
        witness = {"worked_instance": cert.as_dict()}
    orbit_ok, orbit_checked = check_orbit_lemma(rs)
    seeds = [[r for r in subsystem_positive(rs, I)] for n in range(4) for I in itertools.combinations(range(4), n)]
    seeds += [phi_lambda(rs, lam) for lam in itertools.product([Fraction(0), Fraction(1, 2)], repeat=4)]
    subs = subsystem_orbits(rs, [s for s in seeds if s])
    cc_ok, cc_checked, cc_wit = check_connected_components_lemma(rs, subs)
    if not orbit_ok and witness is None:
        witness = {"orbit_lemma": False}
    if not cc_ok and witness is None:
        witness = {"connected_components_lemma": cc_wit}
    connected = 0
    for n in range(1, 4):
        for I in itertools.combinations(range(4), n):
            psi = subsystem_positive(rs, I)
            word = connect_subsystem(rs, psi)
            image = subsystem_image(rs, word, psi)
            rest = missing_simple(rs, image)
            ok = 0 in rest and is_connected(rs, rest)
            connected += ok
            if not ok and witness is None:
                witness = {"connect_subsystem": [i + 1 for i in I], "word": [i + 1 for i in word]}
    return {"passed": witness is None,
            "details": {"reductions": counts, "worked_instance": cert.as_dict(), "orbit_pairs": orbit_checked,
                        "subsystems": len(subs), "component_checks": cc_checked, "connected_subsystems": connected},
            "witness": witness}


# ----------------------------------------------------------------------------
# 12

LEAF_SEEDS = (
    ("D", 4, ("-2", "1", "-2", "1/2")),
    ("D", 3, ("3", "3", "-3")),
    ("A", 2, ("1/2", "1")),
    ("D", 6, ("-3", "1/2", "0", "3", "3", "-1")),
    ("A", 2, ("1", "1")),
    ("D", 6, ("2", "1/2", "1/2", "-2", "-3", "1")),
    ("D", 4, ("-1/2", "-3", "3", "2")),
    ("A", 3, ("1/2", "2", "1")),
    ("D", 4, ("0", "0", "-1", "-1")),
    ("D", 4, ("2", "-3", "2", "2")),
    ("D", 4, ("1", "1", "1", "1")),
)
CORPUS_SYSTEMS = (("D", 3), ("D", 4), ("D", 5), ("D", 6), ("A", 1), ("A", 2), ("A", 3))


def seeded_corpus(n: int = 500, seed: int = 0) -> List[tuple]:
    """Leaf seeds followed by random weights with entries in {-3..3} and +-1/2."""
    rng = random.Random(seed)
    pool = [Fraction(x) for x in range(-3, 4)] + [Fraction(1, 2), Fraction(-1, 2)]
    out = [(f, m, as_weight(lam, m)) for f, m, lam in LEAF_SEEDS]
    while len(out) < n:
        f, m = rng.choice(CORPUS_SYSTEMS)
        out.append((f, m, tuple(rng.choice(pool) for _ in range(m))))
    return out[:n]


def check_12(cfg) -> dict:
    from .tracer import LEAVES, trace_strategy, verify_trace

    hit, witness, total = set(), None, 0
    for f, m, lam in seeded_corpus(cfg.get("corpus", 500), cfg["seed"]):
        total += 1
        try:
            t = trace_strategy(_rs(f, m), lam)
            failures = verify_trace(t)
        except Exception as exc:
            failures = [f"error: {exc}"]
            t = None
        if t is not None:
            hit.add(t.leaf)
        if failures and witness is None:
            witness = {"system": f"{f}{m}", "weight": [str(x) for x in lam], "failures": failures}
    missing = [x for x in LEAVES if x not in hit]
    if missing and witness is None:
        witness = {"leaves_missed": missing}
    return {"passed": witness is None, "details": {"weights": total, "leaves_hit": sorted(hit)}, "witness": witness}


CHECKS: Dict[str, Callable[[dict], dict]] = {
    "01": check_01, "02": check_02, "03": check_03, "04": check_04, "05": check_05, "06": check_06,
    "07": check_07, "08": check_08, "09": check_09, "10": check_10, "11": check_11, "12": check_12,
}


def _run_one(cid: str, cfg: dict) -> dict:
    start = time.perf_counter()
    try:
        out = CHECKS[cid](cfg)
    except Exception as exc:
        out = {"passed": False, "details": None, "witness": f"{type(exc).__name__}: {exc}"}
    status = out.pop("status", None) or ("pass" if out.pop("passed") else "fail")
    out.pop("passed", None)
    return {"id": cid, "name": CHECK_NAMES[cid], "status": status, "seconds": round(time.perf_counter() - start, 3),
            **out}


def run_verification_suite(config: Optional[dict] = None) -> dict:
    """Run the selected checks; the report lists them sorted by id.

    config keys: depth (overrides the depths of the W_alpha1 and absence checks),
    checks (list of ids), mutate_table (True or a basis pair, negative control),
    seed, jobs (worker processes), corpus (tracer corpus size)."""
    cfg = dict(DEFAULTS)
    cfg.update(config or {})
    ids = sorted(CHECKS) if not cfg["checks"] else sorted(f"{int(c):02d}" for c in cfg["checks"])
    unknown = [c for c in ids if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown check ids {unknown}")
    jobs = int(cfg.get("jobs") or 1)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_one, ids, [cfg] * len(ids)))
    else:
        results = [_run_one(c, cfg) for c in ids]
    results.sort(key=lambda r: r["id"])
    ok = all(r["status"] != "fail" for r in results)
    return {"passed": ok, "exit_status": 0 if ok else 1, "checks": results}

"""Command line entry point: hwcheck <command> [options]."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional

from .chevalley import build_chevalley
from .gradedsym import ebar_operator, verify_ebar
from .hwsearch import singular_in_subspace
from .modules import build_gvm, build_irreducible, build_verma, contravariant_gram, gram_rank
from .rootsys import build_root_system
from .tracer import trace_strategy
from .walpha import check_walpha_description
from .weights import as_weight, classify, delta_lambda, fmt_weight
from .weyl import reduce_regular_integral, reduce_to_Sg

DEFAULT_DEPTHS = {"module": 6, "walpha": 4, "hwsearch": 5, "ebar": 4}


def read_config(path: str) -> Dict[str, str]:
    """key=value lines; blank lines and '#' comments are skipped."""
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{n}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--family", choices=["A", "D", "a", "d"], help="root system family (default D)")
    p.add_argument("--rank", type=int, help="rank (default 4, or the weight length)")
    p.add_argument("--depth", type=int, help="truncation depth")
    p.add_argument("--json", action="store_true", help="print JSON")
    p.add_argument("--config", help="key=value file with defaults")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hwcheck", parents=[common],
                                     description="Exact computations with type A/D highest-weight modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("roots", parents=[common], help="list positive roots")

    p = sub.add_parser("classify", parents=[common], help="classify a weight")
    p.add_argument("--weight", required=True)

    p = sub.add_parser("reduce", parents=[common], help="reduction certificate")
    p.add_argument("--weight", required=True)
    p.add_argument("--mode", choices=["sg", "regint"], default="sg")

    p = sub.add_parser("module", parents=[common], help="build a truncated module")
    p.add_argument("action", nargs="?", choices=["build"], default="build")
    p.add_argument("--kind", choices=["verma", "gvm", "irr"], default="verma")
    p.add_argument("--weight", required=True)
    p.add_argument("--levi", help="simple root indices (1-based) of the Levi; default Delta_lambda")
    p.add_argument("--gram", action="store_true", help="include contravariant Gram ranks")

    p = sub.add_parser("walpha", parents=[common], help="W_alpha1 layers against the closed forms")
    p.add_argument("--weight", required=True)

    p = sub.add_parser("hwsearch", parents=[common], help="singular vectors in U(n){f_gamma}V")
    p.add_argument("--weight", required=True)
    p.add_argument("--set", required=True, help="comma-separated root names, e.g. g[1,2],a[1,2]")

    p = sub.add_parser("ebar", parents=[common], help="graded raising operator")
    p.add_argument("--weight", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--verify", action="store_true", help="also check against the module action")

    p = sub.add_parser("trace", parents=[common], help="proof decision tree for a weight")
    p.add_argument("--weight", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--checks", help="comma-separated check ids")
    p.add_argument("--jobs", type=int)
    p.add_argument("--seed", type=int)
    return parser


def split_names(text: str) -> List[str]:
    """Split 'g[1,2],a[1,2]' on commas outside brackets."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur:
        out.append(cur)
    return [s.strip() for s in out if s.strip()]


class _Ctx:
    def __init__(self, args: argparse.Namespace):
        cfg = read_config(args.config) if getattr(args, "config", None) else {}
        self.cfg = cfg
        self.args = args
        self.json = getattr(args, "json", False) or cfg.get("json", "").lower() in ("1", "true", "yes")
        self.family = (getattr(args, "family", None) or cfg.get("family", "D")).upper()
        weight = getattr(args, "weight", None)
        self.weight = as_weight(weight) if weight else None
        rank = getattr(args, "rank", None) or cfg.get("rank")
        if rank is None:
            rank = len(self.weight) if self.weight else 4
        self.rank = int(rank)
        if self.weight is not None and len(self.weight) != self.rank:
            raise ValueError("weight length does not match --rank")
        self.rs = build_root_system(self.family, self.rank)

    def depth(self, command: str) -> int:
        d = getattr(self.args, "depth", None)
        if d is None:
            d = self.cfg.get(f"depth.{command}", self.cfg.get("depth", DEFAULT_DEPTHS.get(command, 6)))
        return int(d)

    def alg(self):
        return build_chevalley(self.rs)


def _emit(ctx: _Ctx, data, text: Optional[str] = None) -> None:
    if ctx.json or text is None:
        print(json.dumps(data, indent=2, default=str))
    else:
        print(text)


def cmd_roots(ctx: _Ctx) -> int:
    rows = [{"name": r.name, "coeffs": list(r.coeffs), "eps": list(r.eps), "height": r.height} for r in ctx.rs.roots]
    text = "\n".join(f"{r['name']:10} {r['coeffs']}  eps={r['eps']}" for r in rows)
    _emit(ctx, {"system": ctx.rs.label, "positive_roots": rows}, text)
    return 0


def cmd_classify(ctx: _Ctx) -> int:
    c = classify(ctx.rs, ctx.weight).as_dict()
    data = {"system": ctx.rs.label, "weight": [str(x) for x in ctx.weight],
            "delta_lambda": sorted(i + 1 for i in delta_lambda(ctx.rs, ctx.weight)), **c}
    text = f"{ctx.rs.label} {fmt_weight(ctx.weight)}\n" + "\n".join(f"  {k}: {v}" for k, v in data.items()
                                                                      if k not in ("system", "weight"))
    _emit(ctx, data, text)
    return 0


def cmd_reduce(ctx: _Ctx) -> int:
    f = reduce_to_Sg if ctx.args.mode == "sg" else reduce_regular_integral
    _emit(ctx, f(ctx.rs, ctx.weight).as_dict())
    return 0


def cmd_module(ctx: _Ctx) -> int:
    alg, d, kind = ctx.alg(), ctx.depth("module"), ctx.args.kind
    if kind == "verma":
        M = build_verma(alg, ctx.weight, d)
    elif kind == "gvm":
        levi = ([int(i) - 1 for i in ctx.args.levi.split(",") if i] if ctx.args.levi
                else delta_lambda(ctx.rs, ctx.weight))
        M = build_gvm(alg, levi, ctx.weight, d)
    else:
        M = build_irreducible(alg, ctx.weight, d)
    blocks = sorted(M.block_dims().items(), key=lambda kv: (sum(kv[0]), kv[0]))
    data = {"kind": kind, "system": ctx.rs.label, "weight": [str(x) for x in ctx.weight], "depth": d,
            "dimension": M.dimension(),
            "blocks": [{"nu": list(nu), "dim": n} for nu, n in blocks]}
    if ctx.args.gram and kind == "verma":
        for row in data["blocks"]:
            row["gram_rank"] = gram_rank(contravariant_gram(M, tuple(row["nu"])))
    text = f"{kind} {ctx.rs.label} {fmt_weight(ctx.weight)} depth {d}: dimension {M.dimension()}\n" + "\n".join(
        f"  nu={tuple(r['nu'])} dim={r['dim']}" + (f" gram_rank={r['gram_rank']}" if "gram_rank" in r else "")
        for r in data["blocks"])
    _emit(ctx, data, text)
    return 0


def _gvm(ctx: _Ctx, d: int):
    return build_gvm(ctx.alg(), delta_lambda(ctx.rs, ctx.weight), ctx.weight, d)


def cmd_walpha(ctx: _Ctx) -> int:
    d = ctx.depth("walpha")
    rep = check_walpha_description(_gvm(ctx, d), d)
    text = (f"W_alpha1 layer dims: {rep['W_dims']}\n"
            + "".join(f"{c['name']} {c['generators']}: {'holds' if c['holds'] else 'fails'}\n"
                      for c in rep["corollaries"])
            + f"verdict: {rep['verdict']}")
    _emit(ctx, rep, text)
    return 0 if rep["verdict"] != "fails" else 1


def cmd_hwsearch(ctx: _Ctx) -> int:
    d = ctx.depth("hwsearch")
    gvm = _gvm(ctx, d)
    rep = singular_in_subspace(gvm, split_names(ctx.args.set), d)
    out = rep.as_dict(gvm)
    text = (f"{out['searched']} in {out['module']}: "
            + ("no singular vectors" if rep.empty else f"singular vectors in {len(rep.witnesses)} blocks")
            + f" ({out['caveat']})")
    _emit(ctx, out, text)
    return 0


def cmd_ebar(ctx: _Ctx) -> int:
    d = ctx.depth("ebar")
    gvm = _gvm(ctx, d)
    op = ebar_operator(gvm, ctx.args.beta)
    data = {"beta": ctx.rs.roots[op.beta].name, "terms": op.describe()}
    if ctx.args.verify:
        chk = verify_ebar(gvm, op.beta, d, op)
        data["verified"] = {"holds": chk.holds, "checked": chk.checked, "witness": chk.witness}
    text = "\n".join(data["terms"]) or "0"
    if "verified" in data:
        text += f"\nverified to degree {d}: {data['verified']['holds']}"
    _emit(ctx, data, text)
    return 0


def cmd_trace(ctx: _Ctx) -> int:
    t = trace_strategy(ctx.rs, ctx.weight)
    _emit(ctx, t.as_dict(), t.render())
    return 0


def cmd_verify(ctx: _Ctx) -> int:
    from .suite import run_verification_suite

    cfg = {}
    for key in ("seed", "jobs", "corpus"):
        v = getattr(ctx.args, key, None)
        if v is None and key in ctx.cfg:
            v = int(ctx.cfg[key])
        if v is not None:
            cfg[key] = v
    checks = getattr(ctx.args, "checks", None) or ctx.cfg.get("checks")
    if checks:
        cfg["checks"] = [c for c in checks.split(",") if c.strip()]
    d = getattr(ctx.args, "depth", None)
    if d is None and "depth" in ctx.cfg:
        d = int(ctx.cfg["depth"])
    if d is not None:
        cfg["depth"] = d
    report = run_verification_suite(cfg)
    text = "\n".join(f"[{c['id']}] {c['status']:<20} {c['name']} ({c['seconds']} s)"
                     + ("" if c["witness"] is None else f"\n      witness: {json.dumps(c['witness'], default=str)}")
                     for c in report["checks"])
    _emit(ctx, report, text + f"\noverall: {'pass' if report['passed'] else 'fail'}")
    return report["exit_status"]


COMMANDS = {
    "roots": cmd_roots, "classify": cmd_classify, "reduce": cmd_reduce, "module": cmd_module,
    "walpha": cmd_walpha, "hwsearch": cmd_hwsearch, "ebar": cmd_ebar, "trace": cmd_trace, "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = _Ctx(args)
        return COMMANDS[args.command](ctx)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

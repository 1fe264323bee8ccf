"""Weights in fundamental coordinates and the predicates used by the case analysis."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from numbers import Rational
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from .rootsys import Root, RootSystem, is_connected, pairing, subsystem_positive

Weight = Tuple[Fraction, ...]


def as_weight(values, rank: int = None) -> Weight:
    """Coerce ints, Fractions or 'p/q' strings to a Weight; floats are refused."""
    if isinstance(values, str):
        values = [v for v in values.replace(" ", "").split(",") if v]
    out = []
    for v in values:
        if isinstance(v, bool):
            raise TypeError("booleans are not weights")
        if isinstance(v, (int, Rational)):
            out.append(Fraction(v))
        elif isinstance(v, str):
            out.append(Fraction(v))
        else:
            raise TypeError(f"weights must be exact rationals, got {v!r}")
    if rank is not None and len(out) != rank:
        raise ValueError("dimension mismatch")
    return tuple(out)


def fmt_weight(lam: Sequence) -> str:
    return "(" + ",".join(str(Fraction(x)) for x in lam) + ")"


def rho(rs: RootSystem) -> Weight:
    return (Fraction(1),) * rs.rank


def fundamental(rs: RootSystem, i: int, scale=1) -> Weight:
    return tuple(Fraction(scale) if j == i else Fraction(0) for j in range(rs.rank))


def shifted(lam: Sequence) -> Weight:
    """lam + rho."""
    return tuple(Fraction(x) + 1 for x in lam)


def is_nat(x) -> bool:
    x = Fraction(x)
    return x.denominator == 1 and x >= 0


def is_int(x) -> bool:
    return Fraction(x).denominator == 1


def is_neg_int(x) -> bool:
    x = Fraction(x)
    return x.denominator == 1 and x < 0


def sub(a: Sequence, b: Sequence) -> Weight:
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> Weight:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b))


def delta_lambda(rs: RootSystem, lam: Sequence) -> FrozenSet[int]:
    lam = as_weight(lam, rs.rank)
    return frozenset(i for i, x in enumerate(lam) if is_nat(x))


def nonintegral_simple(rs: RootSystem, lam: Sequence) -> FrozenSet[int]:
    """Delta minus Phi_lambda: simple roots with non-integral lambda value."""
    lam = as_weight(lam, rs.rank)
    return frozenset(i for i, x in enumerate(lam) if not is_int(x))


def phi_lambda(rs: RootSystem, lam: Sequence) -> List[Root]:
    lr = shifted(as_weight(lam, rs.rank))
    return [r for r in rs.roots if is_int(pairing(lr, r))]


@dataclass(frozen=True)
class Facet:
    positive: FrozenSet[int]
    zero: FrozenSet[int]
    negative: FrozenSet[int]


def facet_of(rs: RootSystem, lam: Sequence) -> Facet:
    lr = shifted(as_weight(lam, rs.rank))
    pos, zero, neg = set(), set(), set()
    for r in rs.roots:
        v = pairing(lr, r)
        if not is_int(v):
            continue
        (pos if v > 0 else zero if v == 0 else neg).add(r.index)
    return Facet(frozenset(pos), frozenset(zero), frozenset(neg))


def in_upper_closure(rs: RootSystem, lam: Sequence, facet: Facet) -> bool:
    f = facet_of(rs, lam)
    return f.positive == facet.positive and f.negative <= facet.negative


def same_facet(rs: RootSystem, lam: Sequence, mu: Sequence) -> bool:
    return facet_of(rs, lam) == facet_of(rs, mu)


def is_dominant_integral(lam: Sequence) -> bool:
    return all(is_nat(x) for x in lam)


def is_integral(lam: Sequence) -> bool:
    return all(is_int(x) for x in lam)


def is_regular(rs: RootSystem, lam: Sequence) -> bool:
    return not facet_of(rs, lam).zero


def is_scalar(rs: RootSystem, lam: Sequence, subset: Iterable[int] = None) -> bool:
    """lambda vanishes on h_alpha for alpha in the subset (default Delta_lambda)."""
    lam = as_weight(lam, rs.rank)
    subset = delta_lambda(rs, lam) if subset is None else subset
    return all(lam[i] == 0 for i in subset)


def in_S_g(rs: RootSystem, lam: Sequence) -> bool:
    lam = as_weight(lam, rs.rank)
    if is_dominant_integral(lam):
        return False
    bad = nonintegral_simple(rs, lam)
    if bad and not (0 in bad and is_connected(rs, bad)):
        return False
    return all(not is_neg_int(x + 1) for x in lam)


def in_T_g(rs: RootSystem, lam: Sequence) -> bool:
    lam = as_weight(lam, rs.rank)
    if len(delta_lambda(rs, lam)) == rs.rank:
        return False
    phi = {r.index for r in phi_lambda(rs, lam)}
    I = {i for i in range(rs.rank) if rs.simple[i].index in phi}
    if phi != {r.index for r in subsystem_positive(rs, I)}:
        return False
    return all(lam[i] + 1 >= 0 for i in I)


@dataclass(frozen=True)
class Classification:
    dominant_integral: bool
    integral: bool
    regular: bool
    scalar_gvm: bool
    in_S_g: bool
    in_T_g: bool

    def as_dict(self) -> dict:
        return asdict(self)


def classify(rs: RootSystem, lam: Sequence) -> Classification:
    lam = as_weight(lam, rs.rank)
    return Classification(
        dominant_integral=is_dominant_integral(lam),
        integral=is_integral(lam),
        regular=is_regular(rs, lam),
        scalar_gvm=is_scalar(rs, lam),
        in_S_g=in_S_g(rs, lam) if rs.family == "D" else False,
        in_T_g=in_T_g(rs, lam),
    )


@dataclass(frozen=True)
class TranslationHypotheses:
    same_facet_shift: bool  # (a)
    abelian_wall: bool  # (b)
    upper_closure_shift: bool  # (c)

    def as_dict(self) -> dict:
        return {"a": self.same_facet_shift, "b": self.abelian_wall, "c": self.upper_closure_shift}


def translation_hypotheses(rs: RootSystem, lam: Sequence, mu: Sequence) -> TranslationHypotheses:
    lam = as_weight(lam, rs.rank)
    mu = as_weight(mu, rs.rank)
    diff_dom = is_dominant_integral(sub(lam, mu))
    a = diff_dom and same_facet(rs, lam, mu)
    all_pos = {r.index for r in rs.roots}
    first = rs.simple[0].index
    b = (
        is_integral(lam)
        and facet_of(rs, lam).positive == all_pos - {first}
        and mu == fundamental(rs, 0, -1)
        and all(r.coeffs[0] <= 1 for r in rs.roots)
    )
    c = diff_dom and in_upper_closure(rs, lam, facet_of(rs, mu))
    return TranslationHypotheses(a, b, c)

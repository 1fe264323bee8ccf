"""Exact computations with highest-weight modules for simple Lie algebras of types A and D."""
from .chevalley import build_chevalley, verify_chevalley_axioms
from .modules import build_gvm, build_irreducible, build_verma
from .rootsys import build_root_system
from .tracer import run_verification_suite, trace_strategy, verify_trace
from .weights import classify
from .weyl import reduce_regular_integral, reduce_to_Sg

__all__ = [
    "build_chevalley",
    "build_gvm",
    "build_irreducible",
    "build_root_system",
    "build_verma",
    "classify",
    "reduce_regular_integral",
    "reduce_to_Sg",
    "run_verification_suite",
    "trace_strategy",
    "verify_chevalley_axioms",
    "verify_trace",
]

"""Relative dependency pair problems: terms, processors, a bounded chain oracle and a proof engine."""

from .errors import (
    InvalidPositionError,
    MalformedRuleError,
    MarkPlacementError,
    OverlapError,
    ParseError,
    ReldpError,
)
from .oracle import (
    Bounds,
    ChainStep,
    ChainWitness,
    Minimality,
    OracleResult,
    RewriteStep,
    Status,
    Verdict,
    bounded_finiteness,
    find_witness,
    verify_witness,
)
from .parsing import TrsDocument, load, parse_rdp, parse_trs, print_rdp, print_trs
from .problem import ClassicDpp, RelativeDpp, embed, forget, initial, is_trivially_finite, make
from .proof import (
    BASIC_STRATEGY,
    DEFAULT_STRATEGY,
    Outcome,
    ProofNode,
    Strategy,
    Tactic,
    dump_proof,
    load_proof,
    prove,
    replay,
    split_workflow,
)
from .terms import App, Symbol, Term, Var, fun
from .trs import Rule, Trs, dependency_pairs

__all__ = [
    "App",
    "BASIC_STRATEGY",
    "Bounds",
    "ChainStep",
    "ChainWitness",
    "ClassicDpp",
    "DEFAULT_STRATEGY",
    "InvalidPositionError",
    "MalformedRuleError",
    "MarkPlacementError",
    "Minimality",
    "OracleResult",
    "Outcome",
    "OverlapError",
    "ParseError",
    "ProofNode",
    "RelativeDpp",
    "ReldpError",
    "RewriteStep",
    "Rule",
    "Status",
    "Strategy",
    "Symbol",
    "Tactic",
    "Term",
    "Trs",
    "TrsDocument",
    "Var",
    "Verdict",
    "bounded_finiteness",
    "dependency_pairs",
    "dump_proof",
    "embed",
    "find_witness",
    "forget",
    "fun",
    "initial",
    "is_trivially_finite",
    "load",
    "load_proof",
    "make",
    "parse_rdp",
    "parse_trs",
    "print_rdp",
    "print_trs",
    "prove",
    "replay",
    "split_workflow",
    "verify_witness",
]

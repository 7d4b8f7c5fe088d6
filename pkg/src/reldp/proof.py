"""Strategy-driven proof search and independent replay of proof trees."""

from __future__ import annotations

import enum
import itertools
import json
import time
from collections.abc import Iterable
from dataclasses import dataclass, field, replace

from .oracle import (
    Bounds,
    ChainStep,
    ChainWitness,
    RewriteStep,
    Status,
    Verdict,
    bounded_finiteness,
    verify_witness,
)
from .problem import RelativeDpp, is_trivially_finite
from .processors import (
    FiniteModel,
    LinearInterpretation,
    Monotonicity,
    ProcessorError,
    ProcessorResult,
    dependency_graph,
    first_violation,
    iter_models,
    model_violation,
    reduction_pair,
    search_reduction_pair,
    semantic_labeling,
    split,
    split_by_index,
    trivial,
    unlabel,
    unlabel_rule,
)
from .serialize import (
    FormatError,
    dumps,
    params_from_json,
    params_to_json,
    problem_from_json,
    problem_to_json,
    witness_from_json,
    witness_to_json,
)


class Outcome(enum.Enum):
    FINITE = "Finite"
    NOT_FINITE = "NotFinite"
    OPEN = "Open"


@dataclass(frozen=True)
class ProofNode:
    """A problem together with how it was handled.

    Exactly one of: a processor application with one child per successor, a
    non-finiteness witness, or nothing (open).
    """

    problem: RelativeDpp
    processor: str | None = None
    params: dict = field(default_factory=dict, hash=False)
    children: tuple[ProofNode, ...] = ()
    witness: ChainWitness | None = None

    @property
    def outcome(self) -> Outcome:
        if self.witness is not None:
            return Outcome.NOT_FINITE
        if self.processor is not None and all(
            c.outcome is Outcome.FINITE for c in self.children
        ):
            return Outcome.FINITE
        return Outcome.OPEN

    def walk(self, path: str = "root"):
        yield path, self
        for i, c in enumerate(self.children):
            yield from c.walk(f"{path}.{i}")

    def leaves(self):
        return [n for _, n in self.walk() if not n.children]

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}{self.problem}"]
        if self.witness is not None:
            lines.append(f"{pad}  NotFinite: loop through pairs {self.witness.pair_sequence()}")
        elif self.processor is None:
            lines.append(f"{pad}  Open")
        else:
            lines.append(f"{pad}  by {self.processor} -> {self.outcome.value}")
            for c in self.children:
                lines.append(c.render(indent + 2))
        return "\n".join(lines)


@dataclass(frozen=True)
class Tactic:
    name: str
    bound: int = 2
    mode: Monotonicity = Monotonicity.WEAK
    carrier_size: int = 2

    def __post_init__(self):
        if self.name not in TACTICS:
            raise ValueError(f"unknown tactic {self.name!r}")
        object.__setattr__(self, "mode", Monotonicity(self.mode))

    def to_json(self) -> dict:
        out: dict = {"name": self.name}
        if self.name == "reduction_pair":
            out.update(bound=self.bound, mode=self.mode.value)
        elif self.name in ("semantic_labeling", "split_workflow"):
            out.update(carrier_size=self.carrier_size)
        return out


TACTICS = (
    "trivial",
    "dependency_graph",
    "reduction_pair",
    "semantic_labeling",
    "split_workflow",
)
_BASIC = ("trivial", "dependency_graph", "reduction_pair")


@dataclass(frozen=True)
class Strategy:
    tactics: tuple[Tactic, ...]
    max_depth: int = 64
    timeout: float | None = None
    oracle: Bounds | None = Bounds(4, 5, 50)
    model_attempts: int = 16
    max_candidates: int | None = 1 << 18

    def __post_init__(self):
        object.__setattr__(self, "tactics", tuple(self.tactics))
        if not self.tactics:
            raise ValueError("a strategy needs at least one tactic")
        if self.max_depth <= 0 or (self.timeout is not None and self.timeout <= 0):
            raise ValueError("limits must be positive")

    def only(self, names: Iterable[str]) -> Strategy:
        names = set(names)
        return replace(self, tactics=tuple(t for t in self.tactics if t.name in names))

    def without(self, names: Iterable[str]) -> Strategy:
        names = set(names)
        return replace(self, tactics=tuple(t for t in self.tactics if t.name not in names))

    @classmethod
    def from_json(cls, j: dict) -> Strategy:
        tactics = []
        for t in j["tactics"]:
            t = dict(t)
            tactics.append(Tactic(t.pop("name"), **t))
        oracle = j.get("oracle", [4, 5, 50])
        return cls(
            tuple(tactics),
            max_depth=j.get("max_depth", 64),
            timeout=j.get("timeout"),
            oracle=Bounds(*oracle) if oracle else None,
            model_attempts=j.get("model_attempts", 16),
            max_candidates=j.get("max_candidates", 1 << 18),
        )

    def to_json(self) -> dict:
        o = self.oracle
        return {
            "tactics": [t.to_json() for t in self.tactics],
            "max_depth": self.max_depth,
            "timeout": self.timeout,
            "oracle": [o.max_steps, o.max_term_depth, o.rewrite_budget] if o else None,
            "model_attempts": self.model_attempts,
            "max_candidates": self.max_candidates,
        }


DEFAULT_STRATEGY = Strategy(
    (
        Tactic("trivial"),
        Tactic("dependency_graph"),
        Tactic("reduction_pair", 2, Monotonicity.WEAK),
        Tactic("reduction_pair", 2, Monotonicity.STRICT),
        Tactic("semantic_labeling", carrier_size=2),
        Tactic("split_workflow", carrier_size=2),
    )
)
BASIC_STRATEGY = DEFAULT_STRATEGY.only(_BASIC)
STRATEGIES = {"default": DEFAULT_STRATEGY, "basic": BASIC_STRATEGY}


def is_labeled(d: RelativeDpp) -> bool:
    return any(f.label for f in d.signature())


def _candidate_models(d: RelativeDpp, size: int, attempts: int):
    """Models worth labeling with: constant models only rename symbols."""
    found = (m for m in iter_models(d, size) if not m.is_constant())
    return itertools.islice(found, attempts)


class _Prover:
    def __init__(self, strategy: Strategy, deadline: float | None):
        self.strategy = strategy
        self.deadline = deadline

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def sub(self, strategy: Strategy) -> _Prover:
        return _Prover(strategy, self.deadline)

    def solve(self, d: RelativeDpp, depth: int = 0) -> ProofNode:
        if self.expired() or depth > self.strategy.max_depth:
            return ProofNode(d)
        for tactic in self.strategy.tactics:
            node = self.attempt(tactic, d, depth)
            if node is not None:
                return _lift_counterexample(node)
        if self.strategy.oracle is not None and not self.expired():
            r = bounded_finiteness(d, self.strategy.oracle)
            if r.status is Status.NOT_FINITE:
                return ProofNode(d, witness=r.witness)
        return ProofNode(d)

    def expand(self, d: RelativeDpp, result: ProcessorResult, depth: int) -> ProofNode:
        children = tuple(self.solve(e, depth + 1) for e in result.successors)
        return ProofNode(d, result.processor, result.params, children)

    def attempt(self, tactic: Tactic, d: RelativeDpp, depth: int) -> ProofNode | None:
        name = tactic.name
        if name == "trivial":
            r = trivial(d)
            return None if r is None else ProofNode(d, r.processor, r.params)
        if name == "dependency_graph":
            r = dependency_graph(d)
            return self.expand(d, r, depth) if r.made_progress(d) else None
        if name == "reduction_pair":
            found = search_reduction_pair(
                d, tactic.bound, tactic.mode, max_candidates=self.strategy.max_candidates
            )
            return None if found is None else self.expand(d, found[1], depth)
        if is_labeled(d):
            return None
        if name == "semantic_labeling":
            # only a finite labeled proof is kept, so the oracle is not needed inside
            inner = self.sub(
                replace(self.strategy.without(["semantic_labeling", "split_workflow"]), oracle=None)
            )
            for m in _candidate_models(d, tactic.carrier_size, self.strategy.model_attempts):
                if self.expired():
                    return None
                r = semantic_labeling(d, m)
                if r is None:
                    continue
                node = inner.expand(d, r, depth)
                if node.outcome is Outcome.FINITE:
                    return node
            return None
        if name == "split_workflow":
            if not d.is_classic():
                return None
            return self.workflow(d, depth, tactic.carrier_size, None, degenerate=False)
        raise AssertionError(name)

    def explore(self, labeled: RelativeDpp) -> ProofNode:
        s = self.strategy.only(_BASIC)
        return _Prover(replace(s, oracle=None), self.deadline).solve(labeled)

    def workflow(self, d, depth, carrier_size, model, degenerate=True) -> ProofNode | None:
        models = [model] if model is not None else _candidate_models(
            d, carrier_size, self.strategy.model_attempts
        )
        basic = self.sub(replace(self.strategy.only(_BASIC), oracle=None))
        for m in models:
            if self.expired():
                break
            lab = semantic_labeling(d, m)
            if lab is None:
                continue
            delete_pairs, delete_rules = removable_elements(d, self.explore(lab.successors[0]))
            if not delete_pairs and not delete_rules:
                continue
            sp = split(d, delete_pairs, delete_rules)
            first, second = sp.successors
            lab_first = semantic_labeling(first, m)
            first_node = basic.expand(first, lab_first, depth + 1)
            if first_node.outcome is not Outcome.FINITE:
                continue
            rest = self.sub(self.strategy.without(["split_workflow"]) if second.same_as(d) else self.strategy)
            second_node = rest.solve(second, depth + 1)
            return ProofNode(d, sp.processor, sp.params, (first_node, second_node))
        if not degenerate:
            return None
        sp = split(d, (), ())
        first, second = sp.successors
        first_node = ProofNode(first, "trivial")
        second_node = self.sub(self.strategy.without(["split_workflow"])).solve(second, depth + 1)
        return ProofNode(d, sp.processor, sp.params, (first_node, second_node))


def removable_elements(d: RelativeDpp, explored: ProofNode):
    """Pairs and rules of ``d`` none of whose labeled variants survive in an open leaf."""
    alive_pairs, alive_rules = set(), set()
    for leaf in explored.leaves():
        if leaf.outcome is Outcome.FINITE:
            continue
        alive_pairs |= {unlabel_rule(p) for p in leaf.problem.pairs}
        alive_rules |= {unlabel_rule(r) for r in leaf.problem.rules}
    return (
        [p for p in d.pairs if p not in alive_pairs],
        [r for r in d.rules if r not in alive_rules],
    )


def _unlabel_subst(sigma):
    return {x: unlabel(t) for x, t in sigma.items()}


def transfer_witness(
    parent: RelativeDpp, child: RelativeDpp, w: ChainWitness, unlabeled: bool = False
) -> ChainWitness | None:
    """Re-index a child's witness against the parent problem, if it is a witness there."""
    pmap = {p: i for i, p in enumerate(parent.pairs)}
    rmap = {r: i for i, r in enumerate(parent.rules)}
    fix_rule = unlabel_rule if unlabeled else (lambda r: r)
    fix_subst = _unlabel_subst if unlabeled else dict
    steps = []
    for s in w.steps:
        pi = pmap.get(fix_rule(child.pairs[s.pair_index]))
        if pi is None:
            return None
        conn = []
        for r in s.connection:
            ri = rmap.get(fix_rule(child.rules[r.rule_index]))
            if ri is None:
                return None
            conn.append(RewriteStep(ri, r.position, parent.rule_is_strict(ri)))
        steps.append(ChainStep(pi, parent.pair_is_strict(pi), fix_subst(s.sigma), tuple(conn)))
    out = ChainWitness(tuple(steps), fix_subst(w.theta), w.minimality, w.sn_budget)
    return out if verify_witness(parent, out) else None


def _lift_counterexample(node: ProofNode) -> ProofNode:
    for c in node.children:
        if c.witness is not None:
            w = transfer_witness(
                node.problem, c.problem, c.witness, node.processor == "semantic_labeling"
            )
            if w is not None:
                return ProofNode(node.problem, witness=w)
    return node


def _deadline(strategy: Strategy):
    return None if strategy.timeout is None else time.monotonic() + strategy.timeout


def prove(d: RelativeDpp, strategy: Strategy = DEFAULT_STRATEGY) -> ProofNode:
    return _Prover(strategy, _deadline(strategy)).solve(d)


def split_workflow(
    d: RelativeDpp,
    strategy: Strategy = DEFAULT_STRATEGY,
    model: FiniteModel | None = None,
    carrier_size: int = 2,
) -> ProofNode:
    """Split off what labeling can delete, without ever unlabeling.

    A labeled copy of ``d`` is explored with the basic processors; the pairs
    and rules whose labeled variants all disappear form the delete set.  The
    split's first successor is then proved by labeling it with the same model
    and replaying the basic processors; the second successor, which is ``d``
    without the deleted elements, is handed to the rest of the strategy.  If
    nothing can be deleted the split is degenerate: the first successor is
    trivially finite and the second is ``d`` itself.
    """
    if not d.is_classic():
        raise ValueError("split workflow expects a problem without weak pairs and strict rules")
    prover = _Prover(strategy, _deadline(strategy))
    return prover.workflow(d, 0, carrier_size, model, degenerate=True)


# replay


def _same_problems(a, b) -> bool:
    return len(a) == len(b) and all(x.same_as(y) for x, y in zip(a, b))


def _replay_node(node: ProofNode, path: str) -> Verdict:
    d = node.problem
    if node.witness is not None:
        if node.processor is not None or node.children:
            return Verdict(False, f"{path}: witness node must not carry a processor")
        v = verify_witness(d, node.witness)
        return v if v else Verdict(False, f"{path}: witness rejected: {v.diagnostic}")
    name = node.processor
    if name is None:
        return Verdict(True) if not node.children else Verdict(False, f"{path}: open node with children")
    p = node.params
    kids = [c.problem for c in node.children]
    try:
        if name == "trivial":
            if not is_trivially_finite(d) or node.children:
                return Verdict(False, f"{path}: problem is not trivially finite")
            return Verdict(True)
        if name == "split":
            r = split_by_index(d, p["delete_pairs"], p["delete_rules"], literal=p.get("literal", False))
            if not _same_problems(r.successors, kids):
                return Verdict(False, f"{path}: split bookkeeping does not match the children")
            return Verdict(True)
        if name == "dependency_graph":
            r = dependency_graph(d)
            if r.params["sccs"] != p.get("sccs"):
                return Verdict(False, f"{path}: recorded SCCs {p.get('sccs')} differ from {r.params['sccs']}")
            if not _same_problems(r.successors, kids):
                return Verdict(False, f"{path}: SCC successors do not match the children")
            return Verdict(True)
        if name == "reduction_pair":
            interp = p["interpretation"]
            if not isinstance(interp, LinearInterpretation):
                return Verdict(False, f"{path}: missing interpretation")
            r = reduction_pair(d, interp)
            if r is None:
                return Verdict(False, f"{path}: violated inequality {first_violation(d, interp)}")
            if not _same_problems(r.successors, kids):
                return Verdict(False, f"{path}: reduction pair removes a different set of elements")
            return Verdict(True)
        if name == "semantic_labeling":
            m = p["model"]
            if not isinstance(m, FiniteModel):
                return Verdict(False, f"{path}: missing model")
            r = semantic_labeling(d, m)
            if r is None:
                bad = next(
                    (e for e in (*d.pairs, *d.rules) if any(f not in m.tables for f in e.symbols())
                     or model_violation(e, m) is not None),
                    None,
                )
                return Verdict(False, f"{path}: model condition fails for {bad}")
            if not _same_problems(r.successors, kids):
                return Verdict(False, f"{path}: labeled problem differs from the child")
            return Verdict(True)
    except (KeyError, TypeError, ProcessorError, IndexError) as e:
        return Verdict(False, f"{path}: malformed {name} justification: {e}")
    return Verdict(False, f"{path}: unknown processor {name!r}")


def replay(root: ProofNode) -> Verdict:
    for path, node in root.walk():
        v = _replay_node(node, path)
        if not v:
            return v
    return Verdict(True)


# JSON


def proof_to_json(node: ProofNode) -> dict:
    out = {
        "problem": problem_to_json(node.problem),
        "processor": node.processor,
        "parameters": params_to_json(node.processor, node.params),
        "children": [proof_to_json(c) for c in node.children],
        "outcome": node.outcome.value,
    }
    if node.witness is not None:
        out["witness"] = witness_to_json(node.witness)
    return out


def proof_from_json(j: dict) -> ProofNode:
    try:
        node = ProofNode(
            problem_from_json(j["problem"]),
            j.get("processor"),
            params_from_json(j.get("processor"), j.get("parameters") or {}),
            tuple(proof_from_json(c) for c in j.get("children", [])),
            witness_from_json(j["witness"]) if j.get("witness") is not None else None,
        )
    except (KeyError, TypeError, AttributeError) as e:
        raise FormatError(f"bad proof node: {e}") from None
    claimed = j.get("outcome")
    if claimed is not None and claimed != node.outcome.value:
        raise FormatError(f"node claims outcome {claimed} but its content gives {node.outcome.value}")
    return node


def dump_proof(node: ProofNode) -> str:
    return dumps(proof_to_json(node))


def load_proof(text: str) -> ProofNode:
    try:
        return proof_from_json(json.loads(text))
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from None

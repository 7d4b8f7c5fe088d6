"""Bounded chain search for relative DP problems.

This module is a direct, executable reading of what a (minimal) chain is,
used as an oracle against which the processors are tested.  It never proves
finiteness by search alone; it certifies non-finiteness by loops.

A loop is a chain fragment

    s_1 sigma_1 -> t_1 sigma_1 ->* s_2 sigma_2 -> ... -> t_n sigma_n ->* s_1 sigma_1 theta

Replaying the fragment with every substitution composed with theta yields the
next iteration, so the fragment repeats forever.  It is an infinite chain of
the problem when the body applies a strict pair or a strict rule at least
once.

Search space at bounds (max_steps, max_term_depth, rewrite_budget):

* start terms are ``s_i sigma`` where sigma sends each variable either to
  itself or to a ground term of depth <= ``seed_depth`` over the unmarked
  symbols of the problem;
* every term along the fragment has depth <= ``max_term_depth``;
* each connection ``t_i sigma_i ->* s_{i+1} sigma_{i+1}`` rewrites with
  R u R_w at arbitrary positions and ends in one of the first
  ``rewrite_budget`` states of a breadth-first exploration from
  ``t_i sigma_i`` (a state is a term plus whether a strict rule was used);
* the fragment applies at most ``max_steps`` pairs;
* the next pair's substitution is obtained by matching its left-hand side
  against a reachable term, so no narrowing is performed.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from .graphs import nontrivial_sccs
from .problem import RelativeDpp, is_trivially_finite
from .terms import (
    SN,
    App,
    Symbol,
    Term,
    Var,
    apply,
    bounded_sn,
    compose,
    depth,
    match,
    normalize,
    rewrite_at,
    successors,
    variables,
)


class Verdict(NamedTuple):
    ok: bool
    diagnostic: str = ""

    def __bool__(self):
        return self.ok


class Minimality(enum.Enum):
    VERIFIED = "Verified"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class RewriteStep:
    rule_index: int  # into R followed by R_w
    position: tuple[int, ...]
    strict: bool


@dataclass(frozen=True)
class ChainStep:
    pair_index: int  # into P followed by P_w
    strict: bool
    sigma: dict = field(hash=False)
    connection: tuple[RewriteStep, ...] = ()


@dataclass(frozen=True)
class ChainWitness:
    """A loop.  ``steps[i].connection`` leads to the next step's left-hand side;
    the last step's connection is the closing reduction to ``s_1 sigma_1 theta``.
    """

    steps: tuple[ChainStep, ...]
    theta: dict = field(default_factory=dict, hash=False)
    minimality: Minimality = Minimality.UNKNOWN
    sn_budget: int = 50

    @property
    def closing_reduction(self) -> tuple[RewriteStep, ...]:
        return self.steps[-1].connection

    def start(self, d: RelativeDpp) -> Term:
        s = self.steps[0]
        return apply(s.sigma, d.pairs[s.pair_index].lhs)

    def pair_sequence(self) -> list[int]:
        return [s.pair_index for s in self.steps]


@dataclass(frozen=True)
class Bounds:
    max_steps: int = 4
    max_term_depth: int = 5
    rewrite_budget: int = 50

    def __post_init__(self):
        if min(self.max_steps, self.max_term_depth, self.rewrite_budget) <= 0:
            raise ValueError("bounds must be positive")

    def scaled(self, k: int) -> Bounds:
        return Bounds(self.max_steps * k, self.max_term_depth * k, self.rewrite_budget * k)


class Status(enum.Enum):
    FINITE = "Finite"
    NOT_FINITE = "NotFinite"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class OracleResult:
    status: Status
    witness: ChainWitness | None = None


def _is_injective_renaming(theta: dict) -> bool:
    images = list(theta.values())
    return all(isinstance(t, Var) for t in images) and len({t.name for t in images}) == len(
        images
    )


def seed_terms(d: RelativeDpp, seed_depth: int = 2) -> list[Term]:
    """Ground instantiation candidates, shallowest first.

    Labeled symbol families are completed over the observed label alphabet so
    that the seeds of a labeled problem include the labeling of every seed of
    the unlabeled one.
    """
    sig = {s for s in d.signature() if not s.marked}
    alphabet = sorted({v for s in sig for v in s.label})
    for s in list(sig):
        if s.label:
            for lab in itertools.product(alphabet, repeat=len(s.label)):
                sig.add(Symbol(s.name, s.arity, False, tuple(lab)))
    constants = sorted((s for s in sig if s.arity == 0), key=str)
    layers: list[list[Term]] = [[App(c) for c in constants]]
    seen = set(layers[0])
    funs = sorted((s for s in sig if s.arity > 0), key=str)
    for _ in range(1, seed_depth):
        pool = [t for layer in layers for t in layer]
        new = []
        for f in funs:
            for args in itertools.product(pool, repeat=f.arity):
                t = App(f, args)
                if t not in seen:
                    seen.add(t)
                    new.append(t)
        layers.append(new)
    return [t for layer in layers for t in layer]


class _Search:
    def __init__(self, d: RelativeDpp, max_steps, max_term_depth, rewrite_budget, seed_depth):
        self.d = d
        self.pairs = list(d.pairs)
        self.rules = list(d.rules)
        self.max_steps = max_steps
        self.max_depth = max_term_depth
        self.budget = rewrite_budget
        self.seed_depth = seed_depth
        self._reach: dict[Term, list] = {}
        self._sn: dict[Term, SN] = {}

    def reach(self, t: Term):
        """(term, used-strict-rule, path) reachable from t, breadth-first.

        At most ``rewrite_budget`` states (term plus strict flag) are
        collected, counting t itself; successors are visited in the order of
        ``successors`` and terms deeper than ``max_term_depth`` are skipped.
        """
        cached = self._reach.get(t)
        if cached is not None:
            return cached
        d = self.d
        start = (t, False)
        parent = {start: None}
        order = [start]
        queue = deque([start])
        while queue and len(order) < self.budget:
            key = queue.popleft()
            u, flag = key
            for v, pos, ri in successors(u, self.rules):
                if depth(v) > self.max_depth:
                    continue
                strict = d.rule_is_strict(ri)
                k2 = (v, flag or strict)
                if k2 in parent:
                    continue
                parent[k2] = (key, RewriteStep(ri, pos, strict))
                order.append(k2)
                queue.append(k2)
                if len(order) >= self.budget:
                    break
        out = []
        for k2 in order:
            path = []
            k = k2
            while parent[k] is not None:
                k, step = parent[k]
                path.append(step)
            out.append((k2[0], k2[1], tuple(reversed(path))))
        self._reach[t] = out
        return out

    def sn(self, t: Term) -> SN:
        r = self._sn.get(t)
        if r is None:
            r = self._sn[t] = bounded_sn(t, self.rules, self.budget)
        return r

    def minimality(self, steps: Sequence[ChainStep], theta: dict) -> Minimality:
        if not _is_injective_renaming(theta):
            return Minimality.UNKNOWN
        for s in steps:
            t = apply(s.sigma, self.pairs[s.pair_index].rhs)
            if self.sn(t) is not SN.TERMINATING:
                return Minimality.UNKNOWN
        return Minimality.VERIFIED

    def starts(self):
        seeds = seed_terms(self.d, self.seed_depth)
        for i, pair in enumerate(self.pairs):
            vs = variables(pair.lhs)
            choices = [[Var(x), *seeds] for x in vs]
            for combo in itertools.product(*choices):
                sigma = normalize(dict(zip(vs, combo)))
                s = apply(sigma, pair.lhs)
                if depth(s) <= self.max_depth:
                    yield i, sigma, s

    def loops(self):
        """Yield (steps, theta) for every loop found, in search order.

        Breadth-first over fragment length across all start terms, so every
        loop with n pairs is reported before any loop with n + 1 pairs.
        """
        d = self.d
        starts = list(self.starts())
        visited = [{(i0, start, False)} for i0, _, start in starts]
        # node: (pair index, sigma, incoming connection, strict seen, parent)
        queue = deque(
            (k, (i0, sigma0, (), False, None), 1) for k, (i0, sigma0, _) in enumerate(starts)
        )
        while queue:
            k, node, length = queue.popleft()
            start = starts[k][2]
            i, sigma, _, strict_seen, _ = node
            t = apply(sigma, self.pairs[i].rhs)
            if depth(t) > self.max_depth:
                continue
            strict_seen = strict_seen or d.pair_is_strict(i)
            for v, used, path in self.reach(t):
                flag = strict_seen or used
                if flag:
                    theta = match(start, v)
                    if theta is not None:
                        yield self._steps(node, path), theta
                if length >= self.max_steps or not isinstance(v, App):
                    continue
                for q, pair in enumerate(self.pairs):
                    if not isinstance(pair.lhs, App) or pair.lhs.symbol != v.symbol:
                        continue
                    sq = match(pair.lhs, v)
                    if sq is None:
                        continue
                    key = (q, v, flag)
                    if key in visited[k]:
                        continue
                    visited[k].add(key)
                    queue.append((k, (q, sq, path, flag, node), length + 1))

    def _steps(self, node, closing) -> tuple[ChainStep, ...]:
        chain = []
        conn = closing
        while node is not None:
            i, sigma, incoming, _, parent = node
            chain.append(ChainStep(i, self.d.pair_is_strict(i), dict(sigma), conn))
            conn = incoming
            node = parent
        return tuple(reversed(chain))


def find_witness(
    d: RelativeDpp,
    max_steps: int = 4,
    max_term_depth: int = 5,
    rewrite_budget: int = 50,
    *,
    seed_depth: int = 2,
    require_minimal: bool = False,
) -> ChainWitness | None:
    """Search for a loop; prefer one whose minimality is verified.

    Returns the first loop with verified minimality in search order, else the
    first loop found (with minimality Unknown), else None.  With
    ``require_minimal`` only verified loops are returned.  None means no loop
    exists within the bounds, not that the problem is finite.
    """
    if min(max_steps, max_term_depth, rewrite_budget) <= 0:
        raise ValueError("bounds must be positive")
    search = _Search(d, max_steps, max_term_depth, rewrite_budget, seed_depth)
    first = None
    for steps, theta in search.loops():
        m = search.minimality(steps, theta)
        w = ChainWitness(steps, theta, m, rewrite_budget)
        if m is Minimality.VERIFIED:
            return w
        if first is None:
            first = w
    return None if require_minimal else first


def _replay(d: RelativeDpp, steps: Sequence[ChainStep], target: Term) -> Verdict:
    pairs, rules = d.pairs, d.rules
    lhss = []
    for k, s in enumerate(steps):
        if not 0 <= s.pair_index < len(pairs):
            return Verdict(False, f"condition (1): step {k} uses unknown pair {s.pair_index}")
        if s.strict != d.pair_is_strict(s.pair_index):
            return Verdict(False, f"condition (1): step {k} claims wrong strictness")
        if not all(isinstance(v, Term) for v in s.sigma.values()):
            return Verdict(False, f"condition (1): step {k} has a malformed substitution")
        lhss.append(apply(s.sigma, pairs[s.pair_index].lhs))
    for k, s in enumerate(steps):
        u = apply(s.sigma, pairs[s.pair_index].rhs)
        for j, r in enumerate(s.connection):
            if not 0 <= r.rule_index < len(rules):
                return Verdict(
                    False, f"condition (2): step {k} rewrite {j} uses unknown rule {r.rule_index}"
                )
            if r.strict != d.rule_is_strict(r.rule_index):
                return Verdict(
                    False, f"condition (2): step {k} rewrite {j} claims wrong strictness"
                )
            v = rewrite_at(u, r.position, rules[r.rule_index])
            if v is None:
                return Verdict(
                    False,
                    f"condition (2): step {k} rewrite {j}: rule {r.rule_index} does not apply "
                    f"at position {list(r.position)} of {u}",
                )
            u = v
        goal = lhss[k + 1] if k + 1 < len(steps) else target
        if u != goal:
            return Verdict(False, f"condition (2): step {k} connection ends in {u}, not {goal}")
    return Verdict(True)


def unroll(w: ChainWitness, k: int) -> tuple[list[ChainStep], dict]:
    """The fragment repeated k times and the substitution theta^k it closes with."""
    steps = []
    power: dict = {}
    for _ in range(k):
        steps.extend(
            ChainStep(s.pair_index, s.strict, compose(s.sigma, power), s.connection)
            for s in w.steps
        )
        power = compose(power, w.theta) if power else dict(w.theta)
    return steps, power


def check_fragment(d: RelativeDpp, steps: Sequence[ChainStep], target: Term) -> Verdict:
    """Replay a finite chain fragment ending in ``target``."""
    if not steps:
        return Verdict(False, "condition (1): empty fragment")
    return _replay(d, steps, target)


def verify_witness(d: RelativeDpp, w: ChainWitness) -> Verdict:
    """Replay a loop.  A rejection names the numbered check that failed:

    (1) each step uses a pair of ``d`` with its actual strictness;
    (2) each connection is a valid rewrite sequence reaching the next start;
    (3) the body applies a strict pair or a strict rule;
    (4) claimed minimality is backed by bounded termination of every
        instantiated right-hand side.
    """
    if not w.steps:
        return Verdict(False, "condition (1): witness has no steps")
    if not all(isinstance(v, Term) for v in w.theta.values()):
        return Verdict(False, "condition (2): malformed closing substitution")
    start = w.start(d) if 0 <= w.steps[0].pair_index < len(d.pairs) else None
    if start is None:
        return Verdict(False, "condition (1): first step uses an unknown pair")
    v = _replay(d, w.steps, apply(w.theta, start))
    if not v:
        return v
    # one pumping round: the fragment instantiated by theta closes on start theta^2
    steps2, power = unroll(w, 2)
    v = _replay(d, steps2, apply(power, start))
    if not v:
        return Verdict(False, f"pumping: {v.diagnostic}")
    strict = any(s.strict for s in w.steps) or any(
        r.strict for s in w.steps for r in s.connection
    )
    if not strict:
        return Verdict(
            False, "condition (3): loop body uses neither a strict pair nor a strict rule"
        )
    if w.minimality is Minimality.VERIFIED:
        if not _is_injective_renaming(w.theta):
            return Verdict(
                False, "condition (4): minimality claimed for a loop that is not a variant"
            )
        for k, s in enumerate(w.steps):
            t = apply(s.sigma, d.pairs[s.pair_index].rhs)
            r = bounded_sn(t, list(d.rules), w.sn_budget)
            if r is not SN.TERMINATING:
                return Verdict(
                    False, f"condition (4): termination of {t} (step {k}) not confirmed: {r.value}"
                )
    return Verdict(True)


def _ground_absorption(d: RelativeDpp, budget: int) -> bool:
    """Finiteness argument for problems whose pairs are all ground.

    Computes the complete reduction closure (with strict-rule flags) of every
    pair's right-hand side; gives up if any closure exceeds ``budget`` terms.
    Then every infinite chain stays in one SCC of the pair graph, so finiteness
    holds if no SCC contains a strict pair or a strict connection.
    """
    pairs = list(d.pairs)
    rules = list(d.rules)
    if not pairs or any(variables(p.lhs) for p in pairs):
        return False
    edges: dict[int, dict[int, bool]] = {}
    for i, p in enumerate(pairs):
        seen = {(p.rhs, False)}
        queue = deque(seen)
        while queue:
            u, flag = queue.popleft()
            for v, _, ri in successors(u, rules):
                key = (v, flag or d.rule_is_strict(ri))
                if key not in seen:
                    seen.add(key)
                    if len(seen) > budget:
                        return False
                    queue.append(key)
        out = edges.setdefault(i, {})
        for j, q in enumerate(pairs):
            if (q.lhs, True) in seen:
                out[j] = True
            elif (q.lhs, False) in seen:
                out[j] = out.get(j, False)
    for comp in nontrivial_sccs(range(len(pairs)), lambda i: edges[i].keys()):
        members = set(comp)
        if any(d.pair_is_strict(i) for i in members):
            return False
        if any(edges[i][j] for i in members for j in edges[i] if j in members):
            return False
    return True


def bounded_finiteness(d: RelativeDpp, bounds: Bounds = Bounds(), **kw) -> OracleResult:
    if is_trivially_finite(d):
        return OracleResult(Status.FINITE)
    w = find_witness(d, bounds.max_steps, bounds.max_term_depth, bounds.rewrite_budget, **kw)
    if w is not None and w.minimality is Minimality.VERIFIED:
        return OracleResult(Status.NOT_FINITE, w)
    if _ground_absorption(d, bounds.rewrite_budget):
        return OracleResult(Status.FINITE)
    return OracleResult(Status.UNKNOWN)

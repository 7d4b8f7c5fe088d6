"""Estimated dependency graph and its SCC decomposition."""

from __future__ import annotations

import itertools

from ..errors import MarkPlacementError
from ..graphs import nontrivial_sccs
from ..problem import RelativeDpp, is_trivially_finite
from ..terms import App, Term, Var, rename_apart, unify, variables
from ..trs import defined_symbols
from .base import ProcessorResult


def cap(t: Term, defined, fresh=None) -> Term:
    """Replace variables and subterms rooted by a defined symbol with fresh variables."""
    if fresh is None:
        fresh = (f"_c{i}" for i in itertools.count())
    if isinstance(t, Var) or t.symbol in defined:
        return Var(next(fresh))
    return App(t.symbol, tuple(cap(a, defined, fresh) for a in t.args))


def _check_roots(d: RelativeDpp):
    rule_syms = d.rules.signature()
    for pair in d.pairs:
        for side in (pair.lhs, pair.rhs):
            if isinstance(side, App) and side.symbol in rule_syms:
                raise MarkPlacementError(
                    f"root symbol {side.symbol} of pair {pair} also occurs in the rules"
                )


def estimated_graph(d: RelativeDpp) -> dict[int, list[int]]:
    """Edges between indices of P followed by P_w.

    There is an edge p -> q iff cap(rhs(p)) unifies with a renamed copy of lhs(q).
    """
    _check_roots(d)
    pairs = list(d.pairs)
    defined = defined_symbols(d.rules)
    edges: dict[int, list[int]] = {}
    for i, p in enumerate(pairs):
        c = cap(p.rhs, defined)
        taken = set(variables(c))
        out = []
        for j, q in enumerate(pairs):
            lhs, _ = rename_apart(q.lhs, taken)
            if unify(c, lhs) is not None:
                out.append(j)
        edges[i] = out
    return edges


def graph_sccs(d: RelativeDpp) -> list[list[int]]:
    """Nontrivial SCCs of the estimated graph, each sorted, ordered by least member."""
    edges = estimated_graph(d)
    comps = nontrivial_sccs(range(len(edges)), lambda i: edges[i])
    return sorted((sorted(c) for c in comps), key=lambda c: c[0])


def dependency_graph(d: RelativeDpp) -> ProcessorResult:
    """One successor (P n C, P_w n C, R, R_w) per SCC C, omitting trivially finite ones."""
    sccs = graph_sccs(d)
    pairs = d.pairs
    succ = []
    for comp in sccs:
        members = {pairs[i] for i in comp}
        e = RelativeDpp(
            d.strict_pairs.intersect(members),
            d.weak_pairs.intersect(members),
            d.strict_rules,
            d.weak_rules,
        )
        if not is_trivially_finite(e):
            succ.append(e)
    return ProcessorResult("dependency_graph", tuple(succ), {"sccs": sccs})

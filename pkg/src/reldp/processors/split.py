from __future__ import annotations

from collections.abc import Iterable

from ..errors import OverlapError
from ..problem import RelativeDpp, is_trivially_finite
from ..trs import Rule, Trs
from .base import ProcessorError, ProcessorResult


def split(
    d: RelativeDpp,
    delete_pairs: Iterable[Rule] = (),
    delete_rules: Iterable[Rule] = (),
    *,
    literal: bool = False,
) -> ProcessorResult:
    """Split ``d`` into the problem that makes the deleted elements strict and the
    problem that keeps only the remaining elements.

    Writing P1 = P, P2 = P_w, R1 = R, R2 = R_w and splitting each into its
    deleted (``s``) and kept (``w``) part, the successors are

        A = (P1s u P2s, P1w u P2w, R1s u R2s, R1w u R2w)
        B = (P1w, P2w, R1w, R2w)

    ``literal=True`` builds B as (P1w, P2w, R2w, R2w) instead.  Since the
    components of a problem must be disjoint this raises ``OverlapError``
    unless R2w is empty.
    """
    delete_pairs = Trs(delete_pairs)
    delete_rules = Trs(delete_rules)
    pairs, rules = d.pairs, d.rules
    bad = [r for r in delete_pairs if r not in pairs] + [r for r in delete_rules if r not in rules]
    if bad:
        raise ProcessorError(f"delete set is not a subset of the problem: {bad[0]}")

    p1s, p1w = d.strict_pairs.intersect(delete_pairs), d.strict_pairs.minus(delete_pairs)
    p2s, p2w = d.weak_pairs.intersect(delete_pairs), d.weak_pairs.minus(delete_pairs)
    r1s, r1w = d.strict_rules.intersect(delete_rules), d.strict_rules.minus(delete_rules)
    r2s, r2w = d.weak_rules.intersect(delete_rules), d.weak_rules.minus(delete_rules)

    first = RelativeDpp(p1s.union(p2s), p1w.union(p2w), r1s.union(r2s), r1w.union(r2w))
    if literal:
        if r2w:
            raise OverlapError("literal split variant repeats the kept weak rules in two components")
        second = RelativeDpp(p1w, p2w, r2w, r2w)
    else:
        second = RelativeDpp(p1w, p2w, r1w, r2w)
    params = {
        "delete_pairs": [i for i, p in enumerate(pairs) if p in delete_pairs],
        "delete_rules": [i for i, r in enumerate(rules) if r in delete_rules],
    }
    if literal:
        params["literal"] = True
    return ProcessorResult("split", (first, second), params)


def split_by_index(d: RelativeDpp, pair_indices, rule_indices, *, literal=False) -> ProcessorResult:
    pairs, rules = d.pairs, d.rules
    try:
        dp = [pairs[i] for i in pair_indices]
        dr = [rules[i] for i in rule_indices]
    except (IndexError, TypeError) as e:
        raise ProcessorError(f"bad delete index: {e}") from None
    return split(d, dp, dr, literal=literal)


def trivial(d: RelativeDpp) -> ProcessorResult | None:
    """Closes problems without pairs or without strict elements; None otherwise."""
    if is_trivially_finite(d):
        return ProcessorResult("trivial", ())
    return None

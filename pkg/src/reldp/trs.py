"""Rules, term rewrite systems and dependency pairs."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .errors import MalformedRuleError
from .terms import App, Symbol, Term, Var, apply, positions, symbols, variables


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if isinstance(self.lhs, Var):
            raise MalformedRuleError(f"left-hand side of {self} is a variable")
        extra = set(variables(self.rhs)) - set(variables(self.lhs))
        if extra:
            raise MalformedRuleError(
                f"rule {self} has right-hand side variables {sorted(extra)} "
                "not occurring on the left"
            )

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}"

    def symbols(self) -> set[Symbol]:
        return symbols(self.lhs) | symbols(self.rhs)

    def rename(self, sigma) -> Rule:
        return Rule(apply(sigma, self.lhs), apply(sigma, self.rhs))


class Trs:
    """An ordered, duplicate-free collection of rules."""

    __slots__ = ("rules", "_set")

    def __init__(self, rules: Iterable[Rule] = ()):
        out = []
        seen = set()
        for r in rules:
            if not isinstance(r, Rule):
                raise TypeError(f"expected Rule, got {type(r).__name__}")
            if r not in seen:
                seen.add(r)
                out.append(r)
        self.rules: tuple[Rule, ...] = tuple(out)
        self._set = frozenset(out)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __getitem__(self, i):
        return self.rules[i]

    def __contains__(self, r):
        return r in self._set

    def __bool__(self):
        return bool(self.rules)

    def __eq__(self, other):
        if isinstance(other, Trs):
            return self.rules == other.rules
        return NotImplemented

    def __hash__(self):
        return hash(self.rules)

    def __repr__(self):
        return f"Trs([{', '.join(str(r) for r in self.rules)}])"

    def as_set(self) -> frozenset[Rule]:
        return self._set

    def same_rules(self, other: Trs) -> bool:
        """Equality as sets, ignoring order."""
        return self._set == other._set

    def union(self, *others: Trs) -> Trs:
        return Trs([*self.rules, *(r for o in others for r in o)])

    def minus(self, other) -> Trs:
        drop = set(other)
        return Trs(r for r in self.rules if r not in drop)

    def intersect(self, other) -> Trs:
        keep = set(other)
        return Trs(r for r in self.rules if r in keep)

    def signature(self) -> set[Symbol]:
        out: set[Symbol] = set()
        for r in self.rules:
            out |= r.symbols()
        return out


def defined_symbols(r: Iterable[Rule]) -> set[Symbol]:
    return {rule.lhs.symbol for rule in r}


def mark_root(t: Term) -> App:
    if isinstance(t, Var):
        raise MalformedRuleError(f"cannot mark the root of variable {t}")
    if t.symbol.marked:
        raise MalformedRuleError(f"root of {t} is already marked")
    return App(t.symbol.with_mark(), t.args)


def dependency_pairs(r: Iterable[Rule], exclude_lhs_subterms: bool = True) -> Trs:
    """DP(R).

    For each rule l -> r and each subterm u of r rooted by a defined symbol,
    emit l# -> u#.  With ``exclude_lhs_subterms`` (the default), subterms u
    that are proper subterms of l are skipped.
    """
    r = list(r)
    defined = defined_symbols(r)
    pairs = []
    for rule in r:
        proper = {u for p, u in positions(rule.lhs) if p}
        for _, u in positions(rule.rhs):
            if not isinstance(u, App) or u.symbol not in defined:
                continue
            if exclude_lhs_subterms and u in proper:
                continue
            pairs.append(Rule(mark_root(rule.lhs), mark_root(u)))
    return Trs(pairs)

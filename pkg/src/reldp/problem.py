"""Relative dependency pair problems (P, P_w, R, R_w)."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .errors import MarkPlacementError, OverlapError
from .terms import App, Symbol, positions
from .trs import Rule, Trs, dependency_pairs

COMPONENTS = ("strict_pairs", "weak_pairs", "strict_rules", "weak_rules")


def _as_trs(x) -> Trs:
    return x if isinstance(x, Trs) else Trs(x)


def _check_pair_marks(pair: Rule, require_marked: bool):
    for side in (pair.lhs, pair.rhs):
        for p, u in positions(side):
            if p and isinstance(u, App) and u.symbol.marked:
                raise MarkPlacementError(f"marked symbol below the root in pair {pair}")
        if require_marked and not (isinstance(side, App) and side.symbol.marked):
            raise MarkPlacementError(f"pair {pair} does not have marked roots")


def _check_rule_marks(rule: Rule):
    for side in (rule.lhs, rule.rhs):
        for _, u in positions(side):
            if isinstance(u, App) and u.symbol.marked:
                raise MarkPlacementError(f"marked symbol {u.symbol} in rule {rule}")


@dataclass(frozen=True)
class RelativeDpp:
    """A validated quadruple of strict/weak pairs and strict/weak rules.

    Construct through ``make`` (or directly; validation runs either way).
    """

    strict_pairs: Trs = field(default_factory=Trs)
    weak_pairs: Trs = field(default_factory=Trs)
    strict_rules: Trs = field(default_factory=Trs)
    weak_rules: Trs = field(default_factory=Trs)
    require_marked: bool = field(default=False, compare=False)

    def __post_init__(self):
        for name in COMPONENTS:
            object.__setattr__(self, name, _as_trs(getattr(self, name)))
        comps = [getattr(self, n) for n in COMPONENTS]
        for i in range(4):
            for j in range(i + 1, 4):
                common = comps[i].as_set() & comps[j].as_set()
                if common:
                    r = next(iter(common))
                    raise OverlapError(
                        f"{r} occurs in both {COMPONENTS[i]} and {COMPONENTS[j]}"
                    )
        for pair in self.pairs:
            _check_pair_marks(pair, self.require_marked)
        for rule in self.rules:
            _check_rule_marks(rule)

    @property
    def pairs(self) -> Trs:
        """P followed by P_w; chain witnesses index into this list."""
        return self.strict_pairs.union(self.weak_pairs)

    @property
    def rules(self) -> Trs:
        """R followed by R_w."""
        return self.strict_rules.union(self.weak_rules)

    def pair_is_strict(self, i: int) -> bool:
        return i < len(self.strict_pairs)

    def rule_is_strict(self, i: int) -> bool:
        return i < len(self.strict_rules)

    def components(self) -> tuple[Trs, Trs, Trs, Trs]:
        return (self.strict_pairs, self.weak_pairs, self.strict_rules, self.weak_rules)

    def signature(self) -> set[Symbol]:
        out: set[Symbol] = set()
        for c in self.components():
            out |= c.signature()
        return out

    def same_as(self, other: RelativeDpp) -> bool:
        """Component-wise set equality (rule order ignored)."""
        return all(a.same_rules(b) for a, b in zip(self.components(), other.components()))

    def is_classic(self) -> bool:
        return not self.weak_pairs and not self.strict_rules

    def __str__(self):
        def show(t):
            return "{" + ", ".join(str(r) for r in t) + "}"

        return "(" + ", ".join(show(c) for c in self.components()) + ")"


@dataclass(frozen=True)
class ClassicDpp:
    pairs: Trs = field(default_factory=Trs)
    rules: Trs = field(default_factory=Trs)

    def __post_init__(self):
        object.__setattr__(self, "pairs", _as_trs(self.pairs))
        object.__setattr__(self, "rules", _as_trs(self.rules))
        for pair in self.pairs:
            _check_pair_marks(pair, False)
        for rule in self.rules:
            _check_rule_marks(rule)


def make(
    strict_pairs: Iterable[Rule] = (),
    weak_pairs: Iterable[Rule] = (),
    strict_rules: Iterable[Rule] = (),
    weak_rules: Iterable[Rule] = (),
    require_marked: bool = False,
) -> RelativeDpp:
    return RelativeDpp(
        Trs(strict_pairs), Trs(weak_pairs), Trs(strict_rules), Trs(weak_rules), require_marked
    )


def initial(r: Iterable[Rule]) -> RelativeDpp:
    r = Trs(r)
    return RelativeDpp(dependency_pairs(r), Trs(), Trs(), r)


def embed(c: ClassicDpp) -> RelativeDpp:
    return RelativeDpp(c.pairs, Trs(), Trs(), c.rules)


def forget(d: RelativeDpp) -> ClassicDpp:
    """Inverse of ``embed`` on problems without weak pairs and strict rules."""
    if not d.is_classic():
        raise ValueError("problem has weak pairs or strict rules")
    return ClassicDpp(d.strict_pairs, d.weak_rules)


def is_trivially_finite(d: RelativeDpp) -> bool:
    """No pairs at all, or neither strict pairs nor strict rules."""
    no_pairs = not d.strict_pairs and not d.weak_pairs
    nothing_strict = not d.strict_pairs and not d.strict_rules
    return no_pairs or nothing_strict

"""Semantic labeling with exact finite models."""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

from ..problem import RelativeDpp
from ..terms import App, Symbol, Term, Var, variables
from ..trs import Rule, Trs
from .base import ProcessorError, ProcessorResult


@dataclass(frozen=True)
class FiniteModel:
    """Carrier {0, ..., size-1} and one table per symbol.

    ``tables[f][k]`` is the value of f on the k-th argument tuple in
    lexicographic order (first argument most significant).
    """

    size: int
    tables: Mapping[Symbol, tuple[int, ...]] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.size < 1:
            raise ProcessorError("carrier must be non-empty")
        tables = {f: tuple(int(v) for v in t) for f, t in self.tables.items()}
        for f, t in tables.items():
            if len(t) != self.size**f.arity:
                raise ProcessorError(f"table of {f} must have {self.size ** f.arity} entries")
            if any(not 0 <= v < self.size for v in t):
                raise ProcessorError(f"table of {f} leaves the carrier")
        object.__setattr__(self, "tables", tables)

    def apply(self, f: Symbol, args) -> int:
        k = 0
        for a in args:
            k = k * self.size + a
        try:
            return self.tables[f][k]
        except KeyError:
            raise ProcessorError(f"model does not interpret {f}") from None

    def evaluate(self, t: Term, alpha: Mapping[str, int]) -> int:
        if isinstance(t, Var):
            return alpha[t.name]
        return self.apply(t.symbol, [self.evaluate(a, alpha) for a in t.args])

    def assignments(self, names) -> Iterator[dict[str, int]]:
        names = list(names)
        for values in itertools.product(range(self.size), repeat=len(names)):
            yield dict(zip(names, values))

    def is_constant(self) -> bool:
        """True if every symbol of positive arity ignores its arguments."""
        return all(len(set(t)) <= 1 for f, t in self.tables.items() if f.arity)


def label(t: Term, model: FiniteModel, alpha: Mapping[str, int]) -> Term:
    """Label every function symbol by the values of its arguments."""
    if isinstance(t, Var):
        return t
    args = tuple(label(a, model, alpha) for a in t.args)
    values = tuple(model.evaluate(a, alpha) for a in t.args)
    return App(t.symbol.with_label(values), args)


def unlabel(t: Term) -> Term:
    """Strip the most recent labeling level."""
    if isinstance(t, Var):
        return t
    f = t.symbol
    lab = f.label[: len(f.label) - f.arity] if f.arity else f.label
    return App(Symbol(f.name, f.arity, f.marked, lab), tuple(unlabel(a) for a in t.args))


def unlabel_rule(r: Rule) -> Rule:
    return Rule(unlabel(r.lhs), unlabel(r.rhs))


def model_violation(rule: Rule, model: FiniteModel) -> dict[str, int] | None:
    """An assignment under which lhs and rhs evaluate differently, if any."""
    for alpha in model.assignments(variables(rule.lhs)):
        if model.evaluate(rule.lhs, alpha) != model.evaluate(rule.rhs, alpha):
            return alpha
    return None


def labeled_variants(rule: Rule, model: FiniteModel) -> list[Rule]:
    out = []
    for alpha in model.assignments(variables(rule.lhs)):
        v = Rule(label(rule.lhs, model, alpha), label(rule.rhs, model, alpha))
        if v not in out:
            out.append(v)
    return out


def label_trs(trs: Trs, model: FiniteModel) -> Trs:
    return Trs(v for r in trs for v in labeled_variants(r, model))


def semantic_labeling(d: RelativeDpp, model: FiniteModel) -> ProcessorResult | None:
    """Replace every pair and rule by its labeled variants, in its own component.

    Not applicable (None) unless ``model`` is a model of all pairs and rules
    or when it leaves a symbol of the problem uninterpreted.
    """
    if any(f not in model.tables for f in d.signature()):
        return None
    for r in (*d.pairs, *d.rules):
        if model_violation(r, model) is not None:
            return None
    succ = RelativeDpp(*(label_trs(c, model) for c in d.components()))
    return ProcessorResult("semantic_labeling", (succ,), {"model": model})


def iter_models(d: RelativeDpp, carrier_size: int) -> Iterator[FiniteModel]:
    """All models of the pairs and rules of ``d``, in enumeration order.

    Symbols are assigned in order of their printed name; each symbol's table
    runs through carrier^(carrier^arity) lexicographically.  An element is
    checked as soon as all of its symbols have tables.
    """
    n = carrier_size
    syms = sorted(d.signature(), key=lambda s: (str(s), s.arity))
    elements = [*d.pairs, *d.rules]
    pos = {f: i for i, f in enumerate(syms)}
    ready: list[list[Rule]] = [[] for _ in syms]
    for e in elements:
        es = e.symbols()
        k = max((pos[f] for f in es), default=-1)
        if k >= 0:
            ready[k].append(e)
    tables: dict[Symbol, tuple[int, ...]] = {}

    def rec(i):
        if i == len(syms):
            yield FiniteModel(n, dict(tables))
            return
        f = syms[i]
        for table in itertools.product(range(n), repeat=n**f.arity):
            tables[f] = table
            m = FiniteModel(n, tables)
            if all(model_violation(e, m) is None for e in ready[i]):
                yield from rec(i + 1)
        del tables[f]

    yield from rec(0)


def search_model(d: RelativeDpp, carrier_size: int) -> FiniteModel | None:
    if carrier_size not in (2, 3):
        raise ValueError("carrier_size must be 2 or 3")
    return next(iter_models(d, carrier_size), None)

"""Reduction pairs from linear interpretations over the non-negative integers."""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from ..problem import RelativeDpp
from ..terms import Symbol, Term, Var
from ..trs import Rule, Trs
from .base import ProcessorError, ProcessorResult

_CHUNK = 1 << 16


class Monotonicity(enum.Enum):
    WEAK = "weakly-monotone"
    STRICT = "strictly-monotone"


@dataclass(frozen=True)
class LinearInterpretation:
    """``f(x1..xn) = c0 + c1*x1 + ... + cn*xn`` for each symbol.

    ``table[f] = (c0, c1, ..., cn)``.  Symbols missing from the table are
    interpreted as ``x1 + ... + xn`` (constant 0).
    """

    table: Mapping[Symbol, tuple[int, ...]] = field(default_factory=dict, hash=False)
    mode: Monotonicity = Monotonicity.WEAK

    def __post_init__(self):
        object.__setattr__(self, "mode", Monotonicity(self.mode))
        table = {f: tuple(int(c) for c in cs) for f, cs in self.table.items()}
        object.__setattr__(self, "table", table)
        for f, cs in table.items():
            if len(cs) != f.arity + 1:
                raise ProcessorError(f"{f} needs {f.arity + 1} coefficients, got {len(cs)}")
            if any(c < 0 for c in cs):
                raise ProcessorError(f"negative coefficient for {f}")
            if self.mode is Monotonicity.STRICT and any(c < 1 for c in cs[1:]):
                raise ProcessorError(f"strictly monotone interpretation needs c_i >= 1 for {f}")

    def coefficients(self, f: Symbol) -> tuple[int, ...]:
        return self.table.get(f, (0,) + (1,) * f.arity)

    def evaluate(self, t: Term) -> tuple[int, dict[str, int]]:
        """Linear polynomial (constant, {variable: coefficient})."""
        if isinstance(t, Var):
            return 0, {t.name: 1}
        cs = self.coefficients(t.symbol)
        const = cs[0]
        coeffs: dict[str, int] = {}
        for c, a in zip(cs[1:], t.args):
            if c == 0:
                continue
            k, vs = self.evaluate(a)
            const += c * k
            for x, v in vs.items():
                coeffs[x] = coeffs.get(x, 0) + c * v
        return const, {x: v for x, v in coeffs.items() if v}

    def compare(self, rule: Rule) -> str | None:
        """``">"`` if strictly oriented, ``">="`` if weakly, None otherwise."""
        kl, vl = self.evaluate(rule.lhs)
        kr, vr = self.evaluate(rule.rhs)
        if any(vl.get(x, 0) < c for x, c in vr.items()) or kl < kr:
            return None
        return ">" if kl > kr else ">="

    def describe(self, t: Term) -> str:
        k, vs = self.evaluate(t)
        parts = [f"{c}*{x}" if c != 1 else x for x, c in sorted(vs.items())]
        if k or not parts:
            parts.append(str(k))
        return " + ".join(parts)


def reduction_pair(d: RelativeDpp, interp: LinearInterpretation) -> ProcessorResult | None:
    """Remove strictly decreasing pairs (and, if strictly monotone, rules).

    Not applicable (None) when some element of the problem is not weakly
    decreasing.
    """
    strict = []
    for r in (*d.pairs, *d.rules):
        c = interp.compare(r)
        if c is None:
            return None
        if c == ">":
            strict.append(r)
    removable = set(strict)
    drop_rules = interp.mode is Monotonicity.STRICT

    def keep(trs: Trs, is_rules: bool) -> Trs:
        if is_rules and not drop_rules:
            return trs
        return trs.minus(removable)

    succ = RelativeDpp(
        keep(d.strict_pairs, False),
        keep(d.weak_pairs, False),
        keep(d.strict_rules, True),
        keep(d.weak_rules, True),
    )
    return ProcessorResult("reduction_pair", (succ,), {"interpretation": interp})


def first_violation(d: RelativeDpp, interp: LinearInterpretation) -> str | None:
    """Human-readable description of the first element that is not weakly oriented."""
    for r in (*d.pairs, *d.rules):
        if interp.compare(r) is None:
            return f"[{r.lhs}] = {interp.describe(r.lhs)} >= {interp.describe(r.rhs)} = [{r.rhs}]"
    return None


def _vec_eval(t: Term, params: dict[Symbol, list[np.ndarray]], n: int):
    if isinstance(t, Var):
        return np.zeros(n, dtype=np.int64), {t.name: np.ones(n, dtype=np.int64)}
    cs = params[t.symbol]
    const = cs[0]
    coeffs: dict[str, np.ndarray] = {}
    for c, a in zip(cs[1:], t.args):
        k, vs = _vec_eval(a, params, n)
        const = const + c * k
        for x, v in vs.items():
            if x in coeffs:
                coeffs[x] = coeffs[x] + c * v
            else:
                coeffs[x] = c * v
    return const, coeffs


def _orientation(rule: Rule, params, n):
    kl, vl = _vec_eval(rule.lhs, params, n)
    kr, vr = _vec_eval(rule.rhs, params, n)
    weak = kl >= kr
    for x, c in vr.items():
        weak &= vl[x] >= c if x in vl else c == 0
    return weak, weak & (kl > kr)


def search_reduction_pair(
    d: RelativeDpp,
    coefficient_bound: int = 2,
    mode: Monotonicity | str = Monotonicity.WEAK,
    max_candidates: int | None = None,
) -> tuple[LinearInterpretation, ProcessorResult] | None:
    """First interpretation (in enumeration order) whose application removes something.

    Enumeration order: symbols sorted by their printed name; each symbol
    contributes the vector (c0, c1, ..., cn); candidates are the lexicographic
    product of these vectors with every entry ascending from its lower bound
    (0, or 1 for c_i with i >= 1 in strictly monotone mode) to
    ``coefficient_bound``, the last entry varying fastest.
    """
    if coefficient_bound < 1:
        raise ValueError("coefficient_bound must be >= 1")
    mode = Monotonicity(mode)
    elements = [*d.pairs, *d.rules]
    removable = list(d.pairs) + (list(d.rules) if mode is Monotonicity.STRICT else [])
    if not removable:
        return None
    syms = sorted(d.signature(), key=lambda s: (str(s), s.arity))
    slots = []  # (symbol, low)
    for f in syms:
        slots.append((f, 0))
        low = 1 if mode is Monotonicity.STRICT else 0
        slots.extend((f, low) for _ in range(f.arity))
    radices = [coefficient_bound - low + 1 for _, low in slots]
    total = 1
    for r in radices:
        total *= r
    if max_candidates is not None:
        total = min(total, max_candidates)
    strides = []
    s = 1
    for r in reversed(radices):
        strides.append(s)
        s *= r
    strides.reverse()
    removable_mask = [e in set(removable) for e in elements]

    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        n = len(idx)
        params: dict[Symbol, list[np.ndarray]] = {f: [] for f in syms}
        for (f, low), stride, radix in zip(slots, strides, radices):
            params[f].append((idx // stride) % radix + low)
        ok = np.ones(n, dtype=bool)
        gain = np.zeros(n, dtype=bool)
        for e, rem in zip(elements, removable_mask):
            weak, strict = _orientation(e, params, n)
            ok &= weak
            if rem:
                gain |= strict
            if not ok.any():
                break
        hits = np.flatnonzero(ok & gain)
        if len(hits):
            k = int(hits[0])
            table = {f: tuple(int(a[k]) for a in params[f]) for f in syms}
            interp = LinearInterpretation(table, mode)
            result = reduction_pair(d, interp)
            assert result is not None and result.made_progress(d)
            return interp, result
    return None

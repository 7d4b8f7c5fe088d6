"""First-order terms, substitutions, matching, unification and rewriting.

Terms are immutable and compared structurally.  A variable is a ``Var``; every
other term is an ``App`` of a ``Symbol`` to a tuple of arguments whose length
equals the symbol's arity.  Positions are tuples of 1-based argument indices,
``()`` being the root.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import InvalidPositionError
from .graphs import has_cycle

Position = tuple[int, ...]
Substitution = dict  # str -> Term; kept as a plain dict, see ``normalize``

_LABELED = re.compile(r"^(.+)\.(\d+)$")


@dataclass(frozen=True, order=True)
class Symbol:
    """A function symbol.

    ``marked`` distinguishes tuple symbols (``f#``) from their base symbol and
    ``label`` holds the carrier values attached by semantic labeling.
    """

    name: str
    arity: int
    marked: bool = False
    label: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.name:
            raise ValueError("symbol name must be non-empty")
        if self.arity < 0:
            raise ValueError("arity must be non-negative")

    def __str__(self):
        s = self.name
        if self.label:
            s += "." + "".join(str(v) for v in self.label)
        if self.marked:
            s += "#"
        return s

    def __call__(self, *args: Term) -> App:
        return App(self, args)

    @property
    def base(self) -> Symbol:
        """The symbol without mark and label."""
        return Symbol(self.name, self.arity)

    def with_mark(self, marked: bool = True) -> Symbol:
        return Symbol(self.name, self.arity, marked, self.label)

    def with_label(self, label: Sequence[int]) -> Symbol:
        return Symbol(self.name, self.arity, self.marked, self.label + tuple(label))

    @classmethod
    def parse(cls, text: str, arity: int) -> Symbol:
        """Inverse of ``str``: ``F.01#`` is ``F`` marked with label (0, 1)."""
        marked = text.endswith("#") and len(text) > 1
        if marked:
            text = text[:-1]
        label: tuple[int, ...] = ()
        m = _LABELED.match(text)
        if m and arity > 0 and len(m.group(2)) % arity == 0:
            text = m.group(1)
            label = tuple(int(c) for c in m.group(2))
        return cls(text, arity, marked, label)


class Term:
    __slots__ = ()

    def is_var(self) -> bool:
        return isinstance(self, Var)


class Var(Term):
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        if not name:
            raise ValueError("variable name must be non-empty")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_hash", hash(("var", name)))

    def __setattr__(self, key, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return self.name

    def __reduce__(self):
        return (Var, (self.name,))


class App(Term):
    __slots__ = ("symbol", "args", "_hash", "_depth", "_size")

    def __init__(self, symbol: Symbol, args: Iterable[Term] = ()):
        args = tuple(args)
        if len(args) != symbol.arity:
            raise ValueError(
                f"symbol {symbol} has arity {symbol.arity}, got {len(args)} arguments"
            )
        object.__setattr__(self, "symbol", symbol)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_hash", hash((symbol, args)))
        depth = 1
        size = 1
        for a in args:
            if isinstance(a, App):
                depth = max(depth, a._depth + 1)
                size += a._size
            else:
                depth = max(depth, 2)
                size += 1
        object.__setattr__(self, "_depth", depth)
        object.__setattr__(self, "_size", size)

    def __setattr__(self, key, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, App)
            and self._hash == other._hash
            and self.symbol == other.symbol
            and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"App({self.symbol!r}, {self.args!r})"

    def __str__(self):
        if not self.args:
            return str(self.symbol)
        return f"{self.symbol}({', '.join(str(a) for a in self.args)})"

    def __reduce__(self):
        return (App, (self.symbol, self.args))


def fun(name: str, *args: Term, marked: bool = False) -> App:
    """Shorthand constructor: ``fun("f", Var("x"))`` is ``f(x)``."""
    return App(Symbol(name, len(args), marked), args)


def depth(t: Term) -> int:
    """Height of the term tree; variables and constants have depth 1."""
    return t._depth if isinstance(t, App) else 1


def size(t: Term) -> int:
    return t._size if isinstance(t, App) else 1


def variables(t: Term) -> list[str]:
    """Variable names in order of first occurrence (left-to-right, pre-order)."""
    seen: dict[str, None] = {}
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            seen.setdefault(u.name)
        else:
            stack.extend(reversed(u.args))
    return list(seen)


def is_ground(t: Term) -> bool:
    return not variables(t)


def symbols(t: Term) -> set[Symbol]:
    out = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, App):
            out.add(u.symbol)
            stack.extend(u.args)
    return out


def positions(t: Term) -> Iterator[tuple[Position, Term]]:
    """All (position, subterm) pairs in pre-order, root first."""
    stack: list[tuple[Position, Term]] = [((), t)]
    while stack:
        p, u = stack.pop()
        yield p, u
        if isinstance(u, App):
            for i in range(len(u.args), 0, -1):
                stack.append((p + (i,), u.args[i - 1]))


def subterm_at(t: Term, p: Sequence[int]) -> Term:
    u = t
    for i in p:
        if not isinstance(u, App) or not 1 <= i <= len(u.args):
            raise InvalidPositionError(f"position {list(p)} is not valid in {t}")
        u = u.args[i - 1]
    return u


def replace_at(t: Term, p: Sequence[int], s: Term) -> Term:
    if not p:
        return s
    i = p[0]
    if not isinstance(t, App) or not 1 <= i <= len(t.args):
        raise InvalidPositionError(f"position {list(p)} is not valid in {t}")
    args = list(t.args)
    args[i - 1] = replace_at(args[i - 1], p[1:], s)
    return App(t.symbol, args)


def normalize(sigma: Mapping[str, Term]) -> dict[str, Term]:
    """Drop bindings x -> x."""
    return {x: t for x, t in sigma.items() if not (isinstance(t, Var) and t.name == x)}


def apply(sigma: Mapping[str, Term], t: Term) -> Term:
    """Simultaneous substitution."""
    if not sigma:
        return t
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if not t.args:
        return t
    return App(t.symbol, tuple(apply(sigma, a) for a in t.args))


def compose(first: Mapping[str, Term], then: Mapping[str, Term]) -> dict[str, Term]:
    """The substitution ``t -> apply(then, apply(first, t))``."""
    out = {x: apply(then, t) for x, t in first.items()}
    for x, t in then.items():
        out.setdefault(x, t)
    return normalize(out)


def match(pattern: Term, subject: Term) -> dict[str, Term] | None:
    """Matcher sigma with apply(sigma, pattern) == subject, or None.

    Variables of ``subject`` are treated as constants.
    """
    sigma: dict[str, Term] = {}
    stack = [(pattern, subject)]
    while stack:
        p, s = stack.pop()
        if isinstance(p, Var):
            bound = sigma.get(p.name)
            if bound is None:
                sigma[p.name] = s
            elif bound != s:
                return None
        elif isinstance(s, App) and p.symbol == s.symbol:
            stack.extend(zip(p.args, s.args))
        else:
            return None
    return normalize(sigma)


def _occurs(x: str, t: Term, sigma: Mapping[str, Term]) -> bool:
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            if u.name == x:
                return True
            if u.name in sigma:
                stack.append(sigma[u.name])
        else:
            stack.extend(u.args)
    return False


def _walk(t: Term, sigma: Mapping[str, Term]) -> Term:
    while isinstance(t, Var) and t.name in sigma:
        t = sigma[t.name]
    return t


def unify(s: Term, t: Term) -> dict[str, Term] | None:
    """Idempotent most general unifier with occurs check, or None."""
    sigma: dict[str, Term] = {}
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        a = _walk(a, sigma)
        b = _walk(b, sigma)
        if isinstance(a, Var) and isinstance(b, Var) and a.name == b.name:
            continue
        if isinstance(a, Var):
            if _occurs(a.name, b, sigma):
                return None
            sigma[a.name] = b
        elif isinstance(b, Var):
            if _occurs(b.name, a, sigma):
                return None
            sigma[b.name] = a
        elif a.symbol == b.symbol:
            stack.extend(zip(a.args, b.args))
        else:
            return None
    # triangular form -> idempotent
    solved: dict[str, Term] = {}

    def resolve(u: Term) -> Term:
        if isinstance(u, Var):
            if u.name in solved:
                return solved[u.name]
            if u.name in sigma:
                r = resolve(sigma[u.name])
                solved[u.name] = r
                return r
            return u
        return App(u.symbol, tuple(resolve(a) for a in u.args))

    for x in list(sigma):
        resolve(Var(x))
    return normalize({x: solved[x] for x in sigma})


_TRAILING_DIGITS = re.compile(r"\d+$")


def fresh_name(base: str, taken: set[str]) -> str:
    """``base`` stripped of trailing digits plus the smallest free numeric suffix."""
    stem = _TRAILING_DIGITS.sub("", base) or base
    k = 0
    while f"{stem}{k}" in taken:
        k += 1
    return f"{stem}{k}"


def rename_apart(t: Term, forbidden: Iterable[str]) -> tuple[Term, dict[str, Term]]:
    forbidden = set(forbidden)
    vs = variables(t)
    taken = forbidden | set(vs)
    renaming: dict[str, Term] = {}
    for x in vs:
        if x in forbidden:
            y = fresh_name(x, taken)
            taken.add(y)
            renaming[x] = Var(y)
    return apply(renaming, t), renaming


def canonical(t: Term) -> Term:
    """Variant representative: variables renamed to _0, _1, ... by first occurrence."""
    vs = variables(t)
    if not vs:
        return t
    return apply({x: Var(f"_{i}") for i, x in enumerate(vs)}, t)


class Mode(enum.Enum):
    TOP = "top"
    ANYWHERE = "anywhere"


def successors(t: Term, rules: Sequence, mode: Mode | str = Mode.ANYWHERE):
    """All one-step rewrites of ``t`` as (result, position, rule index).

    Ordered by position (pre-order) and then by rule index; duplicates removed.
    ``rules`` is any sequence of objects with ``lhs`` and ``rhs`` attributes.
    """
    mode = Mode(mode)
    out = []
    seen = set()
    for p, u in positions(t):
        if mode is Mode.TOP and p:
            break
        if isinstance(u, Var):
            continue
        for i, rule in enumerate(rules):
            lhs = rule.lhs
            if lhs.symbol != u.symbol:
                continue
            sigma = match(lhs, u)
            if sigma is None:
                continue
            v = replace_at(t, p, apply(sigma, rule.rhs))
            key = (v, p, i)
            if key not in seen:
                seen.add(key)
                out.append(key)
    return out


def rewrite_at(t: Term, p: Sequence[int], rule) -> Term | None:
    """Apply ``rule`` at position ``p`` of ``t``; None if it does not match there."""
    try:
        u = subterm_at(t, p)
    except InvalidPositionError:
        return None
    sigma = match(rule.lhs, u)
    if sigma is None:
        return None
    return replace_at(t, p, apply(sigma, rule.rhs))


class SN(enum.Enum):
    TERMINATING = "Terminating"
    NONTERMINATING = "NonterminatingLoop"
    UNKNOWN = "Unknown"


@dataclass
class _SNNode:
    term: Term
    parent: _SNNode | None
    succ: set = field(default_factory=set)


def _has_instance_below(pattern: Term, t: Term) -> bool:
    for _, u in positions(t):
        if match(pattern, u) is not None:
            return True
    return False


def bounded_sn(t: Term, rules: Sequence, node_budget: int) -> SN:
    """Bounded strong-normalization check.

    Breadth-first exploration of the reduction graph of ``t`` with terms
    identified up to variable renaming.  A cycle, or a reachable term that
    contains an instance of one of its ancestors, is a loop; so is a step
    whose contractum contains an instance of the redex.  Exploring more
    than ``node_budget`` distinct terms gives ``UNKNOWN``.
    """
    if node_budget <= 0:
        raise ValueError("node_budget must be positive")
    root = canonical(t)
    nodes = {root: _SNNode(root, None)}
    queue = deque([root])
    while queue:
        key = queue.popleft()
        node = nodes[key]
        ancestors = []
        a = node
        while a is not None:
            ancestors.append(a.term)
            a = a.parent
        for v, pos, _ in successors(node.term, rules):
            for anc in ancestors:
                if _has_instance_below(anc, v):
                    return SN.NONTERMINATING
            # the contractum embeds an instance of its own redex
            if _has_instance_below(subterm_at(node.term, pos), subterm_at(v, pos)):
                return SN.NONTERMINATING
            vk = canonical(v)
            node.succ.add(vk)
            if vk not in nodes:
                if len(nodes) >= node_budget:
                    return SN.UNKNOWN
                nodes[vk] = _SNNode(vk, node)
                queue.append(vk)
    if has_cycle(list(nodes), lambda k: nodes[k].succ):
        return SN.NONTERMINATING
    return SN.TERMINATING

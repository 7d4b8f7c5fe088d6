"""Independent reference implementations used as test oracles.

Nothing here imports the package's matching, rewriting or search code; terms
are the only shared vocabulary.
"""

from __future__ import annotations

import itertools

from reldp.terms import App, Symbol, Term, Var


def t_apply(sigma: dict, t: Term) -> Term:
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    return App(t.symbol, [t_apply(sigma, a) for a in t.args])


def t_depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 1
    return 1 + max(t_depth(a) for a in t.args)


def t_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    return set().union(*(t_vars(a) for a in t.args)) if t.args else set()


def t_match(pattern: Term, subject: Term, sigma=None):
    sigma = dict(sigma or {})
    stack = [(pattern, subject)]
    while stack:
        p, s = stack.pop()
        if isinstance(p, Var):
            if sigma.setdefault(p.name, s) != s:
                return None
        elif isinstance(s, Var) or p.symbol != s.symbol:
            return None
        else:
            stack.extend(zip(p.args, s.args))
    return sigma


def t_rewrites(t: Term, rules) -> set[Term]:
    """All one-step rewrites of t at any position."""
    out = set()
    for r in rules:
        m = t_match(r.lhs, t)
        if m is not None:
            out.add(t_apply(m, r.rhs))
    if isinstance(t, App):
        for i, a in enumerate(t.args):
            for b in t_rewrites(a, rules):
                out.add(App(t.symbol, t.args[:i] + (b,) + t.args[i + 1 :]))
    return out


def ground_terms(symbols, depth: int) -> list[Term]:
    """All ground terms of depth <= ``depth`` over ``symbols``."""
    consts = [App(c) for c in symbols if c.arity == 0]
    funs = [f for f in symbols if f.arity > 0]
    level = set(consts)
    for _ in range(depth - 1):
        new = set(level)
        for f in funs:
            for args in itertools.product(sorted(level, key=str), repeat=f.arity):
                new.add(App(f, args))
        level = new
    return sorted(level, key=str)


def _unmarked(problem_rules) -> set[Symbol]:
    out = set()

    def walk(t):
        if isinstance(t, App):
            if not t.symbol.marked:
                out.add(t.symbol)
            for a in t.args:
                walk(a)

    for r in problem_rules:
        walk(r.lhs)
        walk(r.rhs)
    return out


def ordered_rewrites(t: Term, rules) -> list[Term]:
    """One-step rewrites of t, by redex position in pre-order and then by rule order."""
    out = []

    def visit(u, rebuild):
        if isinstance(u, Var):
            return
        for r in rules:
            m = t_match(r.lhs, u)
            if m is not None:
                v = rebuild(t_apply(m, r.rhs))
                if v not in out:
                    out.append(v)
        for i, a in enumerate(u.args):
            visit(a, lambda w, i=i, u=u, rebuild=rebuild: rebuild(App(u.symbol, u.args[:i] + (w,) + u.args[i + 1 :])))

    visit(t, lambda w: w)
    return out


def bounded_reach(t: Term, rules, budget: int, max_depth: int) -> list[Term]:
    """The first ``budget`` terms of a breadth-first exploration from t (t included).

    Terms deeper than ``max_depth`` are neither collected nor expanded.
    """
    seen = [t]
    index = 0
    while index < len(seen) and len(seen) < budget:
        u = seen[index]
        index += 1
        for v in ordered_rewrites(u, rules):
            if t_depth(v) > max_depth or v in seen:
                continue
            seen.append(v)
            if len(seen) >= budget:
                break
    return seen


def classic_loop_exists(pairs, rules, max_steps: int, max_depth: int, budget: int, seed_depth: int = 2) -> bool:
    """Depth-first search for a looping (P, R)-chain within the given bounds.

    A loop starts from a pair whose left-hand side variables are kept or
    replaced by small ground terms; it applies at most ``max_steps`` pairs,
    connects them through the first ``budget`` terms of a breadth-first
    rewrite exploration, never leaves terms of
    depth ``max_depth`` and ends in an instance of its start term.
    """
    pairs = list(pairs)
    rules = list(rules)
    seeds = ground_terms(_unmarked(pairs + rules), seed_depth)
    reach_cache: dict[Term, set[Term]] = {}

    def reach(t):
        if t not in reach_cache:
            reach_cache[t] = bounded_reach(t, rules, budget, max_depth)
        return reach_cache[t]

    for pair in pairs:
        xs = sorted(t_vars(pair.lhs))
        for combo in itertools.product(*[[Var(x), *seeds] for x in xs]):
            start = t_apply(dict(zip(xs, combo)), pair.lhs)
            if t_depth(start) > max_depth:
                continue
            best: dict[Term, int] = {}

            def dfs(term, used):
                # term is an instantiated left-hand side; used pairs so far
                for p in pairs:
                    sigma = t_match(p.lhs, term)
                    if sigma is None:
                        continue
                    rhs = t_apply(sigma, p.rhs)
                    if t_depth(rhs) > max_depth:
                        continue
                    for v in reach(rhs):
                        if t_match(start, v) is not None:
                            return True
                        if used + 1 < max_steps and best.get(v, max_steps + 1) > used + 1:
                            best[v] = used + 1
                            if dfs(v, used + 1):
                                return True
                return False

            if dfs(start, 0):
                return True
    return False


def all_substitutions(names, pool):
    for combo in itertools.product(pool, repeat=len(names)):
        yield dict(zip(names, combo))


def brute_force_unifiers(s: Term, t: Term, pool) -> list[dict]:
    """Every substitution over vars(s, t) with images from ``pool`` that unifies s and t."""
    names = sorted(t_vars(s) | t_vars(t))
    return [th for th in all_substitutions(names, pool) if t_apply(th, s) == t_apply(th, t)]


def factors_through(theta: dict, sigma: dict, names) -> bool:
    """True if theta = delta . sigma on ``names`` for some delta."""
    names = sorted(names)
    if not names:
        return True
    tup = Symbol("_tuple", len(names))
    via_sigma = App(tup, [t_apply(sigma, Var(x)) for x in names])
    direct = App(tup, [theta.get(x, Var(x)) for x in names])
    return t_match(via_sigma, direct) is not None


def exhaustive_normal_forms(t: Term, rules, limit: int = 10_000, max_depth: int = 40):
    """Whether the reduction graph from t is finite and acyclic.

    None when it has more than ``limit`` nodes or a term deeper than ``max_depth``.
    """
    seen = {t}
    stack = [t]
    edges = {}
    while stack:
        u = stack.pop()
        succ = t_rewrites(u, rules)
        edges[u] = succ
        for v in succ:
            if v not in seen:
                seen.add(v)
                stack.append(v)
                if len(seen) > limit or t_depth(v) > max_depth:
                    return None
    # terminating iff the finite reduction graph is acyclic
    colour: dict[Term, int] = {}

    def cyclic(u):
        colour[u] = 1
        for v in edges[u]:
            c = colour.get(v, 0)
            if c == 1 or (c == 0 and cyclic(v)):
                return True
        colour[u] = 2
        return False

    return not any(colour.get(u, 0) == 0 and cyclic(u) for u in list(edges))

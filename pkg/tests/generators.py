"""Seeded random generators for small terms, rules and relative DP problems."""

from __future__ import annotations

import random

from reldp.errors import MalformedRuleError, OverlapError
from reldp.problem import RelativeDpp
from reldp.terms import App, Symbol, Term, Var, variables
from reldp.trs import Rule, Trs

VARS = ("x", "y")
CONSTANTS = (Symbol("a", 0), Symbol("b", 0))
FUNCTIONS = (Symbol("f", 1), Symbol("s", 1), Symbol("g", 2))
MARKED = (Symbol("F", 1, marked=True), Symbol("G", 1, marked=True))


def random_term(rng: random.Random, depth: int, funs=FUNCTIONS, consts=CONSTANTS, vars=VARS) -> Term:
    if depth <= 1 or rng.random() < 0.3:
        if vars and rng.random() < 0.5:
            return Var(rng.choice(vars))
        return App(rng.choice(consts))
    f = rng.choice(funs)
    return App(f, [random_term(rng, depth - 1, funs, consts, vars) for _ in range(f.arity)])


def random_ground_term(rng: random.Random, depth: int, funs=FUNCTIONS, consts=CONSTANTS) -> Term:
    return random_term(rng, depth, funs, consts, vars=())


def random_rule(rng: random.Random, max_depth: int = 3, funs=FUNCTIONS, consts=CONSTANTS) -> Rule:
    while True:
        lhs = random_term(rng, rng.randint(1, max_depth), funs, consts)
        if isinstance(lhs, Var):
            continue
        allowed = variables(lhs)
        rhs = random_term(rng, rng.randint(1, max_depth), funs, consts, allowed)
        try:
            return Rule(lhs, rhs)
        except MalformedRuleError:
            continue


def random_pair(rng: random.Random, max_depth: int = 3, funs=FUNCTIONS, consts=CONSTANTS) -> Rule:
    while True:
        lhs_args = random_term(rng, max_depth - 1, funs, consts)
        rhs_args = random_term(rng, max_depth - 1, funs, consts, variables(lhs_args))
        try:
            return Rule(App(rng.choice(MARKED), [lhs_args]), App(rng.choice(MARKED), [rhs_args]))
        except MalformedRuleError:
            continue


def random_dpp(
    rng: random.Random,
    max_pairs: int = 3,
    max_rules: int = 3,
    max_depth: int = 3,
    shape: str = "any",
) -> RelativeDpp:
    """A random well-formed problem with at most the given numbers of pairs and rules.

    ``shape`` is ``"any"``, ``"classic"`` (no weak pairs, no strict rules),
    ``"no-pairs"`` or ``"no-strict"`` (the two trivially finite shapes).
    """
    while True:
        n_pairs = rng.randint(0 if shape == "no-pairs" else 1, max_pairs)
        n_rules = rng.randint(0, max_rules)
        if shape == "no-pairs":
            n_pairs = 0
        pairs = [random_pair(rng, max_depth) for _ in range(n_pairs)]
        rules = [random_rule(rng, max_depth) for _ in range(n_rules)]
        if shape in ("classic", "no-strict"):
            strict_pairs = [] if shape == "no-strict" else pairs
            weak_pairs = pairs if shape == "no-strict" else []
            strict_rules, weak_rules = [], rules
        else:
            strict_pairs, weak_pairs = _partition(rng, pairs)
            strict_rules, weak_rules = _partition(rng, rules)
        try:
            return RelativeDpp(Trs(strict_pairs), Trs(weak_pairs), Trs(strict_rules), Trs(weak_rules))
        except OverlapError:
            continue


def _partition(rng: random.Random, items):
    a, b = [], []
    for it in items:
        (a if rng.random() < 0.5 else b).append(it)
    return a, b

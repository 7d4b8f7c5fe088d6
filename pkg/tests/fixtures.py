"""Concrete problems shared by several test modules."""

from reldp.problem import make
from reldp.terms import Symbol, Var, fun
from reldp.trs import Rule

x, y = Var("x"), Var("y")
a, b = fun("a"), fun("b")
F = Symbol("F", 1, marked=True)
h = Symbol("h", 1)


def s(t):
    return fun("s", t)


MINUS_RULES = [
    Rule(fun("minus", x, fun("0")), x),
    Rule(fun("minus", s(x), s(y)), fun("minus", x, y)),
]
MINUS_TEXT = "(VAR x y)\n(RULES\n  minus(x, 0) -> x\n  minus(s(x), s(y)) -> minus(x, y)\n)\n"

# a weak pair F#(a) -> F#(b) closed into a loop by the strict rule b -> a
WEAK_LOOP_PAIR = Rule(F(a), F(b))
WEAK_LOOP_RULE = Rule(b, a)
WEAK_LOOP = make([], [WEAK_LOOP_PAIR], [WEAK_LOOP_RULE], [])
WEAK_LOOP_TEXT = "(VAR )(WEAK-PAIRS F#(a) -> F#(b))(STRICT-RULES b -> a)"

# Concrete instances of the numbered abstract problems used for the split
# workflow.  The parity of the number of h's is preserved by pair 2 and by the
# rules, and flipped by pair 1, so pair 1 occurs at most once in any chain
# while pair 2 loops forever (F#(a) -> F#(h(h(a))) -> F#(a)).
P1 = Rule(F(h(a)), F(h(h(a))))
P2 = Rule(F(x), F(h(h(x))))
R3 = Rule(h(h(a)), a)
R4 = Rule(a, h(h(a)))
WORKFLOW_A = make([P1, P2], [], [], [R3])
WORKFLOW_B = make([P1, P2], [], [], [R3, R4])

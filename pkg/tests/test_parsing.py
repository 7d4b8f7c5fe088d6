import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import WEAK_LOOP, MINUS_TEXT
from generators import random_dpp, random_rule
from reldp.errors import OverlapError, ParseError
from reldp.parsing import (
    ComponentOverlapError,
    TrsDocument,
    load,
    parse_document,
    parse_rdp,
    parse_trs,
    print_rdp,
    print_trs,
    tokenize,
)
from reldp.problem import RelativeDpp
from reldp.terms import Var, fun
from reldp.trs import Rule, Trs

a, b = fun("a"), fun("b")


class TestTrs:
    def test_single_strict_rule(self):
        doc = parse_trs("(VAR x)(RULES f(s(x)) -> f(x))")
        assert len(doc.strict) == 1 and len(doc.weak) == 0
        assert doc.strict[0] == Rule(fun("f", fun("s", Var("x"))), fun("f", Var("x")))

    def test_weak_rules(self):
        doc = parse_trs("(VAR )(RULES a -> b  b ->= a)")
        assert list(doc.strict) == [Rule(a, b)]
        assert list(doc.weak) == [Rule(b, a)]
        assert doc.is_relative

    def test_minus(self):
        doc = parse_trs(MINUS_TEXT)
        assert len(doc.strict) == 2 and doc.variables == ("x", "y")

    def test_empty_parentheses_make_a_constant(self):
        doc = parse_trs("(RULES c() -> c)")
        assert doc.strict[0].lhs == doc.strict[0].rhs == fun("c")

    def test_undeclared_identifiers_are_constants(self):
        # x is not in VAR, so f(x) -> x is a ground rule
        doc = parse_trs("(RULES f(x) -> x)")
        assert doc.strict[0] == Rule(fun("f", fun("x")), fun("x"))

    def test_unknown_sections_are_skipped(self):
        doc = parse_trs("(VAR x)(COMMENT some (nested) text)(RULES f(x) -> x)")
        assert len(doc.strict) == 1

    def test_hyphenated_identifiers(self):
        doc = parse_trs("(RULES is-zero(a) -> b)")
        assert doc.strict[0].lhs.symbol.name == "is-zero"


class TestErrors:
    @pytest.mark.parametrize(
        "text, line, column",
        [
            ("(VAR x)\n(RULES\n  f(x) -> \n)", 4, 1),
            ("(RULES\n  f(a, b) -> f(a))", 2, 14),
            ("(VAR x)\n(RULES x(a) -> a)", 2, 8),
            ("(RULES a => b)", 1, 10),
            ("(VAR x)(RULES a -> x)", 1, 15),
            ("(RULES a -> b", 1, 14),
        ],
    )
    def test_location(self, text, line, column):
        with pytest.raises(ParseError) as e:
            parse_trs(text)
        assert (e.value.line, e.value.column) == (line, column)
        assert str(e.value).startswith(f"{line}:{column}: ")

    def test_arity_mismatch_message(self):
        with pytest.raises(ParseError, match="arity"):
            parse_trs("(RULES f(a) -> f(a, a))")

    def test_variable_applied(self):
        with pytest.raises(ParseError, match="variable"):
            parse_trs("(VAR x)(RULES x(a) -> a)")

    def test_weak_arrow_not_allowed_in_rdp(self):
        with pytest.raises(ParseError):
            parse_rdp("(STRICT-RULES a ->= b)")

    def test_tokenizer_tracks_lines(self):
        toks = tokenize("(VAR\n  x)")
        assert [(t.kind, t.line, t.column) for t in toks] == [
            ("lp", 1, 1),
            ("ident", 1, 2),
            ("ident", 2, 3),
            ("rp", 2, 4),
            ("eof", 2, 5),
        ]


class TestRdp:
    def test_weak_loop_example(self):
        d = parse_rdp("(VAR )(WEAK-PAIRS F#(a) -> F#(b))(STRICT-RULES b -> a)")
        assert d == WEAK_LOOP

    def test_empty_document(self):
        assert parse_rdp("") == RelativeDpp()

    def test_overlap(self):
        with pytest.raises(ComponentOverlapError) as e:
            parse_rdp("(STRICT-RULES a -> b)\n(WEAK-RULES a -> b)")
        assert isinstance(e.value, OverlapError) and e.value.line == 2

    def test_labels_and_marks(self):
        d = parse_rdp("(VAR x)(STRICT-PAIRS F.01#(x) -> F.1#(g.0(x)))")
        lhs = d.strict_pairs[0].lhs
        assert lhs.symbol.marked and lhs.symbol.label == (0, 1)

    def test_sniffing(self):
        assert parse_document("(STRICT-PAIRS F#(a) -> F#(b))").kind == "rdp"
        assert parse_document(MINUS_TEXT).kind == "trs"

    def test_load_uses_suffix(self, tmp_path):
        p = tmp_path / "p.rdp"
        p.write_text(print_rdp(WEAK_LOOP))
        doc = load(p)
        assert doc.kind == "rdp" and doc.payload == WEAK_LOOP
        assert doc.locations


def _rules(rng, n):
    out = []
    for _ in range(n):
        r = random_rule(rng, 3)
        if r not in out:
            out.append(r)
    return out


class TestRoundTrip:
    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2**32))
    def test_rdp(self, seed):
        d = random_dpp(random.Random(seed))
        assert parse_rdp(print_rdp(d)) == d

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2**32))
    def test_trs(self, seed):
        rng = random.Random(seed)
        rules = _rules(rng, 5)
        k = rng.randint(0, len(rules))
        doc = TrsDocument(Trs(rules[:k]), Trs(rules[k:]))
        back = parse_trs(print_trs(doc))
        assert list(back.strict) == list(doc.strict) and list(back.weak) == list(doc.weak)

    def test_printed_example(self):
        text = print_rdp(WEAK_LOOP)
        assert text == "(VAR )\n(WEAK-PAIRS\n  F#(a) -> F#(b)\n)\n(STRICT-RULES\n  b -> a\n)\n"

"""Readers and printers for the ``.trs`` and ``.rdp`` text formats.

``.trs`` follows the TPDB plain-text convention::

    (VAR x y)
    (RULES
      minus(x, 0) -> x
      f(x) ->= g(x)
    )

where ``->=`` marks a weak (relative) rule.  ``.rdp`` files describe a
relative DP problem with the sections ``STRICT-PAIRS``, ``WEAK-PAIRS``,
``STRICT-RULES`` and ``WEAK-RULES``; identifiers ending in ``#`` are marked.
Identifiers that are not declared in ``VAR`` are function symbols; their
arity is fixed by the first occurrence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from .errors import MalformedRuleError, OverlapError, ParseError
from .problem import COMPONENTS, RelativeDpp
from .terms import App, Symbol, Term, Var, variables
from .trs import Rule, Trs

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<weak>->=)|(?P<arrow>->)|(?P<lp>\()|(?P<rp>\))|(?P<comma>,)"
    r"|(?P<ident>(?:[^\s(),\-]|-(?!>))+)"
)

RDP_SECTIONS = {
    "STRICT-PAIRS": "strict_pairs",
    "WEAK-PAIRS": "weak_pairs",
    "STRICT-RULES": "strict_rules",
    "WEAK-RULES": "weak_rules",
}


class ComponentOverlapError(ParseError, OverlapError):
    """An element listed in two sections of an ``.rdp`` file."""


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, col, i = 1, 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            out.append(Token(kind, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        i = m.end()
    out.append(Token("eof", "", line, col))
    return out


@dataclass
class TrsDocument:
    """A parsed ``.trs`` file: strict rules, weak rules and declared variables."""

    strict: Trs
    weak: Trs
    variables: tuple[str, ...] = ()

    @property
    def is_relative(self) -> bool:
        return len(self.weak) > 0


@dataclass
class InputDocument:
    kind: Literal["trs", "rdp"]
    payload: TrsDocument | RelativeDpp
    locations: dict[Rule, tuple[int, int]] = field(default_factory=dict)


class _Parser:
    def __init__(self, text: str, marks: bool):
        self.tokens = tokenize(text)
        self.i = 0
        self.marks = marks
        self.vars: set[str] = set()
        self.declared: list[str] = []
        self.arities: dict[str, int] = {}
        self.locations: dict[Rule, tuple[int, int]] = {}
        self.section_starts: list[tuple[int, int]] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, what: str) -> Token:
        t = self.tok
        if t.kind != kind:
            shown = t.text or "end of input"
            raise ParseError(f"expected {what}, found {shown!r}", t.line, t.column)
        return self.advance()

    def sections(self):
        """Yield (name, token) for each top-level section, positioned after its name."""
        while self.tok.kind != "eof":
            self.expect("lp", "'('")
            name = self.expect("ident", "section name")
            yield name.text.upper(), name
            self.expect("rp", "')'")

    def skip_section(self):
        depth = 0
        while True:
            t = self.tok
            if t.kind == "eof":
                raise ParseError("unterminated section", t.line, t.column)
            if t.kind == "rp" and depth == 0:
                return
            depth += {"lp": 1, "rp": -1}.get(t.kind, 0)
            self.advance()

    def var_section(self):
        while self.tok.kind == "ident":
            name = self.advance().text
            self.vars.add(name)
            if name not in self.declared:
                self.declared.append(name)

    def symbol(self, tok: Token, arity: int) -> Symbol:
        known = self.arities.setdefault(tok.text, arity)
        if known != arity:
            raise ParseError(
                f"symbol {tok.text!r} used with arity {arity}, earlier with arity {known}",
                tok.line,
                tok.column,
            )
        if self.marks:
            return Symbol.parse(tok.text, arity)
        return Symbol(tok.text, arity)

    def term(self) -> Term:
        head = self.expect("ident", "term")
        if self.tok.kind != "lp":
            if head.text in self.vars:
                return Var(head.text)
            return App(self.symbol(head, 0))
        if head.text in self.vars:
            raise ParseError(f"variable {head.text!r} applied to arguments", head.line, head.column)
        self.advance()
        args = []
        if self.tok.kind != "rp":
            args.append(self.term())
            while self.tok.kind == "comma":
                self.advance()
                args.append(self.term())
        self.expect("rp", "',' or ')'")
        return App(self.symbol(head, len(args)), args)

    def rules(self, allow_weak: bool) -> tuple[list[Rule], list[Rule]]:
        strict: list[Rule] = []
        weak: list[Rule] = []
        self.section_starts = []
        while self.tok.kind != "rp":
            start = self.tok
            lhs = self.term()
            arrow = self.tok
            if arrow.kind == "weak" and not allow_weak:
                raise ParseError("'->=' is not allowed here", arrow.line, arrow.column)
            if arrow.kind not in ("arrow", "weak"):
                raise ParseError(f"expected '->', found {arrow.text or 'end of input'!r}", arrow.line, arrow.column)
            self.advance()
            rhs = self.term()
            try:
                rule = Rule(lhs, rhs)
            except MalformedRuleError as e:
                raise ParseError(str(e), start.line, start.column) from None
            self.locations.setdefault(rule, (start.line, start.column))
            self.section_starts.append((start.line, start.column))
            (weak if arrow.kind == "weak" else strict).append(rule)
        return strict, weak


def _parse_trs(text: str) -> tuple[TrsDocument, dict]:
    p = _Parser(text, marks=False)
    strict: list[Rule] = []
    weak: list[Rule] = []
    for name, _ in p.sections():
        if name == "VAR":
            p.var_section()
        elif name == "RULES":
            s, w = p.rules(allow_weak=True)
            strict += s
            weak += w
        else:
            p.skip_section()
    return TrsDocument(Trs(strict), Trs(weak), tuple(p.declared)), p.locations


def parse_trs(text: str) -> TrsDocument:
    return _parse_trs(text)[0]


def _parse_rdp(text: str) -> tuple[RelativeDpp, dict]:
    p = _Parser(text, marks=True)
    parts: dict[str, list[Rule]] = {c: [] for c in COMPONENTS}
    owner: dict[Rule, str] = {}
    for name, tok in p.sections():
        if name == "VAR":
            p.var_section()
        elif name in RDP_SECTIONS:
            comp = RDP_SECTIONS[name]
            rules, _ = p.rules(allow_weak=False)
            for r, (line, col) in zip(rules, p.section_starts):
                if owner.setdefault(r, name) != name:
                    raise ComponentOverlapError(f"{r} appears in both {owner[r]} and {name}", line, col)
            parts[comp] += rules
        else:
            p.skip_section()
    try:
        d = RelativeDpp(*(Trs(parts[c]) for c in COMPONENTS))
    except OverlapError as e:
        raise ComponentOverlapError(str(e)) from None
    return d, p.locations


def parse_rdp(text: str) -> RelativeDpp:
    return _parse_rdp(text)[0]


def parse_document(text: str, kind: Literal["trs", "rdp"] | None = None) -> InputDocument:
    """Parse either format; without ``kind`` it is guessed from the section names."""
    if kind is None:
        kind = "rdp" if any(s in text for s in RDP_SECTIONS) else "trs"
    if kind == "rdp":
        d, loc = _parse_rdp(text)
        return InputDocument("rdp", d, loc)
    doc, loc = _parse_trs(text)
    return InputDocument("trs", doc, loc)


def load(path: str | Path) -> InputDocument:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    suffix = path.suffix.lower()
    kind = {".trs": "trs", ".rdp": "rdp"}.get(suffix)
    return parse_document(text, kind)


def _var_header(rules) -> str:
    names = sorted({x for r in rules for x in variables(r.lhs)})
    return f"(VAR {' '.join(names)})" if names else "(VAR )"


def print_trs(doc: TrsDocument) -> str:
    lines = [_var_header([*doc.strict, *doc.weak]), "(RULES"]
    lines += [f"  {r.lhs} -> {r.rhs}" for r in doc.strict]
    lines += [f"  {r.lhs} ->= {r.rhs}" for r in doc.weak]
    lines.append(")")
    return "\n".join(lines) + "\n"


def print_rdp(d: RelativeDpp) -> str:
    lines = [_var_header([*d.pairs, *d.rules])]
    for section, comp in RDP_SECTIONS.items():
        rules = getattr(d, comp)
        if not rules:
            continue
        lines.append(f"({section}")
        lines += [f"  {r.lhs} -> {r.rhs}" for r in rules]
        lines.append(")")
    return "\n".join(lines) + "\n"

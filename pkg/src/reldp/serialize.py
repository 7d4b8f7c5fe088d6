"""JSON encoding of terms, problems, witnesses and proof trees.

Term JSON is ``{"var": name}`` or ``{"fun": name, "args": [...]}``; symbol
names use the printed form (``f#`` for marked, ``f.01`` for labeled).
Documents are dumped with sorted keys so equal objects give equal bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ReldpError
from .oracle import ChainStep, ChainWitness, Minimality, RewriteStep
from .problem import COMPONENTS, RelativeDpp
from .processors import FiniteModel, LinearInterpretation, Monotonicity, ProcessorError
from .terms import App, Symbol, Term, Var
from .trs import Rule, Trs


class FormatError(ReldpError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def term_to_json(t: Term) -> dict:
    if isinstance(t, Var):
        return {"var": t.name}
    return {"fun": str(t.symbol), "args": [term_to_json(a) for a in t.args]}


def term_from_json(j) -> Term:
    try:
        if "var" in j:
            return Var(j["var"])
        args = [term_from_json(a) for a in j.get("args", [])]
        return App(Symbol.parse(j["fun"], len(args)), args)
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"bad term {j!r}: {e}") from None


def rule_to_json(r: Rule) -> dict:
    return {"lhs": term_to_json(r.lhs), "rhs": term_to_json(r.rhs)}


def rule_from_json(j) -> Rule:
    try:
        return Rule(term_from_json(j["lhs"]), term_from_json(j["rhs"]))
    except (KeyError, TypeError) as e:
        raise FormatError(f"bad rule {j!r}: {e}") from None


def problem_to_json(d: RelativeDpp) -> dict:
    return {name: [rule_to_json(r) for r in getattr(d, name)] for name in COMPONENTS}


def problem_from_json(j) -> RelativeDpp:
    return RelativeDpp(*(Trs(rule_from_json(r) for r in j.get(name, [])) for name in COMPONENTS))


def _subst_to_json(sigma) -> dict:
    return {x: term_to_json(t) for x, t in sigma.items()}


def _subst_from_json(j) -> dict:
    return {x: term_from_json(t) for x, t in j.items()}


def witness_to_json(w: ChainWitness) -> dict:
    return {
        "steps": [
            {
                "pair": s.pair_index,
                "strict": s.strict,
                "sigma": _subst_to_json(s.sigma),
                "connection": [
                    {"rule": r.rule_index, "position": list(r.position), "strict": r.strict}
                    for r in s.connection
                ],
            }
            for s in w.steps
        ],
        "theta": _subst_to_json(w.theta),
        "minimality": w.minimality.value,
        "sn_budget": w.sn_budget,
    }


def witness_from_json(j) -> ChainWitness:
    try:
        steps = tuple(
            ChainStep(
                int(s["pair"]),
                bool(s["strict"]),
                _subst_from_json(s["sigma"]),
                tuple(
                    RewriteStep(int(r["rule"]), tuple(int(p) for p in r["position"]), bool(r["strict"]))
                    for r in s["connection"]
                ),
            )
            for s in j["steps"]
        )
        return ChainWitness(
            steps,
            _subst_from_json(j.get("theta", {})),
            Minimality(j.get("minimality", "Unknown")),
            int(j.get("sn_budget", 50)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"bad witness: {e}") from None


def _table_key(f: Symbol):
    return (str(f), f.arity)


def interpretation_to_json(i: LinearInterpretation) -> dict:
    return {
        "mode": i.mode.value,
        "table": [
            {"symbol": str(f), "arity": f.arity, "coefficients": list(cs)}
            for f, cs in sorted(i.table.items(), key=lambda kv: _table_key(kv[0]))
        ],
    }


def interpretation_from_json(j) -> LinearInterpretation:
    try:
        table = {
            Symbol.parse(e["symbol"], int(e["arity"])): tuple(e["coefficients"]) for e in j["table"]
        }
        return LinearInterpretation(table, Monotonicity(j["mode"]))
    except (KeyError, TypeError, ValueError, ProcessorError) as e:
        raise FormatError(f"bad interpretation: {e}") from None


def model_to_json(m: FiniteModel) -> dict:
    return {
        "carrier_size": m.size,
        "tables": [
            {"symbol": str(f), "arity": f.arity, "values": list(t)}
            for f, t in sorted(m.tables.items(), key=lambda kv: _table_key(kv[0]))
        ],
    }


def model_from_json(j) -> FiniteModel:
    try:
        tables = {Symbol.parse(e["symbol"], int(e["arity"])): tuple(e["values"]) for e in j["tables"]}
        return FiniteModel(int(j["carrier_size"]), tables)
    except (KeyError, TypeError, ValueError, ProcessorError) as e:
        raise FormatError(f"bad model: {e}") from None


def params_to_json(processor: str | None, params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, LinearInterpretation):
            out[k] = interpretation_to_json(v)
        elif isinstance(v, FiniteModel):
            out[k] = model_to_json(v)
        else:
            out[k] = v
    return out


def params_from_json(processor: str | None, j: dict) -> dict:
    out = dict(j)
    if "interpretation" in out:
        out["interpretation"] = interpretation_from_json(out["interpretation"])
    if "model" in out:
        out["model"] = model_from_json(out["model"])
    return out

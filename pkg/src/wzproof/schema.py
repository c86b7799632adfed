"""JSON form of theorem specs, terms and proof transcripts.

Spec grammar (all symbolic values are strings in the ``parse_rational`` syntax)::

    {"name": str, "parameters": [str], "upper": [str], "lower": [str],
     "z": str, "rhs_gammas": [{"sign": 1 | -1, "arg": str}],
     "rhs_constant": str, "conditions": ["Re(L) < c", ...]}

Transcripts store their steps as objects keyed by ``kind``; exact values
inside steps carry a one-key tag (``$term``, ``$rf``, ``$poly``, ``$cond``,
``$growth``, ``$limit``, ``$closure``) so they decode without a side table.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Any

from gmpy2 import mpq

from .algebra import ParseError, Polynomial, RationalFunction, parse_poly, parse_rational
from .asympt import GrowthEstimate, LimitKind, LimitResult, Regime
from .conditions import ConditionError, ConvergenceCondition, format_affine
from .hyperterm import AffineArg, GammaFactor, HyperTerm, TheoremSpec

TRANSCRIPT_FORMAT = "wzproof-transcript/1"
EXTRA_KEYS = {"certificate", "shift", "term", "extensions"}
SPEC_KEYS = ("name", "parameters", "upper", "lower", "z", "rhs_gammas", "rhs_constant", "conditions")


class SchemaError(ValueError):
    pass


def _q(x) -> str:
    x = mpq(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_rf(text: str) -> RationalFunction:
    try:
        return parse_rational(str(text))
    except (ParseError, ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"bad expression {text!r}: {e}") from None


def _parse_poly(text: str) -> Polynomial:
    try:
        return parse_poly(str(text))
    except (ParseError, ValueError) as e:
        raise SchemaError(f"bad polynomial {text!r}: {e}") from None


def _parse_cond(text: str) -> ConvergenceCondition:
    try:
        return ConvergenceCondition.parse(text)
    except (ConditionError, ParseError, ValueError) as e:
        raise SchemaError(f"bad condition {text!r}: {e}") from None


# -- terms --------------------------------------------------------------------------------------


def term_to_json(t: HyperTerm) -> dict:
    return {
        "base": str(t.base),
        "gammas": [{"arg": format_affine(g.arg.poly), "exponent": g.exponent} for g in t.gammas],
        "prefactor": str(t.prefactor),
        "constant_bases": [{"base": str(b), "exponent": str(e)} for b, e in t.constant_bases],
    }


def term_from_json(d: dict) -> HyperTerm:
    try:
        gammas = tuple(GammaFactor(AffineArg(_parse_poly(g["arg"])), int(g["exponent"])) for g in d.get("gammas", ()))
        bases = tuple((_parse_rf(b["base"]), _parse_poly(b["exponent"])) for b in d.get("constant_bases", ()))
        return HyperTerm(_parse_rf(d.get("base", "1")), gammas, _parse_rf(d.get("prefactor", "1")), bases)
    except (KeyError, TypeError) as e:
        raise SchemaError(f"malformed term: {e}") from None


# -- specs --------------------------------------------------------------------------------------


def spec_to_json(spec: TheoremSpec) -> dict:
    rhs = spec.rhs
    if rhs.constant_bases or rhs.base != 1 or not rhs.prefactor.is_constant():
        raise SchemaError("rhs must be a constant times a Gamma product")
    return {
        "name": spec.name,
        "parameters": list(spec.parameters),
        "upper": [format_affine(p) for p in spec.upper],
        "lower": [format_affine(p) for p in spec.lower],
        "z": str(spec.z),
        "rhs_gammas": [{"sign": g.exponent, "arg": format_affine(g.arg.poly)} for g in rhs.gammas],
        "rhs_constant": str(rhs.prefactor),
        "conditions": [str(c) for c in spec.stated_conditions],
    }


def spec_from_json(d: dict) -> TheoremSpec:
    if not isinstance(d, dict):
        raise SchemaError("a theorem spec must be a JSON object")
    missing = [k for k in ("name", "upper", "lower", "z", "rhs_gammas") if k not in d]
    if missing:
        raise SchemaError(f"missing fields: {', '.join(missing)}")
    unknown = set(d) - set(SPEC_KEYS) - EXTRA_KEYS
    if unknown:
        raise SchemaError(f"unknown fields: {', '.join(sorted(unknown))}")
    upper = tuple(_parse_poly(x) for x in d["upper"])
    lower = tuple(_parse_poly(x) for x in d["lower"])
    gammas = []
    for g in d["rhs_gammas"]:
        try:
            sign = int(g["sign"])
            arg = _parse_poly(g["arg"])
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"malformed rhs gamma {g!r}: {e}") from None
        if sign == 0:
            raise SchemaError("rhs gamma sign must be nonzero")
        gammas.append((AffineArg(arg), sign))
    rhs = HyperTerm.make(gammas, prefactor=_parse_rf(d.get("rhs_constant", "1")))
    found = set()
    for p in upper + lower:
        found |= p.variables()
    z = _parse_rf(d["z"])
    found |= rhs.variables() | z.variables()
    if {"n", "k"} & found:
        raise SchemaError("n and k are reserved and may not appear in a spec")
    params = tuple(d.get("parameters") or sorted(found))
    if set(params) != found:
        raise SchemaError(f"parameters {list(params)} do not match the symbols used {sorted(found)}")
    conds = tuple(_parse_cond(c) for c in d.get("conditions", ()))
    try:
        return TheoremSpec(str(d["name"]), params, upper, lower, z, rhs, conds)
    except ValueError as e:
        raise SchemaError(str(e)) from None


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, two-space indent)."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None


# -- tagged values ------------------------------------------------------------------------------


def encode(v: Any) -> Any:
    from .prover import ClosureForm

    if isinstance(v, HyperTerm):
        return {"$term": term_to_json(v)}
    if isinstance(v, RationalFunction):
        return {"$rf": str(v)}
    if isinstance(v, Polynomial):
        return {"$poly": str(v)}
    if isinstance(v, ConvergenceCondition):
        return {"$cond": str(v)}
    if isinstance(v, GrowthEstimate):
        return {"$growth": {"exponent": str(v.exponent), "has_positive_factor": v.has_positive_factor,
                            "regime": v.regime.value, "modulus": _q(v.modulus)}}
    if isinstance(v, LimitResult):
        return {"$limit": {"kind": v.kind.value, "limit_term": encode(v.limit_term),
                           "conditions": encode(v.conditions), "n_exponent": str(v.n_exponent),
                           "note": v.note}}
    if isinstance(v, ClosureForm):
        return {"$closure": {"kind": v.kind, "value": encode(v.value), "beta": encode(v.beta),
                             "z": encode(v.z)}}
    if isinstance(v, (list, tuple)):
        return [encode(x) for x in v]
    if v is None or isinstance(v, (str, int, bool)):
        return v
    raise SchemaError(f"cannot encode {type(v).__name__}")


def decode(v: Any) -> Any:
    from .prover import ClosureForm

    if isinstance(v, list):
        return tuple(decode(x) for x in v)
    if not isinstance(v, dict):
        return v
    if len(v) != 1:
        raise SchemaError(f"untagged object {sorted(v)}")
    (tag, body), = v.items()
    if tag == "$term":
        return term_from_json(body)
    if tag == "$rf":
        return _parse_rf(body)
    if tag == "$poly":
        return _parse_poly(body)
    if tag == "$cond":
        return _parse_cond(body)
    if tag == "$growth":
        return GrowthEstimate(_parse_poly(body["exponent"]), bool(body["has_positive_factor"]),
                              Regime(body["regime"]), mpq(body["modulus"]))
    if tag == "$limit":
        return LimitResult(LimitKind(body["kind"]), decode(body["limit_term"]), decode(body["conditions"]),
                           _parse_poly(body["n_exponent"]), body.get("note", ""))
    if tag == "$closure":
        return ClosureForm(body["kind"], decode(body["value"]), decode(body["beta"]), decode(body["z"]))
    raise SchemaError(f"unknown tag {tag}")


# -- transcripts --------------------------------------------------------------------------------


def transcript_to_json(t) -> dict:
    steps = []
    for s in t.steps:
        item = {"kind": s.kind}
        for f in dataclasses.fields(s):
            item[f.name] = encode(getattr(s, f.name))
        steps.append(item)
    v = t.verdict
    return {
        "format": TRANSCRIPT_FORMAT,
        "theorem": t.theorem,
        "steps": steps,
        "verdict": {"proved": v.proved, "conditions": [str(c) for c in v.conditions],
                    "step": v.step, "reason": v.reason},
        "genericity": list(t.genericity),
        "stated_conditions": [str(c) for c in t.stated_conditions],
        "notes": list(t.notes),
    }


def transcript_from_json(d: dict):
    from . import prover

    if d.get("format") != TRANSCRIPT_FORMAT:
        raise SchemaError(f"not a transcript (format {d.get('format')!r})")
    kinds = {cls.kind: cls for cls in (prover.ShiftStep, prover.WZStep, prover.BoundaryStep,
                                       prover.IndependenceStep, prover.TermLimitStep, prover.DominationStep,
                                       prover.ClosureStep, prover.ExtensionStep)}
    steps = []
    for item in d["steps"]:
        cls = kinds.get(item.get("kind"))
        if cls is None:
            raise SchemaError(f"unknown step kind {item.get('kind')!r}")
        kwargs = {f.name: decode(item[f.name]) for f in dataclasses.fields(cls)}
        steps.append(cls(**kwargs))
    v = d["verdict"]
    verdict = prover.Verdict(bool(v["proved"]), tuple(_parse_cond(c) for c in v["conditions"]),
                             v.get("step"), v.get("reason", ""))
    return prover.ProofTranscript(d["theorem"], tuple(steps), verdict, tuple(d.get("genericity", ())),
                                  tuple(_parse_cond(c) for c in d.get("stated_conditions", ())),
                                  tuple(d.get("notes", ())))


__all__ = [
    "SchemaError",
    "TRANSCRIPT_FORMAT",
    "decode",
    "dumps",
    "encode",
    "loads",
    "spec_from_json",
    "spec_to_json",
    "term_from_json",
    "term_to_json",
    "transcript_from_json",
    "transcript_to_json",
]

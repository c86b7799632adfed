"""Real-part conditions ``Re(L) < 0`` / ``Re(L) <= 0`` with ``L`` affine."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .algebra import Polynomial, parse_poly


class ConditionError(ValueError):
    pass


def _linear_part(form: Polynomial) -> Polynomial:
    return form - form.constant_value()


def _format_affine(form: Polynomial, constant_first: bool = True) -> str:
    """``1+a-2*b+2*n+k``: constant first, then parameters, then ``n``, ``k``."""
    items = []
    const = form.constant_value()
    for exps, c in form.monomials():
        if not exps:
            continue
        (v, e), = exps.items()
        items.append((v, c))
    order = lambda vc: (0 if vc[0] not in ("n", "k") else 1 if vc[0] == "n" else 2, vc[0])
    items.sort(key=order)
    parts = []
    if const != 0 and constant_first:
        parts.append(("-" if const < 0 else "+", _num(abs(const))))
    for v, c in items:
        a = abs(c)
        if a == 1:
            body = v
        elif a.denominator == 1:
            body = f"{a.numerator}{v}"
        elif a.numerator == 1:
            body = f"{v}/{a.denominator}"
        else:
            body = f"{a.numerator}{v}/{a.denominator}"
        parts.append(("-" if c < 0 else "+", body))
    if const != 0 and not constant_first:
        parts.append(("-" if const < 0 else "+", _num(abs(const))))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        out += s + b
    return out


def _num(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_affine(form: Polynomial) -> str:
    return _format_affine(form)


@dataclass(frozen=True)
class ConvergenceCondition:
    """``Re(form) < 0`` (``strict``) or ``Re(form) <= 0``.

    The form is stored divided by its positive rational content, so
    ``Re(2b-2) < 0`` and ``Re(b-1) < 0`` are the same condition.
    """

    form: Polynomial
    strict: bool = True

    def __post_init__(self):
        f = Polynomial.coerce(self.form)
        if f.degree() > 1:
            raise ConditionError("condition form must be affine")
        lin = _linear_part(f)
        if not lin.is_zero():
            f = f.scale(1 / lin.content())
        object.__setattr__(self, "form", f.stripped())

    @classmethod
    def less(cls, lhs, rhs=0, strict: bool = True) -> "ConvergenceCondition":
        """``Re(lhs) < rhs``."""
        return cls(Polynomial.coerce(_poly(lhs)) - _poly(rhs), strict)

    @classmethod
    def greater(cls, lhs, rhs=0, strict: bool = True) -> "ConvergenceCondition":
        return cls(Polynomial.coerce(_poly(rhs)) - _poly(lhs), strict)

    @classmethod
    def parse(cls, text: str) -> "ConvergenceCondition":
        m = re.fullmatch(r"\s*Re\((.+)\)\s*(<=|>=|<|>|≤|≥)\s*(.+?)\s*", text)
        if not m:
            raise ConditionError(f"cannot parse condition {text!r}")
        lhs, op, rhs = m.groups()
        op = {"≤": "<=", "≥": ">="}.get(op, op)
        strict = op in ("<", ">")
        if op.startswith("<"):
            return cls.less(lhs, rhs, strict)
        return cls.greater(lhs, rhs, strict)

    @property
    def linear(self) -> Polynomial:
        return _linear_part(self.form)

    @property
    def constant(self):
        return self.form.constant_value()

    def variables(self) -> set[str]:
        return self.form.variables()

    def is_trivial(self) -> bool:
        return self.linear.is_zero()

    def trivially_true(self) -> bool:
        c = self.constant
        return self.is_trivial() and (c < 0 or (c == 0 and not self.strict))

    def implies(self, other: "ConvergenceCondition") -> bool:
        """Same linear part and at least as strong."""
        if self.linear != other.linear:
            return other.trivially_true()
        if self.constant != other.constant:
            return self.constant > other.constant
        return self.strict or not other.strict

    def holds_at(self, values) -> bool:
        v = self.form.evaluate(values)
        return v < 0 if self.strict else v <= 0

    def margin_at(self, values):
        return -self.form.evaluate(values)

    def shifted(self, param: str, amount) -> "ConvergenceCondition":
        """Condition after substituting ``param -> param + amount``."""
        return ConvergenceCondition(self.form.shift(param, amount), self.strict)

    def __str__(self) -> str:
        rel = "<" if self.strict else "<="
        lin = self.linear
        const = self.constant
        if lin.is_zero():
            return f"{_num(const)} {rel} 0"
        if len(lin.terms) == 1:
            (exps, c), = lin.monomials()
            (v, _), = exps.items()
            if c > 0:
                return f"Re({v}) {rel} {_num(-const)}"
            rel = ">" if self.strict else ">="
            return f"Re({v}) {rel} {_num(const)}"
        # several symbols: positive constant inside, compare with 0
        if const > 0:
            return f"Re({_format_affine(lin + const)}) {rel} 0"
        rel2 = ">" if self.strict else ">="
        neg = -(lin + const)
        if const < 0:
            return f"Re({_format_affine(neg)}) {rel2} 0"
        first = min(lin.variables(), key=_param_order)
        if lin.coeff(first, 1).constant_value() > 0:
            return f"Re({_format_affine(lin)}) {rel} 0"
        return f"Re({_format_affine(neg)}) {rel2} 0"

    def __repr__(self) -> str:
        return f"ConvergenceCondition({str(self)!r})"


def _param_order(v: str):
    return (1, v) if v in ("n", "k") else (0, v)


def _poly(x) -> Polynomial:
    if isinstance(x, str):
        return parse_poly(x)
    return Polynomial.coerce(x)


def eliminate_n(cond: ConvergenceCondition) -> ConvergenceCondition | None:
    """Condition required for every integer ``n >= 0``.

    Returns ``None`` when the condition fails for large ``n``.
    """
    if "n" not in cond.variables():
        return cond
    cn = cond.form.coeff("n", 1).constant_value()
    if cn > 0:
        return None
    return ConvergenceCondition(cond.form.subs({"n": 0}), cond.strict)


def simplify(conds: Iterable[ConvergenceCondition]) -> list[ConvergenceCondition]:
    """Drop trivially true and implied conditions; deterministic order.

    Raises :class:`ConditionError` if a trivially false condition is present.
    """
    best: dict = {}
    for c in conds:
        if c.is_trivial():
            if c.trivially_true():
                continue
            raise ConditionError(f"unsatisfiable condition {c}")
        key = c.linear
        cur = best.get(key)
        if cur is None or c.implies(cur):
            best[key] = c
    for key, c in best.items():
        d = best.get(-key)
        if d is None:
            continue
        # L + c1 < 0 and -L + c2 < 0 add up to c1 + c2 < 0
        total = c.constant + d.constant
        if total > 0 or (total == 0 and (c.strict or d.strict)):
            raise ConditionError(f"unsatisfiable pair {c} and {d}")
    return sorted(best.values(), key=lambda c: (str(c.linear), str(c)))


def conjunction_str(conds: Iterable[ConvergenceCondition]) -> str:
    conds = list(conds)
    return " and ".join(str(c) for c in conds) if conds else "(none)"


__all__ = [
    "ConditionError",
    "ConvergenceCondition",
    "conjunction_str",
    "eliminate_n",
    "format_affine",
    "simplify",
]

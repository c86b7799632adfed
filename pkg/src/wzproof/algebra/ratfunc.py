"""Normalised quotients of polynomials."""

from __future__ import annotations

from typing import Mapping

from gmpy2 import mpq

from .gcd import poly_gcd
from .poly import ONE, ZERO, Polynomial

_MPQ = type(mpq(1))


class RationalFunction:
    """``num / den`` with coprime parts and a monic denominator.

    The denominator's leading coefficient (lex order, ``k > n > params``) is
    1, so two equal rational functions have identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, normalized: bool = False):
        num = Polynomial.coerce(num)
        den = ONE if den is None else Polynomial.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        elif not normalized:
            if not den.is_constant():
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
        lc = den.lc()
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        self.num = num.stripped()
        self.den = den.stripped()

    @staticmethod
    def coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return RationalFunction(Polynomial.coerce(x), ONE, normalized=True)

    @classmethod
    def var(cls, name: str) -> "RationalFunction":
        return cls(Polynomial.var(name), ONE, normalized=True)

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value() / self.den.constant_value()

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "RationalFunction":
        other = RationalFunction.coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if self.den.is_constant() or other.den.is_constant():
            num = self.num * other.den + other.num * self.den
            return RationalFunction(num, self.den * other.den)
        g = poly_gcd(self.den, other.den)
        d1 = self.den.exact_div(g)
        d2 = other.den.exact_div(g)
        num = self.num * d2 + other.num * d1
        return RationalFunction(num, d1 * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, normalized=True)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = RationalFunction.coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalFunction(ZERO)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = self.num.exact_div(g1), other.den.exact_div(g1)
        n2, d1 = other.num.exact_div(g2), self.den.exact_div(g2)
        return RationalFunction(n1 * n2, d1 * d2, normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num, normalized=True)

    def __truediv__(self, other) -> "RationalFunction":
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "RationalFunction":
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num ** e, self.den ** e, normalized=True)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- substitution -------------------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "RationalFunction":
        num, den = self.num, self.den
        polys = {}
        rats = {}
        for v, x in mapping.items():
            if isinstance(x, RationalFunction) and not x.is_polynomial():
                rats[v] = x
            else:
                polys[v] = x.num / x.den.constant_value() if isinstance(x, RationalFunction) else x
        if polys:
            num, den = num.subs(polys), den.subs(polys)
        result = RationalFunction(num, den)
        if rats:
            result = _subs_rational(result.num, rats) / _subs_rational(result.den, rats)
        return result

    def shift(self, var: str, amount) -> "RationalFunction":
        if var not in self.variables() or amount == 0:
            return self
        return RationalFunction(self.num.shift(var, amount), self.den.shift(var, amount), normalized=True)

    def evaluate(self, values: Mapping[str, object]):
        d = self.den.evaluate(values)
        if d == 0:
            raise ZeroDivisionError("rational function has a pole at this point")
        n = self.num.evaluate(values)
        # a constant side stays exact while the other side may be a float type
        if isinstance(n, _MPQ) and not isinstance(d, _MPQ):
            n = (d * 0 + int(n.numerator)) / int(n.denominator)
        elif isinstance(d, _MPQ) and not isinstance(n, _MPQ):
            d = (n * 0 + int(d.numerator)) / int(d.denominator)
        return n / d

    def degree(self, var: str) -> int:
        """``deg_var(num) - deg_var(den)``."""
        return self.num.degree(var) - self.den.degree(var)

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        n = str(self.num)
        d = str(self.den)
        if len(self.num.terms) > 1:
            n = f"({n})"
        if len(self.den.terms) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"


def _subs_rational(p: Polynomial, mapping: Mapping[str, RationalFunction]) -> RationalFunction:
    result = RationalFunction(ZERO)
    for exps, c in p.monomials():
        term = RationalFunction(Polynomial.const(c))
        for v, e in exps.items():
            factor = mapping[v] if v in mapping else RationalFunction.var(v)
            term = term * factor ** e
        result = result + term
    return result


def rf(x) -> RationalFunction:
    return RationalFunction.coerce(x)

"""Exact arithmetic layer: polynomials, rational functions, gcd, linear systems."""

from __future__ import annotations

from dataclasses import dataclass

from .gcd import (
    NotDivisible,
    bareiss_det,
    content_in,
    dispersion_set,
    poly_gcd,
    poly_lcm,
    resultant,
)
from .linsolve import linear_solve, nullspace
from .parse import ParseError, parse_poly, parse_rational
from .poly import ONE, ZERO, Polynomial, symbols, var_key
from .ratfunc import RationalFunction, rf

TERM_VARIABLES = ("n", "k")


@dataclass(frozen=True)
class ParamField:
    """The rationals extended by transcendental symbols ``parameters``."""

    parameters: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.parameters)) != len(self.parameters):
            raise ValueError("parameter names must be distinct")
        clash = set(self.parameters) & set(TERM_VARIABLES)
        if clash:
            raise ValueError(f"reserved names used as parameters: {sorted(clash)}")

    def element(self, value) -> RationalFunction:
        x = parse_rational(value) if isinstance(value, str) else RationalFunction.coerce(value)
        if not self.contains(x):
            raise ValueError(f"{x} is not an element of Q({', '.join(self.parameters)})")
        return x

    def contains(self, x) -> bool:
        return RationalFunction.coerce(x).variables() <= set(self.parameters)


def resultant_k(p: Polynomial, q: Polynomial, var: str = "k") -> Polynomial:
    return resultant(p, q, var)


__all__ = [
    "NotDivisible",
    "ONE",
    "ParamField",
    "ParseError",
    "Polynomial",
    "RationalFunction",
    "ZERO",
    "bareiss_det",
    "content_in",
    "dispersion_set",
    "linear_solve",
    "nullspace",
    "parse_poly",
    "parse_rational",
    "poly_gcd",
    "poly_lcm",
    "resultant",
    "resultant_k",
    "rf",
    "symbols",
    "var_key",
]

"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are packed into a single Python int: one 16-bit field per
generator, the highest-priority generator in the most significant field.
Integer comparison of packed monomials is then lexicographic order and
monomial multiplication is integer addition.

Generator priority is fixed globally: ``k`` first, then ``n``, then every
other symbol alphabetically.  All canonical forms (leading terms, monic
normalisation) refer to this lexicographic order.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from gmpy2 import mpq

WIDTH = 16
FIELD = (1 << WIDTH) - 1
MAX_EXP = 1 << (WIDTH - 1)

Q = mpq
ZERO_Q = mpq(0)
ONE_Q = mpq(1)


class NotDivisible(ArithmeticError):
    """Raised by exact division when the divisor does not divide."""


def var_key(name: str):
    if name == "k":
        return (0, "")
    if name == "n":
        return (1, "")
    return (2, name)


def sort_gens(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


def _pack(exps) -> int:
    m = 0
    for e in exps:
        if e >= MAX_EXP or e < 0:
            raise OverflowError("exponent out of range")
        m = (m << WIDTH) | e
    return m


def _unpack(m: int, nvars: int) -> list[int]:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = m & FIELD
        m >>= WIDTH
    return out


def _remap(terms: dict, old: tuple, new: tuple) -> dict:
    if old == new:
        return terms
    nold, nnew = len(old), len(new)
    pos = {g: nnew - 1 - i for i, g in enumerate(new)}
    # generators missing from ``new`` must have zero exponents everywhere
    shifts = [(WIDTH * (nold - 1 - i), WIDTH * pos[g]) for i, g in enumerate(old) if g in pos]
    out = {}
    for m, c in terms.items():
        mm = 0
        for src, dst in shifts:
            mm |= ((m >> src) & FIELD) << dst
        out[mm] = c
    return out


def _coerce_q(c) -> mpq:
    if isinstance(c, type(ONE_Q)):
        return c
    if isinstance(c, float):
        raise TypeError("floats are not exact coefficients")
    return mpq(c)


class Polynomial:
    """Immutable sparse polynomial.

    ``gens`` is a sorted tuple of generator names and ``terms`` maps packed
    monomials to nonzero ``mpq`` coefficients.  Generators that no longer
    occur are allowed in ``gens``; equality and hashing ignore them.
    """

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, terms: dict | None = None, gens: tuple[str, ...] = ()):
        self.gens = gens
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c) -> "Polynomial":
        c = _coerce_q(c)
        if c == 0:
            return cls({}, ())
        return cls({0: c}, ())

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({1: ONE_Q}, (name,))

    @classmethod
    def from_dict(cls, data: Mapping[tuple, object], gens: Iterable[str]) -> "Polynomial":
        """Build from ``{exponent tuple: coefficient}`` in the order of ``gens``."""
        gens = tuple(gens)
        target = sort_gens(gens)
        perm = [gens.index(g) for g in target]
        terms: dict[int, mpq] = {}
        for exps, c in data.items():
            c = _coerce_q(c)
            if c == 0:
                continue
            m = _pack(exps[i] for i in perm)
            terms[m] = terms.get(m, ZERO_Q) + c
            if terms[m] == 0:
                del terms[m]
        return cls(terms, target)

    @staticmethod
    def coerce(x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        return Polynomial.const(x)

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        return len(self.terms) == 1 and 0 in self.terms

    def constant_value(self) -> mpq:
        return self.terms.get(0, ZERO_Q)

    def variables(self) -> set[str]:
        used = 0
        for m in self.terms:
            used |= m
        out = set()
        nv = len(self.gens)
        for i, g in enumerate(self.gens):
            if (used >> (WIDTH * (nv - 1 - i))) & FIELD:
                out.add(g)
        return out

    def stripped(self) -> "Polynomial":
        used = self.variables()
        if len(used) == len(self.gens):
            return self
        new = tuple(g for g in self.gens if g in used)
        return Polynomial(_remap(self.terms, self.gens, new), new)

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree when ``var`` is None); -1 for zero."""
        if not self.terms:
            return -1
        nv = len(self.gens)
        if var is None:
            return max(sum(_unpack(m, nv)) for m in self.terms)
        if var not in self.gens:
            return 0
        shift = WIDTH * (nv - 1 - self.gens.index(var))
        return max((m >> shift) & FIELD for m in self.terms)

    def leading_monomial(self) -> int:
        return max(self.terms)

    def lc(self) -> mpq:
        """Leading coefficient under lex order."""
        if not self.terms:
            return ZERO_Q
        return self.terms[max(self.terms)]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lc()
        if c == 1:
            return self
        inv = 1 / c
        return Polynomial({m: v * inv for m, v in self.terms.items()}, self.gens)

    def content(self) -> mpq:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        from gmpy2 import gcd, lcm

        num, den = 0, 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return mpq(num, den) if num else ONE_Q

    def primitive(self) -> "Polynomial":
        """Integer-coefficient associate with content 1 and positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.lc() < 0:
            c = -c
        return self.scale(1 / c)

    def monomials(self):
        """Yield ``(exponent dict, coefficient)`` pairs."""
        nv = len(self.gens)
        for m, c in self.terms.items():
            exps = _unpack(m, nv)
            yield {g: e for g, e in zip(self.gens, exps) if e}, c

    # -- arithmetic ---------------------------------------------------
    def _unify(self, other: "Polynomial"):
        if self.gens == other.gens:
            return self.gens, self.terms, other.terms
        gens = sort_gens(self.gens + other.gens)
        return gens, _remap(self.terms, self.gens, gens), _remap(other.terms, other.gens, gens)

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        gens, a, b = self._unify(other)
        out = dict(a)
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(out, gens)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()}, self.gens)

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _coerce_q(c)
        if c == 0:
            return Polynomial({}, self.gens)
        if c == 1:
            return self
        return Polynomial({m: v * c for m, v in self.terms.items()}, self.gens)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial({}, ())
        if other.is_constant():
            return self.scale(other.terms[0])
        if self.is_constant():
            return other.scale(self.terms[0])
        gens, a, b = self._unify(other)
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, mpq] = {}
        get = out.get
        bitems = list(b.items())
        for m1, c1 in a.items():
            for m2, c2 in bitems:
                m = m1 + m2
                out[m] = get(m, ZERO_Q) + c1 * c2
        return Polynomial({m: c for m, c in out.items() if c}, gens)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers need a nonnegative integer")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division by a nonzero constant; use :meth:`exact_div` for polynomials."""
        if isinstance(other, Polynomial):
            if other.is_constant() and not other.is_zero():
                return self.scale(1 / other.terms[0])
            return NotImplemented
        return self.scale(1 / _coerce_q(other))

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.const(other)
            except TypeError:
                return NotImplemented
        if self.gens == other.gens:
            return self.terms == other.terms
        a, b = self.stripped(), other.stripped()
        return a.gens == b.gens and a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            s = self.stripped()
            self._hash = hash((s.gens, frozenset(s.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- univariate views ---------------------------------------------
    def to_univariate(self, var: str) -> list["Polynomial"]:
        """Coefficients in ``var`` (index = degree) as polynomials in the other generators."""
        if var not in self.gens:
            return [self] if self.terms else []
        nv = len(self.gens)
        idx = self.gens.index(var)
        rest = self.gens[:idx] + self.gens[idx + 1:]
        pos = nv - 1 - idx
        low_mask = (1 << (WIDTH * pos)) - 1
        buckets: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = (m >> (WIDTH * pos)) & FIELD
            mr = ((m >> (WIDTH * (pos + 1))) << (WIDTH * pos)) | (m & low_mask)
            buckets.setdefault(e, {})[mr] = c
        if not buckets:
            return []
        out = [Polynomial({}, rest) for _ in range(max(buckets) + 1)]
        for e, t in buckets.items():
            out[e] = Polynomial(t, rest)
        return out

    @staticmethod
    def from_univariate(coeffs: list["Polynomial"], var: str) -> "Polynomial":
        x = Polynomial.var(var)
        result = Polynomial({}, ())
        for e in range(len(coeffs) - 1, -1, -1):
            result = result * x + coeffs[e]
        return result

    def coeff(self, var: str, e: int) -> "Polynomial":
        uni = self.to_univariate(var)
        return uni[e] if e < len(uni) else Polynomial({}, ())

    # -- substitution and evaluation ----------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "Polynomial":
        """Substitute polynomials (or numbers) for generators."""
        mapping = {v: Polynomial.coerce(p) for v, p in mapping.items() if v in self.gens}
        if not mapping:
            return self
        keep = tuple(g for g in self.gens if g not in mapping)
        idx = {g: i for i, g in enumerate(self.gens)}
        nv = len(self.gens)
        powers: dict[tuple[str, int], Polynomial] = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = mapping[v] ** e
            return powers[key]

        groups: dict[tuple, dict] = {}
        keep_pos = [(nv - 1 - idx[g]) for g in keep]
        sub_vars = [(v, nv - 1 - idx[v]) for v in mapping]
        for m, c in self.terms.items():
            km = 0
            for p in keep_pos:
                km = (km << WIDTH) | ((m >> (WIDTH * p)) & FIELD)
            se = tuple((m >> (WIDTH * p)) & FIELD for _, p in sub_vars)
            groups.setdefault(se, {})[km] = c
        result = Polynomial({}, ())
        for se, t in groups.items():
            part = Polynomial(t, keep)
            for (v, _), e in zip(sub_vars, se):
                if e:
                    part = part * power(v, e)
            result = result + part
        return result

    def shift(self, var: str, amount) -> "Polynomial":
        """``p(var + amount)``."""
        if var not in self.gens or amount == 0:
            return self
        return self.subs({var: Polynomial.var(var) + amount})

    def evaluate(self, values: Mapping[str, object]):
        """Numeric value; every occurring generator must be assigned."""
        nv = len(self.gens)
        vals = []
        for g in self.gens:
            if g in values:
                vals.append(values[g])
            else:
                vals.append(None)
        total = 0
        for m, c in self.terms.items():
            exps = _unpack(m, nv)
            t = c
            for v, e in zip(vals, exps):
                if e:
                    if v is None:
                        raise KeyError("unassigned generator in evaluate")
                    t = t * v ** e
            total = total + t
        return total

    # -- exact division -----------------------------------------------
    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient ``self / other``; raises :class:`NotDivisible` otherwise."""
        other = Polynomial.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self.scale(1 / other.terms[0])
        if self.is_zero():
            return self
        ov = other.variables()
        if not ov <= self.variables():
            raise NotDivisible("divisor has a variable the dividend lacks")
        x = min(ov, key=var_key)
        a = self.to_univariate(x)
        b = other.to_univariate(x)
        db = len(b) - 1
        lb = b[db]
        quot = [Polynomial({}, ()) for _ in range(max(len(a) - db, 0))]
        a = list(a)
        while len(a) - 1 >= db:
            la = a[-1]
            if la.is_zero():
                a.pop()
                continue
            t = la.exact_div(lb)
            d = len(a) - 1 - db
            quot[d] = t
            for i, bi in enumerate(b):
                if bi.terms:
                    a[i + d] = a[i + d] - t * bi
            a.pop()
            while a and a[-1].is_zero():
                a.pop()
        if any(not c.is_zero() for c in a):
            raise NotDivisible("nonzero remainder")
        return Polynomial.from_univariate(quot, x)

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.exact_div(self)
        except NotDivisible:
            return False
        return True

    # -- printing -----------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        nv = len(self.gens)
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            exps = _unpack(m, nv)
            mono = "*".join(
                g if e == 1 else f"{g}^{e}" for g, e in zip(self.gens, exps) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            elif a.denominator == 1:
                body = f"{a.numerator}*{mono}"
            else:
                body = f"{a.numerator}/{a.denominator}*{mono}" if a.numerator != 1 else f"{mono}/{a.denominator}"
            parts.append((sign, body))
        out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


ZERO = Polynomial({}, ())
ONE = Polynomial({0: ONE_Q}, ())


def symbols(names: str) -> tuple[Polynomial, ...]:
    return tuple(Polynomial.var(s) for s in names.replace(",", " ").split())

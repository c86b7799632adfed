"""Proper hypergeometric terms as signed products of Gamma factors.

A :class:`HyperTerm` is

    z^k * prod Gamma(arg_i)^e_i * prefactor(n, k) * prod base_j^exponent_j

with every ``arg_i`` affine in ``n``, ``k`` and the parameters.  Pochhammer
symbols never appear as such: ``(x)_k`` is stored as ``Gamma(x+k)/Gamma(x)``
and ``k!`` as ``Gamma(1+k)``.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq, mpz

from .algebra import ONE, Polynomial, RationalFunction, parse_rational
from .conditions import ConvergenceCondition, format_affine

log = logging.getLogger(__name__)


class ImproperTermError(ValueError):
    """A shift quotient is not a rational function."""


class PoleError(ArithmeticError):
    """Evaluation hit a pole of Gamma or of the prefactor."""


def _affine(x) -> Polynomial:
    if isinstance(x, str):
        r = parse_rational(x)
        if not r.is_polynomial():
            raise ValueError(f"{x!r} is not affine")
        x = r.num.scale(1 / r.den.constant_value())
    elif isinstance(x, RationalFunction):
        if not x.is_polynomial():
            raise ValueError(f"{x} is not affine")
        x = x.num.scale(1 / x.den.constant_value())
    p = Polynomial.coerce(x)
    if p.degree() > 1:
        raise ValueError(f"{p} is not affine")
    return p.stripped()


@dataclass(frozen=True)
class AffineArg:
    """``coeff_n*n + coeff_k*k + constant`` with ``constant`` free of n, k."""

    poly: Polynomial

    def __post_init__(self):
        object.__setattr__(self, "poly", _affine(self.poly))

    @classmethod
    def of(cls, x) -> "AffineArg":
        return x if isinstance(x, AffineArg) else cls(x)

    @property
    def coeff_n(self):
        return self.poly.coeff("n", 1).constant_value()

    @property
    def coeff_k(self):
        return self.poly.coeff("k", 1).constant_value()

    @property
    def constant(self) -> Polynomial:
        return self.poly.subs({"n": 0, "k": 0})

    def coeff(self, var: str):
        return self.poly.coeff(var, 1).constant_value()

    def __add__(self, other) -> "AffineArg":
        other = other.poly if isinstance(other, AffineArg) else other
        return AffineArg(self.poly + other)

    def __sub__(self, other) -> "AffineArg":
        other = other.poly if isinstance(other, AffineArg) else other
        return AffineArg(self.poly - other)

    def subs(self, mapping) -> "AffineArg":
        return AffineArg(self.poly.subs(mapping))

    def sort_key(self):
        return (self.coeff_k, self.coeff_n, str(self))

    def __str__(self) -> str:
        return format_affine(self.poly)

    def __repr__(self) -> str:
        return f"AffineArg({str(self)!r})"


@dataclass(frozen=True)
class GammaFactor:
    arg: AffineArg
    exponent: int

    def __post_init__(self):
        if self.exponent == 0:
            raise ValueError("GammaFactor exponent must be nonzero")


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _merge_gammas(items: Iterable[tuple[AffineArg, int]]) -> tuple[GammaFactor, ...]:
    acc: dict[Polynomial, int] = defaultdict(int)
    args: dict[Polynomial, AffineArg] = {}
    for arg, e in items:
        arg = AffineArg.of(arg)
        acc[arg.poly] += e
        args[arg.poly] = arg
    out = [GammaFactor(args[p], e) for p, e in acc.items() if e]
    out.sort(key=lambda g: (g.arg.sort_key(), g.exponent))
    return tuple(out)


def _merge_bases(items: Iterable[tuple[object, object]]) -> tuple[tuple[RationalFunction, Polynomial], ...]:
    """Combine ``base^exponent`` factors; positive rational bases are split into primes."""
    acc: dict[RationalFunction, Polynomial] = {}
    for base, exp in items:
        base = RationalFunction.coerce(parse_rational(base) if isinstance(base, str) else base)
        exp = _affine(exp) if not isinstance(exp, Polynomial) else exp
        if exp.is_zero():
            continue
        if base.is_constant() and base.constant_value() > 0:
            v = base.constant_value()
            pieces = [(p, e) for p, e in _prime_factors(int(v.numerator)).items()]
            pieces += [(p, -e) for p, e in _prime_factors(int(v.denominator)).items()]
            for p, e in pieces:
                key = RationalFunction.coerce(p)
                acc[key] = acc.get(key, Polynomial.const(0)) + exp.scale(e)
            continue
        acc[base] = acc.get(base, Polynomial.const(0)) + exp
    out = [(b, e.stripped()) for b, e in acc.items() if not e.is_zero() and b != 1]
    out.sort(key=lambda be: (str(be[0]), str(be[1])))
    return tuple(out)


def _monic_linear(p: Polynomial):
    """Split ``p`` into ``(lc, monic)`` using the lex leading coefficient."""
    c = p.lc()
    return c, p.scale(1 / c) if c != 1 else p


def _factors_product(factors: Sequence[Polynomial]) -> Polynomial:
    out = ONE
    for f in factors:
        out = out * f
    return out


@dataclass(frozen=True)
class FactoredRatio:
    """``constant * prod(num) / prod(den)`` with monic linear factors cancelled."""

    constant: RationalFunction
    num: tuple[Polynomial, ...]
    den: tuple[Polynomial, ...]

    def to_rational(self) -> RationalFunction:
        linear = all(f.degree() <= 1 for f in self.num + self.den)
        r = RationalFunction(_factors_product(self.num), _factors_product(self.den), normalized=linear)
        return r * self.constant

    def __mul__(self, other: "FactoredRatio") -> "FactoredRatio":
        return _cancelled(self.constant * other.constant, list(self.num) + list(other.num),
                          list(self.den) + list(other.den))

    def inverse(self) -> "FactoredRatio":
        return FactoredRatio(self.constant.inverse(), self.den, self.num)


def _cancelled(const, num, den) -> FactoredRatio:
    const = RationalFunction.coerce(const)
    nn, dd = [], []
    for f in num:
        if f.is_constant():
            const = const * f.constant_value()
            continue
        if f.degree() == 1:
            c, f = _monic_linear(f)
            const = const * c
        nn.append(f)
    for f in den:
        if f.is_constant():
            const = const / f.constant_value()
            continue
        if f.degree() == 1:
            c, f = _monic_linear(f)
            const = const / c
        dd.append(f)
    remaining = []
    for f in dd:
        for i, g in enumerate(nn):
            if g == f:
                del nn[i]
                break
        else:
            remaining.append(f)
    return FactoredRatio(const, tuple(nn), tuple(remaining))


@dataclass(frozen=True)
class HyperTerm:
    base: RationalFunction = field(default_factory=lambda: RationalFunction.coerce(1))
    gammas: tuple[GammaFactor, ...] = ()
    prefactor: RationalFunction = field(default_factory=lambda: RationalFunction.coerce(1))
    constant_bases: tuple[tuple[RationalFunction, Polynomial], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "base", RationalFunction.coerce(self.base))
        object.__setattr__(self, "prefactor", RationalFunction.coerce(self.prefactor))
        gammas = _merge_gammas((g.arg, g.exponent) for g in self.gammas)
        # Gamma at a positive integer is a factorial: fold it into the prefactor
        folded = mpq(1)
        kept = []
        for g in gammas:
            p = g.arg.poly
            if p.is_constant() and p.constant_value().denominator == 1 and p.constant_value() > 0:
                folded *= mpq(math.factorial(int(p.constant_value()) - 1)) ** g.exponent
            else:
                kept.append(g)
        if folded != 1:
            object.__setattr__(self, "prefactor", self.prefactor * folded)
        object.__setattr__(self, "gammas", tuple(kept))
        object.__setattr__(self, "constant_bases", _merge_bases(self.constant_bases))
        if self.base.variables() & {"n", "k"}:
            raise ValueError("the geometric base must not depend on n or k")

    @classmethod
    def make(cls, gammas: Iterable[tuple[object, int]] = (), base=1, prefactor=1,
             constant_bases: Iterable[tuple[object, object]] = ()) -> "HyperTerm":
        gs = [GammaFactor(AffineArg.of(a), e) for a, e in gammas if e]
        base = parse_rational(base) if isinstance(base, str) else base
        prefactor = parse_rational(prefactor) if isinstance(prefactor, str) else prefactor
        return cls(base, tuple(gs), prefactor, tuple(constant_bases))

    # -- algebra --------------------------------------------------------
    def __mul__(self, other: "HyperTerm") -> "HyperTerm":
        if not isinstance(other, HyperTerm):
            return self.scale(other)
        return HyperTerm(
            self.base * other.base,
            self.gammas + other.gammas,
            self.prefactor * other.prefactor,
            self.constant_bases + other.constant_bases,
        )

    def scale(self, c) -> "HyperTerm":
        c = parse_rational(c) if isinstance(c, str) else c
        return HyperTerm(self.base, self.gammas, self.prefactor * c, self.constant_bases)

    def inverse(self) -> "HyperTerm":
        return HyperTerm(
            self.base.inverse(),
            tuple(GammaFactor(g.arg, -g.exponent) for g in self.gammas),
            self.prefactor.inverse(),
            tuple((b, -e) for b, e in self.constant_bases),
        )

    def __truediv__(self, other: "HyperTerm") -> "HyperTerm":
        return self * other.inverse()

    def with_prefactor(self, r) -> "HyperTerm":
        return HyperTerm(self.base, self.gammas, RationalFunction.coerce(r), self.constant_bases)

    # -- inspection -------------------------------------------------------
    def variables(self) -> set[str]:
        out = set(self.base.variables()) | self.prefactor.variables()
        for g in self.gammas:
            out |= g.arg.poly.variables()
        for b, e in self.constant_bases:
            out |= b.variables() | e.variables()
        return out

    def parameters(self) -> set[str]:
        return self.variables() - {"n", "k"}

    def depends_on(self, var: str) -> bool:
        if var == "k" and self.base != 1:
            return True
        return var in self.variables()

    def is_one(self) -> bool:
        return (not self.gammas and self.prefactor == 1 and not self.constant_bases
                and self.base == 1)

    def pochhammer_structure(self) -> tuple[list[Polynomial], list[Polynomial]]:
        """Read back ``(upper, lower)`` parameters of a pure pFq term."""
        upper, lower = [], []
        for g in self.gammas:
            if g.arg.coeff_k == 1:
                x = g.arg.poly.subs({"k": 0})
                if x == 1 and g.exponent == -1:
                    continue
                target = upper if g.exponent > 0 else lower
                target.extend([x] * abs(g.exponent))
        return upper, lower

    # -- substitution and shifts -----------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "HyperTerm":
        """Substitute affine polynomials for symbols everywhere."""
        polys = {v: _affine(x) for v, x in mapping.items()}
        gam = tuple(GammaFactor(g.arg.subs(polys), g.exponent) for g in self.gammas)
        pre = self.prefactor.subs(polys)
        bases = tuple((b.subs(polys), e.subs(polys)) for b, e in self.constant_bases)
        base = self.base.subs(polys)
        if "k" in polys and self.base != 1:
            kk = polys["k"]
            if kk.variables() - {"k"} or kk.coeff("k", 1) != 1:
                raise ImproperTermError("k may only be replaced by k + integer")
            off = kk.constant_value()
            if off != 0:
                if off.denominator != 1:
                    raise ImproperTermError("non-integer shift of k")
                pre = pre * self.base ** int(off)
        return HyperTerm(base, gam, pre, bases)

    def shift(self, var: str, amount: int = 1) -> "HyperTerm":
        """``T(var + amount)`` as a term."""
        return self.subs({var: Polynomial.var(var) + amount})

    def substitute_shift(self, param: str, step: int) -> "HyperTerm":
        """Replace ``param`` by ``param + step*n`` in every Gamma argument and prefactor."""
        if param not in self.parameters():
            log.warning("substitute_shift: %s does not occur; term unchanged", param)
            return self
        if not isinstance(step, int) or step <= 0:
            raise ValueError("step must be a positive integer")
        return self.subs({param: Polynomial.var(param) + Polynomial.var("n").scale(step)})

    def specialize(self, var: str, value) -> "HyperTerm":
        """Substitute a numeric value for ``n`` or ``k``; the result no longer depends on it."""
        if var == "k":
            v = mpq(value)
            if v.denominator != 1:
                raise ValueError("k must be specialised to an integer")
            pre = self.prefactor.subs({"k": v})
            pre = pre * self.base ** int(v)
            t = HyperTerm(RationalFunction.coerce(1), self.gammas, pre, self.constant_bases)
            return t.subs({"k": v}) if "k" in t.variables() else t
        return self.subs({var: value})

    # -- shift quotients -------------------------------------------------------
    def quotient_factors(self, var: str) -> FactoredRatio:
        """``T(var+1)/T(var)`` as a product of monic linear factors and a constant."""
        num, den = [], []
        const = RationalFunction.coerce(1)
        for g in self.gammas:
            c = g.arg.coeff(var)
            if c == 0:
                continue
            if c.denominator != 1:
                raise ImproperTermError(f"Gamma({g.arg}) has non-integer {var}-coefficient {c}")
            c = int(c)
            a = g.arg.poly
            if c > 0:
                lin = [a + i for i in range(c)]
                up = g.exponent > 0
            else:
                lin = [a - i for i in range(1, -c + 1)]
                up = g.exponent < 0
            for _ in range(abs(g.exponent)):
                (num if up else den).extend(lin)
        if var == "k":
            const = const * self.base
        if var in self.prefactor.variables():
            p, q = self.prefactor.num, self.prefactor.den
            num += [p.shift(var, 1), q]
            den += [p, q.shift(var, 1)]
        for b, e in self.constant_bases:
            c = e.coeff(var, 1).constant_value() if var in e.variables() else 0
            if c:
                if c.denominator != 1:
                    raise ImproperTermError("constant base with non-integer exponent slope")
                const = const * b ** int(c)
        return _cancelled(const, num, den)

    def shift_quotient(self, var: str) -> RationalFunction:
        """``T(var+1)/T(var)`` as a normalised rational function."""
        return self.quotient_factors(var).to_rational()

    def ratio_factors(self, other: "HyperTerm") -> FactoredRatio:
        """``self/other`` when their Gamma arguments pair up at integer distance."""
        q = self / other
        num, den = [], []
        const = RationalFunction.coerce(1)
        groups: dict[Polynomial, list[tuple[mpq, int]]] = defaultdict(list)
        for g in q.gammas:
            c = g.arg.poly.constant_value()
            groups[g.arg.poly - c].append((c, g.exponent))
        for key, items in groups.items():
            if sum(e for _, e in items) != 0:
                raise ImproperTermError("Gamma factors do not pair at integer distance")
            offs = [c for c, _ in items]
            lo = min(offs)
            if any((c - lo).denominator != 1 for c in offs):
                raise ImproperTermError("Gamma factors do not pair at integer distance")
            for c, e in items:
                m = int(c - lo)
                lin = [key + lo + i for i in range(m)]
                for _ in range(abs(e)):
                    (num if e > 0 else den).extend(lin)
        if q.base != 1:
            raise ImproperTermError("geometric bases differ")
        if q.constant_bases:
            for b, e in q.constant_bases:
                if not e.is_constant() or e.constant_value().denominator != 1:
                    raise ImproperTermError("constant bases differ by a non-integer power")
                const = const * b ** int(e.constant_value())
        num.append(q.prefactor.num)
        den.append(q.prefactor.den)
        return _cancelled(const, num, den)

    def ratio_to(self, other: "HyperTerm") -> RationalFunction:
        return self.ratio_factors(other).to_rational()

    # -- numerics ------------------------------------------------------------------
    def evaluate(self, assignments: Mapping[str, object], k: int | None = None, *, ctx=None, exact: bool = False):
        """Numeric value at ``assignments`` (which must cover every symbol) and ``k``.

        Gamma factors whose arguments differ by integers are evaluated as
        rising factorials from the smallest argument, so terminating series
        and removable poles come out right.  With ``exact=True`` the result is
        an ``mpq`` and every Gamma value needed must be a factorial.
        """
        from .oracle import default_context, gamma_hp

        ctx = ctx or default_context()
        vals = {v: mpq(x) if exact else _to_ctx(ctx, x) for v, x in assignments.items()}
        if k is not None:
            vals["k"] = mpq(k) if exact else ctx.mpf(k)
        missing = self.variables() - set(vals)
        if missing:
            raise KeyError(f"unassigned symbols: {sorted(missing)}")
        kk = int(k) if k is not None else None

        def num(p: Polynomial):
            v = p.evaluate(vals) if not p.is_constant() else p.constant_value()
            return mpq(v) if exact else _to_ctx(ctx, v)

        value = mpq(1) if exact else ctx.mpf(1)
        if self.base != 1:
            if kk is None:
                raise KeyError("k needed for the geometric factor")
            z = self.base.evaluate(vals) if not self.base.is_constant() else self.base.constant_value()
            value = value * (mpq(z) if exact else _to_ctx(ctx, z)) ** kk
        groups: dict[Polynomial, list[tuple[object, int]]] = defaultdict(list)
        for g in self.gammas:
            p = g.arg.poly.subs({"k": kk}) if kk is not None and "k" in g.arg.poly.variables() else g.arg.poly
            c = p.constant_value()
            groups[p - c].append((c, g.exponent))
        for key, items in groups.items():
            lo = min(items, key=lambda t: t[0])[0]
            if any((c - lo).denominator != 1 for c, _ in items):
                for c, e in items:
                    x = num(key + c)
                    value = value * _gamma_power(ctx, x, e, exact)
                continue
            x0 = num(key + lo)
            total = sum(e for _, e in items)
            rising = 1
            for c, e in items:
                m = int(c - lo)
                r = _rising(ctx, x0, m, exact)
                if r == 0 and e < 0:
                    raise PoleError(f"pole at Gamma argument {key + c}")
                rising = rising * (r ** e if e > 0 else (1 / r ** (-e) if r != 0 else 0))
            if total:
                value = value * _gamma_power(ctx, x0, total, exact)
            value = value * rising
        try:
            value = value * (self.prefactor.evaluate(vals) if not self.prefactor.is_constant()
                             else self.prefactor.constant_value())
        except ZeroDivisionError:
            raise PoleError("pole of the rational prefactor") from None
        for b, e in self.constant_bases:
            bv = b.evaluate(vals) if not b.is_constant() else b.constant_value()
            ev = num(e)
            if exact:
                if ev.denominator != 1:
                    raise ValueError("non-integer power in exact evaluation")
                value = value * mpq(bv) ** int(ev)
            else:
                value = value * ctx.power(_to_ctx(ctx, bv), ev)
        return mpq(value) if exact else value

    # -- printing --------------------------------------------------------------------
    def pochhammer_str(self) -> str:
        """Human form with ``(x)_k`` and ``k!`` where the Gamma factors allow it."""
        kk = Polynomial.var("k")
        pool = {g.arg.poly: g.exponent for g in self.gammas}
        top, bot = [], []
        for g in self.gammas:
            if g.arg.coeff_k != 1 or pool.get(g.arg.poly, 0) == 0:
                continue
            x = g.arg.poly - kk
            e = pool[g.arg.poly]
            if x == 1 and e < 0:
                bot.extend(["k!"] * -e)
                pool[g.arg.poly] = 0
                continue
            partner = pool.get(x, 0)
            if partner and (partner > 0) != (e > 0):
                used = min(abs(partner), abs(e))
                sym = f"({format_affine(x)})_k"
                (top if e > 0 else bot).extend([sym] * used)
                pool[x] = partner + (used if partner < 0 else -used)
                pool[g.arg.poly] = e - (used if e > 0 else -used)
        for arg, e in pool.items():
            if e:
                s = f"Gamma({format_affine(arg)})"
                (top if e > 0 else bot).extend([s] * abs(e))
        head = []
        for b, e in self.constant_bases:
            ex = format_affine(e)
            head.append(f"{b}^{ex}" if len(ex) == 1 else f"{b}^({ex})")
        if self.prefactor != 1:
            if self.prefactor.den == 1:
                head.append(f"({self.prefactor.num})")
            else:
                head.append(f"({self.prefactor})")
        tail = []
        if self.base != 1:
            z = str(self.base)
            tail.append(f"({z})^k" if z.startswith("-") or "/" in z else f"{z}^k")
        parts = head + top + tail
        s = "*".join(parts) if parts else "1"
        if bot:
            s += "/" + ("*".join(bot) if len(bot) == 1 else "(" + "*".join(bot) + ")")
        return s

    def __str__(self) -> str:
        ups = [g for g in self.gammas if g.exponent > 0]
        downs = [g for g in self.gammas if g.exponent < 0]

        def gs(items):
            out = []
            for g in items:
                s = f"Gamma({g.arg})"
                if abs(g.exponent) != 1:
                    s += f"^{abs(g.exponent)}"
                out.append(s)
            return out

        top = gs(ups)
        bot = gs(downs)
        if self.base != 1:
            top.append(f"({self.base})^k")
        for b, e in self.constant_bases:
            top.append(f"{b}^({format_affine(e)})")
        if self.prefactor != 1:
            if self.prefactor.den != 1:
                bot.append(f"({self.prefactor.den})")
            if self.prefactor.num != 1:
                top.insert(0, f"({self.prefactor.num})")
        s = "*".join(top) if top else "1"
        if bot:
            s += "/(" + "*".join(bot) + ")" if len(bot) > 1 else "/" + bot[0]
        return s


def _to_ctx(ctx, x):
    if isinstance(x, (int, mpz)):
        return ctx.mpf(int(x))
    if isinstance(x, type(mpq(1))):
        return ctx.mpf(int(x.numerator)) / int(x.denominator)
    return ctx.mpf(x) if not isinstance(x, ctx.mpf) else x


def _rising(ctx, x, m: int, exact: bool):
    r = mpq(1) if exact else ctx.mpf(1)
    if m > 400 and not exact:
        try:
            from .oracle import gamma_ratio

            return gamma_ratio(ctx, x, m)
        except PoleError:
            pass
    for i in range(m):
        r = r * (x + i)
    return r


def _gamma_power(ctx, x, e: int, exact: bool):
    from .oracle import gamma_exact, gamma_hp

    g = gamma_exact(x) if exact else gamma_hp(x, ctx=ctx)
    return g ** e


def pochhammer_term(x, var: str = "k") -> list[tuple[AffineArg, int]]:
    """Gamma factors of ``(x)_var``."""
    x = _affine(x)
    return [(AffineArg(x + Polynomial.var(var)), 1), (AffineArg(x), -1)]


def from_pFq(upper: Sequence, lower: Sequence, z) -> HyperTerm:
    """``prod (u)_k / prod (l)_k * z^k / k!`` in Gamma form."""
    gammas: list[tuple[AffineArg, int]] = []
    for u in upper:
        gammas += pochhammer_term(u)
    for l in lower:
        gammas += [(a, -e) for a, e in pochhammer_term(l)]
    gammas.append((AffineArg(Polynomial.var("k") + 1), -1))
    z = parse_rational(z) if isinstance(z, str) else RationalFunction.coerce(z)
    return HyperTerm.make(gammas, base=z)


def gamma_product(factors: Iterable[tuple[int, object]], constant=1) -> HyperTerm:
    """Closed form ``constant * prod Gamma(arg)^sign``."""
    return HyperTerm.make([(a, s) for s, a in factors], prefactor=constant)


@dataclass(frozen=True)
class TheoremSpec:
    """``sum_k pFq-term = rhs`` under ``stated_conditions``."""

    name: str
    parameters: tuple[str, ...]
    upper: tuple[Polynomial, ...]
    lower: tuple[Polynomial, ...]
    z: RationalFunction
    rhs: HyperTerm
    stated_conditions: tuple[ConvergenceCondition, ...] = ()

    def __post_init__(self):
        for g in self.rhs.gammas:
            if g.arg.coeff_k != 0 or g.arg.coeff_n != 0:
                raise ValueError("rhs must be free of n and k")
        if self.rhs.depends_on("k"):
            raise ValueError("rhs must not depend on k")

    @property
    def lhs(self) -> HyperTerm:
        return from_pFq(self.upper, self.lower, self.z)

    @property
    def shape(self) -> str:
        return f"{len(self.upper)}F{len(self.lower)}"


__all__ = [
    "AffineArg",
    "FactoredRatio",
    "GammaFactor",
    "HyperTerm",
    "ImproperTermError",
    "PoleError",
    "TheoremSpec",
    "from_pFq",
    "gamma_product",
    "pochhammer_term",
]

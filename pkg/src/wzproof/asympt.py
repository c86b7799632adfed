"""Growth and limits of hypergeometric terms from ``Gamma(x+k)/Gamma(y+k) ~ k^(x-y)``.

Only unit k-coefficients and nonnegative integer n-coefficients are
handled; the shift substitution in the prover always produces those.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field

from gmpy2 import mpq

from .algebra import Polynomial, RationalFunction
from .conditions import ConvergenceCondition, simplify
from .hyperterm import AffineArg, GammaFactor, HyperTerm

K = "k"
N = "n"


class AsymptoticError(ValueError):
    pass


class DominationError(AsymptoticError):
    pass


class Regime(enum.Enum):
    POLYNOMIAL = "polynomial"
    DECAY = "geometric decay"
    GROWTH = "geometric growth"


@dataclass(frozen=True)
class GrowthEstimate:
    """``|T(n,k)| ~ k^exponent * T(n)`` (times ``modulus^k`` outside the polynomial regime)."""

    exponent: Polynomial
    has_positive_factor: bool
    regime: Regime = Regime.POLYNOMIAL
    modulus: mpq = mpq(1)

    def __str__(self) -> str:
        from .conditions import format_affine

        s = f"k^({format_affine(self.exponent)})"
        if self.regime is not Regime.POLYNOMIAL:
            s = f"({self.modulus})^k * " + s
        return s + (" * T(n)" if self.has_positive_factor else "")


class LimitKind(enum.Enum):
    FINITE = "Finite"
    DELTA_K0 = "DeltaK0"
    ZERO = "Zero"
    DIVERGENT = "Divergent"


@dataclass(frozen=True)
class LimitResult:
    kind: LimitKind
    limit_term: HyperTerm | None = None
    conditions: tuple[ConvergenceCondition, ...] = ()
    n_exponent: Polynomial = field(default_factory=lambda: Polynomial.const(0))
    note: str = ""

    def __str__(self) -> str:
        if self.kind is LimitKind.FINITE:
            return f"Finite: {self.limit_term.pochhammer_str()}"
        if self.kind is LimitKind.DELTA_K0:
            return f"DeltaK0 (value at k=0: {self.limit_term.pochhammer_str()})"
        return self.kind.value + (f" ({self.note})" if self.note else "")


# -- k -> infinity ------------------------------------------------------------------------------


def _geometric_modulus(T: HyperTerm) -> mpq:
    z = T.base
    if not z.is_constant():
        raise AsymptoticError(f"symbolic geometric base {z}")
    mod = abs(mpq(z.constant_value()))
    for b, e in T.constant_bases:
        slope = e.coeff(K, 1) if K in e.variables() else None
        if slope is None:
            continue
        if not b.is_constant() or not slope.is_constant():
            raise AsymptoticError("symbolic k-dependent constant base")
        s = slope.constant_value()
        if s.denominator != 1:
            raise AsymptoticError("non-integer k-slope in a constant base")
        mod *= abs(mpq(b.constant_value())) ** int(s)
    return mod


def k_growth_exponent(T: HyperTerm) -> GrowthEstimate:
    """Exponent ``alpha`` with ``|T(n,k)| ~ k^alpha * T(n)`` as ``k -> infinity``."""
    exponent = Polynomial.const(0)
    balance = 0
    kk = Polynomial.var(K)
    n_dependent = False
    for g in T.gammas:
        c = g.arg.coeff_k
        if c == 0:
            n_dependent |= g.arg.coeff_n != 0
            continue
        if c != 1:
            raise AsymptoticError(f"non-unit k-coefficient in Gamma({g.arg})")
        balance += g.exponent
        exponent = exponent + (g.arg.poly - kk).scale(g.exponent)
    if balance != 0:
        raise AsymptoticError("exponential Gamma growth: unbalanced k-dependent factors")
    pre = T.prefactor
    exponent = exponent + (pre.num.degree(K) if K in pre.num.variables() else 0) \
        - (pre.den.degree(K) if K in pre.den.variables() else 0)
    lead = _lead_ratio(pre, K)
    n_dependent |= N in lead.variables()
    n_dependent |= any(N in e.variables() and K not in e.variables() for _, e in T.constant_bases)
    mod = _geometric_modulus(T)
    regime = Regime.POLYNOMIAL if mod == 1 else (Regime.DECAY if mod < 1 else Regime.GROWTH)
    return GrowthEstimate(exponent.stripped(), n_dependent, regime, mod)


def _lead_ratio(r: RationalFunction, var: str) -> RationalFunction:
    num = r.num.to_univariate(var)[-1] if not r.num.is_zero() else r.num
    den = r.den.to_univariate(var)[-1]
    return RationalFunction(num, den)


def k_limit_zero(T: HyperTerm) -> tuple[bool, list[ConvergenceCondition]]:
    """Whether ``T(n,k) -> 0`` as ``k -> infinity``, with the conditions needed."""
    est = k_growth_exponent(T)
    if est.regime is Regime.DECAY:
        return True, []
    if est.regime is Regime.GROWTH:
        return False, []
    e = est.exponent
    if e.is_constant():
        return e.constant_value() < 0, []
    return True, [ConvergenceCondition.less(e)]


def series_converges(T: HyperTerm) -> tuple[bool, list[ConvergenceCondition]]:
    """Convergence of ``sum_k T(n,k)``: ``Re(alpha) < -1`` at ``z = 1``, ``Re(alpha) < 0`` elsewhere on ``|z| = 1``."""
    est = k_growth_exponent(T)
    if est.regime is Regime.DECAY:
        return True, []
    if est.regime is Regime.GROWTH:
        return False, []
    e = est.exponent
    positive = T.base == 1 and all(not (K in ex.variables()) for _, ex in T.constant_bases)
    if positive:
        e = e + 1
    if e.is_constant():
        return e.constant_value() < 0, []
    return True, [ConvergenceCondition.less(e)]


# -- n -> infinity ----------------------------------------------------------------------------


def n_limit(T: HyperTerm) -> LimitResult:
    """Termwise limit of ``T(n,k)`` as ``n -> infinity`` for each fixed ``k``."""
    groups: dict[int, list[tuple[int, Polynomial]]] = defaultdict(list)
    rest: list[GammaFactor] = []
    nn = Polynomial.var(N)
    for g in T.gammas:
        m = g.arg.coeff_n
        if m == 0:
            rest.append(g)
            continue
        if m < 0 or m.denominator != 1:
            raise AsymptoticError(f"unsupported n-coefficient {m} in Gamma({g.arg})")
        m = int(m)
        groups[m].append((g.exponent, g.arg.poly - nn.scale(m)))
    bases = [(b, e) for b, e in T.constant_bases]
    for b, e in T.constant_bases:
        if N in e.variables():
            raise AsymptoticError("constant base with an n-dependent exponent")
    net = sum(m * sum(e for e, _ in items) for m, items in groups.items())
    if net > 0:
        return LimitResult(LimitKind.DIVERGENT, note="factorial growth in n")
    if net < 0:
        return LimitResult(LimitKind.ZERO, note="factorial decay in n")
    if any(sum(e for e, _ in items) for items in groups.values()):
        return LimitResult(LimitKind.DIVERGENT, note="exponential n-behaviour not handled")
    E = Polynomial.const(0)
    for m, items in sorted(groups.items()):
        e_m = Polynomial.const(0)
        for e, x in items:
            e_m = e_m + x.scale(e)
        E = E + e_m
        if m != 1 and not e_m.is_zero():
            bases.append((RationalFunction.coerce(m), e_m))
    pre = T.prefactor
    dn = (pre.num.degree(N) if N in pre.num.variables() else 0) - (pre.den.degree(N) if N in pre.den.variables() else 0)
    E = (E + dn).stripped()
    lead = _lead_ratio(pre, N) if N in pre.variables() else pre
    limit = HyperTerm(T.base, tuple(rest), lead, tuple(bases))
    if E.is_zero():
        return LimitResult(LimitKind.FINITE, limit, (), E)
    c = E.coeff(K, 1)
    d = E.subs({K: 0})
    if d.is_zero():
        at_zero = limit.specialize(K, 0)
        if c.is_constant():
            if c.constant_value() < 0:
                return LimitResult(LimitKind.DELTA_K0, at_zero, (), E)
            return LimitResult(LimitKind.DIVERGENT, note=f"n^({c.constant_value()}k) growth", n_exponent=E)
        return LimitResult(LimitKind.DELTA_K0, at_zero, (ConvergenceCondition.less(c),), E)
    if d.is_constant():
        if d.constant_value() > 0:
            return LimitResult(LimitKind.DIVERGENT, note="polynomial growth in n", n_exponent=E)
        conds = () if c.is_constant() and c.constant_value() <= 0 else (ConvergenceCondition.less(c, strict=False),)
        return LimitResult(LimitKind.ZERO, None, conds, E)
    conds = [ConvergenceCondition.less(d)]
    if not (c.is_constant() and c.constant_value() <= 0):
        conds.append(ConvergenceCondition.less(c, strict=False))
    return LimitResult(LimitKind.ZERO, None, tuple(conds), E)


# -- domination --------------------------------------------------------------------------------


@dataclass(frozen=True)
class PochhammerPair:
    upper: Polynomial
    lower: Polynomial
    difference: Polynomial
    condition: ConvergenceCondition | None
    bump: mpq

    def __str__(self) -> str:
        from .conditions import format_affine

        s = f"|({format_affine(self.upper)})_k / ({format_affine(self.lower)})_k|"
        if self.condition is not None:
            return s + f" <= 1 when {self.condition}"
        if self.bump:
            return s + f" <= A*(1+k)^{self.bump}"
        return s + " <= 1"


@dataclass(frozen=True)
class DominationReport:
    pairs: tuple[PochhammerPair, ...]
    surplus_lower: tuple[Polynomial, ...]
    majorant: HyperTerm
    majorant_exponent: Polynomial | None
    normalizer: LimitResult
    unconditional: bool
    conditions: tuple[ConvergenceCondition, ...]

    def lines(self) -> list[str]:
        from .conditions import format_affine

        out = [str(p) for p in self.pairs]
        for y in self.surplus_lower:
            out.append(f"1/|({format_affine(y)})_k| decays factorially once n >= n0")
        out.append(f"k-only majorant: {self.majorant.pochhammer_str()}")
        if self.majorant_exponent is not None:
            out.append(f"majorant ~ k^({format_affine(self.majorant_exponent)})")
        out.append(f"1/S(n) bounded for n >= n0 (limit {self.normalizer}); constant A exists, not computed")
        return out


def domination_check(f: HyperTerm, S: HyperTerm, limit: LimitResult | None = None, *,
                     exponent_shift: int = 0):
    """Summable majorant for ``f(n,k)/S(n)`` uniform in large ``n``.

    ``exponent_shift`` lowers the majorant exponent when consecutive terms
    are grouped in pairs (see :func:`wzproof.prover.accelerate_pairing`).

    Returns ``(report, conditions)``.  Raises :class:`DominationError` when
    no majorant of the supported shape exists.
    """
    if limit is not None and limit.kind not in (LimitKind.FINITE, LimitKind.DELTA_K0):
        raise DominationError(f"termwise limit is {limit.kind.value}")
    kk = Polynomial.var(K)
    upper: dict[int, list[Polynomial]] = defaultdict(list)
    lower: dict[int, list[Polynomial]] = defaultdict(list)
    k_only: list[GammaFactor] = []
    normal: list[GammaFactor] = []
    for g in f.gammas:
        m, c = g.arg.coeff_n, g.arg.coeff_k
        if c == 0:
            (normal if m != 0 else k_only).append(g)
            continue
        if m == 0:
            k_only.append(g)
            continue
        if c != 1 or m < 0 or m.denominator != 1:
            raise DominationError(f"unsupported Gamma({g.arg})")
        x = g.arg.poly - kk
        # Gamma(x+k) = (x)_k Gamma(x)
        normal.append(GammaFactor(AffineArg(x), g.exponent))
        target = upper if g.exponent > 0 else lower
        target[int(m)].extend([x] * abs(g.exponent))
    pairs: list[PochhammerPair] = []
    surplus: list[Polynomial] = []
    conds: list[ConvergenceCondition] = []
    bump = mpq(0)
    for m in sorted(set(upper) | set(lower)):
        ups, lows = list(upper[m]), list(lower[m])
        if len(ups) > len(lows):
            raise DominationError("no majorant found: unmatched n-dependent upper parameter")
        for x in ups:
            best = None
            for i, y in enumerate(lows):
                d = (x - y).stripped()
                score = (0, d.constant_value()) if d.is_constant() else (1, mpq(0))
                if best is None or score < best[0]:
                    best = (score, i, d)
            _, i, d = best
            y = lows.pop(i)
            if d.is_constant():
                b = max(d.constant_value(), mpq(0))
                bump += b
                pairs.append(PochhammerPair(x, y, d, None, b))
            else:
                cond = ConvergenceCondition.less(d, strict=False)
                conds.append(cond)
                pairs.append(PochhammerPair(x, y, d, cond, mpq(0)))
        surplus.extend(lows)
    if surplus:
        # a surplus lower parameter decays factorially and beats the at most
        # polynomial growth A*(1+k)^|d| of every pair, so no pair condition is needed
        conds = []
        pairs = [PochhammerPair(p.upper, p.lower, p.difference, None, p.bump) for p in pairs]
    majorant = HyperTerm(f.base, tuple(k_only), f.prefactor if N not in f.prefactor.variables() else 1,
                         tuple((b, e) for b, e in f.constant_bases if N not in e.variables()))
    normalizer = HyperTerm(RationalFunction.coerce(1), tuple(normal),
                           RationalFunction.coerce(1), ()) / S.with_prefactor(1)
    norm_limit = n_limit(normalizer)
    if norm_limit.kind not in (LimitKind.FINITE, LimitKind.ZERO):
        raise DominationError(f"1/S(n) is not bounded: {norm_limit}")
    conds.extend(norm_limit.conditions)
    mod = _geometric_modulus(majorant)
    exponent = None
    unconditional = bool(surplus)
    if mod > 1:
        raise DominationError("geometric growth of the majorant")
    if not surplus:
        if mod < 1:
            unconditional = not conds
        else:
            est = k_growth_exponent(majorant)
            exponent = (est.exponent + bump + exponent_shift).stripped()
            summable = exponent + 1
            if summable.is_constant():
                if summable.constant_value() >= 0:
                    raise DominationError("majorant is not summable")
            else:
                conds.append(ConvergenceCondition.less(summable))
    conds = simplify(conds)
    report = DominationReport(tuple(pairs), tuple(surplus), majorant, exponent, norm_limit,
                              unconditional and not conds, tuple(conds))
    return report, conds


__all__ = [
    "AsymptoticError",
    "DominationError",
    "DominationReport",
    "GrowthEstimate",
    "LimitKind",
    "LimitResult",
    "PochhammerPair",
    "Regime",
    "domination_check",
    "k_growth_exponent",
    "k_limit_zero",
    "n_limit",
    "series_converges",
]

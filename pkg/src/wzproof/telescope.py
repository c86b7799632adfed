"""Gosper's algorithm, WZ certificates and Zeilberger recurrences.

Everything is phrased through shift quotients so that no Gamma function is
ever manipulated here.  The summand of a telescoping problem is written as

    t(k) = P(k) * T(k)

with ``P`` a polynomial (possibly with unknown linear coefficients) and
``T`` a term whose k-quotient is a :class:`FactoredRatio`.  Working with
factor lists keeps the dispersion computation trivial for the linear
factors that hypergeometric terms produce.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .algebra import (
    ONE,
    NotDivisible,
    ZERO,
    Polynomial,
    RationalFunction,
    dispersion_set,
    poly_gcd,
)
from .algebra.linsolve import nullspace_fraction_free, solve_fraction_free
from .hyperterm import FactoredRatio, HyperTerm, ImproperTermError

log = logging.getLogger(__name__)

K = "k"


@dataclass(frozen=True)
class GPForm:
    """``r(k) = Z * p(k+1)/p(k) * q(k)/s(k)`` with ``gcd(q(k), s(k+j)) = 1`` for all ``j >= 0``."""

    Z: RationalFunction
    p: Polynomial
    q: Polynomial
    s: Polynomial

    def ratio(self) -> RationalFunction:
        top = self.p.shift(K, 1) * self.q
        bot = self.p * self.s
        return RationalFunction(top, bot) * self.Z


@dataclass(frozen=True)
class Certificate:
    C: RationalFunction
    trivial: bool = False

    def __str__(self) -> str:
        return str(self.C)


@dataclass(frozen=True)
class Recurrence:
    """``sum_i sigma_i * M(param + i, k) = G(k+1) - G(k)`` with ``G = certificate * M``."""

    param: str
    order: int
    sigmas: tuple[RationalFunction, ...]
    certificate: Certificate

    def __post_init__(self):
        if all(s.is_zero() for s in self.sigmas):
            raise ValueError("a recurrence needs a nonzero coefficient")
        if any(K in s.variables() for s in self.sigmas):
            raise ValueError("recurrence coefficients must be free of k")


# -- polynomial helpers ---------------------------------------------------------------------


def _deg(p: Polynomial) -> int:
    return p.degree(K) if not p.is_zero() else -1


def _lc_k(p: Polynomial) -> Polynomial:
    return p.to_univariate(K)[-1]


def _is_linear_in_k(f: Polynomial) -> bool:
    return f.degree(K) == 1 and f.coeff(K, 1) == 1


def _product(factors) -> Polynomial:
    out = ONE
    for f in factors:
        out = out * f
    return out


# -- Gosper-Petkovsek form --------------------------------------------------------------------


def gp_form_factored(ratio: FactoredRatio, p: Polynomial = ONE) -> tuple[GPForm, Polynomial]:
    """GP form of ``p(k+1)/p(k) * ratio``.

    Returns the form and the extra factor multiplied into ``p``.
    """
    form, extra, _ = _gp_lists(ratio, p)
    return form, extra


def _gp_lists(ratio: FactoredRatio, p: Polynomial = ONE):
    """As :func:`gp_form_factored`, plus ``(extra factors, s factors)`` when all are linear."""
    num = list(ratio.num)
    den = list(ratio.den)
    extras: list[Polynomial] = []
    while True:
        best = None
        for i, f in enumerate(num):
            for j, g in enumerate(den):
                h = _shift_distance(f, g)
                if h is not None and h >= 0 and (best is None or h > best[0]):
                    best = (h, i, j)
        if best is None:
            break
        h, i, j = best
        g = num.pop(i)
        den.pop(j)
        extras.extend(g.shift(K, -m) for m in range(1, h + 1))
    extra = _product(extras)
    q, s = _product(num), _product(den)
    lists = (extras, den)
    if any(not _is_linear_in_k(f) for f in num + den):
        # higher-degree factors: finish with the general dispersion loop
        form, more = _gp_loop(q, s)
        extra = extra * more
        q, s = form.q, form.s
        lists = None
    return GPForm(ratio.constant, p * extra, q, s), extra, lists


def _shift_distance(f: Polynomial, g: Polynomial) -> int | None:
    """``h`` with ``f(k) = g(k+h)`` for monic linear ``f``, ``g``; ``None`` otherwise."""
    if not (_is_linear_in_k(f) and _is_linear_in_k(g)):
        return _general_distance(f, g)
    d = f - g
    if not d.is_constant():
        return None
    v = d.constant_value()
    return int(v) if v.denominator == 1 else None


def _general_distance(f: Polynomial, g: Polynomial) -> int | None:
    if f.degree(K) != g.degree(K) or f.degree(K) < 1:
        return None
    ds = sorted(dispersion_set(f, g, K), reverse=True)
    for h in ds:
        if f == g.shift(K, h) or (f.monic() == g.shift(K, h).monic()):
            return h
    return None


def _gp_loop(q: Polynomial, s: Polynomial) -> tuple[GPForm, Polynomial]:
    extra = ONE
    while True:
        ds = dispersion_set(q, s, K)
        if not ds:
            break
        h = max(ds)
        g = poly_gcd(q, s.shift(K, h))
        if g.degree(K) < 1:
            break
        q = q.exact_div(g)
        s = s.exact_div(g.shift(K, -h))
        for m in range(1, h + 1):
            extra = extra * g.shift(K, -m)
    return GPForm(RationalFunction.coerce(1), extra, q, s), extra


def gp_form(r: RationalFunction) -> GPForm:
    """GP form of a k-quotient given as a single rational function."""
    num, den = r.num, r.den
    lq, ls = _lc_k(num), _lc_k(den)
    Z = RationalFunction.coerce(1)
    if lq.is_constant() and ls.is_constant():
        Z = RationalFunction.coerce(lq.constant_value() / ls.constant_value())
        num = num.scale(1 / lq.constant_value())
        den = den.scale(1 / ls.constant_value())
    form, _ = _gp_loop(num, den)
    return GPForm(Z, form.p, form.q, form.s)


# -- the polynomial equation ------------------------------------------------------------------


def _degree_bound(A: Polynomial, B: Polynomial, deg_c: int) -> int:
    """Degree bound for ``A x(k+1) - B x(k) = c(k)``."""
    minus = A - B
    plus = A + B
    dm, dp = _deg(minus), _deg(plus)
    if dm >= dp:
        return deg_c - dm
    ell = dp
    bound = deg_c - ell + 1
    top = minus.coeff(K, ell - 1) if not minus.is_zero() else ZERO
    lead = plus.coeff(K, ell)
    if (top.is_zero() or top.is_constant()) and lead.is_constant():
        v = -2 * (top.constant_value() if not top.is_zero() else mpq(0)) / lead.constant_value()
        if v.denominator == 1 and v >= 0:
            bound = max(bound, int(v))
    return bound


def _coefficients(p: Polynomial, rows: int) -> list[Polynomial]:
    u = p.to_univariate(K) if not p.is_zero() else []
    return [u[i] if i < len(u) else ZERO for i in range(rows)]


def solve_gosper_equation(A: Polynomial, B: Polynomial, cs: Sequence[Polynomial], fixed: bool):
    """Solve ``A x(k+1) - B x(k) = sum_j sigma_j cs[j]`` for a polynomial ``x``.

    With ``fixed`` the single right-hand side has ``sigma_0 = 1`` and the
    result is ``(X, D, factors)`` meaning ``x = X/D`` with ``D`` the product
    of ``factors``.  Otherwise the sigmas are
    unknowns and the result is ``(X, sigmas)`` with polynomial entries,
    not all sigmas zero.  ``None`` when no solution exists.
    """
    deg_c = max((_deg(c) for c in cs), default=-1)
    d = _degree_bound(A, B, deg_c)
    unknowns = max(d + 1, 0)
    columns = []
    kk = Polynomial.var(K)
    power = ONE
    shifted = ONE
    for i in range(unknowns):
        columns.append(A * shifted - B * power)
        power = power * kk
        shifted = shifted * (kk + 1)
    rows = max([_deg(c) + 1 for c in cs] + [_deg(col) + 1 for col in columns] + [1])
    if fixed:
        if unknowns == 0:
            return None if not cs[0].is_zero() else (ZERO, ONE, ())
        cols = [_coefficients(col, rows) for col in columns]
        rhs = _coefficients(cs[0], rows)
        tri = _triangular_solve(cols, rhs)
        if tri is not None:
            return tri if tri is not False else None
        matrix = [[cols[j][r] for j in range(unknowns)] for r in range(rows)]
        out = solve_fraction_free(matrix, rhs)
        if out is None:
            return None
        nums, D = out
        X = Polynomial.from_univariate(nums, K)
        return X, D, (D,)
    all_cols = columns + [-c for c in cs]
    cols = [_coefficients(col, rows) for col in all_cols]
    matrix = [[cols[j][r] for j in range(len(all_cols))] for r in range(rows)]
    for v in nullspace_fraction_free(matrix):
        sig = v[unknowns:]
        if any(not s.is_zero() for s in sig):
            X = Polynomial.from_univariate(v[:unknowns], K) if unknowns else ZERO
            return X, sig
    return None


def _triangular_solve(cols: list[list[Polynomial]], rhs: list[Polynomial]):
    """Back substitution when column ``i`` has its top coefficient in row ``i + e``.

    Returns ``(X, D)``, ``False`` for an inconsistent system, or ``None``
    when the shape does not apply and elimination is needed.
    """
    n = len(cols)
    tops = [max((r for r, c in enumerate(col) if not c.is_zero()), default=-1) for col in cols]
    e = tops[0]
    if e < 0 or any(t != i + e for i, t in enumerate(tops)):
        return None
    piv = [cols[i][i + e] for i in range(n)]
    # x_i = num[i] / prod(piv[i:]) ; scaled[j] keeps num[j] over the running denominator
    num: list[Polynomial] = [ZERO] * n
    scaled: list[Polynomial] = [ZERO] * n
    den = ONE
    for i in reversed(range(n)):
        r = i + e
        acc = rhs[r] * den
        for j in range(i + 1, n):
            c = cols[j][r]
            if not c.is_zero():
                acc = acc - c * scaled[j]
        num[i] = acc
        for j in range(i + 1, n):
            scaled[j] = scaled[j] * piv[i]
        scaled[i] = acc
        den = den * piv[i]
    # after the loop scaled[j] = x_j * den
    for r in range(len(rhs)):
        if e <= r < e + n:
            continue
        s = rhs[r] * den
        for j in range(n):
            if not cols[j][r].is_zero():
                s = s - cols[j][r] * scaled[j]
        if not s.is_zero():
            return False
    return Polynomial.from_univariate(scaled, K), den, piv


# -- Gosper -----------------------------------------------------------------------------------


def gosper(r: RationalFunction) -> RationalFunction | None:
    """``R`` with ``R(k+1) r(k) - R(k) = 1`` if the term with quotient ``r`` is Gosper-summable."""
    r = RationalFunction.coerce(r)
    if r.is_zero():
        raise ImproperTermError("zero shift quotient")
    if "k" not in r.variables():
        # geometric term: t(k+1) = r t(k)
        if r == 1:
            return None
        return RationalFunction.coerce(1) / (r - 1)
    form = gp_form(r)
    Zn, Zd = form.Z.num, form.Z.den
    A = Zn * form.q
    B = Zd * form.s.shift(K, -1)
    out = solve_gosper_equation(A, B, [Zd * form.p], fixed=True)
    if out is None:
        return None
    X, D, _ = out
    if X.is_zero():
        return None
    return RationalFunction(form.s.shift(K, -1) * X, form.p * D)


def _gosper_structured(ratio: FactoredRatio, Ps: Sequence[Polynomial], fixed: bool):
    """Telescoper for ``t(k) = (sum_j sigma_j Ps[j](k)) * T(k)`` given ``T(k+1)/T(k) = ratio``.

    Returns ``(X, D_or_sigmas, extra, s)``: the antidifference is
    ``G(k) = s(k-1) X(k) / (D * extra(k)) * T(k)``.
    """
    out = _gosper_lists(ratio, Ps, fixed)
    return None if out is None else out[:4]


def _gosper_lists(ratio: FactoredRatio, Ps: Sequence[Polynomial], fixed: bool):
    # as above plus (D factors, extra factors, s factors) for cheap cancellation
    form, extra, lists = _gp_lists(ratio)
    Zn, Zd = form.Z.num, form.Z.den
    A = Zn * form.q
    B = Zd * form.s.shift(K, -1)
    cs = [Zd * extra * P for P in Ps]
    out = solve_gosper_equation(A, B, cs, fixed)
    if out is None:
        return None
    return out[0], out[1], extra, form.s, (out[2] if fixed else ()), lists


def _reduced(X: Polynomial, num_factors: list[Polynomial], linear: list[Polynomial],
             kfree: Sequence[Polynomial]) -> RationalFunction:
    """``prod(num_factors) * X / (prod(linear) * prod(kfree))`` in lowest terms.

    ``num_factors`` and ``linear`` are monic linear in k, hence irreducible,
    and ``kfree`` do not involve k, so common factors are found by exact
    trial division and small gcds instead of one large gcd.
    """
    nf = list(num_factors)
    rest = []
    for f in linear:
        if f in nf:
            nf.remove(f)
            continue
        try:
            X = X.exact_div(f)
        except NotDivisible:
            rest.append(f)
    den_k = ONE
    for g in kfree:
        if g.is_constant():
            den_k = den_k * g
            continue
        while True:
            h = g
            for c in sorted(X.to_univariate(K), key=lambda c: len(c.terms)):
                if c.is_zero():
                    continue
                h = poly_gcd(h, c)
                if h.is_constant():
                    break
            if h.is_constant():
                break
            X = X.exact_div(h)
            g = g.exact_div(h)
        den_k = den_k * g
    return RationalFunction(_product(nf) * X, den_k * _product(rest), normalized=True)


# -- WZ pairs ---------------------------------------------------------------------------------


def _split_ratio(fr: FactoredRatio):
    """``(numerator poly, denominator poly, denominator linear factors)`` of a factored ratio."""
    c = fr.constant
    top = c.num * _product(fr.num)
    bot_factors = list(fr.den)
    return top, c.den, bot_factors


def wz_pair(F: HyperTerm) -> Certificate | None:
    """Certificate ``C = G/F`` with ``F(n,k) - F(n+1,k) = G(n,k+1) - G(n,k)``."""
    qn = F.quotient_factors("n")
    qk = F.quotient_factors(K)
    if qn.to_rational() == 1:
        return Certificate(RationalFunction.coerce(0), trivial=True)
    top, cden, dfactors = _split_ratio(qn)
    bot = cden * _product(dfactors)
    P = bot - top
    # T = F / (cden * prod dfactors); the k-quotient of T
    shifted = FactoredRatio(RationalFunction.coerce(1), tuple(dfactors),
                            tuple(f.shift(K, 1) for f in dfactors))
    ratio = qk * _normalise(shifted)
    out = _gosper_lists(ratio, [P], fixed=True)
    if out is None:
        return None
    X, D, extra, s, pivots, lists = out
    if X.is_zero():
        return None
    if lists is None:
        return Certificate(RationalFunction(s.shift(K, -1) * X, D * extra * bot))
    extras, s_factors = lists
    C = _reduced(X, [f.shift(K, -1) for f in s_factors], list(extras) + list(dfactors), list(pivots) + [cden])
    return Certificate(C)


def _normalise(fr: FactoredRatio) -> FactoredRatio:
    from .hyperterm import _cancelled

    return _cancelled(fr.constant, list(fr.num), list(fr.den))


def verify_certificate(F: HyperTerm, C: Certificate | RationalFunction) -> bool:
    """Exact check of ``1 - q_n = C(k+1) q_k - C`` after clearing denominators."""
    C = C.C if isinstance(C, Certificate) else RationalFunction.coerce(C)
    qn = F.quotient_factors("n")
    qk = F.quotient_factors(K)
    Nn, Dn = _poly_pair(qn)
    Nk, _ = _poly_pair(qk)
    candidates = _candidates(list(qn.den) + list(qk.den) + list(qk.num))
    cf = _split_factors(C.den, candidates)
    cf1 = [f.shift(K, 1) for f in cf]
    terms = [
        (Dn - Nn, list(qn.den) + [qn.constant.den]),
        (-C.num.shift(K, 1) * Nk, cf1 + list(qk.den) + [qk.constant.den]),
        (C.num, cf),
    ]
    return _fractions_sum_to_zero(terms)


def _candidates(factors: Sequence[Polynomial], reach: int = 3) -> list[Polynomial]:
    out: list[Polynomial] = []
    for f in factors:
        if K not in f.variables():
            if f not in out:
                out.append(f)
            continue
        for j in range(-reach, reach + 1):
            g = f.shift(K, j)
            if g not in out:
                out.append(g)
    return out


def _split_factors(p: Polynomial, candidates: Sequence[Polynomial]) -> list[Polynomial]:
    """Factors of ``p`` found by exact trial division; the cofactor is kept whole."""
    out = []
    for f in candidates:
        if p.is_constant():
            break
        if not f.variables() <= p.variables():
            continue
        while True:
            try:
                p = p.exact_div(f)
            except NotDivisible:
                break
            out.append(f)
    if not (p.is_constant() and p.constant_value() == 1):
        out.append(p)
    return out


def _fractions_sum_to_zero(terms: Sequence[tuple[Polynomial, Sequence[Polynomial]]]) -> bool:
    """``sum num / prod(dens) == 0`` using the multiset lcm of the denominator factors."""
    lcm = _lcm_factors([fs for _, fs in terms])
    total = ZERO
    for num, fs in terms:
        total = total + num * _product(_minus(lcm, fs))
    return total.is_zero()


def _poly_pair(fr: FactoredRatio) -> tuple[Polynomial, Polynomial]:
    return fr.constant.num * _product(fr.num), fr.constant.den * _product(fr.den)


def wz_residual(F: HyperTerm, C: RationalFunction) -> RationalFunction:
    """``C(k+1) q_k - C - (1 - q_n)`` as a normalised rational function (zero for a valid pair)."""
    qn = F.shift_quotient("n")
    qk = F.shift_quotient(K)
    return C.shift(K, 1) * qk - C - (1 - qn)


# -- Zeilberger --------------------------------------------------------------------------------


def _lcm_factors(lists: Sequence[Sequence[Polynomial]]) -> list[Polynomial]:
    out: list[Polynomial] = []
    for fs in lists:
        pool = list(out)
        for f in fs:
            if f in pool:
                pool.remove(f)
            else:
                out.append(f)
    return out


def _minus(big: Sequence[Polynomial], small: Sequence[Polynomial]) -> list[Polynomial]:
    rest = list(big)
    for f in small:
        rest.remove(f)
    return rest


def zeilberger(M: HyperTerm, param: str, order: int = 1, *, max_order: int | None = None) -> Recurrence | None:
    """First recurrence of order ``1..order`` in ``param`` whose k-part telescopes."""
    top = max_order or order
    for J in range(1, top + 1):
        rec = _zeilberger_order(M, param, J)
        if rec is not None:
            return rec
    return None


def _zeilberger_order(M: HyperTerm, param: str, J: int) -> Recurrence | None:
    ratios = []
    for i in range(J + 1):
        if i == 0:
            ratios.append(FactoredRatio(RationalFunction.coerce(1), (), ()))
            continue
        try:
            ratios.append(M.shift(param, i).ratio_factors(M))
        except ImproperTermError:
            return None
    # common denominator over the linear factors, the parameter-only constants stay rational
    consts = [r.constant for r in ratios]
    cden = ONE
    for c in consts:
        cden = _lcm_poly(cden, c.den)
    den = _lcm_factors([r.den for r in ratios])
    Ps = []
    for r in ratios:
        rest = _minus(den, r.den)
        Ps.append(r.constant.num * cden.exact_div(r.constant.den) * _product(r.num) * _product(rest))
    shifted = FactoredRatio(RationalFunction.coerce(1), tuple(den), tuple(f.shift(K, 1) for f in den))
    ratio = M.quotient_factors(K) * _normalise(shifted)
    out = _gosper_structured(ratio, Ps, fixed=False)
    if out is None:
        return None
    X, sigmas, extra, s = out
    bot = cden * _product(den)
    C = RationalFunction(s.shift(K, -1) * X, extra * bot) if not X.is_zero() else RationalFunction.coerce(0)
    sig = [RationalFunction.coerce(x) for x in sigmas]
    sig, C = _normalise_recurrence(sig, C)
    return Recurrence(param, J, tuple(sig), Certificate(C, trivial=C.is_zero()))


def _lcm_poly(a: Polynomial, b: Polynomial) -> Polynomial:
    if b == 1 or a == b:
        return a
    if a == 1:
        return b
    from .algebra import poly_lcm

    return poly_lcm(a, b)


def _normalise_recurrence(sig: list[RationalFunction], C: RationalFunction):
    """Scale so the sigmas are coprime polynomials, the first nonzero one with positive lead."""
    L = ONE
    for s in sig:
        L = _lcm_poly(L, s.den)
    g = None
    for s in sig:
        if not s.is_zero():
            x = (s * L).num
            g = x if g is None else poly_gcd(g, x)
    scale = RationalFunction(L, g)
    sig = [s * scale for s in sig]
    first = next(s for s in sig if not s.is_zero())
    c = _common_content([s.num for s in sig if not s.is_zero()])
    if first.num.lc() < 0:
        c = -c
    factor = RationalFunction.coerce(1 / c)
    return [s * factor for s in sig], C * scale * factor


def _common_content(polys: Sequence[Polynomial]) -> mpq:
    from math import gcd, lcm

    num = 0
    den = 1
    for p in polys:
        c = p.content()
        num = gcd(num, int(c.numerator))
        den = lcm(den, int(c.denominator))
    return mpq(num, den) if num else mpq(1)


def verify_recurrence(M: HyperTerm, rec: Recurrence) -> bool:
    """Exact check of ``sum_i sigma_i M(param+i)/M = C(k+1) q_k - C``."""
    lhs = RationalFunction.coerce(0)
    for i, s in enumerate(rec.sigmas):
        rho = RationalFunction.coerce(1) if i == 0 else M.shift(rec.param, i).ratio_to(M)
        lhs = lhs + s * rho
    C = rec.certificate.C
    qk = M.shift_quotient(K)
    return (C.shift(K, 1) * qk - C - lhs).is_zero()


def verify_gosper(r: RationalFunction, R: RationalFunction) -> bool:
    """``R(k+1) r(k) - R(k) = 1`` exactly."""
    return (R.shift(K, 1) * r - R - 1).is_zero()


__all__ = [
    "Certificate",
    "GPForm",
    "Recurrence",
    "gosper",
    "gp_form",
    "gp_form_factored",
    "solve_gosper_equation",
    "verify_certificate",
    "verify_gosper",
    "verify_recurrence",
    "wz_pair",
    "wz_residual",
    "zeilberger",
]

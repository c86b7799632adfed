"""High-precision numerics used to cross-check symbolic results.

Gamma values come from Spouge's approximation with the parameter picked
from the target precision.  Non-terminating series are summed with the
Levin u-transform; terminating ones are summed exactly.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import mpmath
from gmpy2 import mpq

from .hyperterm import HyperTerm, PoleError, TheoremSpec

log = logging.getLogger(__name__)


class EmptyRegionError(ValueError):
    """No admissible sample point was found."""


@dataclass(frozen=True)
class PrecisionConfig:
    bits: int = 128
    k_max: int = 400
    tolerance: float | None = None

    def __post_init__(self):
        if self.bits < 64:
            raise ValueError("mantissa must have at least 64 bits")
        if self.tolerance is not None and self.tolerance <= 0:
            raise ValueError("tolerance must be positive")

    @property
    def tol(self):
        return self.tolerance if self.tolerance is not None else mpmath.mpf(2) ** (-self.bits // 2)


@lru_cache(maxsize=16)
def _context(bits: int):
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def default_context(bits: int = 128):
    return _context(bits)


# -- Gamma -----------------------------------------------------------------------------

_LOG2_2PI = math.log2(2 * math.pi)


def spouge_parameter(bits: int) -> int:
    """Smallest ``a`` whose relative error bound ``a^-1/2 (2 pi)^-(a+1/2)`` is below ``2^-bits``."""
    a = 2
    while 0.5 * math.log2(a) + (a + 0.5) * _LOG2_2PI < bits + 4:
        a += 1
    return a


@lru_cache(maxsize=32)
def _spouge_coefficients(a: int, prec: int):
    ctx = _context(prec)
    coeffs = [ctx.sqrt(2 * ctx.pi)]
    fact = ctx.mpf(1)
    for k in range(1, a):
        if k > 1:
            fact *= k - 1
        sign = 1 if k % 2 else -1
        coeffs.append(sign * ctx.power(a - k, k - ctx.mpf(1) / 2) * ctx.exp(a - k) / fact)
    return tuple(coeffs)


def gamma_hp(x, cfg: PrecisionConfig | None = None, *, ctx=None):
    """Gamma of a real number at the precision of ``ctx`` (or ``cfg.bits``)."""
    bits = ctx.prec if ctx is not None else (cfg or PrecisionConfig()).bits
    out_ctx = ctx or _context(bits)
    a = spouge_parameter(bits)
    work = bits + 2 * a + 16
    w = _context(work)
    x = _convert(w, x)
    if x == w.floor(x) and x <= 0:
        raise PoleError(f"Gamma pole at {x}")
    if x < 0.5:
        val = w.pi / (w.sinpi(x) * _spouge(w, 1 - x, a, work))
    else:
        val = _spouge(w, x, a, work)
    return out_ctx.mpf(val)


def _spouge(w, x, a: int, prec: int):
    z = x - 1
    c = _spouge_coefficients(a, prec)
    s = c[0]
    for k in range(1, a):
        s += c[k] / (z + k)
    t = z + a
    return w.power(t, z + w.mpf(1) / 2) * w.exp(-t) * s


def _convert(ctx, x):
    if isinstance(x, (Fraction, type(mpq(1)))):
        return ctx.mpf(int(x.numerator)) / int(x.denominator)
    return ctx.mpf(x)


def gamma_exact(x) -> mpq:
    """``Gamma(x)`` for a positive integer ``x`` as an exact rational."""
    x = mpq(x)
    if x.denominator != 1:
        raise ValueError(f"Gamma({x}) is not rational in general")
    if x <= 0:
        raise PoleError(f"Gamma pole at {x}")
    return mpq(math.factorial(int(x) - 1))


def gamma_ratio(ctx, x, m: int):
    """``Gamma(x+m)/Gamma(x)``."""
    return gamma_hp(x + m, ctx=ctx) / gamma_hp(x, ctx=ctx)


# -- partial sums ------------------------------------------------------------------------


def _term_ratio(term: HyperTerm, vals: Mapping, k: int, ctx, exact: bool):
    """``T(k+1)/T(k)`` straight from the Gamma arguments, bypassing the symbolic quotient."""
    num = mpq(1) if exact else ctx.mpf(1)
    den = mpq(1) if exact else ctx.mpf(1)

    def value(p):
        v = p.evaluate(vals)
        return mpq(v) if exact else _convert(ctx, v)

    for g in term.gammas:
        c = g.arg.coeff_k
        if c == 0:
            continue
        x = value(g.arg.poly.subs({"k": k}))
        c = int(c)
        lin = [x + i for i in range(c)] if c > 0 else [x - i for i in range(1, -c + 1)]
        up = (g.exponent > 0) == (c > 0)
        for y in lin:
            for _ in range(abs(g.exponent)):
                if up:
                    num *= y
                else:
                    den *= y
    if term.base != 1:
        num *= value(term.base.num) if exact else _convert(ctx, term.base.evaluate(vals))
        if exact:
            den *= value(term.base.den)
    pre = term.prefactor
    if "k" in pre.variables():
        kv = dict(vals)
        kv["k"] = k + 1
        top = pre.evaluate(kv)
        kv["k"] = k
        bot = pre.evaluate(kv)
        num *= mpq(top) if exact else _convert(ctx, top)
        den *= mpq(bot) if exact else _convert(ctx, bot)
    return num, den


def _assign(assignments: Mapping, ctx, exact: bool) -> dict:
    return {v: mpq(x) if exact else _convert(ctx, x) for v, x in assignments.items()}


def term_values(term: HyperTerm, assignments: Mapping, K: int, cfg: PrecisionConfig | None = None,
                *, exact: bool = False, ctx=None) -> list:
    """``[T(0), ..., T(K)]`` by the Gamma-argument recurrence."""
    cfg = cfg or PrecisionConfig()
    ctx = ctx or _context(cfg.bits + 32)
    vals = _assign(assignments, ctx, exact)
    t = term.evaluate(assignments, 0, ctx=ctx, exact=exact)
    out = [t]
    for k in range(K):
        num, den = _term_ratio(term, vals, k, ctx, exact)
        if t == 0:
            out.append(t)
            continue
        if den == 0:
            raise PoleError(f"pole of the summand at k={k + 1}")
        t = t * num / den
        out.append(t)
    return out


def partial_sum(term: HyperTerm, assignments: Mapping, K: int, cfg: PrecisionConfig | None = None,
                *, exact: bool = False):
    """``sum_{k=0}^{K} T(k)``; exact rational when ``exact`` is set."""
    cfg = cfg or PrecisionConfig()
    ctx = _context(cfg.bits + 32)
    vals = term_values(term, assignments, K, cfg, exact=exact, ctx=ctx)
    if exact:
        return sum(vals, mpq(0))
    return _context(cfg.bits).mpf(ctx.fsum(vals))


def levin_u(terms: Sequence, ctx, beta: int = 1):
    """Levin u-transform of the series ``sum terms``; returns ``(value, error_estimate)``."""
    n = len(terms)
    partial = []
    s = ctx.mpf(0)
    for t in terms:
        s += t
        partial.append(s)

    def transform(m):
        top = ctx.mpf(0)
        bot = ctx.mpf(0)
        for j in range(m + 1):
            w = (-1) ** j * ctx.binomial(m, j) * ctx.power(ctx.mpf(beta + j) / (beta + m), m - 1)
            omega = (beta + j) * terms[j]
            top += w * partial[j] / omega
            bot += w / omega
        return top / bot

    m = n - 1
    best = transform(m)
    prev = transform(m - 2)
    return best, abs(best - prev)


def sum_series(term: HyperTerm, assignments: Mapping, cfg: PrecisionConfig | None = None,
               *, terms: int | None = None):
    """Value of ``sum_{k>=0} T(k)`` with an error estimate.

    Terminating series are summed exactly.  Otherwise the Levin u-transform
    is applied to the first ``terms`` summands at triple working precision.
    """
    cfg = cfg or PrecisionConfig()
    out = _context(cfg.bits)
    m = terms or max(40, cfg.bits // 2)
    if _terminates(term, assignments):
        try:
            vals = term_values(term, assignments, cfg.k_max, cfg, exact=True)
            v = sum(vals, mpq(0))
            return _convert(out, v), out.mpf(0)
        except (ValueError, KeyError):
            pass
    ctx = _context(3 * cfg.bits + 64)
    vals = term_values(term, assignments, m + 1, cfg, ctx=ctx)
    zeros = [i for i, v in enumerate(vals) if v == 0]
    if zeros:
        return out.mpf(ctx.fsum(vals[: zeros[0]])), out.mpf(0)
    value, err = levin_u(vals[: m + 1], ctx)
    return out.mpf(value), out.mpf(err)


def _terminates(term: HyperTerm, assignments: Mapping) -> bool:
    vals = {v: mpq(x) for v, x in assignments.items()}
    for g in term.gammas:
        if g.exponent > 0 and g.arg.coeff_k == 1:
            x = mpq(g.arg.poly.subs({"k": 0}).evaluate(vals)) if g.arg.poly.subs({"k": 0}).variables() \
                else mpq(g.arg.poly.subs({"k": 0}).constant_value())
            partner = g.arg.poly.subs({"k": 0})
            # (x)_k = Gamma(x+k)/Gamma(x): a nonpositive integer x cuts the series off
            if x.denominator == 1 and x <= 0 and any(
                h.exponent < 0 and h.arg.coeff_k == 0 and h.arg.poly == partner for h in term.gammas
            ):
                return True
    return False


# -- theorem checks ----------------------------------------------------------------------


@dataclass
class CheckRecord:
    name: str
    inputs: dict
    lhs: object
    rhs: object
    abs_error: object
    rel_error: object
    passed: bool

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "inputs": {k: str(v) for k, v in self.inputs.items()},
            "lhs": mpmath.nstr(self.lhs, 30) if not isinstance(self.lhs, str) else self.lhs,
            "rhs": mpmath.nstr(self.rhs, 30) if not isinstance(self.rhs, str) else self.rhs,
            "abs_error": mpmath.nstr(self.abs_error, 5),
            "rel_error": mpmath.nstr(self.rel_error, 5),
            "passed": self.passed,
        }


@dataclass
class NumericReport:
    theorem: str
    tolerance: object
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.records) and all(r.passed for r in self.records)

    def add(self, name, inputs, lhs, rhs, tol) -> CheckRecord:
        err = abs(lhs - rhs)
        scale = max(abs(rhs), abs(lhs))
        rel = err / scale if scale != 0 else err
        rec = CheckRecord(name, dict(inputs), lhs, rhs, err, rel, bool(rel <= tol))
        self.records.append(rec)
        return rec

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "tolerance": mpmath.nstr(mpmath.mpf(self.tolerance), 5),
            "passed": self.passed,
            "records": [r.to_json() for r in self.records],
        }

    def __str__(self) -> str:
        lines = [f"numeric check {self.theorem}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.records:
            pt = ", ".join(f"{k}={v}" for k, v in r.inputs.items())
            lines.append(f"  [{'ok' if r.passed else 'FAIL'}] {r.name} ({pt}) rel.err {mpmath.nstr(r.rel_error, 3)}")
        return "\n".join(lines)


def _gamma_arguments(spec: TheoremSpec):
    args = [g.arg.poly for g in spec.rhs.gammas]
    args += [p for p in spec.lower]
    return args


def admissible(spec: TheoremSpec, point: Mapping, margin=mpq(1, 4)) -> bool:
    """Point strictly inside the stated region, away from Gamma poles."""
    for c in spec.stated_conditions:
        if c.form.evaluate(point) > -margin:
            return False
    for p in _gamma_arguments(spec):
        v = mpq(p.evaluate(point)) if p.variables() else mpq(p.constant_value())
        if v.denominator == 1 and v <= 0:
            return False
    for p in spec.upper:
        v = mpq(p.evaluate(point)) if p.variables() else mpq(p.constant_value())
        if v.denominator == 1 and v <= 0:
            return False
    return True


def sample_points(spec: TheoremSpec, count: int, *, seed: int = 0, box=(-3, 3),
                  denominators=(2, 3, 4, 5, 7, 8), max_tries: int = 20000) -> list[dict]:
    """Random rational points inside the admissible region (deterministic for a seed)."""
    rng = random.Random(seed)
    params = sorted(spec.parameters)
    out: list[dict] = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise EmptyRegionError(f"no admissible sample point for {spec.name}")
        point = {}
        for p in params:
            d = rng.choice(denominators)
            point[p] = mpq(rng.randint(box[0] * d, box[1] * d), d)
        if admissible(spec, point):
            out.append(point)
    return out


def check_theorem_numeric(spec: TheoremSpec, samples: int = 5, cfg: PrecisionConfig | None = None, *,
                          seed: int = 0, points: Sequence[Mapping] | None = None,
                          certificate=None, rhs: HyperTerm | None = None) -> NumericReport:
    """Compare summed left-hand sides with the Gamma closed form at sample points.

    ``certificate`` is an optional ``(F, C)`` pair whose WZ relation is
    replayed at integer ``(n, k)`` through direct Gamma evaluation.
    """
    cfg = cfg or PrecisionConfig()
    tol = cfg.tol
    report = NumericReport(spec.name, tol)
    pts = list(points) if points is not None else sample_points(spec, samples, seed=seed)
    lhs_term = spec.lhs
    closed = rhs or spec.rhs
    ctx = _context(cfg.bits)
    for pt in pts:
        lhs, err = sum_series(lhs_term, pt, cfg)
        rv = closed.evaluate(pt, ctx=ctx)
        rec = report.add("sum", pt, lhs, rv, tol)
        if not rec.passed:
            log.info("%s: mismatch at %s (series error estimate %s)", spec.name, pt, mpmath.nstr(err, 3))
    if certificate is not None:
        F, C = certificate
        rng = random.Random(seed + 1)
        for pt in pts[:2]:
            for _ in range(3):
                n, k = rng.randint(0, 4), rng.randint(0, 6)
                try:
                    lhs, rhs_v = replay_wz_numeric(F, C, pt, n, k, ctx)
                except (PoleError, ZeroDivisionError):
                    continue
                report.add("wz-relation", {**pt, "n": n, "k": k}, lhs, rhs_v, tol)
    return report


def replay_wz_numeric(F: HyperTerm, C, point: Mapping, n: int, k: int, ctx):
    """Both sides of ``F(n,k) - F(n+1,k) = G(n,k+1) - G(n,k)`` with ``G = C*F``."""
    def Fv(nn, kk):
        return F.evaluate({**point, "n": nn}, kk, ctx=ctx)

    def Cv(nn, kk):
        v = C.evaluate({**point, "n": nn, "k": kk})
        return _convert(ctx, v)

    lhs = Fv(n, k) - Fv(n + 1, k)
    rhs = Cv(n, k + 1) * Fv(n, k + 1) - Cv(n, k) * Fv(n, k)
    return lhs, rhs


__all__ = [
    "CheckRecord",
    "EmptyRegionError",
    "NumericReport",
    "PrecisionConfig",
    "admissible",
    "check_theorem_numeric",
    "default_context",
    "gamma_exact",
    "gamma_hp",
    "levin_u",
    "partial_sum",
    "replay_wz_numeric",
    "sample_points",
    "spouge_parameter",
    "sum_series",
    "term_values",
]

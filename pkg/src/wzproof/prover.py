"""Proof pipeline for non-terminating summation theorems.

A theorem ``sum_k t(k) = rhs`` is embedded in a family indexed by ``n`` by
shifting one parameter by ``step*n``.  With ``F = f/S`` the pipeline shows
that ``sum_k F(n,k)`` is independent of ``n`` (WZ pair plus boundary terms),
then evaluates the sum at ``n -> infinity`` termwise under a dominated
convergence bound and closes the limit series.  An optional contiguous
recurrence in one parameter widens the region afterwards.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from gmpy2 import mpq

from .algebra import Polynomial, RationalFunction
from .asympt import (
    AsymptoticError,
    GrowthEstimate,
    LimitKind,
    LimitResult,
    domination_check,
    k_growth_exponent,
    k_limit_zero,
    n_limit,
    series_converges,
)
from .conditions import (
    ConditionError,
    ConvergenceCondition,
    conjunction_str,
    eliminate_n,
    format_affine,
    simplify,
)
from .hyperterm import HyperTerm, TheoremSpec
from .telescope import (
    Certificate,
    Recurrence,
    verify_certificate,
    verify_recurrence,
    wz_pair,
    zeilberger,
)

log = logging.getLogger(__name__)

K = "k"
N = "n"
MAX_STEP = 6

PIPELINE = ("shift", "wz", "boundary", "independence", "limit", "domination", "closure", "extension")


class ProofError(RuntimeError):
    """A pipeline stage could not be completed."""

    def __init__(self, step: str, reason: str):
        super().__init__(f"{step}: {reason}")
        self.step = step
        self.reason = reason


class ShiftError(ValueError):
    pass


class ClosureError(ValueError):
    pass


# -- transcript steps -------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftStep:
    param: str
    step: int
    f: HyperTerm
    S: HyperTerm
    F: HyperTerm
    kind = "shift"

    def lines(self) -> list[str]:
        return [
            f"replace {self.param} by {self.param}+{self.step}n",
            f"f(n,k) = {self.f.pochhammer_str()}",
            f"S(n) = {self.S}",
            "claim: sum_k F(n,k) = 1 with F = f/S",
        ]


@dataclass(frozen=True)
class WZStep:
    certificate: RationalFunction
    verified: bool
    kind = "wz"

    def lines(self) -> list[str]:
        return [
            f"C(n,k) = {self.certificate}",
            "F(n,k) - F(n+1,k) = G(n,k+1) - G(n,k) with G = C*F: "
            + ("exact identity" if self.verified else "NOT verified"),
        ]


@dataclass(frozen=True)
class BoundaryStep:
    certificate_at_zero: RationalFunction
    f_growth: GrowthEstimate
    g_growth: GrowthEstimate
    raw_conditions: tuple[ConvergenceCondition, ...]
    conditions: tuple[ConvergenceCondition, ...]
    kind = "boundary"

    def lines(self) -> list[str]:
        return [
            f"G(n,0) = F(n,0)*C(n,0) with C(n,0) = {self.certificate_at_zero}",
            f"|F(n,k)| ~ {self.f_growth}",
            f"|G(n,k)| ~ {self.g_growth}",
            f"sum_k F(n,k) converges and lim_k G(n,k) = 0 when {conjunction_str(self.raw_conditions)}",
            f"for every n >= 0: {conjunction_str(self.conditions)}",
        ]


@dataclass(frozen=True)
class IndependenceStep:
    statement: str = "sum_k F(n,k) - sum_k F(n+1,k) = lim_K G(n,K) - G(n,0) = 0, so the sum is independent of n"
    kind = "independence"

    def lines(self) -> list[str]:
        return [self.statement]


@dataclass(frozen=True)
class TermLimitStep:
    limit: LimitResult
    kind = "limit"

    def lines(self) -> list[str]:
        out = [f"lim_n F(n,k): {self.limit}"]
        if self.limit.conditions:
            out.append(f"when {conjunction_str(self.limit.conditions)}")
        return out


@dataclass(frozen=True)
class DominationStep:
    method: str
    exponent_shift: int
    report_lines: tuple[str, ...]
    conditions: tuple[ConvergenceCondition, ...]
    kind = "domination"

    def lines(self) -> list[str]:
        head = "dominated convergence" + (" after pairing consecutive terms" if self.method == "pairing" else "")
        return [head, *self.report_lines, f"interchange of limit and sum valid when {conjunction_str(self.conditions)}"]


@dataclass(frozen=True)
class ClosureForm:
    """Closed form of the limit series: ``c * (1-z)^(-beta)`` or the Kronecker delta value."""

    kind: str
    value: HyperTerm
    beta: Polynomial | None = None
    z: RationalFunction | None = None

    @property
    def is_one(self) -> bool:
        return self.value.is_one()

    def __str__(self) -> str:
        if self.kind == "KroneckerDelta":
            return f"sum_k delta(k,0)*({self.value.pochhammer_str()}) = {self.value.pochhammer_str()}"
        return (f"binomial series with beta = {format_affine(self.beta)}, z = {self.z}: "
                f"value {self.value.pochhammer_str()}")


@dataclass(frozen=True)
class ClosureStep:
    closure: ClosureForm
    kind = "closure"

    def lines(self) -> list[str]:
        return [str(self.closure), "limit series equals 1" if self.closure.is_one else "limit series is NOT 1"]


@dataclass(frozen=True)
class ExtensionStep:
    param: str
    sigmas: tuple[RationalFunction, ...]
    certificate: RationalFunction
    rhs_ratio: RationalFunction
    boundary_conditions: tuple[ConvergenceCondition, ...]
    old_conditions: tuple[ConvergenceCondition, ...]
    new_conditions: tuple[ConvergenceCondition, ...]
    genericity: tuple[str, ...]
    kind = "extension"

    def lines(self) -> list[str]:
        p = self.param
        terms = " + ".join(f"({s})*M({p}+{i},k)" if i else f"({s})*M({p},k)" for i, s in enumerate(self.sigmas))
        return [
            f"recurrence in {p}: {terms} = G'(k+1) - G'(k), G' = M*({self.certificate})",
            f"G'(0) = 0 and lim_k G'(k) = 0 when {conjunction_str(self.boundary_conditions)}",
            f"rhs({p}+1)/rhs({p}) = {self.rhs_ratio} = -sigma_0/sigma_1",
            f"region {conjunction_str(self.old_conditions)} widened to {conjunction_str(self.new_conditions)}",
            *(f"assumes {g}" for g in self.genericity),
        ]


Step = ShiftStep | WZStep | BoundaryStep | IndependenceStep | TermLimitStep | DominationStep | ClosureStep | ExtensionStep


@dataclass(frozen=True)
class Verdict:
    proved: bool
    conditions: tuple[ConvergenceCondition, ...] = ()
    step: str | None = None
    reason: str = ""

    @classmethod
    def failed(cls, step: str, reason: str) -> "Verdict":
        return cls(False, (), step, reason)

    def __str__(self) -> str:
        if self.proved:
            if not self.conditions:
                return "Proved unconditionally"
            return f"Proved when {conjunction_str(self.conditions)}"
        return f"Failed at {self.step}: {self.reason}"


@dataclass(frozen=True)
class ProofTranscript:
    theorem: str
    steps: tuple[Step, ...]
    verdict: Verdict
    genericity: tuple[str, ...] = ()
    stated_conditions: tuple[ConvergenceCondition, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        last = -1
        for s in self.steps:
            i = PIPELINE.index(s.kind)
            if i < last:
                raise ValueError(f"step {s.kind} out of pipeline order")
            last = i

    @property
    def proved(self) -> bool:
        return self.verdict.proved

    @property
    def conditions(self) -> tuple[ConvergenceCondition, ...]:
        return self.verdict.conditions

    def step(self, kind: str):
        for s in self.steps:
            if s.kind == kind:
                return s
        return None

    def steps_of(self, kind: str) -> list:
        return [s for s in self.steps if s.kind == kind]

    def matches_stated(self) -> bool:
        return set(simplify(self.verdict.conditions)) == set(simplify(self.stated_conditions))

    def text(self) -> str:
        out = [f"theorem {self.theorem}"]
        for i, s in enumerate(self.steps, 1):
            out.append(f"[{i}] {s.kind}")
            out.extend("    " + line for line in s.lines())
        if self.genericity:
            out.append("generic parameters: " + "; ".join(self.genericity))
        out.extend(f"note: {x}" for x in self.notes)
        out.append(f"verdict: {self.verdict}")
        if self.verdict.proved and self.stated_conditions:
            tag = "matches" if self.matches_stated() else "differs from"
            out.append(f"region {tag} the stated one ({conjunction_str(self.stated_conditions)})")
        return "\n".join(out)

    __str__ = text


# -- shift choice -------------------------------------------------------------------------------


def _shift_ok(spec: TheoremSpec, param: str, step: int) -> bool:
    moved = False
    for term, is_rhs in ((spec.lhs, False), (spec.rhs, True)):
        for g in term.gammas:
            c = mpq(g.arg.coeff(param)) * step
            if c.denominator != 1 or c < 0:
                return False
            moved |= is_rhs and c != 0
    return moved


def choose_shift(spec: TheoremSpec) -> tuple[str, int]:
    """Least step, then first parameter name, that gives integer ``n``-coefficients."""
    found = []
    for p in sorted(spec.parameters):
        if p not in spec.lhs.parameters():
            continue
        for s in range(1, MAX_STEP + 1):
            if _shift_ok(spec, p, s):
                found.append((s, p))
                break
    if not found:
        raise ShiftError(f"no parameter shift of step <= {MAX_STEP} gives integer n-coefficients")
    s, p = min(found)
    return p, s


# -- closure ------------------------------------------------------------------------------------


def close_limit_series(limit: LimitResult | HyperTerm) -> ClosureForm:
    """Sum over ``k`` of a termwise limit.

    A delta limit sums to its value at ``k = 0``; a term
    ``c * (beta)_k * z^k / k!`` sums to ``c * (1-z)^(-beta)``.
    """
    if isinstance(limit, LimitResult):
        if limit.kind is LimitKind.DELTA_K0:
            return ClosureForm("KroneckerDelta", limit.limit_term)
        if limit.kind is not LimitKind.FINITE:
            raise ClosureError(f"closure not found for a {limit.kind.value} limit")
        L = limit.limit_term
    else:
        L = limit
    if K in L.prefactor.variables() or any(K in e.variables() for _, e in L.constant_bases):
        raise ClosureError("closure not found: k-dependent prefactor")
    kk = Polynomial.var(K)
    moving = [g for g in L.gammas if g.arg.coeff_k != 0]
    ups = [g for g in moving if g.exponent > 0]
    downs = [g for g in moving if g.exponent < 0]
    fact = [g for g in downs if g.arg.poly == kk + 1 and g.exponent == -1]
    beta = None
    if not moving:
        beta = Polynomial.const(1)
    elif len(ups) == 1 and ups[0].exponent == 1 and ups[0].arg.coeff_k == 1 and len(downs) == 1 and fact:
        beta = (ups[0].arg.poly - kk).stripped()
    if beta is None:
        raise ClosureError(f"closure not found for {L.pochhammer_str()}")
    z = L.base
    c = L.specialize(K, 0)
    if z == 0:
        return ClosureForm("Binomial", c, beta, z)
    one_minus = RationalFunction.coerce(1) - z
    if one_minus.is_constant() and one_minus.constant_value() <= 0:
        raise ClosureError(f"binomial series diverges at z = {z}")
    value = c * HyperTerm(constant_bases=((one_minus, -beta),))
    return ClosureForm("Binomial", value, beta, z)


# -- pairing ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class PairedSequence:
    """``H(n,k) = F(n,2k) + F(n,2k+1)``; not a single hypergeometric term."""

    F: HyperTerm
    base_exponent: Polynomial
    improvement: int
    vanishes: bool = False

    @property
    def exponent(self) -> Polynomial:
        return (self.base_exponent + self.improvement).stripped()

    def evaluate(self, assignments: Mapping, k: int, *, ctx=None, exact: bool = False):
        return (self.F.evaluate(assignments, 2 * k, ctx=ctx, exact=exact)
                + self.F.evaluate(assignments, 2 * k + 1, ctx=ctx, exact=exact))

    def partial_sum(self, assignments: Mapping, K_: int, *, ctx=None, exact: bool = False):
        total = 0
        for k in range(K_ + 1):
            total = total + self.evaluate(assignments, k, ctx=ctx, exact=exact)
        return total

    def __str__(self) -> str:
        return f"H(n,k) = F(n,2k) + F(n,2k+1), |H| ~ k^({format_affine(self.exponent)})"


def accelerate_pairing(F: HyperTerm) -> PairedSequence:
    """Group consecutive terms; ``1 + q_k`` loses degree when the leading terms cancel."""
    est = k_growth_exponent(F)
    r = F.shift_quotient(K)
    s = r.num + r.den
    if s.is_zero():
        return PairedSequence(F, est.exponent, 0, vanishes=True)
    deg = lambda p: p.degree(K) if K in p.variables() else 0
    improvement = deg(s) - deg(r.den)
    return PairedSequence(F, est.exponent, min(improvement, 0))


# -- pipeline -----------------------------------------------------------------------------------


def _lift(conds: Sequence[ConvergenceCondition], step: str) -> list[ConvergenceCondition]:
    out = []
    for c in conds:
        e = eliminate_n(c)
        if e is None:
            raise ProofError(step, f"condition {c} fails for large n")
        out.append(e)
    return out


def _at_k0(C: RationalFunction) -> RationalFunction:
    if C.den.subs({K: 0}).is_zero():
        raise ProofError("boundary", "certificate has a pole at k = 0")
    return C.subs({K: 0})


def genericity_conditions(spec: TheoremSpec) -> tuple[str, ...]:
    """Parameter values excluded from the claim (Gamma poles of the data)."""
    seen: list[str] = []
    for p in spec.lower:
        if p.variables():
            seen.append(f"{format_affine(p)} is not a nonpositive integer")
    for g in spec.rhs.gammas:
        p = g.arg.poly
        if p.variables():
            s = f"{format_affine(p)} is not a nonpositive integer"
            if s not in seen:
                seen.append(s)
    return tuple(seen)


def prove(spec: TheoremSpec, *, shift: tuple[str, int] | None = None, pairing: bool = False) -> ProofTranscript:
    """Run the pipeline; failures are reported in the verdict, never raised."""
    steps: list = []
    generic = genericity_conditions(spec)

    def result(verdict: Verdict) -> ProofTranscript:
        return ProofTranscript(spec.name, tuple(steps), verdict, generic, tuple(spec.stated_conditions))

    try:
        return result(_run(spec, shift, pairing, steps))
    except ProofError as e:
        return result(Verdict.failed(e.step, e.reason))


def _run(spec: TheoremSpec, shift, pairing: bool, steps: list) -> Verdict:
    try:
        param, step = shift or choose_shift(spec)
    except ShiftError as e:
        raise ProofError("shift", str(e)) from None
    f = spec.lhs.substitute_shift(param, step)
    S = spec.rhs.substitute_shift(param, step)
    F = f / S
    steps.append(ShiftStep(param, step, f, S, F))

    cert = wz_pair(F)
    if cert is None:
        raise ProofError("wz", "Gosper's algorithm finds no certificate for F(n,k) - F(n+1,k)")
    ok = verify_certificate(F, cert.C)
    steps.append(WZStep(cert.C, ok))
    if not ok:
        raise ProofError("wz", "certificate fails the exact WZ identity")

    C = cert.C
    c0 = _at_k0(C)
    if not c0.is_zero():
        raise ProofError("boundary", f"G(n,0) = F(n,0)*({c0}) is not zero")
    G = F.with_prefactor(F.prefactor * C)
    try:
        gF, gG = k_growth_exponent(F), k_growth_exponent(G)
        okG, condG = k_limit_zero(G)
        okF, condF = series_converges(F)
    except AsymptoticError as e:
        raise ProofError("boundary", str(e)) from None
    if not okG:
        raise ProofError("boundary", f"G(n,k) does not tend to 0: |G| ~ {gG}")
    if not okF:
        raise ProofError("boundary", f"sum_k F(n,k) diverges: |F| ~ {gF}")
    raw = tuple(simplify(condG + condF))
    lifted = tuple(_simplify(_lift(raw, "boundary"), "boundary"))
    steps.append(BoundaryStep(c0, gF, gG, raw, lifted))
    steps.append(IndependenceStep())

    try:
        L = n_limit(F)
    except AsymptoticError as e:
        raise ProofError("limit", str(e)) from None
    steps.append(TermLimitStep(L))
    if L.kind not in (LimitKind.FINITE, LimitKind.DELTA_K0):
        raise ProofError("limit", f"termwise limit is {L}")

    shift_k = accelerate_pairing(F).improvement if pairing else 0
    try:
        report, dconds = domination_check(f, S, L, exponent_shift=shift_k)
    except AsymptoticError as e:
        raise ProofError("domination", str(e)) from None
    dconds = _simplify(_lift(list(dconds) + list(L.conditions), "domination"), "domination")
    steps.append(DominationStep("pairing" if pairing else "direct", shift_k, tuple(report.lines()), tuple(dconds)))

    try:
        closure = close_limit_series(L)
    except ClosureError as e:
        raise ProofError("closure", str(e)) from None
    steps.append(ClosureStep(closure))
    if not closure.is_one:
        raise ProofError("closure", f"limit series sums to {closure.value.pochhammer_str()}, not 1")

    final = _simplify(list(lifted) + list(dconds), "verdict")
    return Verdict(True, tuple(final))


def _simplify(conds, step: str) -> list[ConvergenceCondition]:
    try:
        return simplify(conds)
    except ConditionError as e:
        raise ProofError(step, str(e)) from None


def _implied(c: ConvergenceCondition, conds: Sequence[ConvergenceCondition]) -> bool:
    return c.trivially_true() or any(d.implies(c) for d in conds)


def extend_domain(spec: TheoremSpec, transcript: ProofTranscript, param: str, times: int = 1, *,
                  max_order: int = 2) -> ProofTranscript:
    """Widen the region through a first-order contiguous recurrence in ``param``."""
    if times <= 0:
        return transcript
    if not transcript.proved:
        raise ValueError("only a proved transcript can be extended")
    steps = list(transcript.steps)
    generic = list(transcript.genericity)
    conds = list(transcript.conditions)
    M = spec.lhs
    try:
        rec = zeilberger(M, param, 1, max_order=max_order)
        if rec is None:
            raise ProofError("extension", f"no recurrence in {param} of order <= {max_order}")
        if rec.order != 1:
            raise ProofError("extension", f"order {rec.order} recurrence cannot move the region by one step")
        for _ in range(times):
            step = _extension_step(spec, M, rec, param, conds)
            steps.append(step)
            generic.extend(g for g in step.genericity if g not in generic)
            conds = list(step.new_conditions)
    except ProofError as e:
        return replace(transcript, steps=tuple(steps), genericity=tuple(generic),
                       verdict=Verdict.failed(e.step, e.reason))
    return replace(transcript, steps=tuple(steps), genericity=tuple(generic),
                   verdict=Verdict(True, tuple(conds)))


def _extension_step(spec: TheoremSpec, M: HyperTerm, rec: Recurrence, param: str,
                    conds: list[ConvergenceCondition]) -> ExtensionStep:
    if not verify_recurrence(M, rec):
        raise ProofError("extension", "recurrence fails its exact check")
    C = rec.certificate.C
    if not C.is_zero() and not _at_k0_ext(C).is_zero():
        raise ProofError("extension", "G'(0) is not zero")
    boundary: list[ConvergenceCondition] = []
    try:
        for term in (M, M.shift(param, 1)):
            ok, cs = series_converges(term)
            if not ok:
                raise ProofError("extension", "a contiguous series diverges")
            boundary += cs
        if not C.is_zero():
            ok, cs = k_limit_zero(M.with_prefactor(M.prefactor * C))
            if not ok:
                raise ProofError("extension", "G'(k) does not tend to 0")
            boundary += cs
    except AsymptoticError as e:
        raise ProofError("extension", str(e)) from None
    boundary = _simplify(boundary, "extension")
    blocking = [c for c in boundary if not _implied(c, conds)]
    if blocking:
        raise ProofError("extension", f"boundary terms need {conjunction_str(blocking)}")
    s0, s1 = rec.sigmas
    if s1.is_zero():
        raise ProofError("extension", f"sigma_1 vanishes; the sum at {param}+1 is not determined")
    ratio = spec.rhs.shift(param, 1).ratio_to(spec.rhs)
    if ratio != -s0 / s1:
        raise ProofError("extension",
                         f"rhs fails the recurrence: rhs ratio {ratio} differs from {-s0 / s1}; theorem misstated")
    for c in conds:
        if param in c.variables() and c.form.coeff(param, 1).constant_value() < 0:
            raise ProofError("extension", f"{c} does not widen under {param} -> {param}+1")
    new = _simplify([c.shifted(param, -1) for c in conds], "extension")
    generic = (f"{s1} != 0",) if s1.variables() else ()
    return ExtensionStep(param, rec.sigmas, C, ratio, tuple(boundary), tuple(conds), tuple(new), generic)


def _at_k0_ext(C: RationalFunction) -> RationalFunction:
    if C.den.subs({K: 0}).is_zero():
        raise ProofError("extension", "certificate has a pole at k = 0")
    return C.subs({K: 0})


# -- replay -------------------------------------------------------------------------------------


@dataclass
class ReplayReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(ok), detail))
        return ok

    @property
    def accepted(self) -> bool:
        return bool(self.checks) and all(ok for _, ok, _ in self.checks)

    def __str__(self) -> str:
        return "\n".join(f"[{'ok' if ok else 'FAIL'}] {n}" + (f": {d}" if d else "") for n, ok, d in self.checks)


def replay(spec: TheoremSpec, transcript: ProofTranscript) -> ReplayReport:
    """Re-check a transcript from its recorded data; no certificate search is run."""
    rep = ReplayReport()
    if not rep.add("verdict", transcript.proved, str(transcript.verdict)):
        return rep
    rep.add("theorem", transcript.theorem == spec.name, transcript.theorem)
    missing = [k for k in PIPELINE[:-1] if transcript.step(k) is None]
    if missing:
        rep.add("complete", False, "missing steps: " + ", ".join(missing))
        return rep
    try:
        _replay_steps(spec, transcript, rep)
    except (AsymptoticError, ValueError, ZeroDivisionError) as e:
        rep.add("replay", False, f"{type(e).__name__}: {e}")
    return rep


def _replay_steps(spec: TheoremSpec, transcript: ProofTranscript, rep: ReplayReport) -> None:
    sh = transcript.step("shift")
    f = spec.lhs.substitute_shift(sh.param, sh.step)
    S = spec.rhs.substitute_shift(sh.param, sh.step)
    F = f / S
    rep.add("shift", (f, S, F) == (sh.f, sh.S, sh.F))
    rep.add("specialise n=0", f.specialize(N, 0) == spec.lhs and S.specialize(N, 0) == spec.rhs)
    wz = transcript.step("wz")
    C = wz.certificate
    rep.add("wz identity", verify_certificate(F, C))
    bd = transcript.step("boundary")
    G = F.with_prefactor(F.prefactor * C)
    rep.add("G(n,0) = 0", not C.den.subs({K: 0}).is_zero() and C.subs({K: 0}).is_zero())
    okG, condG = k_limit_zero(G)
    okF, condF = series_converges(F)
    rep.add("G exponent", k_growth_exponent(G) == bd.g_growth, str(bd.g_growth))
    rep.add("boundary conditions", okG and okF and tuple(simplify(condG + condF)) == bd.raw_conditions)
    lifted = [eliminate_n(c) for c in bd.raw_conditions]
    rep.add("conditions for all n", None not in lifted and tuple(simplify(lifted)) == bd.conditions)
    lim = transcript.step("limit").limit
    L = n_limit(F)
    rep.add("termwise limit", L == lim, str(lim))
    dom = transcript.step("domination")
    _, dconds = domination_check(f, S, L, exponent_shift=dom.exponent_shift)
    if dom.method == "pairing":
        rep.add("pairing exponent", accelerate_pairing(F).improvement == dom.exponent_shift)
    dl = [eliminate_n(c) for c in list(dconds) + list(L.conditions)]
    rep.add("domination conditions", None not in dl and tuple(simplify(dl)) == dom.conditions)
    cl = transcript.step("closure").closure
    rep.add("closure", close_limit_series(L) == cl and cl.is_one)
    conds = tuple(simplify(list(bd.conditions) + list(dom.conditions)))
    M = spec.lhs
    for ext in transcript.steps_of("extension"):
        rec = Recurrence(ext.param, 1, ext.sigmas, Certificate(ext.certificate, ext.certificate.is_zero()))
        rep.add(f"recurrence in {ext.param}", verify_recurrence(M, rec))
        rep.add("old region", ext.old_conditions == conds)
        C2 = ext.certificate
        rep.add("G'(0) = 0", C2.is_zero() or (not C2.den.subs({K: 0}).is_zero() and C2.subs({K: 0}).is_zero()))
        rep.add("G' boundary conditions", all(_implied(c, conds) for c in ext.boundary_conditions))
        if not C2.is_zero():
            ok, cs = k_limit_zero(M.with_prefactor(M.prefactor * C2))
            rep.add("G' limit", ok and all(_implied(c, conds) for c in cs))
        ratio = spec.rhs.shift(ext.param, 1).ratio_to(spec.rhs)
        rep.add("rhs recurrence", ratio == ext.rhs_ratio and ratio == -ext.sigmas[0] / ext.sigmas[1])
        new = tuple(simplify([c.shifted(ext.param, -1) for c in conds]))
        rep.add("new region", new == ext.new_conditions)
        conds = new
    rep.add("final region", conds == transcript.conditions, conjunction_str(conds))


__all__ = [
    "BoundaryStep",
    "ClosureError",
    "ClosureForm",
    "ClosureStep",
    "DominationStep",
    "ExtensionStep",
    "IndependenceStep",
    "PairedSequence",
    "ProofError",
    "ProofTranscript",
    "ReplayReport",
    "ShiftError",
    "ShiftStep",
    "TermLimitStep",
    "Verdict",
    "WZStep",
    "accelerate_pairing",
    "choose_shift",
    "close_limit_series",
    "extend_domain",
    "genericity_conditions",
    "prove",
    "replay",
]

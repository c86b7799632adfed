import dataclasses

import mpmath
import pytest
from gmpy2 import mpq

from conftest import P, R, shifted, spec
from wzproof import database
from wzproof.asympt import LimitKind, LimitResult, k_growth_exponent
from wzproof.conditions import ConvergenceCondition as CC
from wzproof.hyperterm import HyperTerm, TheoremSpec, from_pFq, gamma_product
from wzproof.oracle import check_theorem_numeric, default_context
from wzproof.prover import (
    PIPELINE,
    ClosureError,
    ProofTranscript,
    ShiftError,
    accelerate_pairing,
    choose_shift,
    close_limit_series,
    extend_domain,
    genericity_conditions,
    prove,
    replay,
)

ctx = default_context(160)


def conds(*texts):
    return tuple(CC.parse(t) for t in texts)


@pytest.fixture(scope="module")
def kummer_proof():
    return prove(spec("kummer"), shift=("a", 2))


@pytest.fixture(scope="module")
def kummer_extended(kummer_proof):
    return extend_domain(spec("kummer"), kummer_proof, "b", 1)


def with_rhs(s: TheoremSpec, rhs: HyperTerm) -> TheoremSpec:
    return dataclasses.replace(s, rhs=rhs)


# -- shift choice --------------------------------------------------------------------------------


@pytest.mark.parametrize("name, expected", [("kummer", ("a", 2)), ("gauss", ("c", 1)), ("bailey", ("b", 2)),
                                            ("dixon", ("a", 2))])
def test_choose_shift(name, expected):
    assert choose_shift(spec(name)) == expected


def test_choose_shift_needs_rhs_motion():
    s = TheoremSpec("flat", ("a",), (P("a"),), (), R("1/2"), gamma_product([]))
    with pytest.raises(ShiftError):
        choose_shift(s)


# -- proofs ------------------------------------------------------------------------------------------


def test_kummer_before_extension(kummer_proof):
    assert kummer_proof.proved
    assert kummer_proof.conditions == conds("Re(b) < 0")
    assert [s.kind for s in kummer_proof.steps] == list(PIPELINE[:-1])
    assert not kummer_proof.matches_stated()


def test_kummer_extension(kummer_extended):
    assert kummer_extended.conditions == conds("Re(b) < 1")
    assert kummer_extended.matches_stated()
    ext = kummer_extended.step("extension")
    assert ext.rhs_ratio == R("(a/2-b)/(a-b)")
    assert -ext.sigmas[0] / ext.sigmas[1] == R("(a-2*b)/(2*a-2*b)")
    assert ext.old_conditions == conds("Re(b) < 0")
    text = kummer_extended.text()
    assert "Re(b) < 0" in text and "Re(b) < 1" in text
    assert "region matches the stated one" in text


def test_extension_times_zero_is_identity(kummer_proof):
    assert extend_domain(spec("kummer"), kummer_proof, "b", 0) is kummer_proof


def test_second_extension_is_refused_with_blocking_condition(kummer_proof):
    # at Re(b) < 1 the contiguous series at b+1 needs Re(b) < 0
    t = extend_domain(spec("kummer"), kummer_proof, "b", 2)
    assert not t.proved and t.verdict.step == "extension"
    assert "Re(b) < 0" in t.verdict.reason
    assert len(t.steps_of("extension")) == 1


def test_extend_needs_proof():
    failed = prove(with_rhs(spec("kummer"), spec("kummer").rhs.scale(2)))
    with pytest.raises(ValueError):
        extend_domain(spec("kummer"), failed, "b")


@pytest.mark.parametrize("entry", database.ENTRIES, ids=lambda e: e.name)
def test_database_entry_proves(entry):
    t = prove(entry.spec, shift=entry.shift)
    if entry.expected_before_extension is not None:
        assert t.conditions == conds(*entry.expected_before_extension)
    for param, times in entry.extensions:
        t = extend_domain(entry.spec, t, param, times)
    assert t.proved, t.text()
    assert t.conditions == conds(*entry.expected)
    assert replay(entry.spec, t).accepted


def test_gauss_branch_and_condition():
    t = prove(spec("gauss"))
    assert t.step("limit").limit.kind is LimitKind.DELTA_K0
    assert t.step("closure").closure.kind == "KroneckerDelta"
    assert t.conditions == conds("Re(c-a-b) > 0")
    assert t.matches_stated()


def test_bailey_unconditional():
    t = prove(spec("bailey"))
    assert t.proved and t.conditions == ()
    assert str(t.verdict) == "Proved unconditionally"


def test_dixon_condition():
    t = prove(spec("dixon"))
    assert t.conditions == conds("Re(2+a-2b-2c) > 0")
    assert "Re(2+a-2b-2c) > 0" in t.text()


def test_specialising_n_recovers_statement():
    for name in database.names():
        s = spec(name)
        sh = prove(s).step("shift")
        assert sh.f.specialize("n", 0) == s.lhs
        assert sh.S.specialize("n", 0) == s.rhs


def test_genericity_conditions():
    g = genericity_conditions(spec("kummer"))
    assert "1+a-b is not a nonpositive integer" in g
    assert len(g) == len(set(g))


# -- closure -----------------------------------------------------------------------------------------


def test_binomial_closure(kummer_F):
    from wzproof.asympt import n_limit

    cl = close_limit_series(n_limit(kummer_F))
    assert cl.kind == "Binomial" and cl.beta == P("b") and cl.is_one


def test_delta_closure(bailey_F):
    from wzproof.asympt import n_limit

    cl = close_limit_series(n_limit(bailey_F))
    assert cl.kind == "KroneckerDelta" and cl.is_one


def test_zero_base_closure():
    L = from_pFq([P("b")], [], 0).scale(R("a"))
    cl = close_limit_series(L)
    assert cl.value.specialize("k", 0) == cl.value
    assert str(cl.value) == str(HyperTerm.make(prefactor=R("a")))


def test_closure_failures():
    with pytest.raises(ClosureError):
        close_limit_series(from_pFq([P("a"), P("b")], [], -1))
    with pytest.raises(ClosureError):
        close_limit_series(from_pFq([P("b")], [], 2))
    with pytest.raises(ClosureError):
        close_limit_series(LimitResult(LimitKind.ZERO))


def test_closure_value_not_one_fails_proof():
    s = spec("bailey")
    t = prove(with_rhs(s, s.rhs.scale(R("3/2"))))
    assert not t.proved and t.verdict.step == "closure"


# -- pairing -----------------------------------------------------------------------------------------


def test_pairing_identity(kummer_F):
    H = accelerate_pairing(kummer_F)
    assert H.improvement == -1
    assert H.exponent == k_growth_exponent(kummer_F).exponent - 1
    pt = {"a": 1, "b": mpq(1, 4), "n": 3}
    lhs = sum((kummer_F.evaluate(pt, k, ctx=ctx) for k in range(2 * 50 + 2)), ctx.mpf(0))
    rhs = H.partial_sum(pt, 50, ctx=ctx)
    assert mpmath.almosteq(lhs, rhs, 1e-45)


def test_pairing_slope(kummer_F):
    H = accelerate_pairing(kummer_F)
    pt = {"a": mpq(1, 3), "b": mpq(1, 4), "n": 1}

    def slope(fn, k1=1000, k2=100_000):
        return float(ctx.log(abs(fn(k2)) / abs(fn(k1))) / ctx.log(ctx.mpf(k2) / k1))

    sF = slope(lambda k: kummer_F.evaluate(pt, k, ctx=ctx))
    sH = slope(lambda k: H.evaluate(pt, k, ctx=ctx))
    assert abs(sF - float(k_growth_exponent(kummer_F).exponent.evaluate(pt))) < 0.05
    assert abs(sH - float(H.exponent.evaluate(pt))) < 0.05


def test_pairing_proof_replays():
    t = prove(spec("kummer"), pairing=True)
    assert t.proved and t.step("domination").method == "pairing"
    assert replay(spec("kummer"), t).accepted


# -- replay --------------------------------------------------------------------------------------------


def _swap(t: ProofTranscript, kind: str, **changes) -> ProofTranscript:
    steps = tuple(dataclasses.replace(s, **changes) if s.kind == kind else s for s in t.steps)
    return dataclasses.replace(t, steps=steps)


def test_replay_accepts(kummer_extended):
    rep = replay(spec("kummer"), kummer_extended)
    assert rep.accepted
    assert all(ok for _, ok, _ in rep.checks)


@pytest.mark.parametrize("tamper", [
    lambda t: _swap(t, "wz", certificate=t.step("wz").certificate * 2),
    lambda t: _swap(t, "boundary", conditions=conds("Re(b) < 5")),
    lambda t: _swap(t, "domination", conditions=conds("Re(b) < 1")),
    lambda t: _swap(t, "extension", new_conditions=conds("Re(b) < 2")),
    lambda t: _swap(t, "extension", sigmas=tuple(reversed(t.step("extension").sigmas))),
    lambda t: _swap(t, "shift", step=4),
    lambda t: dataclasses.replace(t, verdict=dataclasses.replace(t.verdict, conditions=conds("Re(b) < 3"))),
    lambda t: dataclasses.replace(t, steps=tuple(s for s in t.steps if s.kind != "closure")),
    lambda t: dataclasses.replace(t, theorem="bailey"),
], ids=["certificate", "boundary", "domination", "extension-region", "sigmas", "shift", "verdict",
        "missing-step", "name"])
def test_replay_rejects_tampering(kummer_extended, tamper):
    assert not replay(spec("kummer"), tamper(kummer_extended)).accepted


def test_replay_rejects_failed_transcript():
    t = prove(with_rhs(spec("kummer"), spec("kummer").rhs.scale(2)))
    assert not replay(spec("kummer"), t).accepted


def test_replay_against_other_spec(kummer_extended):
    assert not replay(with_rhs(spec("kummer"), spec("kummer").rhs.scale(2)), kummer_extended).accepted


def test_transcript_order_enforced(kummer_proof):
    with pytest.raises(ValueError):
        dataclasses.replace(kummer_proof, steps=tuple(reversed(kummer_proof.steps)))


# -- negative controls ---------------------------------------------------------------------------------


def _misstated_kummer():
    # Gamma(1+a) in the denominator replaced by Gamma(2+a)
    s = spec("kummer")
    rhs = gamma_product([(1, "1+a/2"), (1, "1+a-b"), (-1, "2+a"), (-1, "1+a/2-b")])
    return with_rhs(s, rhs)


def test_misstated_rhs_fails_proof():
    t = prove(_misstated_kummer())
    assert not t.proved
    assert t.verdict.step in ("wz", "closure")


def test_misstated_rhs_fails_extension(kummer_proof):
    # off by one in the b-dependent argument: the recurrence in b catches it
    s = spec("kummer")
    bad = with_rhs(s, gamma_product([(1, "1+a/2"), (1, "1+a-b"), (-1, "1+a"), (-1, "2+a/2-b")]))
    t = extend_domain(bad, kummer_proof, "b", 1)
    assert not t.proved
    assert t.verdict.step == "extension" and "misstated" in t.verdict.reason


def test_misstated_rhs_fails_numeric():
    assert not check_theorem_numeric(_misstated_kummer(), 3).passed


def test_shifted_helper_matches_pipeline(kummer_proof):
    f, S, F = shifted("kummer")
    sh = kummer_proof.step("shift")
    assert (f, S, F) == (sh.f, sh.S, sh.F)

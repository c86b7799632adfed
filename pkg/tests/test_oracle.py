import random
from fractions import Fraction

import mpmath
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, R, spec
from wzproof import database
from wzproof.conditions import ConvergenceCondition as CC
from wzproof.hyperterm import PoleError, TheoremSpec, from_pFq
from wzproof.oracle import (
    EmptyRegionError,
    PrecisionConfig,
    admissible,
    check_theorem_numeric,
    default_context,
    gamma_exact,
    gamma_hp,
    levin_u,
    partial_sum,
    sample_points,
    sum_series,
)

ctx = default_context(128)
ref = mpmath.MPContext()
ref.prec = 400


def rel(x, y):
    return abs(ref.mpf(x) - ref.mpf(y)) / abs(ref.mpf(y))


# -- Gamma ------------------------------------------------------------------------------------------


def test_gamma_known_values():
    assert rel(gamma_hp(mpq(1, 2), ctx=ctx), ref.sqrt(ref.pi)) < mpmath.mpf(2) ** -120
    assert rel(gamma_hp(5, ctx=ctx), 24) < mpmath.mpf(2) ** -120
    assert gamma_exact(5) == 24
    assert rel(gamma_hp(mpq(-1, 2), ctx=ctx), -2 * ref.sqrt(ref.pi)) < mpmath.mpf(2) ** -118


def test_kummer_rhs_at_one_half():
    g = gamma_hp(mpq(3, 2), ctx=ctx)
    val = g * g / (gamma_hp(2, ctx=ctx) * gamma_hp(1, ctx=ctx))
    assert rel(val, ref.pi / 4) < mpmath.mpf(2) ** -120
    S = spec("kummer").rhs
    assert rel(S.evaluate({"a": 1, "b": mpq(1, 2)}, ctx=ctx), ref.pi / 4) < mpmath.mpf(2) ** -118


def test_gamma_poles():
    for x in (0, -1, -7):
        with pytest.raises(PoleError):
            gamma_hp(x, ctx=ctx)
    with pytest.raises(PoleError):
        gamma_exact(0)


def test_gamma_recurrence_thousand_points():
    rng = random.Random(2024)
    tol = PrecisionConfig(bits=128).tol
    for _ in range(1000):
        x = mpq(rng.randint(1, 50 * 997 - 1), 997)
        g1 = gamma_hp(x + 1, ctx=ctx)
        g0 = gamma_hp(x, ctx=ctx)
        assert abs(g1 - ctx.mpf(int(x.numerator)) / int(x.denominator) * g0) <= tol * abs(g1)


@settings(max_examples=60)
@given(st.integers(-400, 400).filter(lambda v: v % 8 != 0))
def test_gamma_matches_library(num):
    x = mpq(num, 8)
    assert rel(gamma_hp(x, ctx=ctx), ref.gamma(ref.mpf(num) / 8)) < mpmath.mpf(2) ** -110


def test_precision_scaling():
    for x in (mpq(1, 3), mpq(17, 5), mpq(-5, 7), mpq(41, 2)):
        truth = ref.gamma(ref.mpf(int(x.numerator)) / int(x.denominator))
        e64 = rel(gamma_hp(x, ctx=default_context(64)), truth)
        e128 = rel(gamma_hp(x, ctx=default_context(128)), truth)
        assert e64 > 0
        assert e128 == 0 or e64 / e128 >= 2 ** 16


def test_precision_config():
    assert PrecisionConfig().tol == mpmath.mpf(2) ** -64
    with pytest.raises(ValueError):
        PrecisionConfig(bits=32)
    with pytest.raises(ValueError):
        PrecisionConfig(tolerance=0)


# -- sums -------------------------------------------------------------------------------------------


def _rising(x, k):
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def test_gauss_terminating_exact():
    t = from_pFq([P("a"), P("b")], [P("c")], 1)
    pt = {"a": -3, "b": 1, "c": 5}
    # direct four-term sum in Fractions
    direct = sum(_rising(-3, k) * _rising(1, k) / (_rising(5, k) * _rising(1, k)) for k in range(4))
    assert direct == Fraction(4, 7)
    assert partial_sum(t, pt, 3, exact=True) == mpq(4, 7)
    assert partial_sum(t, pt, 20, exact=True) == mpq(4, 7)
    value, err = sum_series(t, pt)
    assert value == ctx.mpf(4) / 7 and err == 0
    closed = spec("gauss").rhs.evaluate(pt, exact=True)
    assert closed == mpq(4, 7)


def test_partial_sum_first_term():
    for name in database.names():
        s = spec(name)
        pt = sample_points(s, 1, seed=3)[0]
        assert partial_sum(s.lhs, pt, 0) == 1


def test_kummer_partial_sum_tail_bound():
    t = spec("kummer").lhs
    val = partial_sum(t, {"a": 1, "b": mpq(1, 2)}, 10_000)
    # terms are (-1)^k / (2k+1); the alternating tail is below the first omitted term
    assert abs(val - ref.pi / 4) < ctx.mpf(1) / (2 * 10_001 + 1)
    assert abs(val - ref.pi / 4) < 1e-3


def test_kummer_accelerated_to_twenty_digits():
    t = spec("kummer").lhs
    value, err = sum_series(t, {"a": 1, "b": mpq(1, 2)}, PrecisionConfig(bits=128))
    assert rel(value, ref.pi / 4) <= 1e-20
    # independent library value of 2F1(1, 1/2; 3/2; -1)
    assert rel(value, ref.hyp2f1(1, ref.mpf(1) / 2, ref.mpf(3) / 2, -1)) <= 1e-20


def test_levin_on_log_two():
    c = default_context(256)
    terms = [c.mpf((-1) ** k) / (k + 1) for k in range(40)]
    value, err = levin_u(terms, c)
    assert abs(value - c.log(2)) < 1e-30
    assert err < 1e-25


@pytest.mark.parametrize("bits", [128, 192])
def test_bailey_series_matches_library(bits):
    pt = {"a": mpq(1, 3), "b": mpq(5, 4)}
    value, _ = sum_series(spec("bailey").lhs, pt, PrecisionConfig(bits=bits))
    truth = ref.hyp2f1(ref.mpf(1) / 3, ref.mpf(2) / 3, ref.mpf(5) / 4, ref.mpf(1) / 2)
    assert rel(value, truth) < mpmath.mpf(2) ** (-bits // 2)


# -- theorem checks ---------------------------------------------------------------------------------


def test_kummer_check_at_one_half():
    report = check_theorem_numeric(spec("kummer"), points=[{"a": 1, "b": mpq(1, 2)}])
    assert report.passed


@pytest.mark.parametrize("name", database.names())
def test_five_samples_pass(name):
    entry = database.get(name)
    report = check_theorem_numeric(entry.spec, 5, PrecisionConfig(bits=128))
    assert report.tolerance == mpmath.mpf(2) ** -64
    assert report.passed and len(report.records) == 5
    for rec in report.records:
        assert admissible(entry.spec, rec.inputs)


@pytest.mark.parametrize("name", ["kummer", "bailey", "dixon", "gauss"])
def test_perturbed_rhs_fails(name):
    s = spec(name)
    report = check_theorem_numeric(s, 3, rhs=s.rhs.scale(R("1001/1000")))
    assert not report.passed
    assert all(not r.passed for r in report.records)


def test_off_by_one_rhs_fails():
    s = spec("kummer")
    bad = s.rhs.subs({"b": P("b+1")})
    assert not check_theorem_numeric(s, 3, rhs=bad).passed


def test_sample_points_respect_margin():
    s = spec("dixon")
    for pt in sample_points(s, 20, seed=11):
        # strictly inside, by the margin
        assert s.stated_conditions[0].form.evaluate(pt) <= -mpq(1, 4)
        assert admissible(s, pt)
    assert sample_points(s, 4, seed=5) == sample_points(s, 4, seed=5)


def test_empty_region():
    base = spec("kummer")
    s = TheoremSpec("empty", base.parameters, base.upper, base.lower, base.z, base.rhs,
                    (CC.parse("Re(b) < -10"),))
    with pytest.raises(EmptyRegionError):
        sample_points(s, 1, max_tries=500)


def test_quadratic_transformation_regression():
    # 2F1(a,b;1+a-b;z) = (1-z)^(-a) 2F1(a/2, 1/2+a/2-b; 1+a-b; -4z/(1-z)^2) at a=1, b=1/4, z=-1/3
    cfg = PrecisionConfig(bits=128)
    lhs, _ = sum_series(from_pFq([P("1"), P("1/4")], [P("7/4")], R("-1/3")), {}, cfg)
    inner, _ = sum_series(from_pFq([P("1/2"), P("3/4")], [P("7/4")], R("3/4")), {}, cfg)
    rhs = inner * 3 / 4
    assert rel(lhs, rhs) < mpmath.mpf(2) ** -64
    assert rel(lhs, ref.hyp2f1(1, ref.mpf(1) / 4, ref.mpf(7) / 4, ref.mpf(-1) / 3)) < mpmath.mpf(2) ** -64

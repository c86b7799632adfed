"""End-to-end acceptance checks, one group per criterion.

Each test carries ``@pytest.mark.criterion(n)``; the terminal summary prints
one PASS/FAIL line per criterion.  Run with ``-s`` to see the per-check lines.
"""

import logging
import random
import time

import mpmath
import pytest
from gmpy2 import mpq

from conftest import P, R, shifted, spec
from corpus import gosper_case, plain_ratio, random_term, wz_case, zeilberger_case
from test_telescope import BAILEY_C, DIXON_C, KUMMER_C
from wzproof import database
from wzproof.algebra import RationalFunction
from wzproof.asympt import LimitKind, k_growth_exponent, n_limit
from wzproof.cli import main
from wzproof.hyperterm import HyperTerm, PoleError, gamma_product
from wzproof.oracle import PrecisionConfig, _convert, check_theorem_numeric, default_context, partial_sum, sum_series
from wzproof.prover import accelerate_pairing, extend_domain, prove
from wzproof.telescope import gosper, verify_certificate, verify_gosper, verify_recurrence, wz_pair, zeilberger

ctx = default_context(160)
CORPUS_SIZE = 1000
# generated terms may carry Gamma(k-1) and similar, singular for every parameter value at small k
K0 = 3


def report(criterion, what, ok):
    print(f"[criterion {criterion}] {'PASS' if ok else 'FAIL'}: {what}")
    assert ok, what


@pytest.fixture(autouse=True)
def _quiet():
    logging.disable(logging.WARNING)
    yield
    logging.disable(logging.NOTSET)


# -- 1. certificates -----------------------------------------------------------------------------------


@pytest.mark.criterion(1)
@pytest.mark.parametrize("name, expected", [("kummer", KUMMER_C), ("bailey", BAILEY_C)])
def test_certificate_reproduction(name, expected):
    F = shifted(name)[2]
    t0 = time.perf_counter()
    C = wz_pair(F)
    elapsed = time.perf_counter() - t0
    report(1, f"{name} certificate equals {expected}", C is not None and C.C == R(expected))
    report(1, f"{name} certificate in {elapsed:.2f}s < 5s", elapsed < 5)


@pytest.mark.criterion(1)
def test_dixon_reference_certificate_exact():
    F = shifted("dixon")[2]
    t0 = time.perf_counter()
    ok = verify_certificate(F, R(DIXON_C))
    elapsed = time.perf_counter() - t0
    report(1, "reference Dixon certificate satisfies the WZ identity exactly", ok)
    report(1, f"Dixon check in {elapsed:.2f}s < 5s", elapsed < 5)


# -- 2. exponents and limits -----------------------------------------------------------------------------


@pytest.mark.criterion(2)
def test_kummer_exponent_and_limit():
    F = shifted("kummer")[2]
    report(2, "Kummer k-exponent is 2b-2", k_growth_exponent(F).exponent == P("2*b-2"))
    L = n_limit(F)
    report(2, "Kummer n-limit is finite", L.kind is LimitKind.FINITE)
    report(2, "Kummer limit term is 2^b*(b)_k*(-1)^k/k!", L.limit_term.pochhammer_str() == "2^b*(b)_k*(-1)^k/k!")
    # the same object built independently: (b)_k (-1)^k / k! times 2^b
    built = gamma_product([(1, "b+k"), (-1, "b"), (-1, "1+k")]).with_prefactor(R("1"))
    built = HyperTerm(R("-1"), built.gammas, built.prefactor, ((R("2"), P("b")),))
    report(2, "limit term matches an independently built term", L.limit_term == built)


@pytest.mark.criterion(2)
@pytest.mark.parametrize("name", ["bailey", "dixon"])
def test_delta_limits(name):
    report(2, f"{name} n-limit is DeltaK0", n_limit(shifted(name)[2]).kind is LimitKind.DELTA_K0)


# -- 3. end-to-end proofs ----------------------------------------------------------------------------------


@pytest.mark.criterion(3)
def test_end_to_end_proofs(capsys):
    t0 = time.perf_counter()
    outputs, codes = {}, {}
    for name in ("kummer", "bailey", "dixon", "gauss"):
        codes[name] = main(["prove", name])
        outputs[name] = capsys.readouterr().out
    elapsed = time.perf_counter() - t0
    for name, code in codes.items():
        report(3, f"prove {name} exits 0", code == 0)
    k = outputs["kummer"]
    report(3, "Kummer transcript shows Re(b) < 0 before extension", "Re(b) < 0" in k)
    report(3, "Kummer transcript ends at Re(b) < 1", "verdict: Proved when Re(b) < 1" in k)
    report(3, "Dixon transcript carries Re(2+a-2b-2c) > 0", "Re(2+a-2b-2c) > 0" in outputs["dixon"])
    report(3, f"four proofs in {elapsed:.1f}s < 60s", elapsed < 60)


@pytest.mark.criterion(3)
def test_kummer_conditions_structurally():
    s = spec("kummer")
    t = prove(s)
    report(3, "pre-extension condition is Re(b) < 0", [str(c) for c in t.conditions] == ["Re(b) < 0"])
    t = extend_domain(s, t, "b", 1)
    report(3, "post-extension condition is Re(b) < 1", [str(c) for c in t.conditions] == ["Re(b) < 1"])


# -- 4. recurrence -----------------------------------------------------------------------------------------


@pytest.mark.criterion(4)
def test_kummer_recurrence_in_b():
    M = spec("kummer").lhs
    rec = zeilberger(M, "b")
    report(4, "recurrence found and verified", rec is not None and verify_recurrence(M, rec))
    lam = rec.sigmas[0] / R("a-2*b")
    report(4, "common scaling is free of k", "k" not in lam.variables())
    report(4, "second coefficient is lambda*(-2a+2b)", rec.sigmas[1] == lam * R("-2*a+2*b"))
    report(4, "certificate is lambda*(a-b+k)k/b", rec.certificate.C == lam * R("(a-b+k)*k/b"))


# -- 5. numeric oracle -------------------------------------------------------------------------------------


@pytest.mark.criterion(5)
def test_kummer_pi_over_four():
    ref = mpmath.MPContext()
    ref.prec = 256
    pt = {"a": 1, "b": mpq(1, 2)}
    value, _ = sum_series(spec("kummer").lhs, pt, PrecisionConfig(bits=128))
    rel = abs(value - ref.pi / 4) / (ref.pi / 4)
    report(5, f"Kummer sum at (1, 1/2) vs pi/4, rel err {mpmath.nstr(rel, 3)} <= 1e-20", rel <= 1e-20)
    closed = spec("kummer").rhs.evaluate(pt, ctx=default_context(128))
    report(5, "closed form at (1, 1/2) is pi/4", abs(closed - ref.pi / 4) / (ref.pi / 4) <= 1e-20)


@pytest.mark.criterion(5)
def test_gauss_terminating_exact():
    pt = {"a": -3, "b": 1, "c": 5}
    lhs = partial_sum(spec("gauss").lhs, pt, 10, exact=True)
    rhs = spec("gauss").rhs.evaluate(pt, exact=True)
    report(5, f"terminating Gauss sum is {lhs}, closed form {rhs}", lhs == mpq(4, 7) and rhs == mpq(4, 7))


@pytest.mark.criterion(5)
@pytest.mark.parametrize("name", database.names())
def test_random_samples(name):
    rep = check_theorem_numeric(spec(name), 5, PrecisionConfig(bits=128))
    ok = rep.passed and len(rep.records) == 5 and rep.tolerance == mpmath.mpf(2) ** -64
    report(5, f"{name}: 5 admissible samples agree to 2^-64", ok)


# -- 6. property suites ------------------------------------------------------------------------------------


def _corpus():
    """``CORPUS_SIZE`` cases cycling through the four generators."""
    out, seed = [], 0
    makers = [("gosper", gosper_case), ("plain", plain_ratio), ("zeilberger", zeilberger_case), ("wz", wz_case)]
    while len(out) < CORPUS_SIZE:
        kind, make = makers[seed % 4]
        case = make(seed)
        if case is not None:
            out.append((kind, seed, case))
        seed += 1
    return out


@pytest.fixture(scope="module")
def corpus_results():
    results = []
    for kind, seed, case in _corpus():
        if kind in ("gosper", "plain"):
            r = case[1] if kind == "gosper" else case
            out = gosper(r)
            results.append((kind, seed, case, out, out is None or verify_gosper(r, out)))
        elif kind == "zeilberger":
            rec = zeilberger(*case, max_order=2)
            results.append((kind, seed, case, rec, rec is None or verify_recurrence(case[0], rec)))
        else:
            C = wz_pair(case)
            results.append((kind, seed, case, C, C is None or verify_certificate(case, C)))
    return results


@pytest.mark.criterion(6)
def test_corpus_outputs_reverify(corpus_results):
    report(6, f"corpus has {len(corpus_results)} cases", len(corpus_results) == CORPUS_SIZE)
    for kind in ("gosper", "plain", "zeilberger", "wz"):
        rows = [r for r in corpus_results if r[0] == kind]
        found = sum(r[3] is not None for r in rows)
        bad = [r[1] for r in rows if not r[4]]
        report(6, f"(a) {kind}: {found}/{len(rows)} outputs, all re-verify exactly", not bad)
    # a constructed antidifference must always be found
    missed = [r[1] for r in corpus_results if r[0] == "gosper" and r[3] is None]
    report(6, "(a) every constructed Gosper case is solved", not missed)


def _values(T, pt, k0, K):
    """``T(k0..k0+K)`` from one Gamma evaluation and the exact k-quotient; the last value is cross-checked."""
    r = T.shift_quotient("k")
    vals = [T.evaluate(pt, k0, ctx=ctx)]
    for k in range(k0, k0 + K):
        vals.append(vals[-1] * _convert(ctx, r.evaluate({**pt, "k": k})))
    direct = T.evaluate(pt, k0 + K, ctx=ctx)
    if not mpmath.almosteq(direct, vals[-1], 1e-40, 1e-200):
        raise AssertionError(f"quotient chain disagrees with direct evaluation for {T}")
    return vals


def _point(rng, names):
    return {v: mpq(rng.randint(1, 97), rng.choice([13, 17, 19, 23])) for v in names}


def _telescoping_sides(kind, case, out, rng, K, k0=K0):
    """Summands at ``k0+j`` and claimed partial sums ``G(k0+j+1) - G(k0)`` for ``j <= K``."""
    if kind == "gosper":
        T = case[0]
        t = T.with_prefactor(T.prefactor * (T.shift_quotient("k") - 1))
        pt = _point(rng, t.parameters())
        tv = _values(t, pt, k0, K + 1)
        G = [_convert(ctx, out.evaluate({**pt, "k": k0 + j})) * tv[j] for j in range(K + 2)]
        lhs = tv[:K + 1]
    else:
        F, C = case, out.C
        pt = _point(rng, F.parameters())
        n = rng.randint(0, 3)
        f0 = _values(F, {**pt, "n": n}, k0, K + 1)
        f1 = _values(F, {**pt, "n": n + 1}, k0, K + 1)
        G = [_convert(ctx, C.evaluate({**pt, "n": n, "k": k0 + j})) * f0[j] for j in range(K + 2)]
        lhs = [f0[j] - f1[j] for j in range(K + 1)]
    return lhs, [G[j + 1] - G[0] for j in range(K + 1)]


@pytest.mark.criterion(6)
def test_telescoping_partial_sums(corpus_results):
    K = 30
    checked = skipped = 0
    failures = []
    for kind, seed, case, out, _ in corpus_results:
        if out is None or kind not in ("gosper", "wz"):
            continue
        rng = random.Random(seed)
        for _ in range(5):
            # a random point may land on a Gamma or certificate pole; try another
            try:
                lhs, rhs = _telescoping_sides(kind, case, out, rng, K)
                break
            except (PoleError, ZeroDivisionError):
                continue
        else:
            skipped += 1
            continue
        total = ctx.mpf(0)
        scale = max(abs(v) for v in lhs) or ctx.mpf(1)
        for j in range(K + 1):
            total += lhs[j]
            if abs(total - rhs[j]) > ctx.mpf(10) ** -40 * scale:
                failures.append((kind, seed, j))
                break
        checked += 1
    report(6, f"(b) telescoping identity for K <= {K} on {checked} verified pairs", not failures)
    report(6, f"(b) pairs singular at five random points: {skipped} of {checked + skipped}", skipped * 10 < checked + skipped)


@pytest.mark.criterion(6)
@pytest.mark.parametrize("name", ["kummer", "dixon-4f3"])
def test_pairing_identity(name):
    # pairing only accelerates alternating series
    F = shifted(name)[2]
    H = accelerate_pairing(F)
    rng = random.Random(7)
    ok = True
    for _ in range(3):
        pt = {**_point(rng, F.parameters()), "n": rng.randint(0, 3)}
        for K in (0, 5, 17, 30):
            lhs = sum((F.evaluate(pt, k, ctx=ctx) for k in range(2 * K + 2)), ctx.mpf(0))
            rhs = H.partial_sum(pt, K, ctx=ctx)
            ok &= mpmath.almosteq(lhs, rhs, 1e-40, 1e-60)
    report(6, f"(c) {name}: sum_(k<=2K+1) F equals sum_(k<=K) H", ok)
    report(6, f"(c) {name}: pairing exponent drops by one", H.improvement == -1)


@pytest.mark.criterion(6)
def test_shift_quotient_numeric():
    bad = skipped = 0
    for seed in range(300):
        T = random_term(seed)
        rng = random.Random(seed)
        pt = {"a": mpq(rng.randint(1, 97), 13), "b": mpq(rng.randint(1, 89), 17), "n": rng.randint(0, 3)}
        k = rng.randint(0, 20)
        try:
            for var in ("k", "n"):
                q = T.shift_quotient(var)
                hi = T.evaluate({**pt, "n": pt["n"] + 1}, k, ctx=ctx) if var == "n" else T.evaluate(pt, k + 1, ctx=ctx)
                lo = T.evaluate(pt, k, ctx=ctx)
                if not mpmath.almosteq(hi / lo, _convert(ctx, q.evaluate({**pt, "k": k})), 1e-40):
                    bad += 1
        except (PoleError, ZeroDivisionError):
            skipped += 1
    report(6, f"(d) shift quotients match Gamma ratios on {300 - skipped} random terms", bad == 0 and skipped < 30)


# -- 7. negative controls ----------------------------------------------------------------------------------


@pytest.mark.criterion(7)
@pytest.mark.parametrize("name, text", [("kummer", KUMMER_C), ("bailey", BAILEY_C), ("dixon", DIXON_C)])
def test_perturbed_certificates_rejected(name, text):
    F = shifted(name)[2]
    C = R(text)
    variants = {
        "numerator + 1": RationalFunction(C.num + 1, C.den),
        "doubled": C * 2,
        "k -> k+1": C.shift("k", 1),
        "b -> b+1": C.subs({"b": P("b+1")}),
        "sign flipped": -C,
    }
    for label, bad in variants.items():
        report(7, f"{name} certificate with {label} rejected", not verify_certificate(F, bad))


def _kummer_with(rhs_args):
    import dataclasses

    return dataclasses.replace(spec("kummer"), rhs=gamma_product(rhs_args))


@pytest.mark.criterion(7)
def test_misstated_rhs_fails_extension():
    # off by one in Gamma(1+a/2-b): invisible to the a-shift proof, caught by the b-recurrence
    s = spec("kummer")
    bad = _kummer_with([(1, "1+a/2"), (1, "1+a-b"), (-1, "1+a"), (-1, "2+a/2-b")])
    t = extend_domain(bad, prove(s), "b", 1)
    report(7, "Gamma(2+a/2-b) fails at the extension step",
           not t.proved and t.verdict.step == "extension" and "misstated" in t.verdict.reason)


@pytest.mark.criterion(7)
def test_misstated_rhs_fails_numeric():
    bad = _kummer_with([(1, "1+a/2"), (1, "1+a-b"), (-1, "2+a"), (-1, "1+a/2-b")])
    rep = check_theorem_numeric(bad, 5)
    report(7, "Gamma(2+a) fails the numeric check at every sample", not rep.passed and not any(
        r.passed for r in rep.records))
    t = prove(bad)
    report(7, "Gamma(2+a) is also refused by the prover", not t.proved)

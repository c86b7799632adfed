import random

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, R
from wzproof.algebra import (
    NotDivisible,
    Polynomial,
    RationalFunction,
    dispersion_set,
    linear_solve,
    nullspace,
    parse_poly,
    parse_rational,
    poly_gcd,
    poly_lcm,
    resultant,
)
from wzproof.algebra.gcd import _gcd, shift_gcd_nontrivial
from wzproof.algebra.linsolve import fraction_free_rref, solve_fraction_free

GENS = ("k", "a", "b")


@st.composite
def polys(draw, gens=GENS, max_terms=4, max_deg=2, allow_zero=True):
    n = draw(st.integers(0 if allow_zero else 1, max_terms))
    data = {}
    for _ in range(n):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in gens)
        c = draw(st.integers(-5, 5).filter(bool))
        data[exps] = data.get(exps, 0) + c
    p = Polynomial.from_dict(data, gens)
    if not allow_zero and p.is_zero():
        p = Polynomial.const(1)
    return p


nonzero = polys(allow_zero=False)


def to_sympy(p: Polynomial):
    return sympy.sympify(str(p).replace("^", "**"))


def associates(p: Polynomial, q: Polynomial) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return p.monic() == q.monic()


# -- arithmetic ----------------------------------------------------------------------------------


class TestPolynomial:
    def test_ring_laws(self):
        p, q, r = P("k^2 + a*k - 3"), P("2*b - k"), P("a*b + 1/2")
        assert (p + q) * r == p * r + q * r
        assert p * q == q * p
        assert (p - p).is_zero()

    def test_shift_and_subs(self):
        p = P("k^2 + a")
        assert p.shift("k", 1) == P("k^2 + 2*k + 1 + a")
        assert p.subs({"a": P("b - 1")}) == P("k^2 + b - 1")
        assert p.evaluate({"k": 2, "a": mpq(1, 2)}) == mpq(9, 2)

    def test_univariate_round_trip(self):
        p = P("3*k^3*a - k*b + 7")
        assert Polynomial.from_univariate(p.to_univariate("k"), "k") == p
        assert p.degree("k") == 3 and p.degree("a") == 1

    def test_exact_division(self):
        p = P("(k+a)*(k-2*b+1)")
        assert p.exact_div(P("k+a")) == P("k-2*b+1")
        with pytest.raises(NotDivisible):
            p.exact_div(P("k+b"))

    @given(polys(), polys())
    def test_product_matches_sympy(self, p, q):
        assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


class TestParse:
    def test_implicit_multiplication(self):
        assert parse_poly("2b + 3(a+1)") == P("2*b + 3*a + 3")

    def test_power_and_fraction(self):
        assert parse_rational("(k^2-1)/(k-1)") == R("k+1")

    @given(polys(), nonzero)
    def test_round_trip(self, p, q):
        r = RationalFunction(p, q)
        assert parse_rational(str(r)) == r


# -- gcd -----------------------------------------------------------------------------------------


class TestGcd:
    def test_examples(self):
        assert poly_gcd(P("k^2-1"), P("k-1")) == P("k-1")
        assert poly_gcd(P("3*k+6"), P("0")) == P("k+2")
        g = poly_gcd(P("(k+a)*(k+b)"), P("(k+a)*(k+1)"))
        assert g == P("k+a")
        assert P("(k+a)*(k+b)").exact_div(g) == P("k+b")

    def test_coprime(self):
        assert poly_gcd(P("k+a"), P("k+b")).is_constant()

    @settings(max_examples=60)
    @given(polys(), polys(), nonzero)
    def test_common_factor_property(self, p, q, r):
        # gcd(p r, q r) is an associate of r gcd(p, q)
        g = poly_gcd(p * r, q * r)
        assert associates(g, r * poly_gcd(p, q))

    @settings(max_examples=60)
    @given(nonzero, nonzero)
    def test_against_sympy(self, p, q):
        g = poly_gcd(p, q)
        ref = sympy.Poly(sympy.gcd(to_sympy(p), to_sympy(q)), *sympy.symbols(GENS))
        assert associates(g, parse_poly(str(ref.as_expr()).replace("**", "^")))

    @settings(max_examples=40)
    @given(nonzero, nonzero, nonzero)
    def test_prs_route_agrees(self, p, q, r):
        # the heuristic route and the subresultant route are independent
        assert associates(_gcd(p * r, q * r), poly_gcd(p * r, q * r))

    def test_lcm(self):
        assert poly_lcm(P("k*(k+1)"), P("(k+1)*(k+2)")).monic() == P("k*(k+1)*(k+2)")


class TestResultant:
    def test_linear(self):
        assert resultant(P("k-a"), P("k-b"), "k") == P("a-b")

    def test_shared_factor(self):
        p = P("(k+a)*(k-1)")
        assert resultant(p, p, "k").is_zero()

    def test_root_evaluation(self):
        # q monic linear with root -3, so Res(p, q) = p(-3)
        p = P("(k+1)*(k+2)")
        assert resultant(p, P("k+3"), "k") == P("2")
        assert p.evaluate({"k": -3}) == 2


class TestDispersion:
    def test_examples(self):
        assert dispersion_set(P("k"), P("k-3")) == {3}
        assert dispersion_set(P("k+a"), P("k+b")) == set()
        assert dispersion_set(P("k*(k+a)"), P("(k-2)*(k+a-5)")) == {2, 5}

    @settings(max_examples=50)
    @given(st.lists(st.integers(-6, 6), min_size=1, max_size=3),
           st.lists(st.integers(-6, 6), min_size=1, max_size=3),
           st.booleans())
    def test_brute_force(self, roots_q, roots_s, with_param):
        extra = "+a" if with_param else ""
        q = Polynomial.const(1)
        for r in roots_q:
            q = q * P(f"k + {r}{extra}")
        s = Polynomial.const(1)
        for r in roots_s:
            s = s * P(f"k + {r}{extra}")
        brute = {j for j in range(0, 30) if not poly_gcd(q, s.shift("k", j)).is_constant()}
        assert dispersion_set(q, s) == brute
        assert all(shift_gcd_nontrivial(q, s, j) for j in brute)


# -- rational functions --------------------------------------------------------------------------


class TestRationalFunction:
    def test_normal_form(self):
        r = RationalFunction(P("k^2-1"), P("2*k+2"))
        assert r.den == P("1") and r.num == P("k/2 - 1/2")

    @settings(max_examples=60)
    @given(nonzero, nonzero)
    def test_field(self, x, y):
        r = RationalFunction(x, y)
        assert r * r.inverse() == 1
        assert RationalFunction(r.num, r.den) == r

    @settings(max_examples=40)
    @given(polys(), nonzero, polys(), nonzero)
    def test_addition_matches_sympy(self, a, b, c, d):
        s = RationalFunction(a, b) + RationalFunction(c, d)
        lhs = to_sympy(s.num) / to_sympy(s.den)
        rhs = to_sympy(a) / to_sympy(b) + to_sympy(c) / to_sympy(d)
        assert sympy.simplify(lhs - rhs) == 0

    def test_shift_and_evaluate(self):
        r = R("k/(k+a)")
        assert r.shift("k", 1) == R("(k+1)/(k+1+a)")
        assert r.evaluate({"k": 1, "a": 1}) == mpq(1, 2)


# -- linear systems ------------------------------------------------------------------------------


class TestLinearSolve:
    def test_identity(self):
        b = [P("a"), P("b+1"), P("3")]
        eye = [[P("1") if i == j else P("0") for j in range(3)] for i in range(3)]
        assert linear_solve(eye, b) == [RationalFunction.coerce(x) for x in b]

    def test_diagonal(self):
        assert linear_solve([[P("a"), 0], [0, P("a")]], [P("a"), P("2*a")]) == [1, 2]

    def test_inconsistent(self):
        assert linear_solve([[1, 1], [1, 1]], [1, 2]) is None

    @settings(max_examples=25)
    @given(st.integers(0, 10_000))
    def test_random_residual(self, seed):
        rng = random.Random(seed)
        pool = ["a", "b", "a+b", "1", "2", "a-1", "3*b", "-1"]
        A = [[P(rng.choice(pool)) for _ in range(4)] for _ in range(4)]
        b = [P(rng.choice(pool)) for _ in range(4)]
        x = linear_solve(A, b)
        if x is None:
            return
        for row, rhs in zip(A, b):
            total = RationalFunction.coerce(0)
            for aij, xj in zip(row, x):
                total = total + xj * aij
            assert (total - rhs).is_zero()

    def test_fraction_free_shape(self):
        out = solve_fraction_free([[P("a"), P("1")], [P("1"), P("b")]], [P("1"), P("0")])
        nums, D = out
        # x = nums/D solves the system exactly
        assert P("a") * nums[0] + nums[1] == D
        assert nums[0] + P("b") * nums[1] == 0
        pivots, _ = fraction_free_rref([[P("1"), P("2")], [P("2"), P("4")]], 2)
        assert pivots == [0]

    def test_nullspace(self):
        v = nullspace([[1, 2], [2, 4]])
        assert len(v) == 1
        assert v[0][0] + 2 * v[0][1] == 0

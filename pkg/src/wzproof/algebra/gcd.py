"""GCD, resultants and shift dispersion for :class:`Polynomial`.

The GCD is recursive: pick a main variable, split off contents (gcds of
coefficients, computed recursively), and run the subresultant PRS on the
primitive parts.  Before running the PRS, the other variables are
specialised to integers; if the univariate images are coprime and the
leading coefficients survive, the primitive parts are coprime and the PRS
is skipped.  That test is exact, not probabilistic: specialisation can only
raise the degree of the gcd.
"""

from __future__ import annotations

from itertools import count

from math import isqrt

from gmpy2 import gcd as _mpz_gcd
from gmpy2 import mpq, mpz

from .poly import ONE, ZERO, NotDivisible, Polynomial, var_key

_EVAL_SEEDS = (3, 7, 13, 19, 29, 37, 43, 53, 61, 71, 79, 89, 97, 101, 107, 113)


def _trim(u: list) -> list:
    while u and u[-1].is_zero():
        u.pop()
    return u


def _content_list(coeffs: list[Polynomial]) -> Polynomial:
    g = ZERO
    for c in coeffs:
        if c.is_zero():
            continue
        g = _gcd(g, c) if not g.is_zero() else c
        if g.is_constant():
            return ONE
    return g if not g.is_zero() else ONE


def content_in(p: Polynomial, var: str) -> Polynomial:
    """Gcd of the coefficients of ``p`` viewed as a polynomial in ``var`` (monic)."""
    if p.is_zero():
        return ZERO
    return _content_list(p.to_univariate(var)).monic()


def primitive_in(p: Polynomial, var: str) -> Polynomial:
    if p.is_zero():
        return p
    return p.exact_div(content_in(p, var))


def prem(a: list[Polynomial], b: list[Polynomial]) -> list[Polynomial]:
    """Pseudo-remainder of univariate coefficient lists (leading entry last)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        d = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, bi in enumerate(b):
            if not bi.is_zero():
                r[i + d] = r[i + d] - lr * bi
        r.pop()
        _trim(r)
        e -= 1
    if e > 0 and r:
        f = lb ** e
        r = [c * f for c in r]
    return r


def _specialise(coeffs: list[Polynomial], point: dict) -> list[mpq]:
    return [mpq(c.evaluate(point)) if not c.is_zero() else mpq(0) for c in coeffs]


def _uni_gcd_degree(a: list[mpq], b: list[mpq]) -> int:
    return len(_uni_gcd(a, b)) - 1


def _points(variables, attempt: int) -> dict:
    vs = sorted(variables, key=var_key)
    return {v: mpz(_EVAL_SEEDS[(i + 3 * attempt) % len(_EVAL_SEEDS)] + 2 * attempt + i)
            for i, v in enumerate(vs)}


def _coprime_by_evaluation(a: list[Polynomial], b: list[Polynomial]) -> bool:
    others = set()
    for c in a + b:
        others |= c.variables()
    for attempt in range(3):
        pt = _points(others, attempt)
        sa, sb = _specialise(a, pt), _specialise(b, pt)
        if sa[-1] == 0 or sb[-1] == 0:
            continue
        return _uni_gcd_degree(sa, sb) == 0
    return False


def _subresultant_last(a: list[Polynomial], b: list[Polynomial]) -> list[Polynomial]:
    if len(a) < len(b):
        a, b = b, a
    g = h = ONE
    while True:
        delta = len(a) - len(b)
        r = prem(a, b)
        if not r:
            return b
        if len(r) == 1:
            return [ONE]
        a, b = b, r
        div = g * h ** delta
        b = [c.exact_div(div) for c in b]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))


def _gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    if p.is_constant() or q.is_constant():
        return ONE
    vp, vq = p.variables(), q.variables()
    common = vp & vq
    if not common:
        return ONE
    for x in sorted(vp - vq, key=var_key):
        p = _content_list(p.to_univariate(x))
        if p.is_constant():
            return ONE
    for x in sorted(vq - vp, key=var_key):
        q = _content_list(q.to_univariate(x))
        if q.is_constant():
            return ONE
    vp, vq = p.variables(), q.variables()
    common = vp & vq
    if not common:
        return ONE
    x = min(common, key=lambda v: (max(p.degree(v), q.degree(v)), var_key(v)))
    ua, ub = p.to_univariate(x), q.to_univariate(x)
    ca, cb = _content_list(ua), _content_list(ub)
    if not ca.is_constant():
        ua = [c.exact_div(ca) for c in ua]
    if not cb.is_constant():
        ub = [c.exact_div(cb) for c in ub]
    c = _gcd(ca, cb)
    if _coprime_by_evaluation(ua, ub):
        return c
    last = _subresultant_last(ua, ub)
    if len(last) == 1:
        return c
    cl = _content_list(last)
    if not cl.is_constant():
        last = [t.exact_div(cl) for t in last]
    return c * Polynomial.from_univariate(last, x)


# -- heuristic gcd ------------------------------------------------------
#
# Evaluate one variable at a large integer, take the gcd of the images
# recursively, and read the candidate back from its balanced base-xi
# digits.  A candidate is accepted only if it divides both inputs, so the
# answer is exact; when every attempt fails the PRS route above is used.


def _integer_primitive(p: Polynomial) -> Polynomial:
    den = 1
    for c in p.terms.values():
        den = den * int(c.denominator) // gcd_int(den, int(c.denominator))
    num = 0
    for c in p.terms.values():
        num = gcd_int(num, int(c.numerator * den // c.denominator))
    return p.scale(mpq(den, num))


def gcd_int(a: int, b: int) -> int:
    return int(_mpz_gcd(a, b))


def _int_content(p: Polynomial) -> int:
    c = 0
    for v in p.terms.values():
        c = gcd_int(c, int(v))
    return c


def _max_norm(p: Polynomial) -> int:
    return max((abs(int(c)) for c in p.terms.values()), default=0)


def _interpolate(h: Polynomial, xi: int, var: str) -> Polynomial:
    data: dict = {}
    gens = tuple(sorted(set(h.gens) | {var}, key=var_key))
    half = xi // 2
    for exps, c in h.monomials():
        c = int(c)
        i = 0
        while c:
            d = c % xi
            if d > half:
                d -= xi
            c = (c - d) // xi
            if d:
                key = dict(exps)
                key[var] = i
                data[tuple(key.get(g, 0) for g in gens)] = d
            i += 1
    return Polynomial.from_dict(data, gens)


def _heu(f: Polynomial, g: Polynomial, depth: int = 0) -> Polynomial | None:
    if f.is_constant() and g.is_constant():
        return Polynomial.const(gcd_int(int(f.constant_value()), int(g.constant_value())))
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    cf, cg = _int_content(f), _int_content(g)
    f, g = f.scale(mpq(1, cf)), g.scale(mpq(1, cg))
    common = Polynomial.const(gcd_int(cf, cg))
    if f.is_constant() or g.is_constant():
        return common
    vs = sorted(f.variables() | g.variables(), key=var_key)
    x = vs[-1]
    fn, gn = _max_norm(f), _max_norm(g)
    bound = 2 * min(fn, gn) + 29
    xi = max(min(bound, 99 * isqrt(bound)),
             2 * min(fn // abs(int(f.lc())), gn // abs(int(g.lc()))) + 2)
    for _ in range(6):
        ff, gg = f.subs({x: xi}), g.subs({x: xi})
        if not ff.is_zero() and not gg.is_zero():
            h = _heu(ff, gg, depth + 1)
            if h is not None:
                cand = _interpolate(h, xi, x)
                if not cand.is_zero():
                    cand = _integer_primitive(cand)
                    if cand.lc() < 0:
                        cand = -cand
                    if cand.divides(f) and cand.divides(g):
                        return cand * common
        xi = xi * 73794 * isqrt(isqrt(xi)) // 27011
    return None


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor, normalised to leading coefficient 1 (lex order).

    ``poly_gcd(0, 0)`` is 0.
    """
    p, q = Polynomial.coerce(p), Polynomial.coerce(q)
    if p.is_zero() and q.is_zero():
        return ZERO
    if p.is_zero() or q.is_zero():
        return (q if p.is_zero() else p).monic().stripped()
    if p.is_constant() or q.is_constant():
        return ONE
    h = _heu(_integer_primitive(p), _integer_primitive(q))
    if h is not None:
        return h.monic().stripped()
    return _gcd(p, q).monic().stripped()


def poly_lcm(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero() or q.is_zero():
        return ZERO
    g = poly_gcd(p, q)
    return (p.exact_div(g) * q).monic()


# -- determinants and resultants ---------------------------------------

def bareiss_det(matrix: list[list[Polynomial]]) -> Polynomial:
    """Determinant by fraction-free elimination with exact division."""
    m = [list(map(Polynomial.coerce, row)) for row in matrix]
    size = len(m)
    if size == 0:
        return ONE
    sign = 1
    prev = ONE
    for c in range(size - 1):
        piv = None
        for i in range(c, size):
            if not m[i][c].is_zero():
                if piv is None or len(m[i][c].terms) < len(m[piv][c].terms):
                    piv = i
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        for i in range(c + 1, size):
            for j in range(c + 1, size):
                m[i][j] = (p * m[i][j] - m[i][c] * m[c][j]).exact_div(prev)
            m[i][c] = ZERO
        prev = p
    d = m[-1][-1]
    return d if sign > 0 else -d


def sylvester(p: list[Polynomial], q: list[Polynomial]) -> list[list[Polynomial]]:
    """Sylvester matrix of coefficient lists given lowest degree first."""
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    rows = []
    prev = list(reversed(p))
    for i in range(dq):
        rows.append([ZERO] * i + prev + [ZERO] * (size - i - len(prev)))
    qrev = list(reversed(q))
    for i in range(dp):
        rows.append([ZERO] * i + qrev + [ZERO] * (size - i - len(qrev)))
    return rows


def resultant(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    """Resultant of ``p`` and ``q`` with respect to ``var``.

    Sign convention: the Sylvester determinant with the rows of ``p`` first,
    so ``Res(p, q) = lc(p)^deg(q) * prod q(r)`` over the roots ``r`` of ``p``;
    for example ``Res_k(k - a, k - b) = a - b``.  Zero exactly when ``p`` and
    ``q`` share a factor of positive degree in ``var``.  Two constants have
    resultant 1.
    """
    p, q = Polynomial.coerce(p), Polynomial.coerce(q)
    up, uq = p.to_univariate(var), q.to_univariate(var)
    if not up or not uq:
        return ZERO
    dp, dq = len(up) - 1, len(uq) - 1
    if dp == 0 and dq == 0:
        return ONE
    if dp == 0:
        return up[0] ** dq
    if dq == 0:
        return uq[0] ** dp
    return bareiss_det(sylvester(up, uq))


# -- dispersion ----------------------------------------------------------

def _integer_roots(coeffs: list[mpq]) -> set[int]:
    """Integer roots of a univariate rational polynomial (lowest degree first)."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return set()
    roots = set()
    low = 0
    while coeffs[low] == 0:
        low += 1
    if low:
        roots.add(0)
    coeffs = coeffs[low:]
    if len(coeffs) == 1:
        return roots
    from gmpy2 import lcm

    den = mpz(1)
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [mpz(c * den) for c in coeffs]
    bound = _root_bound(ints)

    def is_root(r):
        v = mpz(0)
        for c in reversed(ints):
            v = v * r + c
        return v == 0

    a0 = abs(ints[0])
    if bound <= 200000:
        cands = range(1, int(bound) + 1)
    else:
        cands = _divisors(a0, int(bound))
    for r in cands:
        if a0 % r:
            continue
        if is_root(r):
            roots.add(r)
        if is_root(-r):
            roots.add(-r)
    return roots


def _root_bound(ints) -> int:
    """Fujiwara bound: every complex root has modulus at most ``2 max |a_(n-i)/a_n|^(1/i)``."""
    from gmpy2 import iroot

    n = len(ints) - 1
    lead = abs(ints[-1])
    best = 0
    for i in range(1, n + 1):
        c = abs(ints[n - i])
        if c:
            ratio = -(-c // lead)
            r, exact = iroot(mpz(ratio), i)
            best = max(best, int(r) + (0 if exact else 1))
    return 2 * best


def _divisors(n, bound):
    small = []
    i = 1
    while i * i <= n and i <= bound:
        if n % i == 0:
            small.append(i)
            if n // i <= bound:
                small.append(int(n // i))
        i += 1
        if i > 10 ** 6:
            break
    return sorted(set(small))


def _linear_shift(q: Polynomial, s: Polynomial, var: str):
    uq, us = q.to_univariate(var), s.to_univariate(var)
    if len(uq) != 2 or len(us) != 2:
        return None
    if not (uq[1].is_constant() and us[1].is_constant()):
        return None
    alpha = uq[0] / uq[1].constant_value()
    beta = us[0] / us[1].constant_value()
    d = alpha - beta
    return {int(d.constant_value())} if d.is_constant() and d.constant_value().denominator == 1 else set()


def shift_gcd_nontrivial(q: Polynomial, s: Polynomial, j: int, var: str = "k") -> bool:
    return poly_gcd(q, s.shift(var, j)).degree(var) > 0


def dispersion_set(q: Polynomial, s: Polynomial, var: str = "k") -> set[int]:
    """All integers ``j >= 0`` with ``gcd(q(k), s(k + j))`` of positive degree in ``k``.

    Candidates are the nonnegative integer roots of ``Res_k(q(k), s(k + j))``
    taken as a polynomial in ``j``.  The resultant is computed after
    specialising the remaining symbols at a few integer points; any
    parameter-free root of the generic resultant is a root of every
    specialisation, so the gcd of the specialised resultants contains all
    true candidates.  Each candidate is then confirmed with an exact
    symbolic gcd.
    """
    q, s = Polynomial.coerce(q), Polynomial.coerce(s)
    if q.degree(var) <= 0 or s.degree(var) <= 0:
        return set()
    lin = _linear_shift(q, s, var)
    if lin is not None:
        return {j for j in lin if j >= 0}
    others = (q.variables() | s.variables()) - {var}
    lq = q.to_univariate(var)[-1]
    ls = s.to_univariate(var)[-1]
    roots: set[int] | None = None
    used = 0
    for attempt in count():
        if attempt > 12 or used >= 3:
            break
        pt = _points(others, attempt) if others else {}
        if pt and (lq.evaluate(pt) == 0 or ls.evaluate(pt) == 0):
            continue
        uq = [c.evaluate(pt) for c in q.to_univariate(var)]
        us = [c.evaluate(pt) for c in s.to_univariate(var)]
        coeffs = _shift_resultant(uq, us)
        if not any(coeffs):
            # specialisation made every shift collide; try another point
            continue
        found = {r for r in _integer_roots(coeffs) if r >= 0}
        roots = found if roots is None else roots & found
        used += 1
        if not roots:
            break
    cands = range(0, 64) if roots is None else sorted(roots)
    return {jj for jj in cands if shift_gcd_nontrivial(q, s, jj, var)}


def _shift_resultant(uq: list[mpq], us: list[mpq]) -> list[mpq]:
    """Coefficients in ``j`` of ``Res_k(q(k), s(k + j))`` for rational ``q``, ``s``.

    The resultant has degree at most ``deg q * deg s`` in ``j``; it is sampled
    at that many plus one integers and interpolated.
    """
    n = (len(uq) - 1) * (len(us) - 1)
    xs = list(range(n + 1))
    ys = [_uni_resultant(uq, _taylor_shift(us, x)) for x in xs]
    return _newton_coefficients(xs, ys)


def _taylor_shift(u: list[mpq], h) -> list[mpq]:
    out = list(u)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += h * out[j + 1]
    return out


def _uni_resultant(a: list[mpq], b: list[mpq]) -> mpq:
    """Resultant of two univariate rational polynomials via Euclidean remainders."""
    a, b = list(a), list(b)
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        return mpq(0)
    res = mpq(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * b[0] ** da
        if da < db:
            if da % 2 and db % 2:
                res = -res
            a, b = b, a
            continue
        r = list(a)
        lb = b[-1]
        while len(r) >= len(b):
            f = r[-1] / lb
            d = len(r) - len(b)
            for i, bi in enumerate(b):
                r[i + d] -= f * bi
            r.pop()
        while r and r[-1] == 0:
            r.pop()
        if not r:
            return mpq(0)
        # Res(a, b) = (-1)^(da db) lb^(da - dr) Res(b, r)
        if da % 2 and db % 2:
            res = -res
        res *= lb ** (da - (len(r) - 1))
        a, b = b, r


def _newton_coefficients(xs: list, ys: list[mpq]) -> list[mpq]:
    """Monomial coefficients of the interpolating polynomial (Newton form)."""
    c = [mpq(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j])
    out = [mpq(0)] * n
    for i in range(n - 1, -1, -1):
        # out = out * (x - xs[i]) + c[i]
        nxt = [mpq(0)] * n
        for d in range(n - 1):
            nxt[d + 1] += out[d]
            nxt[d] -= xs[i] * out[d]
        nxt[0] += c[i]
        out = nxt
    return out


def _uni_gcd(a: list[mpq], b: list[mpq]) -> list[mpq]:
    a, b = list(a), list(b)
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        lb = b[-1]
        while len(a) >= len(b) and a:
            f = a[-1] / lb
            d = len(a) - len(b)
            for i, bi in enumerate(b):
                a[i + d] -= f * bi
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


__all__ = [
    "NotDivisible",
    "bareiss_det",
    "content_in",
    "dispersion_set",
    "poly_gcd",
    "poly_lcm",
    "prem",
    "primitive_in",
    "resultant",
    "shift_gcd_nontrivial",
]

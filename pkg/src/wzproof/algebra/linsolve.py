"""Exact linear algebra over the field of rational functions in the parameters.

Rows are cleared of denominators and then reduced by fraction-free
Gauss-Jordan elimination: every division is exact and, once the reduction
finishes, all pivots equal the same polynomial ``D``.  A pivot row then
reads ``D * x_pivot + sum(entries * x_free) = rhs``.
"""

from __future__ import annotations

from typing import Sequence

from .gcd import poly_lcm
from .poly import ONE, ZERO, Polynomial
from .ratfunc import RationalFunction


def _clear_row(row: Sequence) -> list[Polynomial]:
    items = [RationalFunction.coerce(x) for x in row]
    den = ONE
    for x in items:
        # monic denominators: a constant one is exactly 1
        if not x.den.is_constant():
            den = poly_lcm(den, x.den)
    out = []
    for x in items:
        if x.is_zero():
            out.append(ZERO)
        else:
            out.append(x.num * den.exact_div(x.den))
    return out


def fraction_free_rref(matrix: list[list[Polynomial]], ncols: int):
    """Reduce ``matrix`` in place over its first ``ncols`` columns.

    Returns ``(pivot_columns, D)``.  Extra columns (right-hand sides) are
    carried along.
    """
    rows = len(matrix)
    prev = ONE
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= rows:
            break
        best = None
        for i in range(r, rows):
            e = matrix[i][c]
            if not e.is_zero() and (best is None or len(e.terms) < len(matrix[best][c].terms)):
                best = i
        if best is None:
            continue
        matrix[r], matrix[best] = matrix[best], matrix[r]
        p = matrix[r][c]
        width = len(matrix[r])
        for i in range(rows):
            if i == r:
                continue
            f = matrix[i][c]
            row = matrix[i]
            prow = matrix[r]
            for j in range(width):
                if j == c:
                    continue
                v = p * row[j]
                if not f.is_zero() and not prow[j].is_zero():
                    v = v - f * prow[j]
                row[j] = v.exact_div(prev) if not v.is_zero() else ZERO
            row[c] = ZERO
        pivots.append(c)
        prev = p
        r += 1
    return pivots, prev


def solve_fraction_free(A: Sequence[Sequence], b: Sequence):
    """Solve ``A x = b``; returns ``(numerators, D)`` with ``x = numerators / D``.

    Free variables are set to zero.  Returns ``None`` when inconsistent.
    """
    m = len(A[0]) if A else 0
    rows = [_clear_row(list(row) + [rhs]) for row, rhs in zip(A, b)]
    pivots, d = fraction_free_rref(rows, m)
    for i in range(len(pivots), len(rows)):
        if not rows[i][m].is_zero():
            return None
    nums = [ZERO] * m
    for i, c in enumerate(pivots):
        nums[c] = rows[i][m]
    return nums, d


def linear_solve(A: Sequence[Sequence], b: Sequence) -> list[RationalFunction] | None:
    """One exact solution of ``A x = b`` or ``None`` if the system is inconsistent.

    Underdetermined systems get their free variables set to zero.
    """
    if not A:
        return []
    out = solve_fraction_free(A, b)
    if out is None:
        return None
    nums, d = out
    return [RationalFunction(x, d) for x in nums]


def nullspace_fraction_free(A: Sequence[Sequence]) -> list[list[Polynomial]]:
    """Polynomial basis of the right kernel of ``A``."""
    m = len(A[0]) if A else 0
    rows = [_clear_row(row) for row in A]
    pivots, d = fraction_free_rref(rows, m)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m
        v[f] = d
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(v)
    return basis


def nullspace(A: Sequence[Sequence]) -> list[list[RationalFunction]]:
    return [[RationalFunction.coerce(x) for x in v] for v in nullspace_fraction_free(A)]

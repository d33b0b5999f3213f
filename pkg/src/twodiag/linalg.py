"""Small dense linear algebra over exact or mpmath scalars."""

from __future__ import annotations

from typing import Sequence

from .scalars import DEFAULT, Context, is_exact


class Inconsistent(ValueError):
    """An overdetermined system has no solution."""


class Singular(ValueError):
    """The system does not determine all unknowns."""


def _uniform(rows, ctx):
    # mixing Fraction and mpf fails, so promote everything once any entry is inexact
    rows = [list(r) for r in rows]
    if all(is_exact(x) for r in rows for x in r):
        return rows
    return [[ctx.to_mp(x) for x in r] for r in rows]


def _pick_pivot(rows, col, start, ctx):
    best, best_abs = None, None
    for r in range(start, len(rows)):
        v = rows[r][col]
        if ctx.is_zero(v):
            continue
        if is_exact(v):
            return r
        a = abs(v)
        if best is None or a > best_abs:
            best, best_abs = r, a
    return best


def solve(A: Sequence[Sequence], rhs: Sequence, ctx: Context | None = None) -> list:
    """Solve ``A x = rhs`` for a full-column-rank, possibly overdetermined, system.

    Extra rows must be consistent; otherwise :class:`Inconsistent` is raised.
    """
    ctx = ctx or DEFAULT
    rows = _uniform([list(r) + [b] for r, b in zip(A, rhs)], ctx)
    if not rows:
        return []
    ncols = len(rows[0]) - 1
    r = 0
    for c in range(ncols):
        p = _pick_pivot(rows, c, r, ctx)
        if p is None:
            raise Singular(f"no pivot in column {c}")
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for k in range(len(rows)):
            if k != r and not (is_exact(rows[k][c]) and rows[k][c] == 0):
                f = rows[k][c] / piv
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        r += 1
    for k in range(r, len(rows)):
        scale = max([1] + [abs(x) for x in rows[k][:-1]])
        if not ctx.is_zero(rows[k][-1], scale):
            raise Inconsistent(f"row {k} leaves residual {rows[k][-1]!r}")
    return [rows[i][-1] / rows[i][i] for i in range(ncols)]


def leading_minors(M: Sequence[Sequence], ctx: Context | None = None) -> list:
    """Determinants of the leading principal submatrices, by Bareiss elimination.

    Entry ``k`` is ``det(M[:k+1, :k+1])``.  The fraction-free update keeps
    every intermediate entry a minor of ``M``; no row exchanges are made, so a
    zero leading minor stops the sweep and the remaining minors are reported
    by direct recomputation.
    """
    ctx = ctx or DEFAULT
    M = _uniform(M, ctx)
    n = len(M)
    a = [list(row) for row in M]
    out = []
    prev = 1
    for k in range(n):
        out.append(a[k][k])
        if ctx.is_zero(a[k][k]):
            out.extend(det([row[: j + 1] for row in M[: j + 1]], ctx) for j in range(k + 1, n))
            return out
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return out


def det(M: Sequence[Sequence], ctx: Context | None = None):
    """Determinant with partial pivoting; exact for rational input."""
    ctx = ctx or DEFAULT
    a = _uniform(M, ctx)
    n = len(a)
    sign = 1
    result = 1
    for c in range(n):
        p = _pick_pivot(a, c, c, ctx)
        if p is None:
            return 0 * a[0][0] if n else 1
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        result *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f != 0:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sign * result

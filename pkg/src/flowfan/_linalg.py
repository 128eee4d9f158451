"""Exact integer/rational linear algebra on small dense matrices.

Pure Python over ``int`` and ``fractions.Fraction``; matrices are lists of
row lists.  Everything in this package is desk scale (tens of rows), so
asymptotics do not matter but exactness does: saturated kernels decide
unimodularity and quotient maps, and a floating-point wobble would silently
corrupt a fan.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def exgcd(a: int, b: int):
    """Return (g, x, y) with g = gcd(a, b) = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def integer_kernel_basis(a, ncols=None):
    """Saturated basis of the integer kernel {x in Z^n : a @ x = 0}.

    Row-reduces [a^T | I_n] by unimodular row operations; the identity-block
    parts of the rows whose left block vanished form the kernel basis.  The
    basis is saturated: every integer point of the rational kernel is an
    integer combination of it (the reducing matrix is unimodular).
    """
    if not a:
        if ncols is None:
            raise ValueError("ncols required for an empty constraint matrix")
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    m, n = len(a), len(a[0])
    if ncols is not None and ncols != n:
        raise ValueError("ncols disagrees with matrix width")
    work = [
        [a[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)]
        for j in range(n)
    ]
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if work[r][col]), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        for r in range(row + 1, n):
            if not work[r][col]:
                continue
            g, s, t = exgcd(work[row][col], work[r][col])
            u, v = work[row][col] // g, work[r][col] // g
            combined = [s * work[row][k] + t * work[r][k] for k in range(m + n)]
            cleared = [u * work[r][k] - v * work[row][k] for k in range(m + n)]
            work[row], work[r] = combined, cleared
        row += 1
    return [w[m:] for w in work[row:]]


def rank(a) -> int:
    """Rank over the rationals, by fraction-exact Gaussian elimination."""
    if not a or not a[0]:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def rational_solve(a, b):
    """One exact solution x of a x = b, or None if the system is inconsistent.

    Free variables are set to 0.  Entries may be ints or Fractions.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols]:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return x


def solve_in_basis(basis, target):
    """Coefficients c with sum(c_i * basis_i) = target, or None."""
    if not basis:
        return [] if not any(target) else None
    n = len(basis[0])
    a = [[basis[j][i] for j in range(len(basis))] for i in range(n)]
    return rational_solve(a, list(target))


def det_bareiss(a) -> int:
    """Determinant of an integer matrix by Bareiss fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((r for r in range(k + 1, n) if m[r][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def primitive(v):
    """The primitive integer vector with the same direction as v.

    Accepts Fractions; clears denominators, then divides by the gcd.  The
    orientation is preserved (rays must not flip sign).
    """
    fracs = [Fraction(x) for x in v]
    den = 1
    for x in fracs:
        den = lcm(den, x.denominator)
    w = [int(x * den) for x in fracs]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return tuple(w)
    return tuple(x // g for x in w)


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def matvec(a, x):
    return [dot(row, x) for row in a]


def in_convex_hull(x, points) -> bool:
    """Exact test: is x a convex combination of the given points?

    Phase-I simplex with Bland's rule over Fractions.  Intended for the few
    dozen points that ever show up here; no attempt at efficiency.
    """
    k = len(points)
    if k == 0:
        return False
    d = len(x)
    nrows = d + 1
    tab = []
    for i in range(nrows):
        if i < d:
            row = [Fraction(p[i]) for p in points]
            rhs = Fraction(x[i])
        else:
            row = [Fraction(1)] * k
            rhs = Fraction(1)
        if rhs < 0:
            row = [-c for c in row]
            rhs = -rhs
        art = [Fraction(1) if j == i else Fraction(0) for j in range(nrows)]
        tab.append(row + art + [rhs])
    ncols = k + nrows
    # reduced-cost row for min(sum of artificials) under the artificial basis
    cost = [Fraction(0)] * (ncols + 1)
    for j in range(ncols + 1):
        cost[j] = -sum(tab[i][j] for i in range(nrows))
    for j in range(k, ncols):
        cost[j] = Fraction(0)
    basis = list(range(k, ncols))
    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(nrows):
            if tab[i][enter] > 0:
                ratio = tab[i][ncols] / tab[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False  # unbounded cannot happen on a bounded feasibility LP
        _, leave = best
        piv = tab[leave][enter]
        tab[leave] = [c / piv for c in tab[leave]]
        for i in range(nrows):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [c - f * p for c, p in zip(tab[i], tab[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [c - f * p for c, p in zip(cost, tab[leave])]
        basis[leave] = enter
    return -cost[ncols] == 0

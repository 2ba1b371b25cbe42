"""Exact linear algebra over the rationals.

Entries are Python ints or fractions.Fraction; results are normalized so
that integral values come back as ints.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def q(x):
    """Canonical exact number: an int when integral, else a reduced Fraction."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def qvec(v) -> tuple:
    return tuple(q(x) for x in v)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _echelon(rows, ncols):
    """Row echelon form over Q; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return _int_rank(rows) if all(isinstance(x, int) for r in rows for x in r) else len(_echelon(rows, len(rows[0]))[1])


def _int_rank(rows) -> int:
    # fraction-free elimination; entries stay integral
    m = [r[:] for r in rows]
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        a = m[r][c]
        for i in range(r + 1, len(m)):
            b = m[i][c]
            if b:
                row = [a * x - b * y for x, y in zip(m[i], m[r])]
                g = 0
                for x in row:
                    g = gcd(g, x)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def affine_rank(points) -> int:
    """Dimension of the affine hull (-1 for the empty set)."""
    points = list(points)
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def integral_rows(rows):
    """Scale each row by the lcm of its denominators."""
    out = []
    for r in rows:
        den = 1
        for x in r:
            if not isinstance(x, int):
                den = lcm(den, Fraction(x).denominator)
        out.append([int(x * den) for x in r])
    return out


def det(M) -> int | Fraction:
    n = len(M)
    if n == 0:
        return 1
    scale = Fraction(1)
    rows = []
    for r in M:
        den = 1
        for x in r:
            if not isinstance(x, int):
                den = lcm(den, Fraction(x).denominator)
        scale /= den
        rows.append([int(x * den) for x in r])
    return q(_bareiss(rows) * scale)


def _bareiss(m) -> int:
    m = [r[:] for r in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve(A, b):
    """Unique solution of A x = b for square A, or None if A is singular."""
    n = len(A)
    if all(isinstance(x, int) for r in A for x in r) and all(isinstance(x, int) for x in b):
        return _int_solve(A, b)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    rows, pivots = _echelon(aug, n)
    if len(pivots) < n:
        return None
    return tuple(q(r[n]) for r in rows)


def _int_solve(A, b):
    # fraction-free forward elimination, rational back substitution
    n = len(A)
    m = [list(A[i]) + [b[i]] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        a = m[c][c]
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                m[i] = [a * x - f * y for x, y in zip(m[i], m[c])]
    x = [0] * n
    for i in reversed(range(n)):
        s = m[i][n] - sum(m[i][j] * x[j] for j in range(i + 1, n))
        x[i] = q(Fraction(s, 1) / m[i][i])
    return tuple(x)


def inverse(M):
    n = len(M)
    aug = [list(M[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    rows, pivots = _echelon(aug, n)
    if len(pivots) < n:
        return None
    return [[q(x) for x in r[n:]] for r in rows]


def nullspace(rows, ncols: int) -> list[tuple]:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    ech, pivots = _echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in zip(ech, pivots):
            v[c] = -r[f]
        basis.append(tuple(integral_rows([v])[0]))
    return basis


def matmul(A, B):
    return [[q(sum(a * b for a, b in zip(row, col))) for col in zip(*B)] for row in A]


def primitive(v):
    """Scale an integer or rational vector to the primitive integer vector on its ray."""
    (r,) = integral_rows([v])
    g = 0
    for x in r:
        g = gcd(g, x)
    return tuple(x // g for x in r) if g else tuple(r)

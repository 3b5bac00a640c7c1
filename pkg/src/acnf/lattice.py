"""Exact integer lattice helpers.

Matrices are stored column-wise: a lattice basis is a tuple of ``n`` columns,
each a tuple of ``n`` ints.  The canonical form is the lower-triangular column
Hermite normal form: column ``j`` is zero above row ``j``, the diagonal is
positive and every entry left of the diagonal in row ``i`` lies in
``[0, H[i][i])``.
"""

from fractions import Fraction
from math import gcd

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

def _eliminate_row(cols, i):
    """Combine ``cols`` so at most one of them is nonzero in row ``i``.

    Returns ``(pivot, rest)``; ``pivot`` is None when every column vanishes in
    that row.  Works on the first ``len(col)`` entries, so callers may carry
    extra bookkeeping coordinates at the end of each column.
    """
    live = [c for c in cols if c[i] != 0]
    rest = [c for c in cols if c[i] == 0]
    while len(live) > 1:
        live.sort(key=lambda c: abs(c[i]))
        piv = live[0]
        nxt = [piv]
        for c in live[1:]:
            q = c[i] // piv[i]
            c = [a - q * b for a, b in zip(c, piv)]
            (nxt if c[i] != 0 else rest).append(c)
        live = nxt
    if not live:
        return None, rest
    piv = live[0]
    if piv[i] < 0:
        piv = [-a for a in piv]
    return piv, rest


def hnf(columns, n=None):
    """Canonical HNF basis of the lattice spanned by ``columns``.

    Raises ValueError if the span has rank below ``n``.
    """
    cols = [list(c) for c in columns]
    if n is None:
        n = len(cols[0])
    cols = [c for c in cols if any(c)]
    out = []
    for i in range(n):
        piv, cols = _eliminate_row(cols, i)
        if piv is None:
            raise ValueError(f"lattice has rank < {n} (no pivot in row {i})")
        out.append(piv)
    for i in range(1, n):
        d = out[i][i]
        for j in range(i):
            q = out[j][i] // d
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return tuple(tuple(c) for c in out)


def echelon(columns, n):
    """Pivot columns of the span of ``columns``, for spans of any rank.

    Not canonical (no off-diagonal reduction); good enough to watch a span grow.
    """
    cols = [list(c) for c in columns if any(c)]
    out = []
    for i in range(n):
        piv, cols = _eliminate_row(cols, i)
        if piv is not None:
            out.append(tuple(piv))
    return tuple(out)


def diagonal(basis):
    return tuple(basis[i][i] for i in range(len(basis)))


def determinant_hnf(basis):
    d = 1
    for x in diagonal(basis):
        d *= x
    return d


def reduce_vector(v, basis):
    """Canonical representative of ``v`` modulo the HNF lattice ``basis``."""
    v = list(v)
    for i, col in enumerate(basis):
        q = v[i] // col[i]
        if q:
            for k in range(i, len(v)):
                v[k] -= q * col[k]
    return tuple(v)


def contains(basis, v):
    return not any(reduce_vector(v, basis))


def coset_representatives(basis):
    """Yield the canonical representatives of Z^n / basis, in lexicographic order."""
    diag = diagonal(basis)

    def rec(prefix, i):
        if i == len(diag):
            yield tuple(prefix)
            return
        for a in range(diag[i]):
            prefix.append(a)
            yield from rec(prefix, i + 1)
            prefix.pop()

    yield from rec([], 0)


def kernel(rows, ncols):
    """Basis (list of columns) of {x in Z^ncols : A x = 0} for A given by rows."""
    nrows = len(rows)
    # column j of A, followed by the j-th unit vector for bookkeeping
    cols = [
        [rows[i][j] for i in range(nrows)] + [int(k == j) for k in range(ncols)]
        for j in range(ncols)
    ]
    for i in range(nrows):
        _, cols = _eliminate_row(cols, i)
    return [tuple(c[nrows:]) for c in cols]


def solve_congruences(rows, modulus, n):
    """HNF of {x in Z^n : A x = 0 (mod modulus)}."""
    k = len(rows)
    aug = [list(r) + [-modulus * int(i == j) for j in range(k)] for i, r in enumerate(rows)]
    sols = [c[:n] for c in kernel(aug, n + k)]
    sols += [tuple(modulus * int(i == j) for i in range(n)) for j in range(n)]
    return hnf(sols, n)


def inverse_times_det(basis):
    """Integer matrix det(H) * H^{-1}, returned as a list of rows."""
    n = len(basis)
    det = determinant_hnf(basis)
    # solve H y = det * e_k column by column; H is lower triangular
    inv_cols = []
    for k in range(n):
        y = [Fraction(0)] * n
        for i in range(n):
            s = Fraction(det if i == k else 0)
            for j in range(i):
                s -= basis[j][i] * y[j]
            y[i] = s / basis[i][i]
        if any(v.denominator != 1 for v in y):
            raise ArithmeticError("adjugate is not integral")
        inv_cols.append([int(v) for v in y])
    return [[inv_cols[j][i] for j in range(n)] for i in range(n)]


def coordinates(basis, v):
    """Integer coordinates of ``v`` in the HNF basis; raises ValueError if v is outside."""
    v = list(v)
    out = []
    for i, col in enumerate(basis):
        q, r = divmod(v[i], col[i])
        if r:
            raise ValueError("vector not in lattice")
        out.append(q)
        for k in range(i, len(v)):
            v[k] -= q * col[k]
    if any(v):
        raise ValueError("vector not in lattice")
    return tuple(out)


def det(rows):
    """Exact determinant of a square integer matrix (Bareiss)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank_mod_p(rows, p):
    a = [[x % p for x in r] for r in rows]
    rank, ncols = 0, len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def elementary_divisors(basis):
    """Nontrivial invariant factors d1 | d2 | ... of Z^n / basis."""
    n = len(basis)
    m = Matrix(n, n, lambda i, j: basis[j][i])
    return tuple(int(d) for d in invariant_factors(m) if abs(int(d)) != 1)


def content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g

"""Small exact linear algebra over rationals.

Matrices are lists of lists of ``fractions.Fraction`` (or ints, which are
promoted on the fly).  Everything here is brute-force Gaussian elimination;
the sizes that appear in this package are tiny, so clarity beats cleverness.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


def _rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (rref, pivot column indices)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(_rref(m)[1])


def nullspace(m: Matrix, cols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column of the RREF.

    Free variables are set to 1 one at a time, so the result is deterministic
    and mostly 0/1/-pivot entries.
    """
    if not m:
        return [] if cols is None else [
            [Fraction(int(i == j)) for i in range(cols)] for j in range(cols)
        ]
    ncols = len(m[0])
    red, pivots = _rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def nullity(m: Matrix, cols: int | None = None) -> int:
    if not m:
        return cols if cols is not None else 0
    return len(m[0]) - rank(m)


def int_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [row[:] for row in rows if any(row)]
    if not a:
        return 0
    cols = len(a[0])
    rk = 0
    prev = 1
    for c in range(cols):
        piv = next((r for r in range(rk, len(a)) if a[r][c]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        pv = a[rk][c]
        for r in range(rk + 1, len(a)):
            if any(a[r]):
                arc = a[r][c]
                a[r] = [
                    (pv * a[r][j] - arc * a[rk][j]) // prev for j in range(cols)
                ]
        prev = pv
        rk += 1
        if rk == len(a):
            break
    return rk


def int_inverse(m: list[list[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix; raises if not integral."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    red, pivots = _rref(a)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    inv = []
    for i in range(n):
        row = red[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("inverse is not integral")
        inv.append([int(x) for x in row])
    return inv


def sparse_rank(columns: list[dict[int, int]]) -> int:
    """Rank of a matrix given as sparse columns {row: entry}.

    Used for lattice computations where rows are indexed by arbitrary
    hashables mapped to ints beforehand.  Eliminates column by column,
    picking the sparsest available pivot row.
    """
    cols = [dict(c) for c in columns if c]
    rk = 0
    while cols:
        col = min(cols, key=len)
        cols.remove(col)
        if not col:
            continue
        rk += 1
        prow = next(iter(col))
        pval = col[prow]
        for other in cols:
            if prow in other:
                f = Fraction(other[prow], pval)
                for r, v in col.items():
                    nv = other.get(r, Fraction(0)) - f * v
                    if nv:
                        other[r] = nv
                    else:
                        other.pop(r, None)
        cols = [c for c in cols if c]
    return rk

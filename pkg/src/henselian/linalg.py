"""Division-free linear algebra on small square matrices.

Matrices are lists of rows.  Entries can be anything closed under ``+``,
``-`` and ``*`` (ints, FpPoly, MultiPoly, ValuedElement); only Bareiss
elimination needs an exact division and is used for scalar entries of
size >= 4.
"""

from functools import lru_cache

from .errors import DimensionMismatch, NonSquare
from .fppoly import FpPoly


def shape(M):
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(row) != cols for row in M):
        raise DimensionMismatch("ragged matrix")
    return rows, cols


def _check_square(M):
    n, m = shape(M)
    if n != m:
        raise NonSquare(f"matrix is {n}x{m}")
    return n


def _is_scalar(x):
    return isinstance(x, (int, FpPoly))


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact division in Bareiss step")
        return q
    if isinstance(a, int):
        a = FpPoly(b.p, (a,))
    return a.exact_div(b)


def _det_minors(M, zero):
    n = len(M)

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n:
            return None
        total = None
        for pos, j in enumerate(cols):
            a = M[row][j]
            if a == 0:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = a if sub is None else a * sub
            if total is None:
                total = term if pos % 2 == 0 else -term
            else:
                total = total + term if pos % 2 == 0 else total - term
        return zero if total is None else total

    result = minor(0, tuple(range(n)))
    return result


def _det_bareiss(M):
    n = len(M)
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return A[k][k] * 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = _exact_div(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def det(M, zero=0):
    """Determinant.  ``zero`` is returned for an empty or all-zero expansion."""
    n = _check_square(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    if n >= 4 and all(_is_scalar(a) for row in M for a in row):
        return _det_bareiss(M)
    return _det_minors(M, zero)


def minor_matrix(M, skip_row, skip_col):
    return [[a for j, a in enumerate(row) if j != skip_col]
            for i, row in enumerate(M) if i != skip_row]


def adjugate(M, zero=0, one=1):
    """Transpose of the cofactor matrix: ``adjugate(M) * M == det(M) * I``."""
    n = _check_square(M)
    if n == 1:
        return [[one]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det(minor_matrix(M, i, j), zero)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def mat_vec(M, v):
    if M and len(M[0]) != len(v):
        raise DimensionMismatch(f"matrix has {len(M[0])} columns, vector has length {len(v)}")
    out = []
    for row in M:
        acc = None
        for a, x in zip(row, v):
            term = a * x
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def mat_mul(A, B):
    _, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise DimensionMismatch(f"cannot multiply {len(A)}x{k} by {k2}x{m}")
    cols = [[B[i][j] for i in range(k2)] for j in range(m)]
    return [[mat_vec([row], col)[0] for col in cols] for row in A]


def identity(n, zero=0, one=1):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def rank(M):
    """Rank over the fraction field, by cross-multiplying elimination.

    Only ``*``, ``-`` and zero tests are used, so this works for any
    integral domain of exact scalars without building fractions.
    """
    if not M:
        return 0
    A = [list(row) for row in M]
    rows, cols = shape(A)
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        piv = A[r][c]
        for i in range(r + 1, rows):
            a = A[i][c]
            if a != 0:
                A[i] = [piv * x - a * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r

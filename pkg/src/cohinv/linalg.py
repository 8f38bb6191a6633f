"""Small exact linear algebra over a base field (lists of lists of FieldElem)."""

from __future__ import annotations

from .errors import Degenerate, DimensionMismatch


def zeros(F, n, m=None):
    m = n if m is None else m
    return [[F.zero] * m for _ in range(n)]


def identity(F, n):
    out = zeros(F, n)
    for i in range(n):
        out[i][i] = F.one
    return out


def transpose(M):
    return [list(row) for row in zip(*M)] if M else []


def matmul(A, B):
    if A and len(A[0]) != len(B):
        raise DimensionMismatch("matmul shapes")
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(A, v):
    return [sum((a * x for a, x in zip(row[1:], v[1:])), row[0] * v[0]) for row in A]


def _echelon(M, F):
    """Row-reduce a copy of M; return (reduced rows, pivot columns, det factor)."""
    A = [list(r) for r in M]
    n, m = len(A), (len(A[0]) if A else 0)
    pivots = []
    det = F.one
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if not A[r][col].is_zero()), None)
        if piv is None:
            continue
        if piv != row:
            A[row], A[piv] = A[piv], A[row]
            det = -det
        inv = A[row][col].inv()
        det = det * A[row][col]
        A[row] = [x * inv for x in A[row]]
        for r in range(n):
            if r != row and not A[r][col].is_zero():
                c = A[r][col]
                A[r] = [x - c * y for x, y in zip(A[r], A[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    return A, pivots, det


def det(M, F):
    if not M:
        return F.one
    A, pivots, d = _echelon(M, F)
    return d if len(pivots) == len(M) else F.zero


def rank(M, F):
    if not M:
        return 0
    return len(_echelon(M, F)[1])


def inverse(M, F):
    n = len(M)
    aug = [list(row) + idrow for row, idrow in zip(M, identity(F, n))]
    A, pivots, _ = _echelon(aug, F)
    if pivots[:n] != list(range(n)):
        raise Degenerate("matrix is singular")
    return [row[n:] for row in A]


def nullspace(M, F):
    """Basis of {x : M x = 0}."""
    if not M:
        return []
    m = len(M[0])
    A, pivots, _ = _echelon(M, F)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * m
        v[f] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][f]
        basis.append(v)
    return basis


def diagonalize_symmetric(S, F):
    """Congruence-diagonalize a symmetric matrix (char != 2).

    Returns (diag, P) with P^T S P = diag(diag).  Raises Degenerate when S is
    singular.
    """
    n = len(S)
    A = [list(r) for r in S]
    P = identity(F, n)
    diag = []
    for k in range(n):
        if A[k][k].is_zero():
            j = next((j for j in range(k + 1, n) if not A[j][j].is_zero()), None)
            if j is not None:
                _swap(A, P, k, j)
            else:
                j = next((j for j in range(k + 1, n) if not A[k][j].is_zero()), None)
                if j is None:
                    raise Degenerate("symmetric matrix is singular")
                # e_k <- e_k + e_j makes the pivot 2 A[k][j] != 0
                _add_col(A, P, k, j, F.one)
        piv = A[k][k]
        inv = piv.inv()
        for j in range(k + 1, n):
            if not A[k][j].is_zero():
                _add_col(A, P, j, k, -(A[k][j] * inv))
        diag.append(piv)
    return diag, P


def _swap(A, P, i, j):
    A[i], A[j] = A[j], A[i]
    for row in A:
        row[i], row[j] = row[j], row[i]
    for row in P:
        row[i], row[j] = row[j], row[i]


def _add_col(A, P, i, j, c):
    """Basis change e_i <- e_i + c e_j applied by congruence."""
    n = len(A)
    for r in range(n):
        A[r][i] = A[r][i] + c * A[r][j]
    for r in range(n):
        A[i][r] = A[i][r] + c * A[j][r]
    for row in P:
        row[i] = row[i] + c * row[j]

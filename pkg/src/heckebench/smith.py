"""Smith normal form over Z with unimodular transforms, plus small helpers.

Everything is plain Python integers (arbitrary precision).  Pivoting always
selects a minimal-absolute-value nonzero entry, which keeps entry growth in
check on the relator matrices that show up here.
"""

from __future__ import annotations


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    row[j] += a * Bt[j]
    return out

def mat_transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def smith_normal_form(A):
    """Return (D, P, Q) with P*A*Q = D, P and Q unimodular, D in SNF.

    D's diagonal entries are nonnegative and each divides the next.
    """
    n = len(A)
    m = len(A[0]) if n else 0
    D = [list(row) for row in A]
    P = identity(n)
    Q = identity(m)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        D[dst] = [x + c * y for x, y in zip(D[dst], D[src])]
        P[dst] = [x + c * y for x, y in zip(P[dst], P[src])]

    def add_col(src, dst, c):
        for row in D:
            row[dst] += c * row[src]
        for row in Q:
            row[dst] += c * row[src]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        P[i] = [-x for x in P[i]]

    t = 0
    while t < min(n, m):
        # smallest nonzero entry of the trailing block into the pivot slot
        pivot = None
        for i in range(t, n):
            for j in range(t, m):
                if D[i][j] and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            for i in range(t + 1, n):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
            for j in range(t + 1, m):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
            if any(D[i][t] for i in range(t + 1, n)) or any(
                D[t][j] for j in range(t + 1, m)
            ):
                # a division left a smaller remainder somewhere; re-pivot
                small = None
                for i in range(t, n):
                    for j in range(t, m):
                        if D[i][j] and (
                            small is None or abs(D[i][j]) < abs(D[small[0]][small[1]])
                        ):
                            small = (i, j)
                swap_rows(t, small[0])
                swap_cols(t, small[1])
                continue
            # divisibility fixup: pivot must divide the whole trailing block

            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if D[i][j] % D[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            negate_row(t)
        t += 1
    return D, P, Q


def diagonal(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def integer_rank(A) -> int:
    D, _, _ = smith_normal_form(A)
    return sum(1 for x in diagonal(D) if x != 0)

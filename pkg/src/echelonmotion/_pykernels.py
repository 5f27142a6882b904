"""Pure-Python elimination kernels.

These are the reference implementations; ``_ckernels`` mirrors them with
fixed-width integers.  All functions take a matrix as a list of row lists of
Python ints and never mutate it.
"""

from __future__ import annotations

from math import gcd

BACKEND = "python"


def bruhat_pivots(rows: list[list[int]], ncols: int) -> list[int]:
    """Pivot row of each of the first ``ncols`` columns in the Bruhat sweep.

    Column ``j`` pivots on the bottom-most unused row with a nonzero entry;
    that row then clears column ``j`` in the unused rows above it.  Rows are
    combined fraction-free and divided by their content, which keeps entries
    small on 0/1 matrices.  A ``-1`` marks a column without a pivot
    (singular input); later columns are left at ``-1`` too.
    """
    n = len(rows)
    A = [list(r[:ncols]) for r in rows]
    avail = [True] * n
    piv = [-1] * ncols
    for j in range(ncols):
        i = n - 1
        while i >= 0 and (not avail[i] or A[i][j] == 0):
            i -= 1
        if i < 0:
            return piv
        piv[j] = i
        avail[i] = False
        ri = A[i]
        a = ri[j]
        for k in range(i):
            rk = A[k]
            b = rk[j]
            if not avail[k] or b == 0:
                continue
            g = gcd(a, b)
            ca, cb = a // g, b // g
            content = 0
            for c in range(j + 1, ncols):
                v = ca * rk[c] - cb * ri[c]
                rk[c] = v
                if v:
                    content = gcd(content, v)
            rk[j] = 0
            if content > 1:
                for c in range(j + 1, ncols):
                    rk[c] //= content
    return piv


def bruhat_pivots_mod(rows: list[list[int]], ncols: int, p: int) -> list[int]:
    """Same sweep as :func:`bruhat_pivots` over the field with ``p`` elements."""
    n = len(rows)
    A = [[v % p for v in r[:ncols]] for r in rows]
    avail = [True] * n
    piv = [-1] * ncols
    for j in range(ncols):
        i = n - 1
        while i >= 0 and (not avail[i] or A[i][j] == 0):
            i -= 1
        if i < 0:
            return piv
        piv[j] = i
        avail[i] = False
        ri = A[i]
        inv = pow(ri[j], p - 2, p)
        for k in range(i):
            rk = A[k]
            if not avail[k] or rk[j] == 0:
                continue
            f = rk[j] * inv % p
            for c in range(j + 1, ncols):
                rk[c] = (rk[c] - f * ri[c]) % p
            rk[j] = 0
    return piv


def rank_exact(rows: list[list[int]]) -> int:
    """Rank over the rationals by Bareiss fraction-free elimination."""
    A = [list(r) for r in rows]
    n = len(A)
    m = len(A[0]) if n else 0
    r = 0
    prev = 1
    for c in range(m):
        p = r
        while p < n and A[p][c] == 0:
            p += 1
        if p == n:
            continue
        A[r], A[p] = A[p], A[r]
        top = A[r]
        pv = top[c]
        for i in range(r + 1, n):
            row = A[i]
            f = row[c]
            for jj in range(c + 1, m):
                row[jj] = (pv * row[jj] - f * top[jj]) // prev
            row[c] = 0
        prev = pv
        r += 1
        if r == n:
            break
    return r


def rank_mod(rows: list[list[int]], p: int) -> int:
    """Rank over the field with ``p`` elements."""
    A = [[v % p for v in r] for r in rows]
    n = len(A)
    m = len(A[0]) if n else 0
    r = 0
    for c in range(m):
        q = r
        while q < n and A[q][c] == 0:
            q += 1
        if q == n:
            continue
        A[r], A[q] = A[q], A[r]
        top = A[r]
        inv = pow(top[c], p - 2, p)
        for i in range(r + 1, n):
            row = A[i]
            if row[c]:
                f = row[c] * inv % p
                for jj in range(c, m):
                    row[jj] = (row[jj] - f * top[jj]) % p
        r += 1
        if r == n:
            break
    return r

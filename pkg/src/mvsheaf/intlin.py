"""Exact linear algebra over the integers.

Matrices are tuples of row tuples.  Everything here is sized for the tiny
systems that arise when checking sheaf conditions on finitely generated
free abelian groups, so the algorithms favour clarity over asymptotics.
"""

from __future__ import annotations


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(a, b):
    if not a:
        return ()
    n = len(b[0]) if b else 0
    return tuple(
        tuple(sum(ra[k] * b[k][j] for k in range(len(b))) for j in range(n))
        for ra in a
    )


def matvec(a, v):
    return tuple(sum(r[k] * v[k] for k in range(len(v))) for r in a)


def transpose(a):
    if not a:
        return ()
    return tuple(tuple(r[j] for r in a) for j in range(len(a[0])))


def smith_normal_form(a):
    """Diagonalise ``a`` by unimodular row/column operations.

    Returns ``(u, d, v)`` with ``u @ a @ v == d`` and ``d`` diagonal.  The
    divisibility chain of the classical Smith form is not enforced; a plain
    diagonal form is enough for kernel and solvability questions.
    """
    m = len(a)
    n = len(a[0]) if a else 0
    A = [list(r) for r in a]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        # row[dst] += c * row[src]
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for r in A:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    t = 0
    while t < m and t < n:
        # locate the entry of least absolute value in the working submatrix
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = False
        for i in range(t + 1, m):
            if A[i][t]:
                q = A[i][t] // A[t][t]
                add_row(t, i, -q)
                if A[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if A[t][j]:
                q = A[t][j] // A[t][t]
                add_col(t, j, -q)
                if A[t][j]:
                    dirty = True
        if dirty:
            continue  # remainders left; rerun with a smaller pivot
        t += 1

    return (
        tuple(tuple(r) for r in U),
        tuple(tuple(r) for r in A),
        tuple(tuple(r) for r in V),
    )


def kernel_basis(a):
    """Basis (as row tuples) of ``{x : a @ x == 0}`` inside Z^n."""
    m = len(a)
    n = len(a[0]) if a else 0
    if n == 0:
        return ()
    if m == 0:
        return identity(n)
    _, d, v = smith_normal_form(a)
    cols = []
    for j in range(n):
        dj = d[j][j] if j < m else 0
        if dj == 0:
            cols.append(tuple(v[i][j] for i in range(n)))
    return tuple(cols)


def solve(a, b):
    """One integer solution ``x`` of ``a @ x == b``, or None."""
    m = len(a)
    n = len(a[0]) if a else 0
    if m == 0:
        return (0,) * n
    if n == 0:
        return () if all(c == 0 for c in b) else None
    u, d, v = smith_normal_form(a)
    c = matvec(u, b)
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
    return matvec(v, tuple(y))


def in_row_span(rows, vec):
    """Is ``vec`` an integer combination of ``rows``?"""
    if not rows:
        return all(c == 0 for c in vec)
    return solve(transpose(rows), vec) is not None

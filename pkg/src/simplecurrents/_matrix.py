"""Small exact linear algebra over Q and Z (lists of Fractions / ints)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .exact import frac

Row = list[Fraction]


def as_matrix(rows) -> list[list[Fraction]]:
    return [[frac(x) for x in row] for row in rows]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def vec_mat(v, a):
    if not a:
        return []
    return [sum((v[i] * a[i][j] for i in range(len(v))), Fraction(0)) for j in range(len(a[0]))]


def bilinear(x, gram, y) -> Fraction:
    n = len(gram)
    return sum(
        (frac(x[i]) * gram[i][j] * frac(y[j]) for i in range(n) if x[i] for j in range(n) if y[j]),
        Fraction(0),
    )


def determinant(a) -> Fraction:
    m = as_matrix(a)
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def inverse(a) -> list[list[Fraction]]:
    n = len(a)
    aug = [as_matrix([row])[0] + identity(n)[i] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def is_integral(a) -> bool:
    return all(frac(x).denominator == 1 for row in a for x in row)


def smith_normal_form(a: Sequence[Sequence[int]]):
    """Return (U, D, V) with U*A*V = D diagonal, U and V unimodular, d_1 | d_2 | ...

    Entries are Python ints; diagonal entries are non-negative.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [[int(x) for x in row] for row in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col_dst += k * col_src
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        nonzero = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility: the pivot must divide every remaining entry
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def integer_kernel_mod(mat_int, modulus: int):
    """Integer row vectors c (a lattice basis) with c*mat = 0 mod ``modulus``.

    ``mat_int`` must be square and nonsingular.
    """
    u, dmat, _ = smith_normal_form(mat_int)
    basis = []
    for i, row in enumerate(u):
        di = dmat[i][i]
        if di == 0:
            raise ValueError("rank-deficient matrix")
        step = modulus // gcd(modulus, di)
        basis.append([step * x for x in row])
    return basis


def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix (nonzero rows only)."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    r = 0
    for c in range(n):
        piv = None
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if piv is None or not a[r][c]:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return [row for row in a if any(row)]

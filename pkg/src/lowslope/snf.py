"""Smith normal form over the integers.

Pivoting is deterministic: at every stage the nonzero entry of smallest
absolute value (first in row-major order) is moved to the pivot position.
"""

from __future__ import annotations

from typing import Sequence

Rows = list[list[int]]


def _identity(n: int) -> Rows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _smallest(a: Rows, t: int) -> tuple[int, int] | None:
    best = None
    best_val = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            x = row[j]
            if x and (best is None or abs(x) < best_val):
                best, best_val = (i, j), abs(x)
                if best_val == 1:
                    return best
    return best


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Rows, Rows, Rows]:
    """Return ``(U, D, V)`` with ``D = U @ M @ V`` diagonal, d_i | d_{i+1}, d_i >= 0."""
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            pos = _smallest(a, t)
            if pos is None:
                return u, a, v
            i, j = pos
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) if any(a[i][j] % p for j in range(t + 1, cols))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith form, padded with zeros to ``min(rows, cols)``."""
    _, d, _ = smith_normal_form(m)
    k = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(k)]


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    from fractions import Fraction

    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return False
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return abs(det) == 1


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Echelon basis (as rows) of the Z-span of ``vectors``."""
    basis: list[list[int]] = []  # basis[k] has its leading entry at column lead[k]
    lead: list[int] = []
    for vec in vectors:
        w = list(vec)
        k = 0
        while True:
            col = next((c for c in range(dim) if w[c]), None)
            if col is None:
                break
            while k < len(lead) and lead[k] < col:
                k += 1
            if k < len(lead) and lead[k] == col:
                b = basis[k]
                # gcd-combine b and w on column col
                while w[col]:
                    q = b[col] // w[col]
                    b = [x - q * y for x, y in zip(b, w)]
                    b, w = w, b
                basis[k] = b
                continue
            basis.insert(k, w)
            lead.insert(k, col)
            break
    return basis

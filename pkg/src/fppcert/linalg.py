"""Exact dense linear algebra: RREF, rank, kernels, determinants, Smith form.

Matrices are lists of row lists.  Field routines take a Domain object from
poly.py; integer routines use Fraction or pure int arithmetic.  Sizes in
this project stay small (a few thousand rows at worst), so clarity beats
asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: list[list], domain) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over a field domain.

    Returns (reduced rows without zero rows, pivot column indices).
    The input is not modified.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(m)):
            if not domain.is_zero(m[i][col]):
                sel = i
                break
        if sel is None:
            continue
        m[rank], m[sel] = m[sel], m[rank]
        inv = domain.inv(m[rank][col])
        m[rank] = [domain.mul(x, inv) for x in m[rank]]
        for i in range(len(m)):
            if i != rank and not domain.is_zero(m[i][col]):
                f = m[i][col]
                m[i] = [domain.sub(a, domain.mul(f, b)) for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return m[:rank], pivots


def rank(rows: list[list], domain) -> int:
    return len(rref(rows, domain)[1])


def kernel_and_rank(rows: list[list], domain) -> tuple[int, list[list]]:
    """Rank and right-kernel basis of a matrix over a field."""
    if not rows:
        return 0, []
    red, pivots = rref(rows, domain)
    ncols = len(rows[0])
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [domain.zero] * ncols
        v[fc] = domain.one
        for r, pc in zip(red, pivots):
            v[pc] = domain.neg(r[fc])
        basis.append(v)
    return len(pivots), basis


def solve(rows: list[list], rhs: list, domain) -> list | None:
    """One solution of rows * x = rhs over a field, or None if inconsistent."""
    if not rows:
        return None
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, domain)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [domain.zero] * ncols
    for r, pc in zip(red, pivots):
        x[pc] = r[-1]
    return x


def det(rows: list[list], domain):
    """Determinant over a field by Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return domain.one
    m = [list(r) for r in rows]
    sign_flip = False
    acc = domain.one
    for col in range(n):
        sel = None
        for i in range(col, n):
            if not domain.is_zero(m[i][col]):
                sel = i
                break
        if sel is None:
            return domain.zero
        if sel != col:
            m[col], m[sel] = m[sel], m[col]
            sign_flip = not sign_flip
        piv = m[col][col]
        acc = domain.mul(acc, piv)
        inv = domain.inv(piv)
        for i in range(col + 1, n):
            if domain.is_zero(m[i][col]):
                continue
            f = domain.mul(m[i][col], inv)
            m[i] = [domain.sub(a, domain.mul(f, b)) for a, b in zip(m[i], m[col])]
    return domain.neg(acc) if sign_flip else acc


def det_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free determinant for integer matrices."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            sel = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if sel is None:
                return 0
            m[k], m[sel] = m[sel], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank_fraction(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix via exact rational elimination."""
    from .poly import QQ

    return rank([[Fraction(x) for x in r] for r in rows], QQ)


def minor_determinant(entries: list[list], rows: Sequence[int], cols: Sequence[int]):
    """Determinant of the (rows x cols) submatrix of a polynomial matrix.

    Entries are Poly objects over a field domain (scalar 0x0 gives the ring
    one).  Uses fraction-free Bareiss elimination, so every intermediate
    division is exact in the polynomial ring.  Index sets must be duplicate
    free and in range.
    """
    from .poly import Poly, poly_exact_div

    rows = list(rows)
    cols = list(cols)
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise IndexError("repeated index in minor selection")
    if len(rows) != len(cols):
        raise ValueError("minor must be square")
    nr, nc = len(entries), len(entries[0]) if entries else 0
    for r in rows:
        if not 0 <= r < nr:
            raise IndexError(f"row {r} out of range")
    for c in cols:
        if not 0 <= c < nc:
            raise IndexError(f"column {c} out of range")

    sub = [[entries[r][c] for c in cols] for r in rows]
    n = len(sub)
    if n == 0:
        raise ValueError("empty minor")
    ring = sub[0][0].ring
    domain = sub[0][0].domain
    one = ring.constant(1, domain)
    sign = 1
    prev: "Poly" = one
    m = [row[:] for row in sub]
    for k in range(n - 1):
        if m[k][k].is_zero():
            sel = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if sel is None:
                return ring.constant(0, domain)
            m[k], m[sel] = m[sel], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if prev is one else poly_exact_div(num, prev)
            m[i][k] = ring.constant(0, domain)
        prev = m[k][k]
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form (up to sign).

    Used to cross-check lattice ranks and discriminants; entries stay small
    for the 24x24 matrices this project feeds in.
    """
    m = [list(r) for r in rows]
    if not m:
        return []
    nrows, ncols = len(m), len(m[0])
    diag: list[int] = []
    top = 0
    while top < nrows and top < ncols:
        # find a nonzero entry with minimal absolute value in the submatrix
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        # clear the row and column; restart if a remainder pops up elsewhere
        while True:
            piv = m[top][top]
            done = True
            for i in range(top + 1, nrows):
                if m[i][top] != 0:
                    q = m[i][top] // piv
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                    if m[i][top] != 0:
                        m[top], m[i] = m[i], m[top]
                        done = False
                        break
            if not done:
                continue
            for j in range(top + 1, ncols):
                if m[top][j] != 0:
                    q = m[top][j] // piv
                    for row in m:
                        row[j] -= q * row[top]
                    if m[top][j] != 0:
                        for row in m:
                            row[top], row[j] = row[j], row[top]
                        done = False
                        break
            if done:
                break
        # enforce divisibility of later entries by the pivot
        piv = m[top][top]
        bad = None
        for i in range(top + 1, nrows):
            for j in range(top + 1, ncols):
                if m[i][j] % piv != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            m[top] = [a + b for a, b in zip(m[top], m[bad])]
            continue
        diag.append(abs(piv))
        top += 1
    return diag

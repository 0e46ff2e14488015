"""Dense linear algebra mod p on numpy arrays, sized for this project.

The certification pipeline needs three things the generic exact-arithmetic
routines in ``linalg`` are too slow for: reduced row echelon forms of
matrices with a few hundred rows, ranks of matrices with thousands of rows,
and univariate interpolation over a quadratic extension GF(p^2) (a prime
field alone has too few points for degree-500 interpolation).

Products are computed through float64 BLAS.  That is exact as long as every
inner product stays below 2^53, which the helpers guarantee by chunking the
inner dimension.
"""

from __future__ import annotations

import numpy as np


def _as_mod_array(rows, p: int) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    return np.mod(a, p)


def mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p for int arrays already reduced mod p."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1]
    chunk = max(1, int(2**53 // max(1, (p - 1) * (p - 1))))
    if inner <= chunk:
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return prod.astype(np.int64) % p
    acc = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for start in range(0, inner, chunk):
        sl_a = a[..., start : start + chunk].astype(np.float64)
        sl_b = b[start : start + chunk].astype(np.float64)
        acc = (acc + (sl_a @ sl_b).astype(np.int64)) % p
    return acc


def mod_rref(rows, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot columns).

    Zero rows are kept in place at the bottom.  Intended for matrices with
    at most a few hundred rows; the elimination is row-at-a-time numpy.
    """
    m = _as_mod_array(rows, p).copy()
    nrows, ncols = m.shape
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        sel = rank + int(nz[0])
        if sel != rank:
            m[[rank, sel]] = m[[sel, rank]]
        inv = pow(int(m[rank, col]), p - 2, p)
        m[rank] = m[rank] * inv % p
        others = np.nonzero(m[:, col])[0]
        others = others[others != rank]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, col], m[rank])) % p
        pivots.append(col)
        rank += 1
    return m, pivots


def mod_rank(rows, p: int, panel: int = 128) -> int:
    """Exact rank mod p via blocked elimination with matmul trailing updates.

    Panel columns are eliminated eagerly with the multipliers stored in
    place of the zeroed entries (the columns are never revisited); trailing
    columns are updated once per panel through a single exact matmul.
    """
    a = _as_mod_array(rows, p).copy()
    nrows, ncols = a.shape
    if nrows == 0 or ncols == 0:
        return 0
    row = 0  # first unfinished row
    col = 0
    rank = 0
    while row < nrows and col < ncols:
        c_end = min(col + panel, ncols)
        piv_cols: list[int] = []
        piv_invs: list[int] = []
        r = row
        for cc in range(col, c_end):
            nz = np.nonzero(a[r:, cc])[0]
            if nz.size == 0:
                continue
            sel = r + int(nz[0])
            if sel != r:
                a[[r, sel]] = a[[sel, r]]
            inv = pow(int(a[r, cc]), p - 2, p)
            # normalize only the panel part; the trailing part is fixed later
            a[r, cc:c_end] = a[r, cc:c_end] * inv % p
            below = np.nonzero(a[r + 1 :, cc])[0]
            if below.size:
                idx = below + r + 1
                mult = a[idx, cc].copy()
                if cc + 1 < c_end:
                    a[idx, cc + 1 : c_end] = (
                        a[idx, cc + 1 : c_end] - np.outer(mult, a[r, cc + 1 : c_end])
                    ) % p
                a[idx, cc] = mult  # store the multiplier where the zero went
            piv_cols.append(cc)
            piv_invs.append(inv)
            r += 1
        k = len(piv_cols)
        if k and c_end < ncols:
            # reconstruct the fully updated trailing parts of the pivot rows:
            # final_j = inv_j * (raw_j - sum_{i<j} mult[j,i] * final_i)
            u = a[row : row + k, c_end:].astype(np.int64)
            lkk = a[row : row + k, :][:, piv_cols].astype(np.int64)
            for j in range(k):
                if j and np.any(lkk[j, :j]):
                    u[j] = (u[j] - lkk[j, :j] @ u[:j]) % p
                u[j] = u[j] * piv_invs[j] % p
            a[row : row + k, c_end:] = u
            tail = a[row + k :, :]
            if tail.shape[0]:
                mult = tail[:, piv_cols]
                if np.any(mult):
                    tail[:, c_end:] = (tail[:, c_end:] - mod_matmul(mult, u, p)) % p
        rank += k
        row += k
        col = c_end
    return rank


def mod_det(rows, p: int) -> int:
    """Determinant mod p of a square matrix by Gaussian elimination."""
    a = _as_mod_array(rows, p).copy()
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("mod_det needs a square matrix")
    det = 1
    for k in range(n):
        nz = np.nonzero(a[k:, k])[0]
        if nz.size == 0:
            return 0
        sel = k + int(nz[0])
        if sel != k:
            a[[k, sel]] = a[[sel, k]]
            det = -det
        piv = int(a[k, k])
        det = det * piv % p
        if k + 1 < n:
            inv = pow(piv, p - 2, p)
            mult = a[k + 1 :, k] * inv % p
            a[k + 1 :, k + 1 :] = (a[k + 1 :, k + 1 :] - np.outer(mult, a[k, k + 1 :])) % p
    return det % p


# ---------------------------------------------------------------------------
# GF(p^2) = GF(p)[x]/(x^2 - nonresidue)


def quadratic_nonresidue(p: int) -> int:
    """Smallest quadratic non-residue mod an odd prime p."""
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise ValueError(f"no non-residue found mod {p}")


class Fp2:
    """GF(p^2) with elements (a, b) standing for a + b*x, x^2 = nonresidue."""

    def __init__(self, p: int):
        self.p = p
        self.nr = quadratic_nonresidue(p)

    def mul(self, u, v):
        a, b = u
        c, d = v
        p, n = self.p, self.nr
        return ((a * c + n * b * d) % p, (a * d + b * c) % p)

    def sub(self, u, v):
        return ((u[0] - v[0]) % self.p, (u[1] - v[1]) % self.p)

    def add(self, u, v):
        return ((u[0] + v[0]) % self.p, (u[1] + v[1]) % self.p)

    def inv(self, u):
        a, b = u
        p, n = self.p, self.nr
        norm = (a * a - n * b * b) % p
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in GF(p^2)")
        ninv = pow(norm, p - 2, p)
        return (a * ninv % p, (-b) * ninv % p)

    def points(self, count: int) -> list[tuple[int, int]]:
        """`count` distinct field elements, enumerated deterministically."""
        if count > self.p * self.p:
            raise ValueError("not enough points in GF(p^2)")
        out = []
        for a in range(self.p):
            for b in range(self.p):
                out.append((a, b))
                if len(out) == count:
                    return out
        return out


def det_fp2_batch(mats_re: np.ndarray, mats_im: np.ndarray, f2: Fp2) -> list[tuple[int, int]]:
    """Determinants of a batch of square matrices over GF(p^2).

    ``mats_re`` and ``mats_im`` have shape (batch, n, n) with entries mod p.
    Per-matrix Gaussian elimination with numpy row operations.
    """
    p, nr = f2.p, f2.nr
    out: list[tuple[int, int]] = []
    for re0, im0 in zip(mats_re, mats_im):
        re = re0.astype(np.int64).copy()
        im = im0.astype(np.int64).copy()
        n = re.shape[0]
        det = (1, 0)
        sign = 1
        singular = False
        for k in range(n):
            colnz = np.nonzero((re[k:, k] | im[k:, k]))[0]
            if colnz.size == 0:
                singular = True
                break
            sel = k + int(colnz[0])
            if sel != k:
                re[[k, sel]] = re[[sel, k]]
                im[[k, sel]] = im[[sel, k]]
                sign = -sign
            piv = (int(re[k, k]), int(im[k, k]))
            det = f2.mul(det, piv)
            pinv = f2.inv(piv)
            # scale pivot row
            ra, rb = re[k, k:], im[k, k:]
            na = (ra * pinv[0] + nr * rb * pinv[1]) % p
            nb = (ra * pinv[1] + rb * pinv[0]) % p
            re[k, k:], im[k, k:] = na, nb
            # eliminate below
            fa = re[k + 1 :, k].copy()
            fb = im[k + 1 :, k].copy()
            if fa.size and (np.any(fa) or np.any(fb)):
                ra, rb = re[k, k:], im[k, k:]
                re[k + 1 :, k:] = (
                    re[k + 1 :, k:] - np.outer(fa, ra) - nr * np.outer(fb, rb)
                ) % p
                im[k + 1 :, k:] = (
                    im[k + 1 :, k:] - np.outer(fa, rb) - np.outer(fb, ra)
                ) % p
        if singular:
            out.append((0, 0))
        else:
            out.append((det[0] * sign % p, det[1] * sign % p))
    return out


def newton_interpolate_fp2(xs, ys, f2: Fp2) -> list[tuple[int, int]]:
    """Coefficients (low degree first) of the interpolating polynomial.

    Standard Newton divided differences over GF(p^2); the sample points must
    be pairwise distinct.
    """
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            num = f2.sub(coef[i], coef[i - 1])
            den = f2.sub(xs[i], xs[i - j])
            coef[i] = f2.mul(num, f2.inv(den))
    # expand the Newton form into monomial coefficients
    poly = [(0, 0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        nxt = [(0, 0)] * n
        for d in range(n - 1):
            if poly[d] != (0, 0):
                nxt[d + 1] = f2.add(nxt[d + 1], poly[d])
                nxt[d] = f2.sub(nxt[d], f2.mul(poly[d], xs[i]))
        nxt[0] = f2.add(nxt[0], coef[i])
        poly = nxt
    return poly


def poly_gcd_modp(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd of two univariate polynomials over GF(p), low degree first."""

    def trim(u):
        while u and u[-1] % p == 0:
            u.pop()
        return u

    a = trim([x % p for x in a])
    b = trim([x % p for x in b])
    while b:
        # a mod b
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        for i in range(len(r) - 1, len(b) - 2, -1):
            if r[i]:
                f = r[i] * inv % p
                off = i - (len(b) - 1)
                for j, c in enumerate(b):
                    r[off + j] = (r[off + j] - f * c) % p
        a, b = b, trim(r)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a

"""Dense mod-p matrix kernels and the GF(p^2) helpers used by certificates."""

from __future__ import annotations

import random

import numpy as np
import pytest

from fppcert.linalg import rank_fraction
from fppcert.modmat import (
    Fp2,
    det_fp2_batch,
    mod_det,
    mod_matmul,
    mod_rank,
    mod_rref,
    newton_interpolate_fp2,
    poly_gcd_modp,
    quadratic_nonresidue,
)

P = 263


def _random_matrix(rng: random.Random, n: int, m: int) -> np.ndarray:
    return np.array(
        [[rng.randrange(P) for _ in range(m)] for _ in range(n)], dtype=np.int64
    )


def test_mod_rank_matches_fraction_rank():
    rng = random.Random(1)
    for _ in range(50):
        n, m = rng.randint(1, 8), rng.randint(1, 8)
        a = np.array(
            [[rng.randint(-4, 4) for _ in range(m)] for _ in range(n)],
            dtype=np.int64,
        )
        # small entries cannot alias 0 mod 263, so ranks agree exactly
        assert mod_rank(a % P, P) == rank_fraction(a.tolist())


def test_mod_rref_reproduces_row_space():
    rng = random.Random(2)
    for _ in range(30):
        a = _random_matrix(rng, 5, 7)
        r, pivots = mod_rref(a.copy(), P)
        assert len(pivots) == mod_rank(a, P)
        for i, c in enumerate(pivots):
            assert r[i, c] == 1
            col = r[:, c].copy()
            col[i] = 0
            assert not col.any()


def test_mod_matmul_matches_python():
    rng = random.Random(3)
    for _ in range(20):
        a = _random_matrix(rng, 4, 6)
        b = _random_matrix(rng, 6, 3)
        got = mod_matmul(a, b, P)
        want = (a.astype(object) @ b.astype(object)) % P
        assert (got.astype(object) == want).all()


def test_mod_det_matches_bareiss():
    from fppcert.linalg import det_bareiss

    rng = random.Random(4)
    for _ in range(40):
        a = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
        assert mod_det(np.array(a, dtype=np.int64) % P, P) == det_bareiss(a) % P


def test_quadratic_nonresidue():
    s = quadratic_nonresidue(P)
    assert pow(s, (P - 1) // 2, P) == P - 1


def test_fp2_field_axioms():
    f2 = Fp2(P)
    rng = random.Random(5)
    for _ in range(200):
        a = (rng.randrange(P), rng.randrange(P))
        b = (rng.randrange(P), rng.randrange(P))
        c = (rng.randrange(P), rng.randrange(P))
        assert f2.mul(a, f2.mul(b, c)) == f2.mul(f2.mul(a, b), c)
        assert f2.mul(a, b) == f2.mul(b, a)
        ab = f2.add(a, b)
        assert f2.mul(ab, c) == f2.add(f2.mul(a, c), f2.mul(b, c))
        if a != (0, 0):
            assert f2.mul(a, f2.inv(a)) == (1, 0)


def test_det_fp2_batch_matches_scalar_dets():
    f2 = Fp2(P)
    rng = random.Random(6)
    mats_re = np.array(
        [[[rng.randrange(P) for _ in range(3)] for _ in range(3)] for _ in range(5)],
        dtype=np.int64,
    )
    mats_im = np.zeros_like(mats_re)
    dets = det_fp2_batch(mats_re, mats_im, f2)
    for k in range(5):
        want = mod_det(mats_re[k].copy(), P)
        assert dets[k] == (want, 0)


def test_newton_interpolation_recovers_polynomial():
    f2 = Fp2(P)
    rng = random.Random(7)
    coeffs = [(rng.randrange(P), rng.randrange(P)) for _ in range(6)]

    def ev(x):
        acc = (0, 0)
        for c in reversed(coeffs):
            acc = f2.add(f2.mul(acc, x), c)
        return acc

    xs = [(i, 1) for i in range(6)]  # distinct points off the base field
    ys = [ev(x) for x in xs]
    got = newton_interpolate_fp2(xs, ys, f2)
    assert got == coeffs


def test_poly_gcd_modp():
    # (t^2+1)(t+3) and (t^2+1)(t+5) share exactly t^2+1
    a = np.polymul([1, 0, 1], [1, 3]).astype(int).tolist()[::-1]
    b = np.polymul([1, 0, 1], [1, 5]).astype(int).tolist()[::-1]
    g = poly_gcd_modp([x % P for x in a], [x % P for x in b], P)
    # monic gcd, ascending coefficients
    assert g == [1, 0, 1]
    assert poly_gcd_modp([3], [0, 0, 5], P) == [1]

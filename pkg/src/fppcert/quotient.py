"""Certified multiplication structure for the quotient by the 84 cubics mod p.

The whole verification pipeline rests on one linear-algebra fact that this
module establishes and then exploits: modulo any suitable prime, the span of
the 84 cubics in degree 3 has dimension exactly 84, with the 84 monomials of
degree 3 in U0..U6 as pivot monomials.  Writing P = k[U7, U8, U9], the
quotient R/J is then a free P-module on the 36 monomials of degree <= 2 in
U0..U6 ("slots"), and multiplication by U0..U6 becomes seven P-linear
operators X_0..X_6 read off from the row-reduced tails.

Certification chain:

* the seven operators commute pairwise (checked on all 36 slot generators,
  which suffices because the operators are P-linear by construction), so the
  free module becomes a module over the full 10-variable ring;
* every one of the 84 cubics annihilates the cyclic generator, so the module
  is a quotient of R/J;
* the free module's Hilbert function equals the monomial upper bound for
  R/J, which pins HF(R/J, k) = 18k^2 - 9k + 1 for every k and identifies the
  row-reduced rows as the reduced Groebner basis.

Elements of R/J of degree k live in "packed" vectors: one coefficient block
per slot, listing coefficients of the P-monomials of degree k - deg(slot) in
descending graded reverse lexicographic order.

On top of that structure this module computes images of 7x7 Jacobian minors
by a subset-sum expansion, and certifies the three quotient stages of the
smoothness chain through determinant, plane-restriction gcd, and full-rank
certificates instead of elimination (which would not fit in memory here).
"""

from __future__ import annotations

import math
import random
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import dataset
from .budget import BudgetExceeded
from .field import PrimeField
from .hilbert import (
    hilbert_function_from_numerator,
    hilbert_function_oracle,
    hilbert_numerator,
    hilbert_polynomial,
)
from .modmat import (
    Fp2,
    det_fp2_batch,
    mod_det,
    mod_matmul,
    mod_rank,
    mod_rref,
    newton_interpolate_fp2,
    poly_gcd_modp,
)
from .poly import Poly, PrimeDomain, grevlex_key

NVARS = 10
NSLOT_VARS = 7  # U0..U6 carry the slot structure
NP_VARS = 3  # U7, U8, U9 form the base ring P


# ---------------------------------------------------------------------------
# combinatorial layout (independent of the prime)


@lru_cache(maxsize=None)
def monomials_desc(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All degree-d monomials in n variables, descending grevlex."""
    if d < 0:
        return ()

    def gen(rem_vars: int, rem_deg: int):
        if rem_vars == 1:
            yield (rem_deg,)
            return
        for e in range(rem_deg + 1):
            for rest in gen(rem_vars - 1, rem_deg - e):
                yield (e,) + rest

    return tuple(sorted(gen(n, d), key=grevlex_key, reverse=True))


@lru_cache(maxsize=None)
def pm_index(d: int) -> dict:
    return {m: i for i, m in enumerate(monomials_desc(NP_VARS, d))}


def ncount(d: int) -> int:
    """Number of degree-d monomials in the three base variables."""
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


def _build_slots() -> tuple[tuple[tuple[int, ...], ...], dict]:
    slots = [(0,) * NSLOT_VARS]
    for i in range(NSLOT_VARS):
        e = [0] * NSLOT_VARS
        e[i] = 1
        slots.append(tuple(e))
    slots.extend(monomials_desc(NSLOT_VARS, 2))
    return tuple(slots), {m: i for i, m in enumerate(slots)}


SLOT_EXPS, SLOT_INDEX = _build_slots()
SLOT_DEG = tuple(sum(e) for e in SLOT_EXPS)
NSLOTS = len(SLOT_EXPS)  # 36

# sorted variable tuple per slot: () for the constant, (a,), or (a, b) a <= b
SLOT_KEY = tuple(
    tuple(i for i, e in enumerate(exps) for _ in range(e)) for exps in SLOT_EXPS
)
SLOT_WEIGHT = tuple(
    sum(e * w for e, w in zip(exps, dataset.G7_WEIGHTS[:NSLOT_VARS])) % 7
    for exps in SLOT_EXPS
)

_P_WEIGHTS = dataset.G7_WEIGHTS[NSLOT_VARS:]


def pweight(tau: tuple[int, int, int]) -> int:
    return sum(e * w for e, w in zip(tau, _P_WEIGHTS)) % 7


@lru_cache(maxsize=None)
def packed_layout(k: int) -> tuple[int, tuple[int, ...]]:
    """Length and per-slot offsets of the packed degree-k coefficient vector."""
    offsets = []
    total = 0
    for s in range(NSLOTS):
        offsets.append(total)
        total += ncount(k - SLOT_DEG[s])
    return total, tuple(offsets)


def packed_len(k: int) -> int:
    return packed_layout(k)[0]


@lru_cache(maxsize=None)
def shift_idx(tau: tuple[int, int, int], d: int) -> np.ndarray:
    """Index map mu -> tau*mu from degree-d base monomials into degree d+|tau|."""
    target = pm_index(d + sum(tau))
    return np.array(
        [target[tuple(a + b for a, b in zip(m, tau))] for m in monomials_desc(NP_VARS, d)],
        dtype=np.int64,
    )


@lru_cache(maxsize=None)
def pweight_select(d: int, e: int) -> np.ndarray:
    """Positions of the degree-d base monomials in weight class e."""
    vals = np.array([pweight(m) for m in monomials_desc(NP_VARS, d)], dtype=np.int64)
    return np.nonzero(vals == e % 7)[0]


@lru_cache(maxsize=None)
def packed_weights(k: int) -> np.ndarray:
    """Weight class (mod 7) of every packed degree-k coordinate."""
    total, offsets = packed_layout(k)
    out = np.zeros(total, dtype=np.int64)
    for s in range(NSLOTS):
        d = k - SLOT_DEG[s]
        if d < 0:
            continue
        w = np.array([pweight(m) for m in monomials_desc(NP_VARS, d)], dtype=np.int64)
        out[offsets[s] : offsets[s] + ncount(d)] = (SLOT_WEIGHT[s] + w) % 7
    return out


def hf_expected(k: int) -> int:
    """The certified Hilbert function of the quotient."""
    return 18 * k * k - 9 * k + 1 if k >= 0 else 0


# ---------------------------------------------------------------------------
# the engine


class PivotStructureError(AssertionError):
    """Degree-3 row reduction did not produce the expected pivot monomials."""


class CertificateError(AssertionError):
    """An internal consistency certificate failed."""


class QuotientEngine:
    """Multiplication structure of R/J over one prime field."""

    def __init__(self, field: PrimeField, conjugate: bool = False):
        self.field = field
        self.p = field.p
        self.dom = PrimeDomain(field)
        self.conjugate = conjugate
        src = dataset.conjugate_equations() if conjugate else dataset.expand_equations()
        self.eqs = [f.to_prime_field(field) for f in src]
        self._mono3 = monomials_desc(NVARS, 3)
        self._mono3_index = {m: i for i, m in enumerate(self._mono3)}
        self._build_reduction()
        self._build_operator_tables()
        self._commutativity: bool | None = None
        self._annihilation: bool | None = None

    # -- degree-3 reduction ----------------------------------------------

    def _row_of_cubic(self, f: Poly) -> np.ndarray:
        row = np.zeros(len(self._mono3), dtype=np.int64)
        for mono, c in f.coeffs.items():
            row[self._mono3_index[mono]] = c
        return row

    def _build_reduction(self) -> None:
        mat = np.stack([self._row_of_cubic(f) for f in self.eqs])
        rref, pivots = mod_rref(mat, self.p)
        npure = math.comb(NSLOT_VARS + 2, 3)  # 84
        pure_cols = [i for i, m in enumerate(self._mono3) if sum(m[NSLOT_VARS:]) == 0]
        if pure_cols != list(range(npure)):
            raise PivotStructureError("monomial order does not put pure cubics first")
        if pivots != list(range(npure)):
            raise PivotStructureError(
                f"pivot columns {pivots[:10]}...: expected the {npure} pure cubics"
            )
        self.rref = rref[:npure]
        self.pivot_count = len(pivots)
        # NF(pure_j) = -tails over the 136 standard degree-3 monomials
        self.nf_rows = (-self.rref[:, npure:]) % self.p
        self.pure_index = {self._mono3[j][:NSLOT_VARS]: j for j in range(npure)}
        self.std_decomp = []
        l3, off3 = packed_layout(3)
        self.std_to_packed3 = np.zeros(len(self._mono3) - npure, dtype=np.int64)
        for t, mono in enumerate(self._mono3[npure:]):
            pure, tau = mono[:NSLOT_VARS], mono[NSLOT_VARS:]
            slot = SLOT_INDEX[pure]
            self.std_decomp.append((slot, tau, sum(tau)))
            self.std_to_packed3[t] = off3[slot] + pm_index(3 - SLOT_DEG[slot])[tau]

    def _build_operator_tables(self) -> None:
        # tmat[a][t, q]: coefficient of standard column t in NF(U_a * slot_q),
        # slot_q running over the 28 degree-2 slots
        self._tmat = []
        for a in range(NSLOT_VARS):
            cols = []
            for q in range(28):
                exps = list(SLOT_EXPS[8 + q])
                exps[a] += 1
                cols.append(self.nf_rows[self.pure_index[tuple(exps)]])
            self._tmat.append(np.stack(cols, axis=1))
        self._pair_slot = [
            [
                SLOT_INDEX[tuple((1 if i == a else 0) + (1 if i == b else 0) for i in range(NSLOT_VARS))]
                for b in range(NSLOT_VARS)
            ]
            for a in range(NSLOT_VARS)
        ]

    # -- packed arithmetic -----------------------------------------------

    def zero_packed(self, k: int) -> np.ndarray:
        return np.zeros(packed_len(k), dtype=np.int64)

    def unit_packed(self) -> np.ndarray:
        """The cyclic generator: the constant monomial 1 in degree 0."""
        v = self.zero_packed(0)
        v[0] = 1
        return v

    def slot_unit(self, slot: int) -> np.ndarray:
        """The slot generator e_slot as a packed vector of its own degree."""
        v = self.zero_packed(SLOT_DEG[slot])
        v[packed_layout(SLOT_DEG[slot])[1][slot]] = 1
        return v

    def apply_x(self, a: int, vec: np.ndarray, k: int) -> np.ndarray:
        """Multiply a packed degree-k element by U_a (a < 7)."""
        p = self.p
        _, offo = packed_layout(k + 1)
        _, offi = packed_layout(k)
        out = self.zero_packed(k + 1)
        nk = ncount(k)
        if nk:
            s = 1 + a
            out[offo[s] : offo[s] + nk] += vec[offi[0] : offi[0] + nk]
        nk1 = ncount(k - 1)
        if nk1:
            for b in range(NSLOT_VARS):
                src = vec[offi[1 + b] : offi[1 + b] + nk1]
                if np.any(src):
                    s = self._pair_slot[a][b]
                    out[offo[s] : offo[s] + nk1] += src
        nk2 = ncount(k - 2)
        if nk2:
            v2 = vec[offi[8] : offi[8] + 28 * nk2].reshape(28, nk2)
            prod = self._tmat[a] @ v2 % p
            for t, (slot, tau, _) in enumerate(self.std_decomp):
                row = prod[t]
                if not np.any(row):
                    continue
                out[offo[slot] + shift_idx(tau, k - 2)] += row
        return out % p

    def x_images(self, vec: np.ndarray, k: int) -> dict:
        """vec times every monomial of degree <= 2 in U0..U6, keyed by SLOT_KEY."""
        images = {(): vec}
        for a in range(NSLOT_VARS):
            images[(a,)] = self.apply_x(a, vec, k)
        for a in range(NSLOT_VARS):
            for b in range(a, NSLOT_VARS):
                images[(a, b)] = self.apply_x(b, images[(a,)], k + 1)
        return images

    def add_shifted(self, out: np.ndarray, base: np.ndarray, kb: int, tau, c: int) -> None:
        """out += c * tau * base where base is packed of degree kb."""
        _, offs = packed_layout(kb)
        _, offo = packed_layout(kb + sum(tau))
        for s in range(NSLOTS):
            d = kb - SLOT_DEG[s]
            if d < 0:
                continue
            src = base[offs[s] : offs[s] + ncount(d)]
            if not np.any(src):
                continue
            out[offo[s] + shift_idx(tuple(tau), d)] += c * src

    def multiply_packed(
        self, q: Poly, vec: np.ndarray, k: int, images: dict | None = None, scale: int = 1
    ) -> np.ndarray:
        """Packed image of q * vec for q with every monomial of slot-degree <= 2."""
        if not q.is_homogeneous():
            raise ValueError("multiply_packed needs a homogeneous multiplier")
        dq = q.total_degree()
        if dq < 0:
            raise ValueError("zero multiplier")
        if images is None:
            images = self.x_images(vec, k)
        out = self.zero_packed(k + dq)
        for mono, c in q.coeffs.items():
            pure, tau = mono[:NSLOT_VARS], mono[NSLOT_VARS:]
            key = tuple(i for i, e in enumerate(pure) for _ in range(e))
            if len(key) > 2:
                raise ValueError("multiplier monomial exceeds slot degree 2")
            cc = c * scale % self.p
            base = images[key]
            if sum(tau) == 0:
                out += cc * base
            else:
                self.add_shifted(out, base, k + len(key), tau, cc)
        return out % self.p

    def pack_standard(self, g: Poly) -> np.ndarray:
        """Pack a polynomial whose monomials all have slot-degree <= 2."""
        if not g.is_homogeneous():
            raise ValueError("pack_standard needs a homogeneous polynomial")
        k = g.total_degree()
        out = self.zero_packed(k)
        _, offs = packed_layout(k)
        for mono, c in g.coeffs.items():
            pure, tau = mono[:NSLOT_VARS], mono[NSLOT_VARS:]
            slot = SLOT_INDEX.get(pure)
            if slot is None:
                raise ValueError("monomial with slot-degree > 2 cannot pack directly")
            out[offs[slot] + pm_index(k - SLOT_DEG[slot])[tau]] = c
        return out

    def to_module_terms(self, vec: np.ndarray, k: int) -> dict:
        """Packed vector as {(slot, tau): coeff} for the module GB layer."""
        _, offs = packed_layout(k)
        out = {}
        for s in range(NSLOTS):
            d = k - SLOT_DEG[s]
            if d < 0:
                continue
            block = vec[offs[s] : offs[s] + ncount(d)]
            for i in np.nonzero(block)[0]:
                out[(s, monomials_desc(NP_VARS, d)[i])] = int(block[i])
        return out

    def nf_pack_cubic(self, f: Poly) -> np.ndarray:
        """Normal form of a cubic as a packed degree-3 vector."""
        out = self.zero_packed(3)
        _, off3 = packed_layout(3)
        for mono, c in f.coeffs.items():
            pure, tau = mono[:NSLOT_VARS], mono[NSLOT_VARS:]
            if sum(pure) == 3:
                out[self.std_to_packed3] += c * self.nf_rows[self.pure_index[pure]]
            else:
                slot = SLOT_INDEX[pure]
                out[off3[slot] + pm_index(3 - SLOT_DEG[slot])[tau]] += c
        return out % self.p

    # -- structure certificates ------------------------------------------

    def commutativity_ok(self) -> bool:
        """X_a X_b = X_b X_a on all 36 slot generators (suffices: P-linearity
        of the operators is structural, so equality on generators is equality
        of matrices)."""
        if self._commutativity is None:
            ok = True
            for a in range(NSLOT_VARS):
                for b in range(a + 1, NSLOT_VARS):
                    for s in range(NSLOTS):
                        v = self.slot_unit(s)
                        k = SLOT_DEG[s]
                        ab = self.apply_x(b, self.apply_x(a, v, k), k + 1)
                        ba = self.apply_x(a, self.apply_x(b, v, k), k + 1)
                        if not np.array_equal(ab, ba):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            self._commutativity = ok
        return self._commutativity

    def annihilation_ok(self) -> bool:
        """Every one of the 84 cubics kills the cyclic generator."""
        if self._annihilation is None:
            self._annihilation = all(
                not np.any(self.nf_pack_cubic(f)) for f in self.eqs
            )
        return self._annihilation

    def hilbert_report(self, oracle_max: int = 8) -> dict:
        """Full Hilbert certificate for the quotient."""
        pure84 = [m for m in self._mono3 if sum(m[NSLOT_VARS:]) == 0]
        num = hilbert_numerator(pure84, NVARS)
        # (1 - t)^7 * (1 + 7t + 28t^2)
        base = [1]
        for _ in range(7):
            base = np.convolve(base, [1, -1]).tolist()
        expect_coeffs = np.convolve(base, [1, 7, 28]).astype(int).tolist()
        got = list(num.coeffs) + [0] * (len(expect_coeffs) - len(num.coeffs))
        hp = hilbert_polynomial(num)
        hp_ints = hp.as_integer_coeffs()
        oracle = {}
        for k in range(oracle_max + 1):
            oracle[k] = (
                hilbert_function_oracle(pure84, NVARS, k),
                hilbert_function_from_numerator(num, k),
                hf_expected(k),
            )
        return {
            "pivot_count": self.pivot_count,
            "standard_monomials_deg3": len(self._mono3) - 84,
            "commutativity": self.commutativity_ok(),
            "annihilation": self.annihilation_ok(),
            "numerator": got,
            "numerator_expected": expect_coeffs,
            "numerator_ok": got == expect_coeffs,
            "hp_coeffs": hp_ints,
            "hp_ok": hp_ints == [1, -9, 18],
            "oracle": oracle,
            "oracle_ok": all(a == b == c for a, b, c in oracle.values()),
        }

    def invariance_rank(self) -> int:
        """Rank of the 84 cubics stacked with their order-3 images."""
        src = dataset.conjugate_equations() if self.conjugate else dataset.expand_equations()
        imgs = [dataset.apply_g3(f).to_prime_field(self.field) for f in src]
        rows = [self._row_of_cubic(f) for f in self.eqs] + [
            self._row_of_cubic(f) for f in imgs
        ]
        return mod_rank(np.stack(rows), self.p)

    # -- Jacobian minors ---------------------------------------------------

    def minor_image(
        self, sel_rows: Sequence[int], sel_cols: Sequence[int], reverse_columns: bool = False
    ) -> np.ndarray:
        """Packed degree-14 image of the 7x7 Jacobian minor det in R/J.

        ``sel_rows`` are 1-based equation numbers, ``sel_cols`` variable
        indices.  The determinant is expanded column by column over row
        subsets; every partial product lives in the packed representation,
        so nothing ever touches the ambient degree-14 space.
        """
        rows = [r - 1 for r in sel_rows]
        cols = list(sel_cols)
        if reverse_columns:
            cols = cols[::-1]
        if len(rows) != len(cols) or len(set(rows)) != len(rows):
            raise ValueError("minor selection must be square and duplicate-free")
        quads = {
            (r, c): self.eqs[r].derivative(c) for r in rows for c in cols
        }
        states: dict[tuple[int, ...], np.ndarray] = {(): self.unit_packed()}
        for pos, c in enumerate(cols):
            new_states: dict[tuple[int, ...], np.ndarray] = {}
            deg = 2 * pos
            for sub, vec in states.items():
                images = self.x_images(vec, deg)
                for r in rows:
                    if r in sub:
                        continue
                    q = quads[(r, c)]
                    if q.is_zero():
                        continue
                    grown = tuple(sorted(sub + (r,)))
                    sgn = -1 if (grown.index(r) + pos) % 2 else 1
                    contrib = self.multiply_packed(
                        q, vec, deg, images=images, scale=sgn % self.p
                    )
                    if grown in new_states:
                        new_states[grown] = (new_states[grown] + contrib) % self.p
                    else:
                        new_states[grown] = contrib
            states = new_states
        return states[tuple(sorted(rows))]

    def weight_class(self, vec: np.ndarray, k: int) -> int:
        """The unique weight class supporting vec; CertificateError if mixed."""
        classes = set(packed_weights(k)[np.nonzero(vec)[0]].tolist())
        if len(classes) != 1:
            raise CertificateError(f"packed vector spans weight classes {sorted(classes)}")
        return classes.pop()

    def evaluate_packed_at_point(self, vec: np.ndarray, k: int, point: Sequence[int]) -> int:
        """Value of the packed element at a full 10-coordinate point mod p."""
        p = self.p
        vals = [v % p for v in point]
        _, offs = packed_layout(k)
        total = 0
        for s in range(NSLOTS):
            d = k - SLOT_DEG[s]
            if d < 0:
                continue
            block = vec[offs[s] : offs[s] + ncount(d)]
            nz = np.nonzero(block)[0]
            if nz.size == 0:
                continue
            slot_val = 1
            for i, e in enumerate(SLOT_EXPS[s]):
                slot_val = slot_val * pow(vals[i], e, p) % p
            for i in nz:
                mono = monomials_desc(NP_VARS, d)[i]
                term = int(block[i]) * slot_val % p
                for j, e in enumerate(mono):
                    term = term * pow(vals[NSLOT_VARS + j], e, p) % p
                total = (total + term) % p
        return total

    def minor_value_at_point(
        self, sel_rows: Sequence[int], sel_cols: Sequence[int], point: Sequence[int]
    ) -> int:
        """Numeric 7x7 Jacobian determinant at a point, straight from the data."""
        rows = [r - 1 for r in sel_rows]
        mat = [
            [self.eqs[r].derivative(c).evaluate([v % self.p for v in point]) for c in sel_cols]
            for r in rows
        ]
        return mod_det(np.array(mat, dtype=np.int64), self.p)

    # -- smoothness chain certificates ------------------------------------

    def _op_images(self, mvec: np.ndarray) -> dict:
        return self.x_images(mvec, 14)

    def _entry_coeffs(self, images: dict):
        """Column-major entry coefficient slices of the 36x36 operator matrix."""
        entries = {}
        for v in range(NSLOTS):
            vec = images[SLOT_KEY[v]]
            kv = 14 + SLOT_DEG[v]
            _, offs = packed_layout(kv)
            for w in range(NSLOTS):
                d = kv - SLOT_DEG[w]
                entries[(w, v)] = (d, vec[offs[w] : offs[w] + ncount(d)])
        return entries

    def _det_matrix_at_gfp_point(self, entries: dict, point: Sequence[int]) -> np.ndarray:
        p = self.p
        powtab = [
            [pow(x % p, e, p) for e in range(17 + 1)] for x in point
        ]
        monoval: dict[int, np.ndarray] = {}
        for d in {d for d, _ in entries.values()}:
            vals = np.array(
                [
                    powtab[0][m[0]] * powtab[1][m[1]] % p * powtab[2][m[2]] % p
                    for m in monomials_desc(NP_VARS, d)
                ],
                dtype=np.int64,
            )
            monoval[d] = vals
        mat = np.zeros((NSLOTS, NSLOTS), dtype=np.int64)
        for (w, v), (d, coeffs) in entries.items():
            if coeffs.size:
                mat[w, v] = int(coeffs @ monoval[d] % p)
        return mat

    def stage1_certificate(self, images: dict, seed) -> dict:
        """A point where det of the first minor's operator matrix is nonzero.

        A single nonzero value certifies det != 0 in P, hence the minor acts
        injectively on the free module and the first quotient stage has
        Hilbert function HF(k) - HF(k-14) = 504k - 3654 for every k.
        """
        rng = random.Random(f"{seed}:smoothness:stage1")
        entries = self._entry_coeffs(images)
        tries = 0
        while tries < 25:
            point = [rng.randrange(self.p) for _ in range(NP_VARS)]
            tries += 1
            value = mod_det(self._det_matrix_at_gfp_point(entries, point), self.p)
            if value:
                return {"point": point, "det": int(value), "tries": tries, "ok": True}
        return {"point": None, "det": 0, "tries": tries, "ok": False}

    def _plane_samples(self, entries: dict, v3, u3, f2: Fp2, svals) -> list[tuple[int, int]]:
        """det of the operator matrix along the plane s*v3 + u3, per sample."""
        p = self.p
        nsamp = len(svals)
        s_re = np.array([s[0] for s in svals], dtype=np.int64)
        s_im = np.array([s[1] for s in svals], dtype=np.int64)
        # coordinate powers in GF(p^2): coord_i = v3[i]*s + u3[i]
        pow_re, pow_im = [], []
        for i in range(NP_VARS):
            base_re = (v3[i] * s_re + u3[i]) % p
            base_im = v3[i] * s_im % p
            pr = [np.ones(nsamp, dtype=np.int64), base_re]
            pi = [np.zeros(nsamp, dtype=np.int64), base_im]
            for _ in range(16):
                nr_ = (pr[-1] * base_re + f2.nr * pi[-1] * base_im) % p
                ni_ = (pr[-1] * base_im + pi[-1] * base_re) % p
                pr.append(nr_)
                pi.append(ni_)
            pow_re.append(pr)
            pow_im.append(pi)

        def mono_values(d: int) -> tuple[np.ndarray, np.ndarray]:
            monos = monomials_desc(NP_VARS, d)
            out_re = np.empty((len(monos), nsamp), dtype=np.int64)
            out_im = np.empty((len(monos), nsamp), dtype=np.int64)
            for idx, m in enumerate(monos):
                re = pow_re[0][m[0]]
                im = pow_im[0][m[0]]
                for i in (1, 2):
                    nre = (re * pow_re[i][m[i]] + f2.nr * im * pow_im[i][m[i]]) % p
                    nim = (re * pow_im[i][m[i]] + im * pow_re[i][m[i]]) % p
                    re, im = nre, nim
                out_re[idx] = re
                out_im[idx] = im
            return out_re, out_im

        degs = sorted({d for d, _ in entries.values()})
        mvals = {d: mono_values(d) for d in degs}
        mats_re = np.zeros((nsamp, NSLOTS, NSLOTS), dtype=np.int64)
        mats_im = np.zeros((nsamp, NSLOTS, NSLOTS), dtype=np.int64)
        for d in degs:
            pairs = [(w, v) for (w, v), (dd, coeffs) in entries.items() if dd == d]
            if not pairs:
                continue
            cmat = np.stack([entries[p_][1] for p_ in pairs])
            vals_re = mod_matmul(cmat, mvals[d][0], p)
            vals_im = mod_matmul(cmat, mvals[d][1], p)
            for row, (w, v) in enumerate(pairs):
                mats_re[:, w, v] = vals_re[row]
                mats_im[:, w, v] = vals_im[row]
        return det_fp2_batch(mats_re, mats_im, f2)

    def stage2_certificate(self, images1: dict, images2: dict, seed) -> dict:
        """Coprimality of the two operator determinants on a random plane.

        Both determinants are homogeneous of degree 504 in U7, U8, U9.  If
        their restrictions to a plane (after dehomogenizing) are coprime and
        at least one of them keeps full degree 504, the determinants share no
        projective zero on that line; a nonconstant common factor would meet
        every line, so the two surface determinants have no common factor and
        their common zero set is a finite set of points.  The second minor is
        then a nonzerodivisor on the Cohen-Macaulay first-stage quotient, the
        Koszul sequence is exact, and the second-stage Hilbert function is
        HF(k) - 2 HF(k-14) + HF(k-28), which is the constant 7056 from degree
        28 on.
        """
        p = self.p
        f2 = Fp2(p)
        rng = random.Random(f"{seed}:smoothness:stage2")
        entries1 = self._entry_coeffs(images1)
        entries2 = self._entry_coeffs(images2)
        target = NSLOTS * 14  # 504
        nsamp = target + 16
        svals = f2.points(nsamp)
        attempts = []
        for trial in range(5):
            v3 = [rng.randrange(p) for _ in range(NP_VARS)]
            u3 = [rng.randrange(p) for _ in range(NP_VARS)]
            # need an honest plane: v3 nonzero and u3 not a multiple of v3
            cross = [
                v3[0] * u3[1] - v3[1] * u3[0],
                v3[0] * u3[2] - v3[2] * u3[0],
                v3[1] * u3[2] - v3[2] * u3[1],
            ]
            if not any(v3) or all(c % p == 0 for c in cross):
                continue
            restricted = []
            for entries in (entries1, entries2):
                dets = self._plane_samples(entries, v3, u3, f2, svals)
                coeffs = newton_interpolate_fp2(svals, dets, f2)
                if any(c != (0, 0) for c in coeffs[target + 1 :]):
                    raise CertificateError("restricted determinant exceeds degree 504")
                if any(c[1] != 0 for c in coeffs):
                    raise CertificateError("restricted determinant left the prime field")
                poly = [c[0] for c in coeffs[: target + 1]]
                while poly and poly[-1] == 0:
                    poly.pop()
                restricted.append(poly)
            d1 = len(restricted[0]) - 1
            d2 = len(restricted[1]) - 1
            g = poly_gcd_modp(restricted[0], restricted[1], p)
            record = {
                "plane_v": v3,
                "plane_u": u3,
                "degrees": [d1, d2],
                "gcd_degree": len(g) - 1,
            }
            attempts.append(record)
            if len(g) - 1 == 0 and (d1 == target or d2 == target):
                record["ok"] = True
                return {"ok": True, "tries": trial + 1, "attempts": attempts}
        return {"ok": False, "tries": len(attempts), "attempts": attempts}

    def stage3_certificate(self, minor_images: list[dict], minor_weights: list[int]) -> dict:
        """Full rank of degree-28 multiples of the minors inside degree 42.

        The third-stage quotient is a standard graded algebra, so a zero
        graded piece at degree 42 forces zero in every higher degree and the
        Hilbert polynomial of the three-minor quotient is identically zero.
        The span check splits into the seven weight classes, which every
        generator respects.
        """
        p = self.p
        l42, off42 = packed_layout(42)
        wt42 = packed_weights(42)
        class_cols = [np.nonzero(wt42 == c)[0] for c in range(7)]
        col_pos = np.zeros(l42, dtype=np.int64)
        for c in range(7):
            col_pos[class_cols[c]] = np.arange(class_cols[c].size)
        blocks = []
        total_rank = 0
        for c in range(7):
            ncols = class_cols[c].size
            chunks = []
            for images, mw in zip(minor_images, minor_weights):
                for v in range(NSLOTS):
                    dv = SLOT_DEG[v]
                    need = (c - mw - SLOT_WEIGHT[v]) % 7
                    taus = [
                        t
                        for t in monomials_desc(NP_VARS, 28 - dv)
                        if pweight(t) == need
                    ]
                    if not taus:
                        continue
                    vec = images[SLOT_KEY[v]]
                    vec_class = (mw + SLOT_WEIGHT[v]) % 7
                    kv = 14 + dv
                    _, offs = packed_layout(kv)
                    rows = np.zeros((len(taus), ncols), dtype=np.int16)
                    for w in range(NSLOTS):
                        d = kv - SLOT_DEG[w]
                        if d < 0:
                            continue
                        src = vec[offs[w] : offs[w] + ncount(d)]
                        if not np.any(src):
                            continue
                        sel = pweight_select(d, vec_class - SLOT_WEIGHT[w])
                        mask = np.zeros(ncount(d), dtype=bool)
                        mask[sel] = True
                        if np.any(src[~mask]):
                            raise CertificateError(
                                "minor image is not weight-homogeneous"
                            )
                        if sel.size == 0:
                            continue
                        shift_block = np.stack(
                            [shift_idx(t, d)[sel] for t in taus]
                        )
                        dst = col_pos[off42[w] + shift_block]
                        np.put_along_axis(
                            rows,
                            dst,
                            np.broadcast_to(src[sel].astype(np.int16), dst.shape),
                            axis=1,
                        )
                    chunks.append(rows)
            block = np.concatenate(chunks, axis=0)
            rank = mod_rank(block, p)
            blocks.append(
                {"weight": c, "rows": int(block.shape[0]), "cols": int(ncols), "rank": int(rank)}
            )
            total_rank += rank
        return {
            "blocks": blocks,
            "total_rank": int(total_rank),
            "expected": int(l42),
            "ok": total_rank == l42 and all(b["rank"] == b["cols"] for b in blocks),
        }

    def smoothness_chain(self, seed=42, budget=None) -> dict:
        """The full three-stage certificate for the Jacobian minor chain.

        The optional budget is consulted between minors and between stages
        (the natural checkpoints); on exhaustion the exception carries the
        stages that did finish.
        """
        partial: dict = {}

        def checkpoint():
            if budget is not None:
                try:
                    budget.check_time()
                except BudgetExceeded as exc:
                    exc.partial = dict(partial)
                    raise

        minors = []
        images = []
        weights = []
        partial["minors"] = minors
        for idx, (rows, cols) in enumerate(dataset.MINOR_SELECTIONS):
            checkpoint()
            vec = self.minor_image(rows, cols)
            rec = {"rows": list(rows), "cols": list(cols)}
            if idx == 0:
                rev = self.minor_image(rows, cols, reverse_columns=True)
                rec["column_reversal_ok"] = bool(
                    np.array_equal((vec + rev) % self.p, np.zeros_like(vec))
                )
            rec["weight"] = self.weight_class(vec, 14)
            rec["nonzero_coords"] = int(np.count_nonzero(vec))
            minors.append(rec)
            images.append(self._op_images(vec))
            weights.append(rec["weight"])
        checkpoint()
        stage1 = self.stage1_certificate(images[0], seed)
        stage1["hp"] = "504*k - 3654"
        partial["stage1"] = stage1
        checkpoint()
        stage2 = self.stage2_certificate(images[0], images[1], seed)
        stage2["hp"] = "7056"
        partial["stage2"] = stage2
        checkpoint()
        stage3 = self.stage3_certificate(images, weights)
        stage3["hp"] = "0"
        ok = (
            stage1["ok"]
            and stage2["ok"]
            and stage3["ok"]
            and all(m.get("column_reversal_ok", True) for m in minors)
        )
        return {
            "minors": minors,
            "stage1": stage1,
            "stage2": stage2,
            "stage3": stage3,
            "ok": ok,
        }

    # -- fixed points ------------------------------------------------------

    def fixed_point_report(self) -> dict:
        """Vanishing of all cubics at the three diagonal fixed points plus the
        3x3 table of Jacobian minor values there, with the guard pairing."""
        points = []
        for var in dataset.FIXED_POINT_VARIABLES:
            pt = [0] * NVARS
            pt[var] = 1
            points.append(pt)
        vanishing = all(
            self.eqs[i].evaluate(pt) == 0 for i in range(84) for pt in points
        )
        table = []
        for rows, cols in dataset.MINOR_SELECTIONS:
            table.append([self.minor_value_at_point(rows, cols, pt) for pt in points])
        guards = [table[i][i] for i in range(3)]
        return {
            "vanishing_ok": vanishing,
            "points": points,
            "minor_values": table,
            "guards": guards,
            "guards_ok": all(v != 0 for v in guards),
        }

    # -- curve stage preparation ------------------------------------------

    def module_generators(self, polys: Iterable[Poly]) -> list[dict]:
        """All slot-monomial multiples of packed images of the given elements.

        The returned dictionaries generate, as a P-submodule of the free
        module, exactly the ideal the elements generate in the quotient ring.
        """
        out = []
        for g in polys:
            k = g.total_degree()
            vec = self.pack_standard(g)
            for key, img in self.x_images(vec, k).items():
                if np.any(img):
                    out.append(self.to_module_terms(img, k + len(key)))
        return out

    def module_generators_packed(self, packed: Iterable[tuple[np.ndarray, int]]) -> list[dict]:
        out = []
        for vec, k in packed:
            for key, img in self.x_images(vec, k).items():
                if np.any(img):
                    out.append(self.to_module_terms(img, k + len(key)))
        return out

    def module_dense_dimension(self, gens: Sequence[dict], k: int) -> int:
        """Quotient dimension in degree k by brute rank over all shifts."""
        total, offs = packed_layout(k)
        rows = []
        for g in gens:
            s0, mu0 = next(iter(g))
            d = SLOT_DEG[s0] + sum(mu0)
            if d > k:
                continue
            for shift in monomials_desc(NP_VARS, k - d):
                row = np.zeros(total, dtype=np.int64)
                for (s, mu), c in g.items():
                    m2 = tuple(a + b for a, b in zip(mu, shift))
                    row[offs[s] + pm_index(k - SLOT_DEG[s])[m2]] = c
                rows.append(row)
        if not rows:
            return total
        return total - mod_rank(np.stack(rows), self.p)

    def curve_generators_prime(self) -> list[Poly]:
        gens = dataset.curve_c_generators()
        if self.conjugate:
            from .poly import QW

            gens = [g.map_coeffs(lambda c: c.conjugate(), QW) for g in gens]
        return [g.to_prime_field(self.field) for g in gens]

    def curve_chain(
        self, max_degree: int = 80, crosscheck_max: int = 5, budget=None
    ) -> dict:
        """Hilbert polynomials of the curve section and its doubled structure.

        Three module Groebner bases: the curve ideal itself on top of the 84
        cubics; the hyperplane U0 alone; and U0 together with all pairwise
        products of the 18 curve quadrics.  The last two quotients sharing one
        Hilbert polynomial says the squared curve adds nothing asymptotically
        beyond the hyperplane, which is the multiplicity statement the chain
        needs.  Low degrees of every numerator are cross-checked against
        brute-force ranks.
        """
        from . import modgb

        gens_p = self.curve_generators_prime()
        u0, quads = gens_p[0], gens_p[1:]
        report: dict = {}

        def run_gb(mods):
            try:
                return modgb.buchberger_module(mods, self.p, max_degree, budget)
            except BudgetExceeded as exc:
                exc.partial = dict(report)
                raise

        mods_a = self.module_generators(gens_p)
        basis_a, stats_a = run_gb(mods_a)
        ha = modgb.quotient_hilbert(basis_a)
        report["curve"] = {
            "generators": len(mods_a),
            "stats": stats_a,
            "numerator": ha["numerator"],
            "hp_coeffs": ha["hp_coeffs"],
            "hf_low": ha["hf_low"],
        }

        mods_u = self.module_generators([u0])
        basis_u, stats_u = run_gb(mods_u)
        hu = modgb.quotient_hilbert(basis_u)
        report["hyperplane"] = {
            "generators": len(mods_u),
            "stats": stats_u,
            "hp_coeffs": hu["hp_coeffs"],
        }

        packs = [self.pack_standard(q) for q in quads]
        prods = []
        for i in range(len(quads)):
            for j in range(i, len(quads)):
                prods.append((self.multiply_packed(quads[i], packs[j], 2), 4))
        mods_b = mods_u + self.module_generators_packed(prods)
        basis_b, stats_b = run_gb(mods_b)
        hb = modgb.quotient_hilbert(basis_b)
        report["doubled"] = {
            "generators": len(mods_b),
            "stats": stats_b,
            "hp_coeffs": hb["hp_coeffs"],
        }

        crosscheck = {}
        for k in range(crosscheck_max + 1):
            crosscheck[k] = {
                "curve": (ha["hf_low"][k], self.module_dense_dimension(mods_a, k)),
                "doubled": (hb["hf_low"][k], self.module_dense_dimension(mods_b, k)),
            }
        report["crosscheck"] = crosscheck
        report["crosscheck_ok"] = all(
            v["curve"][0] == v["curve"][1] and v["doubled"][0] == v["doubled"][1]
            for v in crosscheck.values()
        )
        hp_a = ha["hp"]
        report["curve_hp_ok"] = (
            not hp_a.is_zero()
            and hp_a.degree() == 1
            and ha["hp_coeffs"][1] == 18
        )
        report["doubled_matches_hyperplane"] = hb["hp_coeffs"] == hu["hp_coeffs"]
        report["ok"] = (
            report["crosscheck_ok"]
            and report["curve_hp_ok"]
            and report["doubled_matches_hyperplane"]
        )
        return report


_ENGINES: dict = {}


def get_engine(field: PrimeField, conjugate: bool = False) -> QuotientEngine:
    key = (field.p, field.r, conjugate)
    if key not in _ENGINES:
        _ENGINES[key] = QuotientEngine(field, conjugate)
    return _ENGINES[key]

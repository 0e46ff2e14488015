"""Buchberger-style Groebner bases over prime fields, plus ideal handles.

The engine is the sequential textbook algorithm with Gebauer-Moller pair
pruning and sugar selection, deterministic given the input order.  It is
sized for this project's ideals; the heavy certification paths use the
structured engine in quotient.py instead and only fall back here.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .poly import (
    ExactDomain,
    Poly,
    PolyRing,
    PrimeDomain,
    grevlex_key,
    mono_deg,
    mono_div,
    mono_gcd,
    mono_lcm,
    mono_mul,
)


class RingMismatch(ValueError):
    pass


class CoefficientFieldUnsupported(ValueError):
    """Raised when buchberger is called over Q or Q(w) without the opt-in."""


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, stats: "GBStats", partial: list[Poly]):
        super().__init__(message)
        self.stats = stats
        self.partial = partial


@dataclass
class GBStats:
    s_pairs_considered: int = 0
    s_pairs_reduced: int = 0
    reductions_to_zero: int = 0
    basis_additions: int = 0
    wall_time_s: float = 0.0


@dataclass
class GroebnerBasis:
    generators: list[Poly]
    order: str = "grevlex"
    stats: GBStats = dc_field(default_factory=GBStats)
    truncated: bool = False
    degree_cap: int | None = None

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_monomial() for g in self.generators]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def _heap_key(mono):
    return (-sum(mono), tuple(reversed(mono)))


def normal_form(f: Poly, basis: "GroebnerBasis | Sequence[Poly]") -> Poly:
    """Full remainder of f modulo the basis: no monomial of the result is
    divisible by any basis leading monomial."""
    gens = list(basis.generators if isinstance(basis, GroebnerBasis) else basis)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return f
    for g in gens:
        if g.ring != f.ring:
            raise RingMismatch("normal_form across different rings")
    d = f.domain
    lts = [(g.leading_monomial(), g.leading_coeff(), g) for g in gens]
    work = dict(f.coeffs)
    heap = [_heap_key(m) for m in work]
    heapq.heapify(heap)
    seen = set(work)
    out: dict = {}
    while heap:
        key = heapq.heappop(heap)
        mono = tuple(reversed(key[1]))
        c = work.get(mono)
        if c is None or d.is_zero(c):
            continue
        reducer = None
        quot = None
        for lm, lc, g in lts:
            q = mono_div(mono, lm)
            if q is not None:
                reducer = (lc, g)
                quot = q
                break
        if reducer is None:
            out[mono] = c
            del work[mono]
            continue
        lc, g = reducer
        factor = d.mul(c, d.inv(lc))
        for gm, gc in g.coeffs.items():
            tm = mono_mul(gm, quot)
            delta = d.mul(factor, gc)
            cur = work.get(tm)
            if cur is None:
                nv = d.neg(delta)
            else:
                nv = d.sub(cur, delta)
            if d.is_zero(nv):
                work.pop(tm, None)
            else:
                work[tm] = nv
                if tm not in seen:
                    seen.add(tm)
                    heapq.heappush(heap, _heap_key(tm))
        # mono itself cancels by construction
        work.pop(mono, None)
    return Poly(f.ring, d, out)


def _interreduce(gens: list[Poly]) -> list[Poly]:
    gens = [g.monic() for g in gens if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(gens)):
            others = gens[:i] + gens[i + 1 :]
            r = normal_form(gens[i], others)
            if r.is_zero():
                gens.pop(i)
                changed = True
                break
            r = r.monic()
            if r != gens[i]:
                gens[i] = r
                changed = True
    gens.sort(key=lambda g: grevlex_key(g.leading_monomial()))
    return gens


def buchberger(
    gens: Iterable[Poly],
    order: str = "grevlex",
    degree_cap: int | None = None,
    allow_rational: bool = False,
    spair_budget: int | None = None,
    time_budget_s: float | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the given generators.

    degree_cap truncates the computation to S-pairs of lcm degree <= cap,
    which is sound for Hilbert queries in degrees <= cap when the input is
    homogeneous; the result is flagged truncated.
    """
    if order != "grevlex":
        raise ValueError("only grevlex is supported")
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("empty generator list")
    ring = gens[0].ring
    domain = gens[0].domain
    for g in gens:
        if g.ring != ring:
            raise RingMismatch("generators from different rings")
    if isinstance(domain, ExactDomain) and not allow_rational:
        raise CoefficientFieldUnsupported(
            "rational-coefficient Groebner runs need allow_rational=True"
        )
    if degree_cap is not None and not all(g.is_homogeneous() for g in gens):
        raise ValueError("degree_cap requires homogeneous input")

    t0 = time.monotonic()
    stats = GBStats()
    basis = _interreduce(list(gens))
    lt = [g.leading_monomial() for g in basis]
    sugar = [g.total_degree() for g in basis]

    # pair queue entries: (sugar, lcm heap-ordering key, i, j, lcm)
    pairs: list = []
    processed: set[tuple[int, int]] = set()

    def push_pairs(k: int):
        for i in range(k):
            lcm = mono_lcm(lt[i], lt[k])
            if mono_deg(mono_gcd(lt[i], lt[k])) == 0:
                processed.add((i, k))  # product criterion
                continue
            if degree_cap is not None and mono_deg(lcm) > degree_cap:
                processed.add((i, k))
                continue
            s = max(
                sugar[i] + mono_deg(lcm) - mono_deg(lt[i]),
                sugar[k] + mono_deg(lcm) - mono_deg(lt[k]),
            )
            heapq.heappush(pairs, (s, _heap_key(lcm), i, k, lcm))

    for k in range(len(basis)):
        push_pairs(k)

    truncated = degree_cap is not None
    while pairs:
        if spair_budget is not None and stats.s_pairs_reduced >= spair_budget:
            stats.wall_time_s = time.monotonic() - t0
            raise BudgetExceeded("S-pair budget exhausted", stats, basis)
        if time_budget_s is not None and time.monotonic() - t0 > time_budget_s:
            stats.wall_time_s = time.monotonic() - t0
            raise BudgetExceeded("time budget exhausted", stats, basis)
        _, _, i, j, lcm = heapq.heappop(pairs)
        if (i, j) in processed:
            continue
        processed.add((i, j))
        stats.s_pairs_considered += 1
        # chain criterion: some k with LT(k) | lcm and both side pairs done
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or mono_div(lcm, lt[k]) is None:
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in processed and b in processed and mono_lcm(lt[i], lt[k]) != lcm and mono_lcm(lt[j], lt[k]) != lcm:
                skip = True
                break
        if skip:
            continue
        d = basis[i].domain
        fi, fj = basis[i], basis[j]
        qi = mono_div(lcm, lt[i])
        qj = mono_div(lcm, lt[j])
        spoly = fi.mul_monomial(qi).scale(d.inv(fi.leading_coeff())) - fj.mul_monomial(
            qj
        ).scale(d.inv(fj.leading_coeff()))
        stats.s_pairs_reduced += 1
        r = normal_form(spoly, basis)
        if r.is_zero():
            stats.reductions_to_zero += 1
            continue
        r = r.monic()
        basis.append(r)
        lt.append(r.leading_monomial())
        sugar.append(
            max(
                sugar[i] + mono_deg(lcm) - mono_deg(lt[i]),
                sugar[j] + mono_deg(lcm) - mono_deg(lt[j]),
            )
        )
        stats.basis_additions += 1
        push_pairs(len(basis) - 1)

    basis = _interreduce(basis)
    stats.wall_time_s = time.monotonic() - t0
    return GroebnerBasis(basis, order, stats, truncated, degree_cap)


# ---------------------------------------------------------------------------
# ideal handles


class IdealHandle:
    """Generators plus a lazily cached Groebner basis."""

    def __init__(self, generators: Sequence[Poly], homogeneous: bool = True):
        gens = [g for g in generators if not g.is_zero()]
        if not gens:
            raise ValueError("ideal handle needs at least one nonzero generator")
        self.ring = gens[0].ring
        self.domain = gens[0].domain
        for g in gens:
            if g.ring != self.ring:
                raise RingMismatch("generators from different rings")
            if homogeneous and not g.is_homogeneous():
                raise ValueError("non-homogeneous generator with homogeneous flag set")
        self.generators = gens
        self.homogeneous = homogeneous
        self._gb: dict = {}

    def groebner(self, degree_cap: int | None = None, **kw) -> GroebnerBasis:
        key = degree_cap
        if key not in self._gb:
            self._gb[key] = buchberger(self.generators, degree_cap=degree_cap, **kw)
        return self._gb[key]


def ideal_sum(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    if I.ring != J.ring:
        raise RingMismatch("ideal_sum across rings")
    return IdealHandle(I.generators + J.generators, I.homogeneous and J.homogeneous)


def ideal_product(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    if I.ring != J.ring:
        raise RingMismatch("ideal_product across rings")
    seen = []
    for a in I.generators:
        for b in J.generators:
            prod = a * b
            if not prod.is_zero() and prod not in seen:
                seen.append(prod)
    if not seen:
        raise ValueError("product ideal is zero")
    return IdealHandle(seen, I.homogeneous and J.homogeneous)

"""Groebner bases for P-submodules of the packed free module.

P = k[U7, U8, U9] over a prime field.  The quotient by the 84 cubics is a
free P-module on 36 slot monomials, so any further ideal (curve generators,
hyperplane sections, products) becomes a P-submodule once it is closed under
the slot multiplication operators.  This module computes Groebner bases of
such submodules and Hilbert data of their quotients.

A module element is a dict {(slot, mu): coeff} with mu a degree tuple in the
three base variables.  Terms compare by the graded reverse lexicographic
order of the corresponding ambient 10-variable monomial, which is
multiplication-compatible, so Buchberger's algorithm applies verbatim.  Two
module-specific points: S-pairs exist only between leading terms in the same
slot, and the product criterion is not valid for modules, so only the chain
criterion prunes pairs.
"""

from __future__ import annotations

import heapq
import time
from functools import lru_cache
from typing import Iterable, Sequence

from .hilbert import (
    HilbertNumerator,
    hilbert_function_from_numerator,
    hilbert_numerator,
    hilbert_polynomial,
    minimalize,
)
from .poly import grevlex_key
from .quotient import NP_VARS, NSLOTS, SLOT_DEG, SLOT_EXPS


class DegreeOverflow(RuntimeError):
    """The computation needed S-pairs beyond the configured degree ceiling."""


@lru_cache(maxsize=1 << 20)
def term_key(slot: int, mu: tuple) -> tuple:
    return grevlex_key(SLOT_EXPS[slot] + mu)


def term_degree(term) -> int:
    slot, mu = term
    return SLOT_DEG[slot] + sum(mu)


def leading_term(f: dict):
    return max(f, key=lambda t: term_key(*t))


def element_degree(f: dict) -> int:
    return term_degree(next(iter(f)))


def _submul(f: dict, g: dict, c: int, shift, p: int) -> None:
    """f -= c * x^shift * g, in place."""
    if shift == (0, 0, 0):
        for t, gc in g.items():
            v = (f.get(t, 0) - c * gc) % p
            if v:
                f[t] = v
            elif t in f:
                del f[t]
    else:
        s0, s1, s2 = shift
        for (s, mu), gc in g.items():
            t2 = (s, (mu[0] + s0, mu[1] + s1, mu[2] + s2))
            v = (f.get(t2, 0) - c * gc) % p
            if v:
                f[t2] = v
            elif t2 in f:
                del f[t2]


def head_reduce(f: dict, slot_basis: dict, p: int):
    """Reduce the head of f until irreducible or zero.  Returns (f, lt)."""
    while f:
        lt = leading_term(f)
        s, mu = lt
        hit = None
        for bmu, g in slot_basis.get(s, ()):
            if bmu[0] <= mu[0] and bmu[1] <= mu[1] and bmu[2] <= mu[2]:
                hit = (bmu, g)
                break
        if hit is None:
            return f, lt
        bmu, g = hit
        _submul(f, g, f[lt], (mu[0] - bmu[0], mu[1] - bmu[1], mu[2] - bmu[2]), p)
    return f, None


def buchberger_module(
    gens: Iterable[dict], p: int, max_degree: int = 80, budget=None
):
    """Groebner basis of the submodule generated by homogeneous elements.

    Returns (basis, stats) with basis a list of (leading_term, monic_dict).
    Generators and S-pairs are processed in one ascending-degree schedule, so
    every reduction happens against a basis that is already complete below
    the current degree.  An optional Budget is consulted once per scheduled
    item and charged per S-pair; crossing a cap raises BudgetExceeded.
    """
    t0 = time.time()
    gen_list = list(gens)
    order = sorted((element_degree(g), i) for i, g in enumerate(gen_list) if g)
    basis: list[tuple[tuple, dict]] = []
    slot_basis: dict[int, list] = {}
    pairs: list = []
    done: set = set()
    tick = 0
    stats = {"pairs": 0, "zero_reductions": 0, "additions": 0, "skipped": 0}

    def add_element(g: dict, lt) -> None:
        nonlocal tick
        idx = len(basis)
        basis.append((lt, g))
        slot_basis.setdefault(lt[0], []).append((lt[1], g))
        for i, (lt2, _) in enumerate(basis[:idx]):
            if lt2[0] != lt[0]:
                continue
            lcm = tuple(max(a, b) for a, b in zip(lt[1], lt2[1]))
            tick += 1
            heapq.heappush(pairs, (SLOT_DEG[lt[0]] + sum(lcm), tick, i, idx))
        stats["additions"] += 1

    def absorb(f: dict) -> None:
        f, lt = head_reduce(f, slot_basis, p)
        if not f:
            stats["zero_reductions"] += 1
            return
        inv = pow(f[lt], p - 2, p)
        if inv != 1:
            f = {t: c * inv % p for t, c in f.items()}
        add_element(f, lt)

    gi = 0
    seen = set()
    while gi < len(order) or pairs:
        if budget is not None:
            budget.check_time()
        if pairs and (gi >= len(order) or pairs[0][0] <= order[gi][0]):
            deg, _, i, j = heapq.heappop(pairs)
            if deg > max_degree:
                raise DegreeOverflow(f"S-pair degree {deg} > ceiling {max_degree}")
            stats["pairs"] += 1
            if budget is not None:
                budget.spend_pair()
            (si, mi), gi_ = basis[i]
            (sj, mj), gj_ = basis[j]
            lcm = tuple(max(a, b) for a, b in zip(mi, mj))
            skip = False
            for k, ((sk, mk), _) in enumerate(basis):
                if k == i or k == j or sk != si:
                    continue
                if (
                    mk[0] <= lcm[0]
                    and mk[1] <= lcm[1]
                    and mk[2] <= lcm[2]
                    and (min(i, k), max(i, k)) in done
                    and (min(j, k), max(j, k)) in done
                ):
                    skip = True
                    break
            done.add((i, j))
            if skip:
                stats["skipped"] += 1
                continue
            f: dict = {}
            _submul(f, gi_, p - 1, tuple(a - b for a, b in zip(lcm, mi)), p)
            _submul(f, gj_, 1, tuple(a - b for a, b in zip(lcm, mj)), p)
            absorb(f)
        else:
            _, idx = order[gi]
            gi += 1
            g = gen_list[idx]
            fp = frozenset(g.items())
            if fp in seen:
                continue
            seen.add(fp)
            absorb(dict(g))
    stats["seconds"] = round(time.time() - t0, 3)
    stats["basis_size"] = len(basis)
    return basis, stats


def minimal_leading_terms(basis: Sequence[tuple]) -> dict[int, list]:
    """Minimal generators of the leading-term module, grouped by slot."""
    per_slot: dict[int, list] = {}
    for (slot, mu), _ in basis:
        per_slot.setdefault(slot, []).append(mu)
    return {s: minimalize(mus) for s, mus in per_slot.items()}


def quotient_numerator(basis: Sequence[tuple]) -> HilbertNumerator:
    """Hilbert numerator (over the 3-variable base ring) of free/submodule."""
    lead = minimal_leading_terms(basis)
    acc: list[int] = []

    def add_shifted(coeffs, shift):
        need = shift + len(coeffs)
        while len(acc) < need:
            acc.append(0)
        for i, c in enumerate(coeffs):
            acc[shift + i] += c

    for s in range(NSLOTS):
        num = hilbert_numerator(lead.get(s, []), NP_VARS)
        add_shifted(list(num.coeffs), SLOT_DEG[s])
    while acc and acc[-1] == 0:
        acc.pop()
    return HilbertNumerator(tuple(acc), NP_VARS)


def quotient_hilbert(basis: Sequence[tuple]) -> dict:
    """Hilbert numerator, polynomial, and a low-degree function table."""
    num = quotient_numerator(basis)
    hp = hilbert_polynomial(num)
    table = {k: hilbert_function_from_numerator(num, k) for k in range(9)}
    return {
        "numerator": list(num.coeffs),
        "hp": hp,
        "hp_coeffs": hp.as_integer_coeffs() if not hp.is_zero() else [],
        "hf_low": table,
    }

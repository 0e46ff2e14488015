"""Hilbert series of monomial ideals: numerator, polynomial, counting oracle.

The Hilbert series of R/I (R a polynomial ring in n variables, I a monomial
ideal) is written N(t)/(1-t)^n.  ``hilbert_numerator`` computes N by the
pivot recursion N(I) = N(I + <x>) + t*N(I : x); ``hilbert_polynomial``
cancels (1-t) factors and expands binomials to get HP(k) and its validity
threshold; ``hilbert_function_oracle`` counts standard monomials directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Monomial = tuple[int, ...]


class NotMinimal(ValueError):
    """Internal inconsistency: a non-minimal generator survived reduction."""


class EnumerationTooLarge(ValueError):
    """The brute-force oracle would enumerate more monomials than budgeted."""


@dataclass(frozen=True)
class HilbertNumerator:
    """N(t) with HS_{R/I} = N(t)/(1-t)^n; coeffs[i] is the t^i coefficient."""

    coeffs: tuple[int, ...]
    n: int

    def at_one(self) -> int:
        return sum(self.coeffs)

    def degree(self) -> int:
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1


@dataclass(frozen=True)
class HilbertPolynomialRepr:
    """HP(k) = sum coeffs[i]*k^i; HF(k) = HP(k) for all k >= k0.

    ``coeffs`` is empty when HP is identically zero; in that case
    ``artinian_dimension`` carries the total dimension of the quotient.
    """

    coeffs: tuple[Fraction, ...]
    k0: int
    artinian_dimension: int | None = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def at(self, k: int) -> Fraction:
        acc = Fraction(0)
        for i, c in enumerate(self.coeffs):
            acc += c * k**i
        return acc

    def as_integer_coeffs(self) -> list[int] | None:
        """Coefficient list as ints when all are integral, else None."""
        if all(c.denominator == 1 for c in self.coeffs):
            return [int(c) for c in self.coeffs]
        return None


# ---------------------------------------------------------------------------
# numerator


def minimalize(gens: Iterable[Monomial]) -> list[Monomial]:
    """Remove duplicates and any generator divisible by another."""
    uniq = sorted(set(gens), key=lambda m: (sum(m), m))
    out: list[Monomial] = []
    for m in uniq:
        if not any(all(x >= y for x, y in zip(m, g)) for g in out):
            out.append(m)
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int], shift: int = 0, scale: int = 1) -> list[int]:
    out = list(a) + [0] * max(0, shift + len(b) - len(a))
    for j, y in enumerate(b):
        out[shift + j] += scale * y
    return out


def _one_minus_t_pow(d: int) -> list[int]:
    out = [0] * (d + 1)
    out[0] = 1
    out[d] = -1
    return out


def _numerator(gens: list[Monomial], pivot_strategy: str, cache: dict) -> list[int]:
    if not gens:
        return [1]
    key = tuple(gens)
    hit = cache.get(key)
    if hit is not None:
        return hit

    pures: list[tuple[int, int]] = []  # (variable, exponent)
    mixed: list[Monomial] = []
    trivial = False
    for g in gens:
        support = [(i, e) for i, e in enumerate(g) if e]
        if not support:
            trivial = True
            break
        if len(support) == 1:
            pures.append(support[0])
        else:
            mixed.append(g)

    if trivial:
        result = [0]
    elif not mixed:
        result = [1]
        for _, e in pures:
            result = _poly_mul(result, _one_minus_t_pow(e))
    elif len(mixed) == 1:
        m = mixed[0]
        head = [1]
        tail = [1]
        for var, e in pures:
            head = _poly_mul(head, _one_minus_t_pow(e))
            rem = e - min(e, m[var])
            if rem:
                tail = _poly_mul(tail, _one_minus_t_pow(rem))
        result = _poly_add(head, tail, shift=sum(m), scale=-1)
    else:
        n = len(gens[0])
        if pivot_strategy == "frequent":
            counts = [0] * n
            for g in mixed:
                for i, e in enumerate(g):
                    if e:
                        counts[i] += 1
            pivot = max(range(n), key=lambda i: (counts[i], -i))
        elif pivot_strategy == "first":
            pivot = next(i for i in range(n) if any(g[i] for g in mixed))
        else:
            raise ValueError(f"unknown pivot strategy {pivot_strategy!r}")

        sum_gens = minimalize(
            [tuple(1 if i == pivot else 0 for i in range(n))]
            + [g for g in gens if g[pivot] == 0]
        )
        colon_gens = minimalize(
            [
                tuple(e - 1 if i == pivot and e else e for i, e in enumerate(g))
                for g in gens
            ]
        )
        left = _numerator(sum_gens, pivot_strategy, cache)
        right = _numerator(colon_gens, pivot_strategy, cache)
        result = _poly_add(left, right, shift=1)

    while len(result) > 1 and result[-1] == 0:
        result.pop()
    cache[key] = result
    return result


def hilbert_numerator(
    lead_ideal: Iterable[Monomial], n: int, pivot_strategy: str = "frequent"
) -> HilbertNumerator:
    """Numerator N(t) of HS_{R/I} for the monomial ideal I, R in n variables."""
    gens = [tuple(m) for m in lead_ideal]
    for g in gens:
        if len(g) != n:
            raise ValueError(f"monomial {g} does not have {n} exponents")
        if any(e < 0 for e in g):
            raise ValueError(f"negative exponent in {g}")
    gens = minimalize(gens)
    for a in gens:
        for b in gens:
            if a is not b and all(x >= y for x, y in zip(a, b)):
                raise NotMinimal(f"{a} divisible by {b} after minimalization")
    coeffs = _numerator(gens, pivot_strategy, {})
    return HilbertNumerator(tuple(coeffs), n)


# ---------------------------------------------------------------------------
# Hilbert polynomial extraction


def _divide_by_one_minus_t(coeffs: list[int]) -> list[int]:
    # N(t) = (1-t)*Q(t) requires N(1) = 0; Q is the prefix-sum sequence.
    if sum(coeffs) != 0:
        raise ValueError("numerator does not vanish at t=1")
    out = []
    acc = 0
    for c in coeffs[:-1]:
        acc += c
        out.append(acc)
    return out if out else [0]


def _binomial_in_k(shift: int, d: int) -> list[Fraction]:
    """binom(k + shift, d) expanded as coefficients of powers of k."""
    if d == 0:
        return [Fraction(1)]
    poly = [Fraction(1)]
    for j in range(d):
        # multiply by (k + shift - j)
        const = Fraction(shift - j)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c * const
            nxt[i + 1] += c
        poly = nxt
    fact = Fraction(math.factorial(d))
    return [c / fact for c in poly]


def hilbert_polynomial(num: HilbertNumerator) -> HilbertPolynomialRepr:
    """Cancel (1-t) factors and expand HP(k); see HilbertPolynomialRepr."""
    coeffs = list(num.coeffs)
    delta = num.n
    if not any(coeffs):
        return HilbertPolynomialRepr((), 0, 0)
    while delta > 0 and sum(coeffs) == 0:
        coeffs = _divide_by_one_minus_t(coeffs)
        delta -= 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    deg_n = len(coeffs) - 1
    if delta == 0:
        # Artinian quotient: HP identically zero, finite total dimension.
        return HilbertPolynomialRepr((), max(deg_n + 1, 0), sum(coeffs))
    acc = [Fraction(0)] * delta
    for i, c in enumerate(coeffs):
        if not c:
            continue
        term = _binomial_in_k(delta - 1 - i, delta - 1)
        for j, t in enumerate(term):
            acc[j] += c * t
    while len(acc) > 1 and acc[-1] == 0:
        acc.pop()
    if len(acc) == 1 and acc[0] == 0:
        acc = []
    k0 = max(deg_n - delta + 1, 0)
    return HilbertPolynomialRepr(tuple(acc), k0)


def hilbert_function_from_numerator(num: HilbertNumerator, k: int) -> int:
    """Exact HF(k) for any k >= 0 by binomial expansion of the series."""
    if k < 0:
        return 0
    total = 0
    for i, c in enumerate(num.coeffs):
        if c and k - i >= 0:
            total += c * math.comb(k - i + num.n - 1, num.n - 1)
    return total


# ---------------------------------------------------------------------------
# brute-force oracle


def _degree_monomials(n: int, k: int):
    if n == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _degree_monomials(n - 1, k - first):
            yield (first,) + rest


def hilbert_function_oracle(
    lead_ideal: Iterable[Monomial], n: int, k: int, budget: int = 5_000_000
) -> int:
    """Count degree-k monomials divisible by no generator, by enumeration."""
    if k < 0:
        return 0
    count_all = math.comb(k + n - 1, n - 1)
    if count_all > budget:
        raise EnumerationTooLarge(f"{count_all} monomials exceeds budget {budget}")
    gens = minimalize([tuple(m) for m in lead_ideal])
    if any(sum(g) == 0 for g in gens):
        return 0
    count = 0
    for mono in _degree_monomials(n, k):
        for g in gens:
            for x, y in zip(mono, g):
                if x < y:
                    break
            else:
                break  # divisible by g
        else:
            count += 1
    return count

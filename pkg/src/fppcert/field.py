"""Scalar arithmetic: the quadratic field Q(w) with w^2 = -7, and prime fields GF(p).

Everything downstream works over one of two coefficient domains:

* ``QuadExt``: exact elements a + b*w with a, b rational and w^2 = -7.
* ``PrimeField``: integers mod an odd prime p where -7 is a quadratic
  residue, with a chosen square root ``r`` standing in for w.

``MixedScalar`` is a transcription aid only: it models the bigger field
Q(i, sqrt(7)) so printed coefficients that mix i and sqrt(7) can be entered
verbatim and then collapsed to Q(w) with an asserted i-power bookkeeping.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RatLike = Union[int, Fraction]


class DenominatorNotInvertible(ZeroDivisionError):
    """A rational coefficient has a denominator divisible by the modulus."""


class QuadExt:
    """An element re + im*w of Q(w), w^2 = -7, with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RatLike = 0, im: RatLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(
            self.re * other.re - 7 * self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        return QuadExt(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadExt(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure -------------------------------------------------------

    def conjugate(self) -> "QuadExt":
        """Galois conjugate, w -> -w."""
        return QuadExt(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm re^2 + 7*im^2 (always >= 0, zero only at zero)."""
        return self.re * self.re + 7 * self.im * self.im

    def is_rational(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QuadExt({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*w"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*w"


def _coerce(x):
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadExt(x)
    return NotImplemented


QW_ZERO = QuadExt(0)
QW_ONE = QuadExt(1)
OMEGA = QuadExt(0, 1)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond any prime we will see
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def find_sqrt_minus7(p: int) -> int:
    """Smallest r in [0, p) with r*r = -7 mod p, or raise ValueError."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = (-7) % p
    for r in range(p):
        if r * r % p == target:
            return r
    raise ValueError(f"-7 is not a quadratic residue mod {p}")


class PrimeField:
    """GF(p) with a designated square root of -7 standing in for w.

    Elements are plain ints in [0, p); this class carries the modulus,
    the residue ``r``, and the reduction map from Q(w).
    """

    __slots__ = ("p", "r")

    def __init__(self, p: int, r: int | None = None):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        if p == 2 or p == 7:
            raise ValueError(f"modulus {p} divides 14; the dataset needs 2 and 7 invertible")
        if r is None:
            r = find_sqrt_minus7(p)
        else:
            r %= p
            if r * r % p != (-7) % p:
                raise ValueError(f"{r}^2 is not -7 mod {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "r", r)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeField is immutable")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 mod {self.p}")
        return pow(a, self.p - 2, self.p)

    def reduce(self, x: QuadExt | int | Fraction) -> int:
        """Image of x under the ring map Q(w) -> GF(p), w -> r.

        Raises DenominatorNotInvertible when a denominator of x is a
        multiple of p.
        """
        if not isinstance(x, QuadExt):
            x = QuadExt(x)
        p = self.p
        out = 0
        for part, mult in ((x.re, 1), (x.im, self.r)):
            num = part.numerator % p
            den = part.denominator % p
            if num and den == 0:
                raise DenominatorNotInvertible(f"denominator divisible by {p}")
            if num:
                out += num * pow(den, p - 2, p) % p * mult
        return out % p

    def conjugate_field(self) -> "PrimeField":
        """Same p with the other square root, matching w -> -w."""
        return PrimeField(self.p, (-self.r) % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and (self.p, self.r) == (other.p, other.r)

    def __hash__(self):
        return hash((self.p, self.r))

    def __repr__(self):
        return f"PrimeField(p={self.p}, r={self.r})"


class MixedScalar:
    """Element a + b*i + c*s + d*i*s of Q(i, sqrt(7)), s = sqrt(7).

    Used only while entering printed tables whose coefficients mix i and
    sqrt(7); never leaks into the main pipeline.  ``as_omega`` collapses a
    value of the form i^k * (x + y*w) to (k, QuadExt(x, y)) and refuses
    anything else, so a mistyped table cell fails loudly.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)

    @classmethod
    def from_quadext(cls, q: QuadExt) -> "MixedScalar":
        return cls(q.re, 0, 0, q.im)

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return MixedScalar(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return MixedScalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # (a + bi + cs + dis)(a' + b'i + c's + d'is), i^2=-1, s^2=7
        return MixedScalar(
            a1 * a2 - b1 * b2 + 7 * (c1 * c2 - d1 * d2),
            a1 * b2 + b1 * a2 + 7 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 - (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def conj_i(self) -> "MixedScalar":
        return MixedScalar(self.a, -self.b, self.c, -self.d)

    def conj_s(self) -> "MixedScalar":
        return MixedScalar(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "MixedScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt(7))")
        partial = self.conj_i() * self.conj_s() * self.conj_i().conj_s()
        norm = self * partial
        if norm.b or norm.c or norm.d:
            raise ArithmeticError("field norm failed to be rational")
        return partial * MixedScalar(Fraction(1) / norm.a)

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not needed for table entry")
        out = MixedScalar(1)
        for _ in range(n):
            out = out * self
        return out

    def _co(self, x):
        if isinstance(x, MixedScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return MixedScalar(x)
        if isinstance(x, QuadExt):
            return MixedScalar.from_quadext(x)
        return NotImplemented

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def __eq__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def as_omega(self) -> tuple[int, QuadExt]:
        """Write self as i^k * (x + y*w) with k in {0, 1}.

        Returns (k, QuadExt(x, y)).  Raises ValueError when self is not of
        either shape, which catches transcription slips immediately.
        """
        if self.b == 0 and self.c == 0:
            return 0, QuadExt(self.a, self.d)
        if self.a == 0 and self.d == 0:
            # i*(x + y*is) = x*i - y*s, so x = b, y = -c
            return 1, QuadExt(self.b, -self.c)
        raise ValueError(f"not of the form i^k*(x+y*w): {self!r}")

    def __repr__(self):
        return f"MixedScalar({self.a}, {self.b}, {self.c}, {self.d})"


MS_I = MixedScalar(0, 1, 0, 0)
MS_S7 = MixedScalar(0, 0, 1, 0)


def reduce_to_prime_field(x: QuadExt | int | Fraction, field: PrimeField) -> int:
    """Ring homomorphism Q(w) -> GF(p) with w -> field.r."""
    return field.reduce(x)

"""Sparse multivariate polynomials over exact or prime-field coefficients.

Monomials are exponent tuples; the term order everywhere is graded reverse
lexicographic with the ring's first variable largest.  Coefficient handling
is routed through a tiny Domain object so the same machinery serves Q, Q(w)
and GF(p).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .field import MixedScalar, PrimeField, QuadExt

Monomial = tuple[int, ...]


# ---------------------------------------------------------------------------
# coefficient domains


class ExactDomain:
    """Coefficients supporting native +, -, *, / and truthiness."""

    def __init__(self, zero, one, coerce):
        self.zero = zero
        self.one = one
        self._coerce = coerce

    def coerce(self, x):
        return self._coerce(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return self.one / a

    def is_zero(self, a):
        return not a


class PrimeDomain:
    """Integers mod p; elements are ints in [0, p)."""

    def __init__(self, field: PrimeField):
        self.field = field
        self.p = field.p
        self.zero = 0
        self.one = 1 % field.p

    def __eq__(self, other):
        return isinstance(other, PrimeDomain) and other.field == self.field

    def __hash__(self):
        return hash(("PrimeDomain", self.field.p, self.field.r))

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        return self.field.reduce(x)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return self.field.inv(a)

    def is_zero(self, a):
        return a % self.p == 0


QQ = ExactDomain(Fraction(0), Fraction(1), Fraction)
QW = ExactDomain(QuadExt(0), QuadExt(1), lambda x: x if isinstance(x, QuadExt) else QuadExt(x))
QIS = ExactDomain(
    MixedScalar(0),
    MixedScalar(1),
    lambda x: x if isinstance(x, MixedScalar) else MixedScalar(x),
)


# ---------------------------------------------------------------------------
# monomial helpers


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))

def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b as a monomial, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)

def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))

def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))

def mono_deg(a: Monomial) -> int:
    return sum(a)


def grevlex_key(e: Monomial):
    """Sort key: max() over monomials picks the grevlex-largest."""
    return (sum(e), tuple(-x for x in reversed(e)))


class PolyRing:
    """A polynomial ring presentation: ordered variable names."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        self.n = len(self.names)
        self.index = {nm: i for i, nm in enumerate(self.names)}
        self.zero_mono: Monomial = (0,) * self.n

    def variable(self, i: int, domain=QW) -> "Poly":
        e = [0] * self.n
        e[i] = 1
        return Poly(self, domain, {tuple(e): domain.one})

    def gens(self, domain=QW) -> list["Poly"]:
        return [self.variable(i, domain) for i in range(self.n)]

    def constant(self, c, domain=QW) -> "Poly":
        c = domain.coerce(c)
        if domain.is_zero(c):
            return Poly(self, domain, {})
        return Poly(self, domain, {self.zero_mono: c})

    def monomial(self, e: Monomial, c=None, domain=QW) -> "Poly":
        c = domain.one if c is None else domain.coerce(c)
        return Poly(self, domain, {tuple(e): c})

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"


class Poly:
    """Sparse polynomial: dict from exponent tuple to nonzero coefficient."""

    __slots__ = ("ring", "domain", "coeffs")

    def __init__(self, ring: PolyRing, domain, coeffs: dict):
        self.ring = ring
        self.domain = domain
        self.coeffs = {m: c for m, c in coeffs.items() if not domain.is_zero(c)}

    # -- basics ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def total_degree(self) -> int:
        """Degree of the polynomial, -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(m) for m in self.coeffs)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.coeffs}
        return len(degs) <= 1

    def num_terms(self) -> int:
        return len(self.coeffs)

    def leading_monomial(self) -> Monomial:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.coeffs, key=grevlex_key)

    def leading_coeff(self):
        return self.coeffs[self.leading_monomial()]

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        """Terms in descending grevlex order."""
        return [(m, self.coeffs[m]) for m in sorted(self.coeffs, key=grevlex_key, reverse=True)]

    # -- arithmetic ------------------------------------------------------

    def _assert_compatible(self, other: "Poly"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("mixed rings")
        if self.domain is not other.domain and self.domain != other.domain:
            raise ValueError("mixed coefficient domains")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.constant(other, self.domain)
        self._assert_compatible(other)
        d = self.domain
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            if m in out:
                s = d.add(out[m], c)
                if d.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Poly(self.ring, d, out)

    __radd__ = __add__

    def __neg__(self):
        d = self.domain
        return Poly(self.ring, d, {m: d.neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.constant(other, self.domain)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._assert_compatible(other)
        d = self.domain
        out: dict = {}
        small, big = (self.coeffs, other.coeffs)
        if len(small) > len(big):
            small, big = big, small
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                m = mono_mul(m1, m2)
                prod = d.mul(c1, c2)
                if m in out:
                    s = d.add(out[m], prod)
                    if d.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                elif not d.is_zero(prod):
                    out[m] = prod
        return Poly(self.ring, d, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        d = self.domain
        c = d.coerce(c)
        if d.is_zero(c):
            return Poly(self.ring, d, {})
        return Poly(self.ring, d, {m: d.mul(cc, c) for m, cc in self.coeffs.items()})

    def mul_monomial(self, e: Monomial) -> "Poly":
        return Poly(self.ring, self.domain, {mono_mul(m, e): c for m, c in self.coeffs.items()})

    def __truediv__(self, other):
        d = self.domain
        if isinstance(other, Poly):
            if other.total_degree() != 0:
                raise ValueError("division only by nonzero constants")
            other = other.coeffs[other.ring.zero_mono]
        return self.scale(d.inv(d.coerce(other)))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self.ring.constant(1, self.domain)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.scale(self.domain.inv(self.leading_coeff()))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.ring.names, tuple(sorted(self.coeffs.items(), key=lambda t: t[0]))))

    # -- calculus and evaluation -----------------------------------------

    def derivative(self, i: int) -> "Poly":
        d = self.domain
        out: dict = {}
        for m, c in self.coeffs.items():
            if m[i] == 0:
                continue
            e = list(m)
            k = e[i]
            e[i] -= 1
            prod = d.mul(c, d.coerce(k))
            key = tuple(e)
            if key in out:
                prod = d.add(out[key], prod)
            if not d.is_zero(prod):
                out[key] = prod
            elif key in out:
                del out[key]
        return Poly(self.ring, d, out)

    def evaluate(self, point: Sequence):
        """Evaluate at a full point; scalars must live in the domain."""
        d = self.domain
        vals = [d.coerce(v) for v in point]
        acc = d.zero
        for m, c in self.coeffs.items():
            term = c
            for i, e in enumerate(m):
                for _ in range(e):
                    term = d.mul(term, vals[i])
            acc = d.add(acc, term)
        return acc

    def substitute(self, images: Mapping[int, "Poly"]) -> "Poly":
        """Replace variable i by images[i]; unmentioned variables persist."""
        d = self.domain
        ring = self.ring
        pow_cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, e: int) -> Poly:
            key = (i, e)
            if key not in pow_cache:
                pow_cache[key] = images[i] ** e
            return pow_cache[key]

        total = Poly(ring, d, {})
        for m, c in self.coeffs.items():
            rest = [0] * ring.n
            parts: list[Poly] = []
            for i, e in enumerate(m):
                if e and i in images:
                    parts.append(power(i, e))
                else:
                    rest[i] = e
            term = ring.monomial(tuple(rest), c, d)
            for part in parts:
                term = term * part
            total = total + term
        return total

    def map_coeffs(self, fn: Callable, domain) -> "Poly":
        return Poly(self.ring, domain, {m: fn(c) for m, c in self.coeffs.items()})

    def to_prime_field(self, field: PrimeField) -> "Poly":
        dom = PrimeDomain(field)
        return self.map_coeffs(field.reduce, dom)

    # -- display ---------------------------------------------------------

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for m, c in self.sorted_terms()[:8]:
            mono = "*".join(
                f"{self.ring.names[i]}^{e}" if e > 1 else self.ring.names[i]
                for i, e in enumerate(m)
                if e
            )
            bits.append(f"({c})*{mono}" if mono else f"({c})")
        tail = " + ..." if len(self.coeffs) > 8 else ""
        return " + ".join(bits) + tail


def substitute(f: Poly, images: Sequence[Poly]) -> Poly:
    """Replace every variable by its image (one image per ring variable)."""
    if len(images) != f.ring.n:
        raise ValueError(f"need {f.ring.n} images, got {len(images)}")
    return f.substitute({i: g for i, g in enumerate(images)})


def jacobian(polys: Sequence[Poly], var_indices: Sequence[int] | None = None) -> list[list[Poly]]:
    """Matrix of partials, rows = polynomials, columns = variables."""
    if not polys:
        return []
    if var_indices is None:
        var_indices = range(polys[0].ring.n)
    return [[f.derivative(i) for i in var_indices] for f in polys]


def poly_exact_div(f: Poly, g: Poly) -> Poly:
    """Quotient f/g when g divides f exactly; raises ValueError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    d = f.domain
    ring = f.ring
    quot: dict = {}
    rem = f
    lg = g.leading_monomial()
    lc_inv = d.inv(g.leading_coeff())
    while rem.coeffs:
        lm = rem.leading_monomial()
        q_mono = mono_div(lm, lg)
        if q_mono is None:
            raise ValueError("inexact polynomial division")
        c = d.mul(rem.coeffs[lm], lc_inv)
        quot[q_mono] = c
        rem = rem - g.mul_monomial(q_mono).scale(c)
    return Poly(ring, d, quot)


# ---------------------------------------------------------------------------
# expression parsing


class ExprError(ValueError):
    pass


_TOKEN_CHARS = set("+-*/^() \t\n")


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t\n":
            i += 1
            continue
        if ch == "*" and i + 1 < len(text) and text[i + 1] == "*":
            tokens.append("^")
            i += 2
            continue
        if ch in "+-*/^()":
            tokens.append(ch)
            i += 1
            continue
        j = i
        while j < len(text) and text[j] not in _TOKEN_CHARS:
            j += 1
        tokens.append(text[i:j])
        i = j
    return tokens


def parse_expr(text: str, ring: PolyRing, domain=QW, names: Mapping[str, Poly] | None = None) -> Poly:
    """Parse an arithmetic expression into a Poly.

    Ring variables resolve by name; extra symbols (like ``w``) come from
    ``names``.  Division is accepted for constant divisors only, which is
    all the printed data ever needs.
    """
    symbols: dict[str, Poly] = {}
    for i, nm in enumerate(ring.names):
        symbols[nm] = ring.variable(i, domain)
    if domain is QW:
        symbols.setdefault("w", ring.constant(QuadExt(0, 1), QW))
    elif domain is QIS:
        symbols.setdefault("i", ring.constant(MixedScalar(0, 1), QIS))
        symbols.setdefault("s7", ring.constant(MixedScalar(0, 0, 1), QIS))
        symbols.setdefault("w", ring.constant(MixedScalar(0, 0, 0, 1), QIS))
    if names:
        symbols.update(names)

    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(tokens):
            raise ExprError(f"unexpected end of input in {text!r}")
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise ExprError(f"expected {expected!r}, got {tok!r} in {text!r}")
        pos += 1
        return tok

    def parse_sum() -> Poly:
        node = parse_product()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_product()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_product() -> Poly:
        node = parse_power()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_power()
            node = node * rhs if op == "*" else node / rhs
        return node

    def parse_power() -> Poly:
        base = parse_atom()
        while peek() == "^":
            take()
            exp_tok = take()
            neg = False
            if exp_tok == "-":
                neg = True
                exp_tok = take()
            if not exp_tok.isdigit():
                raise ExprError(f"bad exponent {exp_tok!r} in {text!r}")
            if neg:
                raise ExprError("negative exponents unsupported")
            base = base ** int(exp_tok)
        return base

    def parse_atom() -> Poly:
        tok = peek()
        if tok == "(":
            take()
            node = parse_sum()
            take(")")
            return node
        if tok == "-":
            take()
            return -parse_power()
        if tok == "+":
            take()
            return parse_power()
        tok = take()
        if tok is None:
            raise ExprError(f"unexpected end of input in {text!r}")
        if tok.isdigit():
            return ring.constant(int(tok), domain)
        if tok in symbols:
            p = symbols[tok]
            if p.domain is not domain:
                raise ExprError(f"symbol {tok!r} has wrong domain")
            return p
        raise ExprError(f"unknown symbol {tok!r} in {text!r}")

    result = parse_sum()
    if pos != len(tokens):
        raise ExprError(f"trailing tokens {tokens[pos:]} in {text!r}")
    return result

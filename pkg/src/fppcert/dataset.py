"""Embedded dataset for the 84-cubic surface model in P^9.

Everything downstream certifies facts about one fixed projective surface: the
common zero locus in P^9 of 84 cubic forms over Q(w), w^2 = -7, carrying an
order-21 group action.  This module holds the literal data: the base cubics,
the group action (a diagonal order-7 part given by a weight vector, and an
order-3 coordinate permutation), the expansion of the base list to all 84
equations, the 19 generators of a distinguished curve ideal, the row/column
selections for three 7x7 Jacobian minors, the fixed points of the diagonal
action, and a canonical text serialization with a checksum.

Only exact arithmetic over Q(w) happens here; modular reduction is done by
the callers that need it.
"""

from __future__ import annotations

import hashlib
from importlib import resources
from typing import Iterable

from .field import QuadExt
from .poly import QW, Poly, PolyRing, parse_expr, substitute

U_NAMES = ("U0", "U1", "U2", "U3", "U4", "U5", "U6", "U7", "U8", "U9")
RING = PolyRing(U_NAMES)

# Diagonal order-7 action: U_i is scaled by xi^G7_WEIGHTS[i] with xi a
# primitive seventh root of unity.  Weight bookkeeping replaces any need for
# xi in the coefficient field.
G7_WEIGHTS = (0, 6, 5, 3, 1, 2, 4, 1, 2, 4)

# Order-3 action: the coordinate substitution U1->U2->U3->U1, U4->U5->U6->U4,
# U7->U8->U9->U7 (U0 fixed).  G3_IMAGES[i] is the index of the variable that
# replaces U_i.
G3_IMAGES = (0, 2, 3, 1, 5, 6, 4, 8, 9, 7)

# The 30 printed base cubics.  eq5, eq6 (resp. eq8, eq9 and eq11, eq12) are
# the order-3 images of eq4 (resp. eq7, eq10) and are generated on expansion,
# as are eq37..eq84.
_BASE_TEXT = {
    1: "U1*U2*U3 + (1-w)*(U3^2*U4+U1^2*U5+U2^2*U6) + (10-2*w)*U4*U5*U6",
    2: "(-3+w)*U0^3 + (7+w)*(-2*U1*U2*U3+U7*U8*U9-8*U4*U5*U6)"
       " + 8*U0*(U1*U4+U2*U5+U3*U6) + (6+2*w)*U0*(U1*U7+U2*U8+U3*U9)",
    3: "(11-w)*U0^3 + 128*U4*U5*U6 - (18+10*w)*U7*U8*U9"
       " + 64*(U2*U4^2+U3*U5^2+U1*U6^2) + (-14-6*w)*U0*(U1*U7+U2*U8+U3*U9)"
       " + 8*(1+w)*(U1^2*U8+U2^2*U9+U3^2*U7-2*U1*U2*U3)",
    4: "-(1+w)*U0*U3*(4*U6+U9) + 8*(U1*U2*U3+U1*U6*U9+U5*U7*U9)"
       " + 16*(U5*U6*U7-U1^2*U5-U3*U5^2)",
    7: "(12+4*w)*U1*U2*U3 + (4+4*w)*(U3*U5*U8-U0*U2*U5+4*U4*U5*U6)"
       " + (3-w)*U0*U1*U7 + 8*(U2*U4*U7+U6*U7*U8-U1^2*U8-2*U4*U6*U8)"
       " + (2+2*w)*(U3*U8^2-U0*U2*U8)",
    10: "(2+6*w)*U1*U2*U3 + 4*(-5+w)*U5*(U1^2+2*U4*U6) - 8*U0*(U2*U5+U3*U6)"
        " + 8*(-1+w)*U3*U5^2 + 2*(3-w)*U0*U1*U7 - 8*U1^2*U8"
        " + (-1-w)*U8*(U0*U2+4*U4*U9) + 8*(1+w)*U3*U5*U8 - 32*U4*U6*U8"
        " + 2*(1-w)*(2*U6*U7*U8+2*U5*U7*U9+4*U5*U6*U7+U7*U8*U9)"
        " + 2*(3+w)*U3*U8^2 - 16*U4*U5*U9 + 4*U1*U9^2",
    13: "-8*w*U1^2*U3 + (-7+5*w)*U0*U2*U3 + 4*(-7+w)*U0*U6^2 + 4*U0^2*U7"
        " + (8-8*w)*U1*U4*U7 + 4*(-5-w)*U2*U5*U7 + (8+8*w)*U3*U6*U7"
        " + (-1-5*w)*U1*U7^2 - 8*U2*U7*U8 + (6+6*w)*U3*U7*U9",
    14: "8*U1^2*U3 + 2*(3-w)*U0*U1*U5 + 16*U3*U4*U6 - 16*U5^2*U6"
        " + 2*(1+w)*U2*U5*U7 - 8*U3*U6*U7 + 2*(-1-w)*U3^2*U8"
        " + 2*(-1+w)*U0*U6*U9 + (-5-w)*U3*U7*U9",
    15: "2*(-3-w)*U1^2*U3 + 2*(3-w)*U0*U2*U3 + 4*(-1+w)*U0*U1*U5"
        " + 4*(-1-w)*U3^2*U5 + 8*U1*U2*U6 + 4*(1+w)*U0*U6^2 - 4*U0^2*U7"
        " + (1+w)*U1*U7^2 + 2*(-1+w)*U0*U1*U8 + 4*U3*U7*U9",
    16: "(-3+w)*U2^3 + (-3+w)*U1^2*U3 + 4*U0*U2*U3 + (-2-2*w)*U0^2*U4"
        " + 8*U1*U4^2 + 8*U0*U1*U5 + (-5-w)*U1*U2*U6 + (4+4*w)*U3*U4*U6"
        " + 2*U0*U1*U8 + (3-w)*U2*U7*U8 + (2+2*w)*U3*U4*U9",
    17: "4*(-1-w)*U2^3 + (5+w)*U0*U2*U3 + 4*(3-w)*U3^2*U5"
        " + 16*(1-w)*U2*U4*U5 + 4*(-1-w)*U2*U5*U7 - 8*U1*U2*U9"
        " + 4*(1+w)*U3*U4*U9 - 32*U5^2*U9 - 16*U5*U8*U9",
    18: "8*U1^2*U3 + (-5-w)*U0*U2*U3 + 4*(1+w)*U3^2*U5 + 4*(1+w)*U1*U2*U6"
        " + 16*(-1+w)*U5^2*U6 + 8*U2*U5*U7 - 16*U3*U6*U7"
        " + 8*(-1+w)*U5*U6*U8 - 8*U3*U7*U9",
    19: "(-5-w)*U0^2*U4 - 8*U2*U5*U7 + (-1-w)*U1*U7^2 + 4*U0*U1*U8"
        " - 4*U2*U7*U8 + (-5+w)*U1*U2*U9 + 2*(1-w)*U3*U4*U9"
        " + 2*(1-w)*U0*U6*U9 + 4*U3*U7*U9 + 2*U8^2*U9 + 2*U0*U9^2",
    20: "4*(1+w)*U1^2*U3 + 2*(1-w)*U0*U2*U3 - 8*U0^2*U4 + 4*(-3-w)*U1*U4^2"
        " - 8*w*U0*U1*U5 + 8*(1-w)*U2*U4*U5 + (5-w)*U0*U1*U8"
        " + 2*(-5+w)*U3^2*U8 + 16*U5*U8*U9 + 8*U8^2*U9",
    21: "(1-w)*U1^2*U3 - 4*U0*U1*U5 - 8*U3*U4*U6 - 8*U0*U6^2 + 4*U1*U4*U7"
        " + (2-2*w)*U2*U5*U7 + 2*U1*U7^2 - 2*U0*U1*U8 + (1+w)*U3^2*U8"
        " + (1-w)*U2*U7*U8 + (-1+w)*U3*U7*U9",
    22: "-8*U1^2*U3 + 16*U2*U4*U5 - 8*U1*U2*U6 + 4*(1+w)*U0*U6^2"
        " + (1+w)*U0*U1*U8 + 8*U2*U4*U8 - 8*U5*U6*U8 + 4*U1*U2*U9"
        " - 8*U3*U4*U9 + 2*(1+w)*U0*U6*U9",
    23: "(-3+w)*(U2^3+U1^2*U3) + 4*(-1-w)*U1*U4^2 + (-1+3*w)*U1*U2*U6"
        " + 2*(-1-w)*U1*U4*U7 + (1+w)*U3^2*U8 + 8*U2*U4*U8"
        " + 4*(-1+w)*U5*U6*U8 + 4*U2*U7*U8 + 4*U1*U2*U9",
    24: "2*U0*U2*U3 + (-1-w)*U0^2*U4 + 2*(1-w)*U0*U1*U5 + 2*(1-w)*U1*U2*U6"
        " + 2*U0*U1*U8 - 4*U3^2*U8 - 4*U2*U4*U8 + 2*(1-w)*U5*U6*U8"
        " + 4*U5*U8*U9 + 2*U8^2*U9",
    25: "(-1+3*w)*U0^2*U1 + (44-4*w)*U2^2*U3 + 64*U3*U4*U5"
        " + (36-12*w)*U1*U3*U6 + (16+16*w)*U4^2*U6 + (-4-4*w)*U0*U2*U7"
        " - 32*U3*U4*U8 + (4+4*w)*U0*U6*U8 - 16*U3*U7*U8"
        " + (8-8*w)*U1*U3*U9 + 16*U4*U7*U9",
    26: "(-1+3*w)*U0^2*U1 + (-4-4*w)*U2^2*U3 + (40-8*w)*U1*U2*U5"
        " + (4-12*w)*U1*U3*U6 + 96*U4^2*U6 + (-24-8*w)*U2*U6^2 + 16*U1^2*U7"
        " + (-2+2*w)*U0*U2*U7 + 64*U4*U6*U7 + (20-4*w)*U1*U2*U8"
        " - 8*U0*U6*U8 + 16*U4*U7*U9",
    27: "(5+w)*U0^2*U1 + (-4-4*w)*U2^2*U3 + (16-16*w)*U3*U4*U5"
        " + (-20-4*w)*U1*U3*U6 + 32*U4^2*U6 + 32*U0*U5*U6 + 8*U0*U6*U8"
        " - 16*U1*U3*U9 + 16*U0*U5*U9 + 8*U0*U8*U9",
    28: "8*U2^2*U3 + (-3+w)*U0*U3^2 + (-4-4*w)*U1*U2*U5 + (4+4*w)*U3*U4*U5"
        " + 32*U5^3 + (4+4*w)*U3*U5*U7 + 16*U5^2*U8 + (3-w)*U1*U3*U9"
        " + 8*U2*U6*U9",
    29: "(-3+w)*U2^2*U3 + (5+w)*U0*U2*U4 + 8*U1*U2*U5 - 8*U2*U6^2"
        " + 2*U0*U2*U7 + (-1-w)*U1*U2*U8 + 8*U5^2*U8 + (3-w)*U1*U3*U9"
        " + (4+4*w)*U4^2*U9 - 8*U2*U6*U9 + (2+2*w)*U4*U7*U9 - 2*U0*U8*U9"
        " + (-3+w)*U2*U9^2",
    30: "8*U2^2*U3 + (4-4*w)*U1^2*U4 + (-12-4*w)*U1*U2*U5"
        " + (-4-12*w)*U4^2*U6 + (12+4*w)*U2*U6^2 + (2-2*w)*U1^2*U7"
        " - 8*U1*U2*U8 - 16*U3*U4*U8 + (1+3*w)*U0*U6*U8 + (-3-w)*U3*U7*U8"
        " + 4*U1*U3*U9 + (6+2*w)*U2*U6*U9",
    31: "(-4+4*w)*U1^2*U4 - 4*U1*U2*U5 + (-4+4*w)*U3*U4*U5 + 16*U5^3"
        " + (-8+8*w)*U4^2*U6 + (2+2*w)*U0*U5*U6 - 4*U1^2*U7"
        " + (2+2*w)*U6*U7^2 + 8*U3*U4*U8 - 4*U0*U6*U8 - 4*U5*U8^2"
        " + (1+w)*U7^2*U9",
    32: "(-5-w)*U0^2*U1 + (-6+2*w)*U0*U3^2 + (-24+8*w)*U3*U4*U5"
        " + (20+4*w)*U1*U3*U6 - 32*U4^2*U6 - 32*U0*U5*U6 + 32*U2*U6^2"
        " + (2+2*w)*U0*U2*U7 + (4+4*w)*U1*U2*U8 - 8*U0*U6*U8"
        " + (10+2*w)*U1*U3*U9 + 16*U2*U6*U9",
    33: "(7-5*w)*U0^2*U1 + (-56-24*w)*U1^2*U4 + 32*w*U1*U2*U5"
        " + (28+4*w)*U1*U3*U6 + (28+28*w)*U0*U5*U6 + (-84-4*w)*U1^2*U7"
        " + (7+7*w)*U0*U2*U7 - 56*U3*U5*U7 + 56*U6*U7^2 + 24*w*U1*U2*U8"
        " + 56*U0*U6*U8 + (14-18*w)*U1*U3*U9 + 28*U7^2*U9",
    34: "(-5-w)*U0^2*U1 + 48*U1*U2*U5 + (-16-16*w)*U3*U4*U5 + 32*U4^2*U6"
        " + (2+10*w)*U1^2*U7 + (-48+16*w)*U4*U6*U7 + (28-4*w)*U1*U2*U8"
        " + (-12-12*w)*U3*U4*U8 + (-16-8*w)*U0*U6*U8 + (-22+2*w)*U1*U3*U9"
        " + (-8-8*w)*U2*U6*U9 + (-8+8*w)*U4*U7*U9",
    35: "(10+2*w)*U2^2*U3 + (-11+w)*U0*U2*U4 - 16*U1*U2*U5"
        " + (20+4*w)*U3*U4*U5 - 16*U2*U6^2 + (-1-w)*U0*U2*U7"
        " + (-2-2*w)*U1*U2*U8 - 16*U5^2*U8 + (-4-4*w)*U4^2*U9"
        " + (3-w)*U2*U9^2",
    36: "(2+2*w)*U0*U3^2 + (-6+2*w)*U0*U2*U4 + (4-4*w)*U1*U3*U6"
        " + 32*U4^2*U6 + (-12-4*w)*U2*U6^2 + 2*U0*U2*U7 + 16*U4*U6*U7"
        " + (7-w)*U1*U2*U8 - 8*U5^2*U8 + 4*U1*U3*U9 + (4-4*w)*U0*U5*U9"
        " + 4*U4*U7*U9 - 2*w*U0*U8*U9",
}

# Six quadrics that, together with U0 and their order-3 images, cut out a
# distinguished curve on the surface.
_CURVE_QUADRIC_TEXT = (
    "U1^2 - U6*U7 + (1/8)*(-5-w)*U7*U9",
    "U4*U6 - (1/8)*(1+w)*U3*U8",
    "U2*U4 + (1/8)*(1+w)*U8*U9",
    "U1*U4 + U3*U6 + (1/8)*(5+w)*U3*U9",
    "U1*U2 + U5*U8",
    "U4^2 + (1/8)*(1+w)*U2*U9 + (1/8)*(5+w)*U4*U7",
)

# Three 7x7 minors of the 84x10 Jacobian used as smoothness witnesses.
# Rows are 1-based equation indices, columns are variable indices.
MINOR_SELECTIONS = (
    ((8, 19, 29, 43, 55, 61, 79), (0, 1, 2, 3, 5, 6, 7)),
    ((7, 19, 31, 37, 55, 67, 77), (0, 1, 2, 3, 4, 5, 9)),
    ((9, 13, 31, 43, 53, 67, 79), (0, 1, 2, 3, 4, 8, 9)),
)

# The diagonal action fixes exactly the three coordinate points below
# (given by the index of their nonzero coordinate), listed in the order in
# which the minors above guard them.
FIXED_POINT_VARIABLES = (9, 8, 7)

ASSET_NAME = "fpp84.eqs"
ASSET_DIGEST_NAME = "fpp84.eqs.sha256"

_equations_cache: tuple[Poly, ...] | None = None
_curve_cache: tuple[Poly, ...] | None = None


def apply_g3(f: Poly) -> Poly:
    """Apply the order-3 coordinate substitution to a polynomial."""
    images = [f.ring.variable(G3_IMAGES[i], f.domain) for i in range(len(U_NAMES))]
    return substitute(f, images)


def base_equations() -> dict[int, Poly]:
    """The 36 base cubics, keyed 1..36 (eq5/6, 8/9, 11/12 are g3-orbits)."""
    eqs = {idx: parse_expr(text, RING) for idx, text in _BASE_TEXT.items()}
    for root in (4, 7, 10):
        eqs[root + 1] = apply_g3(eqs[root])
        eqs[root + 2] = apply_g3(eqs[root + 1])
    return eqs


def expand_equations() -> tuple[Poly, ...]:
    """All 84 cubics: eq1..eq36 base, eq37..60 = g3(eq13..36), eq61..84 = g3^2."""
    global _equations_cache
    if _equations_cache is None:
        eqs = base_equations()
        for idx in range(13, 37):
            eqs[idx + 24] = apply_g3(eqs[idx])
            eqs[idx + 48] = apply_g3(eqs[idx + 24])
        _equations_cache = tuple(eqs[i] for i in range(1, 85))
    return _equations_cache


def curve_c_generators() -> tuple[Poly, ...]:
    """U0 followed by the 6 base quadrics and their 12 order-3 images."""
    global _curve_cache
    if _curve_cache is None:
        base = [parse_expr(text, RING) for text in _CURVE_QUADRIC_TEXT]
        first = [apply_g3(q) for q in base]
        second = [apply_g3(q) for q in first]
        u0 = RING.variable(0, QW)
        _curve_cache = tuple([u0] + base + first + second)
    return _curve_cache


def g7_weight(exponents: Iterable[int]) -> int:
    """Weight of a monomial under the diagonal order-7 action, in Z/7."""
    return sum(e * wt for e, wt in zip(exponents, G7_WEIGHTS)) % 7


def poly_g7_weight(f: Poly) -> int:
    """The common weight of f's monomials; ValueError if they disagree."""
    weights = {g7_weight(m) for m in f.coeffs}
    if len(weights) != 1:
        raise ValueError("polynomial is not weight-homogeneous: weights %s" % sorted(weights))
    return weights.pop()


def equation_weights() -> tuple[int, ...]:
    """Per-equation diagonal-action weight for eq1..eq84."""
    return tuple(poly_g7_weight(f) for f in expand_equations())


def fixed_points() -> tuple[tuple[QuadExt, ...], ...]:
    """The three coordinate points fixed by the diagonal action."""
    pts = []
    for idx in FIXED_POINT_VARIABLES:
        pts.append(tuple(QW.one if j == idx else QW.zero for j in range(len(U_NAMES))))
    return tuple(pts)


def conjugate_equations() -> tuple[Poly, ...]:
    """The 84 cubics with w replaced by -w (the conjugate surface)."""
    return tuple(f.map_coeffs(lambda c: c.conjugate(), QW) for f in expand_equations())


def canonical_coefficient(c: QuadExt) -> str:
    return "(%d/%d+%d/%d*w)" % (
        c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator,
    )


def canonical_serialize(f: Poly) -> str:
    """Serialize one polynomial in the canonical grammar.

    Terms in descending grevlex order, joined by '+'; each term is
    '(a/b+c/d*w)' followed by '*'-separated variable powers with '^1'
    suppressed; signs live in the numerators; no whitespace.
    """
    if f.is_zero():
        return canonical_coefficient(QW.zero)
    parts = []
    for mono, coeff in f.sorted_terms():
        text = canonical_coefficient(coeff)
        for idx, exp in enumerate(mono):
            if exp == 0:
                continue
            text += "*" + f.ring.names[idx]
            if exp > 1:
                text += "^%d" % exp
        parts.append(text)
    return "+".join(parts)


def dataset_text() -> str:
    """The 84 equations, one canonical line each, with a trailing newline."""
    return "".join(canonical_serialize(f) + "\n" for f in expand_equations())


def dataset_digest() -> str:
    return hashlib.sha256(dataset_text().encode("ascii")).hexdigest()


def _asset(name: str) -> str:
    return resources.files(__package__).joinpath("assets").joinpath(name).read_text()


def verify_asset_integrity() -> dict:
    """Compare the shipped equation file and digest with recomputed values."""
    text = dataset_text()
    digest = hashlib.sha256(text.encode("ascii")).hexdigest()
    shipped_text = _asset(ASSET_NAME)
    shipped_digest = _asset(ASSET_DIGEST_NAME).split()[0]
    reparsed = all(
        parse_expr(line, RING) == f
        for line, f in zip(shipped_text.splitlines(), expand_equations())
    )
    return {
        "recomputed_digest": digest,
        "shipped_digest": shipped_digest,
        "text_matches": shipped_text == text,
        "digest_matches": shipped_digest == digest,
        "reparse_matches": reparsed,
        "line_count": len(shipped_text.splitlines()),
    }


def write_assets(directory) -> None:
    """Regenerate the shipped asset pair in the given directory."""
    import pathlib

    directory = pathlib.Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    text = dataset_text()
    (directory / ASSET_NAME).write_text(text)
    digest = hashlib.sha256(text.encode("ascii")).hexdigest()
    (directory / ASSET_DIGEST_NAME).write_text(digest + "  " + ASSET_NAME + "\n")

"""Sextic surface model attached to the 84-cubic dataset.

The double cover of the surface in P^9 maps to a sextic surface in P^3.
This module embeds that model: the sextic form f, its distinguished conic
h0, the images of the 24 labelled curves, the two cubic cone factors and
their product, the order-3 birational automorphism of the affine chart
(Y0, Y2, Y3), the seventh-power function w = z^7 with its transport law
z'' = z^2 * g, and the three embedding functions whose order-3 orbit spans
the ten coordinates upstairs.

Verification comes in two flavours.  Statements that are polynomial
identities (invariance, section scalars, singular locus, curve incidence,
monic integral equations) are checked exactly over Q(w).  Statements at the
level of rational maps (automorphism order, inverse composition, z
transport) are checked on random finite-field points of the surface:
deterministic seeded sampling replaces the floating-point spot checks the
model was originally built with.

Several printed coefficients mix i and sqrt(7).  Those tables are entered
verbatim in the bigger field Q(i, sqrt(7)) and collapsed to Q(w), w = i*sqrt(7),
with an asserted i-power bookkeeping; a transcription slip fails loudly at
build time rather than corrupting downstream checks.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import dataset
from .field import PrimeField, QuadExt
from .linalg import rank as exact_rank
from .poly import (
    Poly,
    PolyRing,
    QIS,
    QW,
    parse_expr,
    poly_exact_div,
)

# ---------------------------------------------------------------------------
# errors


class InsufficientPoints(RuntimeError):
    """Sampling exhausted its draw budget before reaching the request."""


class DenominatorVanished(ArithmeticError):
    """A map denominator vanished at a sample point (point is skipped)."""


class SeventhRootUndefined(ValueError):
    """7 divides p - 1, so seventh roots are not unique in GF(p)."""


class ExtractionFailed(ArithmeticError):
    """Coefficient stratification of f did not close; dataset corrupt."""


# ---------------------------------------------------------------------------
# the projective model over Q(w)

Y_NAMES = ("y0", "y1", "y2", "y3")
YRING = PolyRing(Y_NAMES)

# t-line for parametrized curves, and the pencil ring with the extra
# parameter a adjoined in front so it never disturbs the grevlex order of
# the y-variables.
TRING = PolyRing(("t",))
ARING = PolyRing(("a", "y0", "y1", "y2", "y3"))

_F_TEXT = (
    "28*y0^6 - (42 - 2*w)*y0^4*y1^2 - 4*w*y0^2*y1^4"
    " + 56*y0^2*y1^2*y2^2 - (14 + 22*w)*y0^4*y1*y3"
    " - (7 - 13*w)*y0^2*y1^2*y3^2 - (77 + 17*w)*y1^4*y3^2"
    " + (21 - 31*w)*(y0^3*y1*y2*y3 - y0*y1^3*y2*y3)"
    " - (28 - 20*w)*y1^3*y3*(y1^2 + y2^2 - y3^2)"
    " + (14 + 2*w)*y1^2*(y1^4 + 2*y1^2*y2^2 + (y2^2 - y3^2)^2)"
    " + (42 + 2*w)*(y0^2*y1^3*y3 + y0*y1^2*y2*(-y0^2 + y1^2 + y2^2 - y3^2))"
)

_H0_TEXT = "y1^2 + y2^2 + (-1 + 3*w)/4*y1*y3 - y3^2"

_CONE1_TEXT = (
    "y0^3 - y0^2*y1 - y0*y1^2 + y1^3"
    " + (1 + w)/2*(y0 - y1)*y1*(y2 - y3)"
    " + (-1 + w)/4*y1*(y2 - y3)^2"
)
_CONE2_TEXT = (
    "y0^3 + y0^2*y1 - y0*y1^2 - y1^3"
    " - (1 + w)/2*(y0 + y1)*y1*(y2 + y3)"
    " - (-1 + w)/4*y1*(y2 + y3)^2"
)

# conic cut out on the plane y0 = y1 by the curve labelled A1' (written in
# the coordinates (y1, y2, y3) of that plane)
_A1P_CONIC_TEXT = (
    "(11 - w)/2*y1^2 + (11 - w)/4*y1*y2 + y2^2"
    " + (-1 + 3*w)/2*y1*y3 - y3^2"
)


def _yparse(text: str) -> Poly:
    return parse_expr(text, YRING, QW)


@lru_cache(maxsize=1)
def sextic_f() -> Poly:
    return _yparse(_F_TEXT)


@lru_cache(maxsize=1)
def conic_h0() -> Poly:
    return _yparse(_H0_TEXT)


@lru_cache(maxsize=1)
def cone_factors() -> tuple[Poly, Poly]:
    return _yparse(_CONE1_TEXT), _yparse(_CONE2_TEXT)


@lru_cache(maxsize=1)
def symmetrized_cones() -> Poly:
    c1, c2 = cone_factors()
    return c1 * c2


def sigma_y(f: Poly) -> Poly:
    """The covering involution (y0 : y1 : y2 : y3) -> (y0 : -y1 : y2 : -y3)."""
    y1 = YRING.variable(1, f.domain)
    y3 = YRING.variable(3, f.domain)
    return f.substitute({1: -y1, 3: -y3})


def compose(f: Poly, images: Sequence[Poly]) -> Poly:
    """Evaluate f at polynomial images, which may live in another ring."""
    if len(images) != f.ring.n:
        raise ValueError(f"need {f.ring.n} images, got {len(images)}")
    ring = images[0].ring
    dom = images[0].domain
    cache: dict[tuple[int, int], Poly] = {}

    def power(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in cache:
            cache[key] = images[i] ** e
        return cache[key]

    out = Poly(ring, dom, {})
    for m, c in f.coeffs.items():
        term = ring.constant(c, dom)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# curve records

POINT, IMPLICIT, PARAMETRIC = "point", "implicit", "parametric"


@dataclass(frozen=True)
class CurveRecord:
    """One labelled curve image: a point, an ideal, or a t-parametrization."""

    label: str
    kind: str
    payload: tuple


def _tparse(text: str) -> Poly:
    return parse_expr(text, TRING, QW)


@lru_cache(maxsize=1)
def curve_records() -> tuple[CurveRecord, ...]:
    """The images of the sheet-1 curves; sheet 2 is their sigma orbit."""
    y0, y1, y2, y3 = YRING.gens(QW)
    h0 = conic_h0()
    qa1p = _yparse(_A1P_CONIC_TEXT)
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)

    s1p = (
        _tparse("(11 - w)/8*t + (-3 + w)/8*t^3"),
        _tparse("t^3"),
        _tparse("(11 - w)/8 + (-1 + 3*w)/8*t - (5 + w)/8*t^2 + (3 - w)/8*t^3"),
        _tparse(
            "-(9 + 5*w)/16 + (11 - w)/16*t + (21 + w)/16*t^2 - (7 - 5*w)/16*t^3"
        ),
    )
    s1pp = (
        _tparse("(11 - w)/8*t + (-3 + w)/8*t^3"),
        _tparse("t^3"),
        _tparse("(-9 - 5*w + (11 - w)*t)*(-1 + t^2)/16"),
        _tparse("(11 - w + (-1 + 3*w)*t)*(-1 + t^2)/8"),
    )

    def pt(*coords) -> tuple:
        return tuple(QW.coerce(c) for c in coords)

    b1p_point = pt(-1, -1, QuadExt(half, -half), QuadExt(half, -half))
    c1_val = QuadExt(3 * quarter, quarter)

    return (
        CurveRecord("F", IMPLICIT, (y0, y1)),
        CurveRecord("F2", IMPLICIT, (y0, h0)),
        CurveRecord("S1", POINT, pt(0, 0, -1, 1)),
        CurveRecord("S1'", PARAMETRIC, s1p),
        CurveRecord("S1''", PARAMETRIC, s1pp),
        CurveRecord("A1", POINT, pt(1, 1, 0, 0)),
        CurveRecord("B1", IMPLICIT, (y0 - y1, y2 + y3)),
        CurveRecord("C1", POINT, pt(1, 1, -c1_val, c1_val)),
        CurveRecord("A1'", IMPLICIT, (y0 - y1, qa1p)),
        CurveRecord("B1'", POINT, b1p_point),
        CurveRecord("C1'", POINT, b1p_point),
        CurveRecord("A1''", IMPLICIT, (y0 - y1, y2 - y3)),
        CurveRecord("B1''", POINT, pt(1, 1, 0, 0)),
        CurveRecord("C1''", POINT, pt(1, 1, 0, 0)),
    )


def sigma_record(rec: CurveRecord) -> CurveRecord:
    """The sheet-swapped curve: apply the involution to the payload."""
    label = rec.label.replace("1", "2")
    if rec.kind == POINT:
        c = rec.payload
        return CurveRecord(label, POINT, (c[0], -c[1], c[2], -c[3]))
    if rec.kind == PARAMETRIC:
        p = rec.payload
        return CurveRecord(label, PARAMETRIC, (p[0], -p[1], p[2], -p[3]))
    return CurveRecord(label, IMPLICIT, tuple(sigma_y(g) for g in rec.payload))


def _ideal_member(f: Poly, gens: Sequence[Poly]) -> bool:
    """Membership of f in an ideal generated by linear forms and at most
    one extra form that must divide the fully substituted remainder."""
    work = f
    rest = [g for g in gens if g]
    # eliminate linear generators by solving for their leading variable
    progress = True
    while progress:
        progress = False
        for g in list(rest):
            if g.is_zero():
                rest.remove(g)
                progress = True
                continue
            if g.total_degree() != 1:
                continue
            lead = g.leading_monomial()
            var = lead.index(1)
            image = work.ring.variable(var, work.domain) - g / g.leading_coeff()
            work = work.substitute({var: image})
            rest = [h.substitute({var: image}) for h in rest if h is not g]
            progress = True
            break
    if work.is_zero():
        return True
    for g in rest:
        try:
            poly_exact_div(work, g)
            return True
        except (ValueError, ZeroDivisionError):
            continue
    return False


# ---------------------------------------------------------------------------
# the affine chart tables (mixed-notation transcription)

C_NAMES = ("Y0", "Y2", "Y3")
CRING = PolyRing(C_NAMES)


def _omega_form(p: Poly) -> tuple[int, Poly]:
    """Collapse a mixed-notation polynomial to i^k * (Q(w) polynomial)."""
    k = None
    out: dict = {}
    for m, c in p.coeffs.items():
        kc, q = c.as_omega()
        if k is None:
            k = kc
        elif k != kc:
            raise ValueError(f"mixed i-powers within one polynomial at {m}")
        out[m] = q
    return (0 if k is None else k), Poly(p.ring, QW, out)


def _mixed(text: str) -> Poly:
    return parse_expr(text, CRING, QIS)


def _ratio(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Collapse a mixed numerator/denominator pair; the shared i-power cancels."""
    kn, n = _omega_form(num)
    kd, d = _omega_form(den)
    if kn != kd:
        raise ValueError(f"uncancelled i-power {kn} vs {kd}")
    return n, d


# order-3 automorphism, forward direction: (Y0, Y2, Y3) -> (Y0, Y2', Y3').
# Shared denominator factor of both coordinates:
_DQ_TEXT = "(-21*i + 31*s7)*Y2^2 + (-35*i + 9*s7)*Y3^2"

_RHO_Y2_NUM = (
    "(3 + i*s7)/8 * ("
    " 7*(9*i + 5*s7)*Y0^4*Y3"
    " + 2*Y0^2*(4*(21*i + s7)*Y2^2 - (7*i + 11*s7)*Y3)"
    " + Y3*(-49*i - 13*s7 - (49*i + 13*s7)*Y2^2 + 8*(-7*i + 5*s7)*Y3"
    "       + (49*i + 13*s7)*Y3^2)"
    " - Y0*((-21*i + 31*s7)*Y2^3"
    "       + Y2*Y3*(112*i + 48*s7 + 21*i*Y3 - 31*s7*Y3)))"
)
_RHO_Y3_NUM = (
    "(-3*i + s7)/8 * ("
    " (-21 - 31*w)*Y2^3"
    " + Y0*Y2^2*(-168 + 8*w + 49*Y3 - 13*w*Y3)"
    " + Y0*Y3^2*(56 + 40*w - 49*Y3 + 13*w*Y3)"
    " + Y2*(-21 - 31*w + 7*(13 + 7*w)*Y0^4 + 8*(21 - w)*Y3"
    "       + (21 + 31*w)*Y3^2 + Y0^2*(-70 - 18*w + (-56 - 40*w)*Y3)))"
)
_RHO_DEN = f"Y0*({_DQ_TEXT})"

# inverse direction: (Y0, Y2, Y3) -> (Y0, Y2'', Y3'').  Both coordinates
# share the denominator 2*Y0*G1*G2.
_G1_TEXT = (
    "-3*i - s7 + (3*i + s7)*Y0^2 - 2*i*Y2^2 + (-5*i + s7)*Y3"
    " + (i + s7)*Y3^2 - Y2*(-5*i + s7 + (-i + s7)*Y3)"
)
_G2_TEXT = (
    "-3*i - s7 + (3*i + s7)*Y0^2 - 2*i*Y2^2 - (5*i - s7)*Y3"
    " + (i + s7)*Y3^2 + Y2*(-5*i + s7 + (-i + s7)*Y3)"
)

_RHO_INV_Y2_NUM = (
    "-20 - 4*w"
    " - 4*i*(-9*i + s7)*Y0^5*Y2"
    " + (34 - 30*w)*Y3 + (134 + 14*w)*Y3^2"
    " - (15 - 43*w)*Y3^3 - 48*Y3^4"
    " - (1 + 3*w)*Y3^5"
    " + 4*i*Y0^6*(5*i - s7 + 2*s7*Y3)"
    " + Y2^4*(-20 - 4*w + (-1 - 3*w)*Y3)"
    " + 2*Y0^3*Y2*(36 + 4*w + (3 + 5*w)*Y2^2 + (-5 + 15*w)*Y3"
    "              + (-16 + 2*w)*Y3^2)"
    " + Y2^2*(-40 - 8*w + 33*(1 - w)*Y3 + (68 + 4*w)*Y3^2 + (2 + 6*w)*Y3^3)"
    " + 2*Y0^2*(10 + 2*w + 8*Y2^4 + (-26 + 10*w)*Y3 + (-29 - 9*w)*Y3^2"
    "           + (8 - 4*w)*Y3^3 - Y2^2*Y3*(17 + w + 8*Y3))"
    " + Y0^4*(20 + 4*w + 2*(9 + w)*Y3 + 4*(3 - w)*Y3^2 + (7 + 5*w)*Y3^3"
    "         + Y2^2*(-48 + 16*w - (7 + 5*w)*Y3))"
    " + Y0*Y2*(-36 - 4*w + (5 - w)*Y2^4 + 10*(1 - 3*w)*Y3 + 52*Y3^2"
    "          + (5 - w)*Y3^4 + 2*i*Y2^2*(13*i - 7*s7 + (5*i + s7)*Y3^2))"
)
_RHO_INV_Y3_NUM = (
    "8*w*Y0^6*Y2"
    " + Y0^5*(-40 - 8*w + (26 + 2*w)*Y3)"
    " + 2*Y0^3*(40 + 8*w + 2*(-17 + 11*w + (1 - 2*w)*Y2^2)*Y3"
    "           + (-39 - 11*w)*Y3^2 + (11 - 3*w)*Y3^3)"
    " + 2*Y0^2*Y2*(-4*w + (33 - 3*w)*Y3 + (25 + 9*w)*Y3^2"
    "              + 4*i*(i + s7)*Y3^3 + 4*Y2^2*(-4 - w + (1 - w)*Y3))"
    " + Y2*(8*w + (5 - w)*Y2^4 + 2*i*(27*i + s7)*Y3 + (-23 - 17*w)*Y3^2"
    "       + (8 - 8*w)*Y3^3 + (5 - w)*Y3^4"
    "       + Y2^2*(5 + 7*w + 8*i*(i + s7)*Y3 + 2*i*(5*i + s7)*Y3^2))"
    " + Y0^4*((7 - 3*w)*Y2^3"
    "         + i*Y2*(-8*s7 + 4*(3*i + s7)*Y3 + (7*i + 3*s7)*Y3^2))"
    " + Y0*(-40 - 8*w + (42 - 46*w)*Y3 + 2*(83 + 7*w)*Y3^2"
    "       + (-14 + 46*w)*Y3^3 - 48*Y3^4 + (-1 - 3*w)*Y3^5"
    "       + Y2^4*(-4 - 4*w + (-1 - 3*w)*Y3)"
    "       + 2*Y2^2*(-44 + 4*w + (-6 - 16*w)*Y3 + (26 + 2*w)*Y3^2"
    "                 + (1 + 3*w)*Y3^3))"
)
_RHO_INV_DEN = f"2*Y0*({_G1_TEXT})*({_G2_TEXT})"

# w = z^7 as a rational function of the chart.  The two quartic factors of
# the numerator are each other's image under (Y0, Y2) -> (-Y0, -Y2); the
# denominator squares the two affine cone cubics (times i-units) and the
# shared automorphism denominator quadratic.
_P1_TEXT = (
    "2795*i + 287*s7 - 5590*i*Y0 - 574*s7*Y0 + 11573*i*Y0^2 + 2689*s7*Y0^2"
    " - 17556*i*Y0^3 - 4804*s7*Y0^3 + 14357*i*Y0^4 + 5601*s7*Y0^4"
    " - 11158*i*Y0^5 - 6398*s7*Y0^5 + 5579*i*Y0^6 + 3199*s7*Y0^6"
    " + 5590*i*Y2^2 + 574*s7*Y2^2 - 5590*i*Y0*Y2^2 - 574*s7*Y0*Y2^2"
    " + 5994*i*Y0^2*Y2^2 - 510*s7*Y0^2*Y2^2 + 5590*i*Y0^3*Y2^2"
    " + 574*s7*Y0^3*Y2^2 + 2795*i*Y2^4 + 287*s7*Y2^4"
    " + 1616*i*Y3 - 4336*s7*Y3 + 5568*i*Y0*Y3 + 5824*s7*Y0*Y3"
    " + 3232*i*Y0^2*Y3 - 8672*s7*Y0^2*Y3 - 448*i*Y0^3*Y3 + 11584*s7*Y0^3*Y3"
    " - 9968*i*Y0^4*Y3 - 4400*s7*Y0^4*Y3 + 11584*i*Y0^2*Y2*Y3"
    " + 64*s7*Y0^2*Y2*Y3 - 17600*i*Y0^3*Y2*Y3 + 5696*s7*Y0^3*Y2*Y3"
    " + 1616*i*Y2^2*Y3 - 4336*s7*Y2^2*Y3 + 7184*i*Y0*Y2^2*Y3"
    " + 1488*s7*Y0*Y2^2*Y3 - 17174*i*Y3^2 - 638*s7*Y3^2"
    " + 11606*i*Y0*Y3^2 - 5186*s7*Y0*Y3^2 - 5994*i*Y0^2*Y3^2"
    " + 510*s7*Y0^2*Y3^2 + 5994*i*Y0^3*Y3^2 - 510*s7*Y0^3*Y3^2"
    " - 5590*i*Y2^2*Y3^2 - 574*s7*Y2^2*Y3^2 - 1616*i*Y3^3 + 4336*s7*Y3^3"
    " - 7184*i*Y0*Y3^3 - 1488*s7*Y0*Y3^3 + 2795*i*Y3^4 + 287*s7*Y3^4"
)
_P2_TEXT = (
    "2795*i + 287*s7 + 5590*i*Y0 + 574*s7*Y0 + 11573*i*Y0^2 + 2689*s7*Y0^2"
    " + 17556*i*Y0^3 + 4804*s7*Y0^3 + 14357*i*Y0^4 + 5601*s7*Y0^4"
    " + 11158*i*Y0^5 + 6398*s7*Y0^5 + 5579*i*Y0^6 + 3199*s7*Y0^6"
    " + 5590*i*Y2^2 + 574*s7*Y2^2 + 5590*i*Y0*Y2^2 + 574*s7*Y0*Y2^2"
    " + 5994*i*Y0^2*Y2^2 - 510*s7*Y0^2*Y2^2 - 5590*i*Y0^3*Y2^2"
    " - 574*s7*Y0^3*Y2^2 + 2795*i*Y2^4 + 287*s7*Y2^4"
    " + 1616*i*Y3 - 4336*s7*Y3 - 5568*i*Y0*Y3 - 5824*s7*Y0*Y3"
    " + 3232*i*Y0^2*Y3 - 8672*s7*Y0^2*Y3 + 448*i*Y0^3*Y3 - 11584*s7*Y0^3*Y3"
    " - 9968*i*Y0^4*Y3 - 4400*s7*Y0^4*Y3 - 11584*i*Y0^2*Y2*Y3"
    " - 64*s7*Y0^2*Y2*Y3 - 17600*i*Y0^3*Y2*Y3 + 5696*s7*Y0^3*Y2*Y3"
    " + 1616*i*Y2^2*Y3 - 4336*s7*Y2^2*Y3 - 7184*i*Y0*Y2^2*Y3"
    " - 1488*s7*Y0*Y2^2*Y3 - 17174*i*Y3^2 - 638*s7*Y3^2"
    " - 11606*i*Y0*Y3^2 + 5186*s7*Y0*Y3^2 - 5994*i*Y0^2*Y3^2"
    " + 510*s7*Y0^2*Y3^2 - 5994*i*Y0^3*Y3^2 + 510*s7*Y0^3*Y3^2"
    " - 5590*i*Y2^2*Y3^2 - 574*s7*Y2^2*Y3^2 - 1616*i*Y3^3 + 4336*s7*Y3^3"
    " + 7184*i*Y0*Y3^3 + 1488*s7*Y0*Y3^3 + 2795*i*Y3^4 + 287*s7*Y3^4"
)
_E1_TEXT = (
    "-4*i + 4*i*Y0 + 4*i*Y0^2 - 4*i*Y0^3 + 2*i*Y2 - 2*s7*Y2"
    " - 2*i*Y0*Y2 + 2*s7*Y0*Y2 + i*Y2^2 + s7*Y2^2 - 2*i*Y3 + 2*s7*Y3"
    " + 2*i*Y0*Y3 - 2*s7*Y0*Y3 - 2*i*Y2*Y3 - 2*s7*Y2*Y3 + i*Y3^2 + s7*Y3^2"
)
_E2_TEXT = (
    "-4*i - 4*i*Y0 + 4*i*Y0^2 + 4*i*Y0^3 - 2*i*Y2 + 2*s7*Y2"
    " - 2*i*Y0*Y2 + 2*s7*Y0*Y2 + i*Y2^2 + s7*Y2^2 - 2*i*Y3 + 2*s7*Y3"
    " - 2*i*Y0*Y3 + 2*s7*Y0*Y3 + 2*i*Y2*Y3 + 2*s7*Y2*Y3 + i*Y3^2 + s7*Y3^2"
)
_W_PREFACTOR = "(-315*i + 47*s7)^2"

# transport cofactor: z'' = z^2 * (Y0^2 - 1)^(-3) * C1 * C2 with C1, C2 the
# affine cone cubics written out once more in the chart
_C1_TEXT = (
    "1 - Y0 - Y0^2 + Y0^3 - (1 + w)/2*(Y2 - Y3)"
    " + (1 + w)/2*Y0*(Y2 - Y3) + (-1 + w)/4*(Y2 - Y3)^2"
)
_C2_TEXT = (
    "-1 - Y0 + Y0^2 + Y0^3 - (1 + w)/2*(Y2 + Y3)"
    " - (1 + w)/2*Y0*(Y2 + Y3) + (1 - w)/4*(Y2 + Y3)^2"
)

# embedding functions.  The first lives downstairs directly; the other two
# carry a z in the denominator.
_M1_TEXT = (
    "-266*i*Y0 + 34*s7*Y0 + 532*i*Y0^3 - 68*s7*Y0^3 - 266*i*Y0^5"
    " + 34*s7*Y0^5 - 70*i*Y2 + 46*s7*Y2 - 126*i*Y0^2*Y2 - 58*s7*Y0^2*Y2"
    " + 196*i*Y0^4*Y2 + 12*s7*Y0^4*Y2 - 469*i*Y0*Y2^2 + 97*s7*Y0*Y2^2"
    " - 63*i*Y0^3*Y2^2 - 29*s7*Y0^3*Y2^2 - 70*i*Y2^3 + 46*s7*Y2^3"
    " + 238*i*Y0*Y3 + 266*s7*Y0*Y3 - 238*i*Y0^3*Y3 - 266*s7*Y0^3*Y3"
    " + 259*i*Y2*Y3 + 41*s7*Y2*Y3 - 259*i*Y0^2*Y2*Y3 - 41*s7*Y0^2*Y2*Y3"
    " + 56*i*Y0*Y2^2*Y3 + 104*s7*Y0*Y2^2*Y3 + 728*i*Y0*Y3^2"
    " - 56*s7*Y0*Y3^2 - 196*i*Y0^3*Y3^2 - 12*s7*Y0^3*Y3^2"
    " + 70*i*Y2*Y3^2 - 46*s7*Y2*Y3^2 - 56*i*Y0*Y3^3 - 104*s7*Y0*Y3^3"
)
_M2_TEXT = (
    "-133*i + 17*s7 + 266*i*Y0^2 - 34*s7*Y0^2 - 133*i*Y0^4 + 17*s7*Y0^4"
    " - 133*i*Y0*Y2 + 17*s7*Y0*Y2 + 133*i*Y0^3*Y2 - 17*s7*Y0^3*Y2"
    " - 217*i*Y2^2 + 37*s7*Y2^2 - 49*i*Y0^2*Y2^2 - 3*s7*Y0^2*Y2^2"
    " + 119*i*Y3 + 133*s7*Y3 - 119*i*Y0^2*Y3 - 133*s7*Y0^2*Y3"
    " + 217*i*Y3^2 - 37*s7*Y3^2 + 49*i*Y0^2*Y3^2 + 3*s7*Y0^2*Y3^2"
)
_D1_TEXT = (
    "4 - 4*Y0 - 4*Y0^2 + 4*Y0^3 - 2*Y2 - 2*w*Y2 + (2 + 2*w)*Y0*(Y2 - Y3)"
    " + 2*Y3 + 2*w*Y3 + i*(i + s7)*(Y2 - Y3)^2"
)
_D2_TEXT = (
    "-4*i - 4*i*Y0 + 4*i*Y0^2 + 4*i*Y0^3 - 2*i*Y0*Y2 + 2*s7*Y0*Y2"
    " - 2*i*Y0*Y3 + 2*s7*Y0*Y3 + 2*(-i + s7)*(Y2 + Y3)"
    " + (i + s7)*(Y2 + Y3)^2"
)
_EMBED_PREFACTOR = "-35*i + 23*s7"


@dataclass(frozen=True)
class ChartTables:
    """All chart-level data collapsed to Q(w): the restricted sextic, the
    order-3 map and its inverse, w = z^7, the transport cofactor, and the
    embedding functions (numerator, denominator, z-power)."""

    F: Poly
    rho_y2: tuple[Poly, Poly]
    rho_y3: tuple[Poly, Poly]
    rho_inv_y2: tuple[Poly, Poly]
    rho_inv_y3: tuple[Poly, Poly]
    w_pow7: tuple[Poly, Poly]
    z_cofactor: tuple[Poly, Poly]
    embed_u1: tuple[Poly, Poly, int]
    embed_a: tuple[Poly, Poly, int]
    embed_b: tuple[Poly, Poly, int]
    cone1: Poly
    cone2: Poly
    dq: Poly
    g1: Poly
    g2: Poly
    base_denominators: tuple[Poly, ...]


def _chart_of(f: Poly) -> Poly:
    """Restrict a y-polynomial to the chart y1 = 1."""
    v0, v2, v3 = CRING.gens(QW)
    one = CRING.constant(1, QW)
    return compose(f, [v0, one, v2, v3])


def _guard(cond: bool, what: str) -> None:
    if not cond:
        raise RuntimeError(f"chart transcription inconsistent: {what}")


@lru_cache(maxsize=1)
def chart_tables() -> ChartTables:
    v0, v2, v3 = CRING.gens(QW)
    one = CRING.constant(1, QW)

    F = _chart_of(sextic_f())
    cone1 = _chart_of(cone_factors()[0])
    cone2 = _chart_of(cone_factors()[1])

    rho_y2 = _ratio(_mixed(_RHO_Y2_NUM), _mixed(_RHO_DEN))
    rho_y3 = _ratio(_mixed(_RHO_Y3_NUM), _mixed(_RHO_DEN))
    rho_inv_den = _mixed(_RHO_INV_DEN)
    rho_inv_y2 = _ratio(_mixed(_RHO_INV_Y2_NUM), rho_inv_den)
    rho_inv_y3 = _ratio(_mixed(_RHO_INV_Y3_NUM), rho_inv_den)

    kdq, dq = _omega_form(_mixed(_DQ_TEXT))
    kg1, g1 = _omega_form(_mixed(_G1_TEXT))
    kg2, g2 = _omega_form(_mixed(_G2_TEXT))
    _guard(kdq == 1 and kg1 == 1 and kg2 == 1, "denominator i-phases")
    _guard(rho_y2[1] == v0 * dq, "shared forward denominator")
    _guard(g2 == g1.substitute({1: -v2}), "inverse denominator symmetry")

    p1 = _mixed(_P1_TEXT)
    p2 = _mixed(_P2_TEXT)
    w_num_m = _mixed(_W_PREFACTOR) * _mixed("(-1 + Y0^2)^5") * p1 * p2
    w_den_m = _mixed("4096*Y0^4") * (
        _mixed(_E1_TEXT) ** 2 * _mixed(_E2_TEXT) ** 2 * _mixed(_DQ_TEXT) ** 2
    )
    w_pow7 = _ratio(w_num_m, w_den_m)

    k1, p1w = _omega_form(p1)
    k2, p2w = _omega_form(p2)
    _guard(k1 == 1 and k2 == 1, "quartic factor i-phases")
    _guard(
        p2w == p1w.substitute({0: -v0, 1: -v2}),
        "quartic factors are a sign-flip pair",
    )
    ke1, e1 = _omega_form(_mixed(_E1_TEXT))
    ke2, e2 = _omega_form(_mixed(_E2_TEXT))
    _guard(ke1 == 1 and e1 == (-4) * cone1, "first cone inside z^7")
    _guard(ke2 == 1 and e2 == 4 * cone2, "second cone inside z^7")

    kc1, c1p = _omega_form(_mixed(_C1_TEXT))
    kc2, c2p = _omega_form(_mixed(_C2_TEXT))
    _guard(kc1 == 0 and c1p == cone1, "transport cofactor, first factor")
    _guard(kc2 == 0 and c2p == cone2, "transport cofactor, second factor")
    z_cofactor = (cone1 * cone2, (v0 * v0 - one) ** 3)

    # embedding functions; the two big ones share (Y0^2 - 1) and the cone
    # denominators, and carry 1/z
    ra_num_m = _mixed("4*i*(-1 + Y0)*(1 + Y0)") * _mixed(_M1_TEXT)
    d1m = _mixed(_D1_TEXT)
    d2m = _mixed(_D2_TEXT)
    kd1, d1 = _omega_form(d1m)
    kd2, d2 = _omega_form(d2m)
    _guard(kd1 == 0 and d1 == 4 * cone1, "embedding denominator, first cone")
    _guard(kd2 == 1 and d2 == 4 * cone2, "embedding denominator, second cone")
    ra_den_m = _mixed(_EMBED_PREFACTOR) * _mixed("Y0") * d1m * d2m
    rb_num_m = _mixed("16*i*(-1 + Y0)*(1 + Y0)") * _mixed(_M2_TEXT)
    rb_den_m = _mixed(_EMBED_PREFACTOR) * d1m * d2m
    embed_a = _ratio(ra_num_m, ra_den_m) + (-1,)
    embed_b = _ratio(rb_num_m, rb_den_m) + (-1,)
    embed_u1 = (v2 * v2 - v3 * v3, v0 * v0 - one, 1)

    _guard(
        F.substitute({0: -v0, 1: -v2}) == F,
        "chart sextic involution invariance",
    )

    base_denominators = (v0, v0 * v0 - one, dq, g1, g2, cone1, cone2)
    return ChartTables(
        F=F,
        rho_y2=rho_y2,
        rho_y3=rho_y3,
        rho_inv_y2=rho_inv_y2,
        rho_inv_y3=rho_inv_y3,
        w_pow7=w_pow7,
        z_cofactor=z_cofactor,
        embed_u1=embed_u1,
        embed_a=embed_a,
        embed_b=embed_b,
        cone1=cone1,
        cone2=cone2,
        dq=dq,
        g1=g1,
        g2=g2,
        base_denominators=base_denominators,
    )


# ---------------------------------------------------------------------------
# exact symbolic suites


def _strip_power(f: Poly, var: int, k: int) -> Poly:
    """Divide by a variable power that must divide every monomial."""
    out: dict = {}
    for m, c in f.coeffs.items():
        if m[var] < k:
            raise ExtractionFailed(f"monomial {m} lacks the factor (var {var})^{k}")
        e = list(m)
        e[var] -= k
        out[tuple(e)] = c
    return Poly(f.ring, f.domain, out)


def _divides(g: Poly, f: Poly) -> bool:
    try:
        poly_exact_div(f, g)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def verify_polynomial_identities() -> dict:
    """The exact identities satisfied by the sextic form itself."""
    f = sextic_f()
    h0 = conic_h0()
    y0, y1, y2, y3 = YRING.gens(QW)

    involution = sigma_y(f) == f

    # section over the y1 = 0 plane: a pure multiple of y0^6
    on_y1 = f.substitute({1: YRING.constant(0, QW)})
    y1_scalar = QuadExt(28)
    y1_ok = on_y1 == y1_scalar * y0 ** 6

    # section over y0 = 0: scalar times y1^2 * h0^2
    on_y0 = f.substitute({0: YRING.constant(0, QW)})
    y0_scalar = QuadExt(14, 2)
    y0_ok = on_y0 == y0_scalar * y1 * y1 * h0 * h0
    quarter_term = QuadExt(Fraction(-1, 4), Fraction(3, 4))
    crosscheck = (
        QuadExt(-77, -17)
        == QuadExt(-2) * y0_scalar + y0_scalar * quarter_term * quarter_term
    )

    # pencil of plane sections y0 = a*y1: always divisible by y1^2
    av, ay0, ay1, ay2, ay3 = ARING.gens(QW)
    f_lift = compose(f, [ay0, ay1, ay2, ay3])
    pencil = f_lift.substitute({1: av * ay1})
    try:
        g_a = _strip_power(pencil, 2, 2)
        pencil_ok = True
    except ExtractionFailed:
        g_a = pencil
        pencil_ok = False

    # the two base points (y1, y2, y3) = (0, -1, 1), (0, 1, 1) are singular
    # on every member of the pencil, identically in a
    zero = ARING.constant(0, QW)
    node_ok = True
    for sgn in (-1, 1):
        images = {2: zero, 3: ARING.constant(sgn, QW), 4: ARING.constant(1, QW)}
        for probe in (g_a, g_a.derivative(2), g_a.derivative(3), g_a.derivative(4)):
            if not probe.substitute(images).is_zero():
                node_ok = False
    conic_nodes = all(
        h0.evaluate([0, 0, sgn, 1]) == QuadExt(0) for sgn in (-1, 1)
    )

    # at a = 1 the quartic splits: two lines times the conic of A1'
    g1_y = compose(
        g_a.substitute({0: ARING.constant(1, QW)}),
        [YRING.constant(0, QW), YRING.constant(0, QW), y1, y2, y3],
    )
    qa1p = _yparse(_A1P_CONIC_TEXT)
    product = (y2 + y3) * (y2 - y3) * qa1p
    split_const = None
    split_ok = False
    if not product.is_zero() and not g1_y.is_zero():
        c = g1_y.leading_coeff() / product.leading_coeff()
        split_ok = g1_y == product.scale(c)
        if split_ok:
            split_const = str(c)

    checks = {
        "involution_invariant": involution,
        "y1_section_ok": y1_ok,
        "y0_section_ok": y0_ok,
        "coefficient_crosscheck": crosscheck,
        "pencil_strips_square": pencil_ok,
        "pencil_base_points_singular": node_ok,
        "conic_through_base_points": conic_nodes,
        "diagonal_member_splits": split_ok,
    }
    return {
        "id": "sextic_polynomial_identities",
        **checks,
        "y1_section_scalar": str(y1_scalar),
        "y0_section_scalar": str(y0_scalar),
        "diagonal_split_constant": split_const,
        "ok": all(checks.values()),
    }


def verify_singular_locus() -> dict:
    """The non-normal locus: a double line, a double conic, and the pinch
    point where the model acquires its designated singularity."""
    f = sextic_f()
    h0 = conic_h0()
    partials = [f.derivative(i) for i in range(4)]
    zero = YRING.constant(0, QW)

    # (a) the line y0 = y1 = 0 lies in the singular locus
    line_ok = all(
        g.substitute({0: zero, 1: zero}).is_zero() for g in [f] + partials
    )

    # (b) on y0 = 0 every partial is a multiple of the conic h0
    restricted = [g.substitute({0: zero}) for g in partials]
    conic_ok = all(r.is_zero() or _divides(h0, r) for r in restricted)
    y1, y2 = YRING.variable(1, QW), YRING.variable(2, QW)
    cofactor = QuadExt(42, 2)
    cofactor_ok = restricted[0] == cofactor * y1 * y1 * y2 * h0
    quarter_term = QuadExt(Fraction(-1, 4), Fraction(3, 4))
    cofactor_cross = cofactor * quarter_term == QuadExt(-21, 31)

    # (c) the point (1 : 1 : 0 : 0) is singular with corank-1 quadratic part
    point = [QuadExt(1), QuadExt(1), QuadExt(0), QuadExt(0)]
    gradient_ok = all(g.evaluate(point) == QuadExt(0) for g in partials)
    chart = f.substitute({0: YRING.constant(1, QW)})
    hess = [
        [
            chart.derivative(i).derivative(j).evaluate([0, 1, 0, 0])
            for j in (1, 2, 3)
        ]
        for i in (1, 2, 3)
    ]
    hessian_rank = exact_rank(hess, QW)

    checks = {
        "double_line": line_ok,
        "conic_divides_partials": conic_ok,
        "y0_partial_cofactor_ok": cofactor_ok,
        "cofactor_crosscheck": cofactor_cross,
        "gradient_vanishes_at_pinch": gradient_ok,
        "hessian_rank_two": hessian_rank == 2,
    }
    return {
        "id": "sextic_singular_locus",
        **checks,
        "hessian_rank": hessian_rank,
        "y0_partial_cofactor": str(cofactor),
        "ok": all(checks.values()),
    }


def _t_gcd(polys: Sequence[Poly]) -> Poly:
    """gcd of univariate polynomials over Q(w) (monic, or zero)."""

    def rem(a: Poly, b: Poly) -> Poly:
        while not a.is_zero() and a.total_degree() >= b.total_degree():
            shift = a.total_degree() - b.total_degree()
            c = a.leading_coeff() / b.leading_coeff()
            a = a - b.mul_monomial((shift,)).scale(c)
        return a

    g = polys[0]
    for h in polys[1:]:
        while not h.is_zero():
            g, h = h, rem(g, h)
    return g.monic() if not g.is_zero() else g


def verify_curve_incidence() -> dict:
    """Every recorded curve image lies on the sextic, on both sheets."""
    f = sextic_f()
    results: dict[str, bool] = {}
    coprime = True
    max_param_degree = 0
    for base in curve_records():
        for rec in (base, sigma_record(base)):
            if rec.kind == POINT:
                ok = f.evaluate(list(rec.payload)) == QuadExt(0)
            elif rec.kind == PARAMETRIC:
                image = compose(f, list(rec.payload))
                ok = image.is_zero()
                max_param_degree = max(
                    max_param_degree,
                    max(ppoly.total_degree() for ppoly in rec.payload) * 6,
                )
                coprime = coprime and _t_gcd(list(rec.payload)).total_degree() == 0
            else:
                ok = _ideal_member(f, rec.payload)
            results[rec.label] = ok

    cones_invariant = sigma_y(symmetrized_cones()) == symmetrized_cones()

    ok = all(results.values()) and coprime and cones_invariant
    return {
        "id": "sextic_curve_incidence",
        "curves": results,
        "parametric_payloads_coprime": coprime,
        "parametric_degree_bound": max_param_degree,
        "symmetrized_cones_invariant": cones_invariant,
        "ok": ok,
    }


def _sigma_parity(num: Poly, den: Poly) -> str:
    ns, ds = sigma_y(num), sigma_y(den)
    if ns * den == num * ds:
        return "even"
    if ns * den == -(num * ds):
        return "odd"
    return "mixed"


def derive_integral_equations() -> dict:
    """Monic quadratics over the coordinate ring for y0^3/y1 and h0*y1/y0.

    Both are extracted from f by stratifying on the relevant variable; the
    cleared identity must reproduce f exactly up to the section scalar.
    """
    f = sextic_f()
    h0 = conic_h0()
    y0, y1, y2, y3 = YRING.gens(QW)
    zero = YRING.constant(0, QW)

    def stratify(g: Poly, var: int) -> dict[int, Poly]:
        strata: dict[int, dict] = {}
        for m, c in g.coeffs.items():
            e = list(m)
            k = e[var]
            e[var] = 0
            strata.setdefault(k, {})[tuple(e)] = c
        return {k: Poly(YRING, QW, d) for k, d in strata.items()}

    record: dict = {"id": "sextic_integral_elements"}

    # y4 = y0^3 / y1: clear y1^2 against the y1-stratification of f
    by_y1 = stratify(f, 1)
    s0 = by_y1.get(0, zero)
    if s0 != QuadExt(28) * y0 ** 6:
        raise ExtractionFailed("y1-free stratum is not 28*y0^6")
    lin = by_y1.get(1, zero)
    a4 = poly_exact_div(lin, y0 ** 3) / 28
    b4 = zero
    for k, part in by_y1.items():
        if k >= 2:
            b4 = b4 + part * y1 ** (k - 2)
    b4 = b4 / 28
    y4_identity = y0 ** 6 + a4 * (y0 ** 3) * y1 + b4 * y1 * y1 == f / 28
    record["y4"] = {
        "a": dataset.canonical_serialize(a4),
        "b_terms": b4.num_terms(),
        "identity_ok": y4_identity,
        "sigma_parity": _sigma_parity(y0 ** 3, y1),
        "grading": 3 - 1,
    }

    # y5 = h0*y1 / y0: clear y0^2 against the y0-stratification
    by_y0 = stratify(f, 0)
    scalar = QuadExt(14, 2)
    if by_y0.get(0, zero) != scalar * (y1 * h0) ** 2:
        raise ExtractionFailed("y0-free stratum is not (14+2w)*(y1*h0)^2")
    lin0 = by_y0.get(1, zero)
    a5 = poly_exact_div(poly_exact_div(lin0, h0), y1) / scalar
    b5 = zero
    for k, part in by_y0.items():
        if k >= 2:
            b5 = b5 + part * y0 ** (k - 2)
    b5 = b5 / scalar
    y5_identity = (y1 * h0) ** 2 + a5 * (y1 * h0) * y0 + b5 * y0 * y0 == f / scalar
    record["y5"] = {
        "a": dataset.canonical_serialize(a5),
        "b_terms": b5.num_terms(),
        "identity_ok": y5_identity,
        "sigma_parity": _sigma_parity(h0 * y1, y0),
        "grading": 3 - 1,
    }

    parity_ok = (
        record["y4"]["sigma_parity"] == "odd"
        and record["y5"]["sigma_parity"] == "odd"
    )
    record["ok"] = y4_identity and y5_identity and parity_ok
    return record


def run_symbolic_suite() -> dict:
    """All exact chart-free checks bundled for the certification report."""
    parts = [
        verify_polynomial_identities(),
        verify_singular_locus(),
        verify_curve_incidence(),
        derive_integral_equations(),
    ]
    return {
        "id": "sextic_symbolic",
        "parts": parts,
        "ok": all(p["ok"] for p in parts),
    }


# ---------------------------------------------------------------------------
# finite-field sampling

_VIRTUAL_STREAMS = 4
_MAX_DRAWS_PER_POINT = 400


def _as_field(p) -> PrimeField:
    return p if isinstance(p, PrimeField) else PrimeField(int(p))


def _uni_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _uni_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        if c:
            off = len(a) - len(b)
            for i, bc in enumerate(b):
                a[off + i] = (a[off + i] - c * bc) % p
        a.pop()
    return _uni_trim(a)


def _uni_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _uni_trim(list(a)), _uni_trim(list(b))
    while b:
        a, b = b, _uni_rem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _uni_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _uni_rem(out, mod, p)


def _uni_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    out = [1]
    base = _uni_rem(list(base), mod, p)
    while e:
        if e & 1:
            out = _uni_mulmod(out, base, mod, p)
        base = _uni_mulmod(base, base, mod, p)
        e >>= 1
    return out


def _split_roots(g: list[int], p: int, rng: random.Random) -> list[int]:
    """Roots of a monic product of distinct linear factors."""
    deg = len(g) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [(-g[0]) % p]
    half = (p - 1) // 2
    while True:
        shift = rng.randrange(p)
        h = _uni_powmod([shift, 1], half, g, p)
        h = _uni_trim([(h[0] - 1) % p] + h[1:] if h else [p - 1])
        d = _uni_gcd(h, g, p)
        if 0 < len(d) - 1 < deg:
            rest = _uni_gcd(g, _poly_div_exact(g, d, p), p)
            return sorted(_split_roots(d, p, rng) + _split_roots(rest, p, rng))


def _poly_div_exact(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        out[len(a) - len(b)] = c
        if c:
            off = len(a) - len(b)
            for i, bc in enumerate(b):
                a[off + i] = (a[off + i] - c * bc) % p
        a.pop()
        a = _uni_trim(a)
        if not a:
            break
    return _uni_trim(out)


def _surface_roots(Fp: Poly, y2: int, y3: int, p: int, rng: random.Random) -> list[int]:
    """All Y0 with F(Y0, y2, y3) = 0 over GF(p)."""
    coeffs = [0] * 7
    for m, c in Fp.coeffs.items():
        coeffs[m[0]] = (coeffs[m[0]] + c * pow(y2, m[1], p) * pow(y3, m[2], p)) % p
    coeffs = _uni_trim(coeffs)
    if len(coeffs) <= 1:
        return []  # constant: no roots, or a full line (skipped either way)
    xp = _uni_powmod([0, 1], p, coeffs, p)
    xp = list(xp) + [0] * (2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = _uni_gcd(xp, coeffs, p)
    if len(g) <= 1:
        return []
    return _split_roots(g, p, rng)


class SurfaceChart:
    """Mod-p reduction of the chart tables plus point evaluation helpers."""

    def __init__(self, field: PrimeField):
        self.field = field
        self.p = field.p
        t = chart_tables()
        red = lambda f: f.to_prime_field(field)
        self.F = red(t.F)
        self.rho_y2 = (red(t.rho_y2[0]), red(t.rho_y2[1]))
        self.rho_y3 = (red(t.rho_y3[0]), red(t.rho_y3[1]))
        self.rho_inv_y2 = (red(t.rho_inv_y2[0]), red(t.rho_inv_y2[1]))
        self.rho_inv_y3 = (red(t.rho_inv_y3[0]), red(t.rho_inv_y3[1]))
        self.w_num, self.w_den = red(t.w_pow7[0]), red(t.w_pow7[1])
        self.zg_num, self.zg_den = red(t.z_cofactor[0]), red(t.z_cofactor[1])
        self.embed_u1 = (red(t.embed_u1[0]), red(t.embed_u1[1]), t.embed_u1[2])
        self.embed_a = (red(t.embed_a[0]), red(t.embed_a[1]), t.embed_a[2])
        self.embed_b = (red(t.embed_b[0]), red(t.embed_b[1]), t.embed_b[2])
        self.denominators = tuple(red(d) for d in t.base_denominators)
        self._cubics: list[Poly] | None = None

    def cubics(self) -> list[Poly]:
        if self._cubics is None:
            self._cubics = [
                eq.to_prime_field(self.field) for eq in dataset.expand_equations()
            ]
        return self._cubics

    def on_surface(self, pt: Sequence[int]) -> bool:
        return self.F.evaluate(list(pt)) == 0

    def denominators_ok(self, pt: Sequence[int]) -> bool:
        return all(d.evaluate(list(pt)) != 0 for d in self.denominators)

    def _apply(self, pair: tuple[Poly, Poly], pt: Sequence[int]) -> int:
        num = pair[0].evaluate(list(pt))
        den = pair[1].evaluate(list(pt))
        if den == 0:
            raise DenominatorVanished(f"at {tuple(pt)}")
        return num * pow(den, self.p - 2, self.p) % self.p

    def rho(self, pt: Sequence[int]) -> tuple[int, int, int]:
        return (pt[0], self._apply(self.rho_y2, pt), self._apply(self.rho_y3, pt))

    def rho_inv(self, pt: Sequence[int]) -> tuple[int, int, int]:
        return (
            pt[0],
            self._apply(self.rho_inv_y2, pt),
            self._apply(self.rho_inv_y3, pt),
        )

    def w_value(self, pt: Sequence[int]) -> int:
        return self._apply((self.w_num, self.w_den), pt)

    def z_cofactor_value(self, pt: Sequence[int]) -> int:
        return self._apply((self.zg_num, self.zg_den), pt)

    def embed_value(self, which: str, pt: Sequence[int], z: int) -> int:
        num, den, zpow = {
            "u1": self.embed_u1,
            "a": self.embed_a,
            "b": self.embed_b,
        }[which]
        base = self._apply((num, den), pt)
        if zpow >= 0:
            return base * pow(z, zpow, self.p) % self.p
        if z == 0:
            raise DenominatorVanished("z = 0")
        return base * pow(z, (self.p - 2) * (-zpow), self.p) % self.p


@lru_cache(maxsize=4)
def surface_chart(p: int, r: int) -> SurfaceChart:
    return SurfaceChart(PrimeField(p, r))


def _point_stream(chart: SurfaceChart, seed, stats: dict | None = None):
    """Deterministic interleaving of four fixed virtual sample streams.

    The stream layout is independent of any worker count, so reports do not
    change when the thread budget does.
    """
    p = chart.p
    rngs = [
        random.Random(f"{seed}:sample:{v}") for v in range(_VIRTUAL_STREAMS)
    ]
    if stats is None:
        stats = {}
    stats.setdefault("draws", 0)
    stats.setdefault("rootless", 0)
    stats.setdefault("excluded", 0)
    stats.setdefault("yielded", 0)
    v = 0
    while True:
        rng = rngs[v % _VIRTUAL_STREAMS]
        v += 1
        for _ in range(_MAX_DRAWS_PER_POINT):
            stats["draws"] += 1
            y2 = rng.randrange(p)
            y3 = rng.randrange(p)
            roots = _surface_roots(chart.F, y2, y3, p, rng)
            if not roots:
                stats["rootless"] += 1
                continue
            pt = (rng.choice(roots), y2, y3)
            if not chart.denominators_ok(pt):
                stats["excluded"] += 1
                continue
            stats["yielded"] += 1
            yield pt
            break
        else:
            raise InsufficientPoints(
                f"no usable point in {_MAX_DRAWS_PER_POINT} draws (p={p})"
            )


def sample_surface_points(p, count: int, seed, stats: dict | None = None):
    """Deterministic random points of F = 0 over GF(p) avoiding all map
    denominators; same seed means the same list."""
    field = _as_field(p)
    chart = surface_chart(field.p, field.r)
    stream = _point_stream(chart, seed, stats)
    return [next(stream) for _ in range(count)]


def export_points_jsonl(p, points: Iterable[Sequence[int]], fp) -> int:
    """Write sampled points with their seventh-root value, one JSON object
    per line; returns the number of lines written."""
    field = _as_field(p)
    chart = surface_chart(field.p, field.r)
    e = _seventh_root_exponent(field.p)
    n = 0
    for pt in points:
        w = chart.w_value(pt)
        z = pow(w, e, field.p)
        fp.write(
            json.dumps({"Y0": pt[0], "Y2": pt[1], "Y3": pt[2], "z": z}) + "\n"
        )
        n += 1
    return n


def _seventh_root_exponent(p: int) -> int:
    try:
        return pow(7, -1, p - 1)
    except ValueError as exc:
        raise SeventhRootUndefined(
            f"7 divides p - 1 for p = {p}; seventh roots are ambiguous"
        ) from exc


def verify_automorphism_order3(p, count: int = 100, seed=42) -> dict:
    """Sampled certification that the chart map has order three.

    For each surface point: its image stays on the surface, the printed
    inverse undoes the map, and three applications return the point.
    """
    field = _as_field(p)
    chart = surface_chart(field.p, field.r)
    stats: dict = {}
    stream = _point_stream(chart, seed, stats)
    surface_failures = inverse_failures = cube_failures = 0
    skips = 0
    checked = 0
    while checked < count:
        pt = next(stream)
        try:
            q1 = chart.rho(pt)
            back = chart.rho_inv(q1)
            q2 = chart.rho(q1)
            q3 = chart.rho(q2)
        except DenominatorVanished:
            skips += 1
            continue
        if not chart.on_surface(q1):
            surface_failures += 1
        if back != pt:
            inverse_failures += 1
        if q3 != pt:
            cube_failures += 1
        checked += 1
    failures = surface_failures + inverse_failures + cube_failures
    return {
        "id": "automorphism_order3",
        "prime": field.p,
        "sqrt_minus7": field.r,
        "seed": seed,
        "samples": checked,
        "surface_failures": surface_failures,
        "inverse_failures": inverse_failures,
        "cube_failures": cube_failures,
        "denominator_skips": skips,
        "draw_stats": stats,
        "ok": failures == 0,
    }


def verify_z_transport(p, count: int = 100, seed=42) -> dict:
    """Sampled certification of the seventh-power transport law.

    z is recovered from w = z^7 via the exponent inverse to 7 mod p - 1;
    the law (z^2 * g)^7 = w after the order-3 map, and the invariance of w
    under the chart involution, must hold at every checked point.

    The cofactor g pairs with the double-primed coordinate direction: the
    printed four-tuple caption mixes primes, but only z'' together with
    (Y2'', Y3'') closes the seventh-power cover, so that orientation is
    the one asserted (and recorded) here.
    """
    field = _as_field(p)
    e = _seventh_root_exponent(field.p)
    chart = surface_chart(field.p, field.r)
    stats: dict = {}
    stream = _point_stream(chart, seed, stats)
    root_failures = transport_failures = sigma_failures = 0
    skips = 0
    checked = 0
    while checked < count:
        pt = next(stream)
        try:
            w = chart.w_value(pt)
            z = pow(w, e, field.p)
            g = chart.z_cofactor_value(pt)
            q1 = chart.rho_inv(pt)
            w_next = chart.w_value(q1)
            spt = ((-pt[0]) % field.p, (-pt[1]) % field.p, pt[2])
            w_sigma = chart.w_value(spt)
        except DenominatorVanished:
            skips += 1
            continue
        if pow(z, 7, field.p) != w:
            root_failures += 1
        if pow(z * z % field.p * g % field.p, 7, field.p) != w_next:
            transport_failures += 1
        if w_sigma != w:
            sigma_failures += 1
        checked += 1
    failures = root_failures + transport_failures + sigma_failures
    return {
        "id": "z_transport",
        "prime": field.p,
        "sqrt_minus7": field.r,
        "seed": seed,
        "seventh_root_exponent": e,
        "transport_direction": "double_primed",
        "samples": checked,
        "root_failures": root_failures,
        "transport_failures": transport_failures,
        "sigma_failures": sigma_failures,
        "denominator_skips": skips,
        "draw_stats": stats,
        "ok": failures == 0,
    }


# default layout: coordinate 0 is the constant section, the next three are
# the order-3 orbit of the first embedding function, then the orbits of the
# other two.  "x:k" means function x after k applications of the map.
DEFAULT_ASSIGNMENT = (
    "one",
    "u1:0",
    "u1:1",
    "u1:2",
    "a:0",
    "a:1",
    "a:2",
    "b:0",
    "b:1",
    "b:2",
)

# Search outcome, recorded for replay rather than asserted as normative: a
# mod-p nullspace scan over orbit-constant scalings (linearized through the
# degree-3 monomial map) leaves exactly one candidate, and its unique small
# lift reproduces the scan value at three independent primes
# (263, 277, 317).  With this vector every one of the 84 cubics vanishes at
# every sampled surface point.
EMBED_SCALING = QuadExt(Fraction(-3, 32), Fraction(-1, 32))
FOUND_SCALINGS = (1, EMBED_SCALING, EMBED_SCALING, EMBED_SCALING, 1, 1, 1, 1, 1, 1)


def verify_embedding_samples(
    p,
    count: int,
    seed,
    scalings: Sequence,
    assignment: Sequence[str] = DEFAULT_ASSIGNMENT,
) -> dict:
    """Exploratory check: scale the embedding-function orbit into the ten
    coordinates and evaluate all 84 cubics at sampled surface points.

    The coordinate normalization upstairs is only determined up to linear
    changes, so no particular scaling vector is asserted; a vector that
    makes every cubic vanish is simply recorded for replay.
    """
    field = _as_field(p)
    if len(scalings) != 10 or len(assignment) != 10:
        raise ValueError("need 10 scalings and 10 assignment slots")
    scal = [
        field.reduce(s) if not isinstance(s, int) else s % field.p
        for s in scalings
    ]
    if not any(scal):
        raise ValueError("all-zero scaling vector is a degenerate point")
    e = _seventh_root_exponent(field.p)
    chart = surface_chart(field.p, field.r)
    stats: dict = {}
    stream = _point_stream(chart, seed, stats)
    cubics = chart.cubics()
    nonzero = 0
    skips = 0
    checked = 0
    while checked < count:
        p0 = next(stream)
        try:
            w = chart.w_value(p0)
            z0 = pow(w, e, field.p)
            orbit = [(p0, z0)]
            for _ in range(2):
                base_pt, base_z = orbit[-1]
                z_next = base_z * base_z % field.p * chart.z_cofactor_value(
                    base_pt
                ) % field.p
                orbit.append((chart.rho_inv(base_pt), z_next))
            uvec = []
            for slot, s in zip(assignment, scal):
                if slot == "one":
                    uvec.append(s)
                    continue
                which, _, idx = slot.partition(":")
                pt_k, z_k = orbit[int(idx)]
                uvec.append(s * chart.embed_value(which, pt_k, z_k) % field.p)
        except DenominatorVanished:
            skips += 1
            continue
        nonzero += sum(1 for eq in cubics if eq.evaluate(uvec) != 0)
        checked += 1
    record = {
        "id": "embedding_samples",
        "prime": field.p,
        "sqrt_minus7": field.r,
        "seed": seed,
        "samples": checked,
        "assignment": list(assignment),
        "scalings": scal,
        "nonzero_evaluations": nonzero,
        "denominator_skips": skips,
        "ok": nonzero == 0,
    }
    return record

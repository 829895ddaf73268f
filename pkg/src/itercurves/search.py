"""Bounded rational-point search, a Runge-style complete integer-point
enumeration for even-degree models, local solvability obstructions, and the
orchestrated stage-4 survey across the curves F_0..F_7.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .curves import AffinePoint, HyperCurve, InfinitePoint, make_curve, twist
from .errors import DomainError
from .exact import format_rational, is_square, is_square_int, sqrt_exact
from .galois import stage_status
from .ratpoly import RatPoly


def _height(x: Fraction) -> int:
    return max(abs(x.numerator), x.denominator)


@dataclass
class PointList:
    curve: HyperCurve
    points: list[AffinePoint]
    at_infinity: list[InfinitePoint]
    complete_over: str  # "Z" (Runge-complete) or "search_bound"
    bound: int | None = None

    def sorted_points(self) -> list[AffinePoint]:
        return sorted(self.points, key=lambda p: (_height(p.x), p.x, p.y))

    def x_values(self) -> list[Fraction]:
        return sorted({p.x for p in self.points})

    def to_json(self) -> dict:
        return {
            "label": self.curve.label,
            "points": [p.to_json() for p in self.sorted_points()],
            "infinity": [q.to_json() for q in self.at_infinity],
            "complete_over": self.complete_over,
            "bound": self.bound,
        }


def naive_search(curve: HyperCurve, height: int) -> PointList:
    """All affine points with x = a/b, |a| <= height, 1 <= b <= height,
    gcd(a, b) = 1, and h(x) a rational square; both y-signs are listed."""
    if height < 1:
        raise DomainError("height must be >= 1")
    pts: list[AffinePoint] = []
    hd, dd = curve.h.integerized()
    d = curve.h.degree
    for b in range(1, height + 1):
        bpow = [b**e for e in range(d + 1)]
        scaled = [hd[i] * bpow[d - i] for i in range(d + 1)]
        m = dd * bpow[d]
        for a in range(-height, height + 1):
            if math.gcd(abs(a), b) != 1:
                continue
            num = 0
            for c in reversed(scaled):
                num = num * a + c
            # num/m is a square iff num*m is a square integer (m > 0)
            t = num * m
            if t < 0 or not is_square_int(t):
                continue
            x = Fraction(a, b)
            y = Fraction(math.isqrt(t), m)
            pts.append(AffinePoint(x, y))
            if y != 0:
                pts.append(AffinePoint(x, -y))
    out = PointList(curve, pts, curve.infinity_points(), "search_bound", height)
    for p in out.points:
        assert curve.contains(p)
    return out


@dataclass
class RungeCertificate:
    """Data of the completed-square trap: with Y = 2^shift * y,
    (Y - g)(Y + g) = h_rem, so integer points force |g(x)| <= |h_rem(x)|."""

    g: RatPoly
    h_rem: RatPoly
    shift: int
    x_range: tuple[int, int]


def _truncated_sqrt(h: RatPoly) -> RatPoly:
    """g of degree k = deg(h)/2 with deg(h - g^2) < k; needs square lc."""
    d = h.degree
    k = d // 2
    lead = sqrt_exact(h.lc)
    gc = [Fraction(0)] * (k + 1)
    gc[k] = lead
    for i in range(k - 1, -1, -1):
        # match coefficient of x^(k+i): 2*gc[k]*gc[i] + (known products)
        acc = h[k + i]
        for a in range(i + 1, k):
            b = k + i - a
            if 0 <= b <= k:
                acc -= gc[a] * gc[b]
        gc[i] = acc / (2 * lead)
    return RatPoly(gc)


def runge_integer_points(curve: HyperCurve) -> tuple[PointList, RungeCertificate]:
    """Provably complete list of integer points on y^2 = h(x) for h in Z[x]
    of even degree with square leading coefficient.

    Completing the square gives g with h - g^2 of low degree; scaling by a
    power of two clears g's dyadic denominators.  Away from roots of the
    remainder, both factors of (Y-g)(Y+g) = h_rem are nonzero integers, so
    |g| <= |h_rem| traps x in a finite computable range.
    """
    h = curve.h
    if h.degree % 2 != 0:
        raise DomainError("Runge trap needs even degree")
    if any(c.denominator != 1 for c in h.coeffs):
        raise DomainError("integer model required")
    if not is_square(h.lc):
        raise DomainError("leading coefficient must be a square")
    g0 = _truncated_sqrt(h)
    denom = g0.denominator_lcm()
    shift = denom.bit_length() - 1
    if 2**shift != denom:
        raise DomainError("square completion has non-dyadic denominators")
    g = g0 * (2**shift)
    h_rem = h * (4**shift) - g * g
    if h_rem.is_zero():
        raise DomainError("h is a perfect square; the model is degenerate")

    # range where |g| <= |h_rem| can hold: real roots of g^2 - h_rem^2 are
    # within the Cauchy bound of that polynomial
    diff = g * g - h_rem * h_rem
    bound = 1 + max(abs(c) for c in diff.coeffs) / abs(diff.lc)
    r = int(bound) + 1
    candidates = set(range(-r, r + 1))
    # roots of h_rem give the zero-factor case; rational root test over Z
    c0 = h_rem[0]
    if c0 == 0:
        candidates.add(0)
    else:
        lim = int(abs(c0))
        for t in range(1, int(math.isqrt(lim)) + 1):
            if lim % t == 0:
                for cand in (t, -t, lim // t, -lim // t):
                    candidates.add(cand)
    pts = []
    for x in sorted(candidates):
        v = h(x)
        if v >= 0 and is_square_int(int(v)):
            y = math.isqrt(int(v))
            pts.append(AffinePoint(Fraction(x), Fraction(y)))
            if y != 0:
                pts.append(AffinePoint(Fraction(x), Fraction(-y)))
    cert = RungeCertificate(g=g, h_rem=h_rem, shift=shift, x_range=(-r, r))
    return PointList(curve, pts, curve.infinity_points(), "Z"), cert


def local_obstruction(curve: HyperCurve, p: int) -> bool:
    """True iff the projective model has no F_p-points at all (including the
    weighted points at infinity), certifying emptiness of rational points.
    Bad reduction is fine: any rational point would still reduce to a point
    of the closure.
    """
    # clear denominators by a square so the rational point set is unchanged
    d = curve.h.denominator_lcm()
    coeffs = [int(c) % p for c in (curve.h * (d * d)).coeffs]
    deg = curve.h.degree
    sqs = {y * y % p for y in range(p)}  # includes 0
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc in sqs:
            return False
    if deg % 2 == 1:
        return False  # odd degree always carries the point at infinity
    return coeffs[-1] not in sqs


def obstruction_primes(curve: HyperCurve, bound: int = 50) -> list[int]:
    from .exact import is_probable_prime

    return [
        p for p in range(2, bound + 1) if p % 2 and is_probable_prime(p) and local_obstruction(curve, p)
    ]


# ---------------------------------------------------------------------------
# the stage-4 survey
# ---------------------------------------------------------------------------

_EXCLUDED_C = {Fraction(0), Fraction(-1), Fraction(-2)}


@dataclass
class SurveyEntry:
    label: str
    found: PointList
    runge: PointList | None = None
    obstructions: dict[int, list[int]] = field(default_factory=dict)

    def to_json(self):
        out = {"curve": self.label, "search": self.found.to_json()}
        if self.runge is not None:
            out["integer_points"] = self.runge.to_json()
        if self.obstructions:
            out["twist_obstructions_p<=50"] = {str(d): ps for d, ps in self.obstructions.items()}
        return out


@dataclass
class SurveyReport:
    entries: list[SurveyEntry]
    candidates: list[Fraction]
    height: int
    confirmed: dict[str, bool] = field(default_factory=dict)

    def to_json(self):
        return {
            "height": self.height,
            "curves": [e.to_json() for e in self.entries],
            "stage4_candidates": [format_rational(c) for c in self.candidates],
            "stage4_confirmed": self.confirmed,
            "note": "emptiness beyond the search bound is not certified here",
        }


def s4_survey(height: int, obstruction_bound: int = 50) -> SurveyReport:
    """Search all stage-4 survey curves to the given height; run the Runge
    trap where its hypotheses hold; record local obstructions of the +/-1
    twists of the genus-2 sextic that the covering arguments lean on; report
    the surviving parameter values (excluding the degenerate 0, -1, -2) and
    confirm each one is newly small at stage 4.
    """
    if height < 10:
        raise DomainError("height must be >= 10")
    entries = []
    candidates: set[Fraction] = set()
    sextic = make_curve("F2")
    for i in range(8):
        curve = make_curve(f"F{i}")
        found = naive_search(curve, height)
        entry = SurveyEntry(label=curve.label, found=found)
        if curve.h.degree % 2 == 0 and is_square(curve.h.lc):
            entry.runge, _ = runge_integer_points(curve)
        if i == 2:
            for dtw in (1, -1):
                tw = twist(sextic, dtw) if dtw != 1 else sextic
                entry.obstructions[dtw] = obstruction_primes(tw, obstruction_bound)
        entries.append(entry)
        if i >= 1:  # F_0 parametrizes square orbit values, not stage-4 drops
            candidates.update(p.x for p in found.points)
    cands = sorted(
        (c for c in candidates if c not in _EXCLUDED_C),
        key=lambda c: (_height(c), c.numerator),
    )
    confirmed = {
        format_rational(c): stage_status(c, 4).newly_small_at(4) for c in cands
    }
    return SurveyReport(entries=entries, candidates=cands, height=height, confirmed=confirmed)

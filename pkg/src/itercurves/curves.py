"""Constructors for the curve families attached to quadratic iteration,
their covering maps, twists, Weierstrass and Mordell models, the explicit
complex-multiplication endomorphism in the x^2 - 2 case, and power-series
expansions used for residue-class checks.

Families (y^2 = h(x) throughout):
  C  : h = f_c^n(x)
  B  : h = (x - c) * f_c^n(x)
  B+ : h = (x + 2) * T(x),  B- : h = (x - 2) * T(x),  T the iterate of x^2-2
  aux: h = x * (x^(2^n) + 1)
  F0..F7: the stage-4 survey curves, built from the orbit-value polynomials
  A  : h = g(x) * f_c^n(x) for a quadratic g sharing no roots with the tower
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .dynamics import iterate_poly, orbit
from .errors import CapExceeded, DomainError, NotOnCurve
from .exact import FactorBudget, factor_bounded, format_rational, is_square
from .ratpoly import RatPoly, is_squarefree


@dataclass(frozen=True)
class AffinePoint:
    x: Fraction
    y: Fraction

    def to_json(self):
        return {"x": format_rational(self.x), "y": format_rational(self.y)}


@dataclass(frozen=True)
class InfinitePoint:
    sign: int = 1  # +1 / -1 branch on even-degree models; +1 on odd

    def to_json(self):
        return {"infinity": self.sign}


@dataclass
class HyperCurve:
    h: RatPoly
    label: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.h.degree < 3:
            raise DomainError(f"{self.label}: degree {self.h.degree} model is not hyperelliptic-sized")
        if not is_squarefree(self.h):
            raise DomainError(f"{self.label}: right-hand side is not squarefree")

    @property
    def genus(self) -> int:
        return (self.h.degree - 1) // 2

    def infinity_points(self) -> list[InfinitePoint]:
        """Rational points at infinity of the smooth model (over the rationals)."""
        if self.h.degree % 2 == 1:
            return [InfinitePoint(1)]
        if is_square(self.h.lc):
            return [InfinitePoint(1), InfinitePoint(-1)]
        return []

    def contains(self, p: AffinePoint) -> bool:
        return p.y * p.y == self.h(p.x)

    def to_json(self):
        return {
            "label": self.label,
            "params": {k: str(v) for k, v in self.params.items()},
            "h": self.h.to_strings(),
            "genus": self.genus,
        }


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def _orbit_value_poly(j: int) -> RatPoly:
    """f_x^j(0) as a polynomial in the parameter x: p_1 = x, p_j = p_(j-1)^2 + x."""
    p = RatPoly.x()
    for _ in range(j - 1):
        p = p * p + RatPoly.x()
    return p


def _survey_polys() -> dict[int, RatPoly]:
    x = RatPoly.x()
    p2 = _orbit_value_poly(2)
    p3 = _orbit_value_poly(3)
    p4 = _orbit_value_poly(4)
    q3 = p3.exact_div(x)            # x^3 + 2x^2 + x + 1
    sextic = p4.exact_div(p2)       # x^6 + 3x^5 + 3x^4 + 3x^3 + 2x^2 + 1
    return {
        0: p4,
        1: -p4.exact_div(x),
        2: sextic,
        3: -(x * sextic),
        4: p4.exact_div(x) * q3,
        5: p4 * (-q3),
        6: sextic * p3,
        7: -(sextic * q3),
    }


FOUR_CYCLE_C = Fraction(-31, 48)
FOUR_CYCLE_G1 = RatPoly([Fraction(23, 48), Fraction(-1, 2), 1])
FOUR_CYCLE_G2 = RatPoly([Fraction(53, 48), 2, 1])


def make_curve(
    family: str,
    c: Fraction | int | None = None,
    n: int | None = None,
    sign: int = 1,
    g: RatPoly | None = None,
    h: RatPoly | None = None,
    degree_cap: int = 4096,
) -> HyperCurve:
    """Build a curve from one of the named families (or 'custom' with h)."""
    family = family.strip()
    if family == "C":
        cq = Fraction(c)
        return HyperCurve(iterate_poly(cq, n, degree_cap), f"C{n}", {"c": cq, "n": n})
    if family == "B":
        cq = Fraction(c)
        hh = RatPoly([-cq, 1]) * iterate_poly(cq, n, degree_cap)
        return HyperCurve(hh, f"B{n}", {"c": cq, "n": n})
    if family in ("B+", "B-"):
        s = 1 if family == "B+" else -1
        t = iterate_poly(Fraction(-2), n, degree_cap)
        hh = RatPoly([2 * s, 1]) * t
        return HyperCurve(hh, f"B{n}{'+' if s > 0 else '-'}", {"c": Fraction(-2), "n": n, "sign": s})
    if family == "aux":
        if 2**n + 1 > degree_cap:
            raise CapExceeded(f"degree 2^{n}+1 exceeds cap {degree_cap}")
        hh = RatPoly.monomial(2**n + 1, 1) + RatPoly.x()
        return HyperCurve(hh, f"aux{n}", {"n": n})
    if family.startswith("F"):
        i = int(family[1:])
        if not 0 <= i <= 7:
            raise DomainError(f"unknown survey curve {family}")
        return HyperCurve(_survey_polys()[i], f"F{i}", {})
    if family == "A":
        cq = Fraction(c) if c is not None else FOUR_CYCLE_C
        gg = g if g is not None else FOUR_CYCLE_G1
        hh = gg * iterate_poly(cq, n, degree_cap)
        return HyperCurve(hh, f"A{n}", {"c": cq, "n": n})
    if family == "custom":
        if h is None:
            raise DomainError("custom family needs h")
        return HyperCurve(h, "custom", {})
    raise DomainError(f"unknown family {family!r}")


def twist(curve: HyperCurve, d: int, budget: FactorBudget | None = None) -> HyperCurve:
    """Quadratic twist: the model y^2 = d*h(x).  d must be squarefree."""
    if d == 0:
        raise DomainError("twist by 0")
    fac = factor_bounded(d, budget)
    if not fac.complete or any(e > 1 for _, e in fac.factors):
        raise DomainError(f"twist parameter {d} is not certifiably squarefree")
    if d == 1:
        return curve
    return HyperCurve(curve.h * d, f"{curve.label}^({d})", dict(curve.params, twist=d))


def substitute_model(curve: HyperCurve, a, b, label: str | None = None) -> HyperCurve:
    """The model y^2 = h(a*x + b) obtained from x -> a*x + b."""
    return HyperCurve(
        curve.h.substitute_linear(Fraction(a), Fraction(b)),
        label or f"{curve.label}[x->{a}x+{b}]",
        dict(curve.params),
    )


# ---------------------------------------------------------------------------
# covering maps
# ---------------------------------------------------------------------------


def cover_pi(
    c: Fraction | int, n: int, m: int, p: AffinePoint
) -> AffinePoint:
    """Push a point of C_n to B_m (m < n) via (x, y) -> (f^(n-m)(x), y * f^(n-m-1)(x)).

    The image satisfies the B_m equation identically: f^(n-m)(x) - c is the
    square of f^(n-m-1)(x), so the defining equations transform exactly.
    """
    if not 0 < m < n:
        raise DomainError("need 0 < m < n")
    cq = Fraction(c)
    cn = make_curve("C", c=cq, n=n)
    if not cn.contains(p):
        raise NotOnCurve(f"{p} not on {cn.label}")
    outer = iterate_poly(cq, n - m)
    scale = iterate_poly(cq, n - m - 1) if n - m - 1 >= 1 else RatPoly.x()
    return AffinePoint(outer(p.x), p.y * scale(p.x))


# ---------------------------------------------------------------------------
# Weierstrass / Mordell models for the stage tower over integer c
# ---------------------------------------------------------------------------


def weierstrass_E1(c: int, d: int) -> tuple[int, int, Callable[[int, int], tuple[int, int]]]:
    """Integral Weierstrass model of the genus-one quotient d*y^2 = (x-c)(x^2+c).

    Returns (A, B) with  y^2 = x^3 + A*x + B  for
        A = -432*(c^2 - 3c)*d^2,   B = -3456*(c^3 + 9c^2)*d^3,
    reached from the quotient model by (x, y) -> (36dx - 12cd, 216 d^2 y); the
    transform is verified exactly at every mapped point.  point_map(n, y)
    sends a stage-n witness d*y^2 = f^n(0) to the integer point
        (12d*(3*f^(n-1)(0) - c), 216*d^2*y*f^(n-2)(0)).
    """
    if int(c) != c or int(d) != d:
        raise DomainError("integer c, d required")
    c, d = int(c), int(d)
    A = -432 * (c * c - 3 * c) * d * d
    B = -3456 * (c**3 + 9 * c * c) * d**3

    def point_map(n: int, y: int) -> tuple[int, int]:
        if n < 2:
            raise DomainError("need n >= 2")
        orb = orbit(c, n)
        if d * y * y != orb.value(n):
            raise DomainError(f"precondition d*y^2 = f^{n}(0) fails")
        # image of (0, y) under C_n -> B_1, (x, v) -> (f^(n-1)(x), v*f^(n-2)(x));
        # f^0 is the identity map, so the n = 2 multiplier is x|_0 = 0
        u = int(orb.value(n - 1))
        v = y * int(orb.value(n - 2)) if n >= 3 else 0
        # image of (u, v) on d*y^2=(x-c)(x^2+c) under the standard-form transform
        X = 36 * d * u - 12 * c * d
        Y = 216 * d * d * v
        if Y * Y != X**3 + A * X + B:
            raise AssertionError("transcription bug: mapped point off the model")
        return (X, Y)

    return A, B, point_map


def mordell_map(d: int, n: int, y: int, c: int = 3) -> tuple[int, int]:
    """Stage-n witness to a point on the Mordell curve y^2 = x^3 - (2d)^3 (c=3).

    d*y^2 = f^n(0) maps to ((f^(n-1)(0) - 1)*d, d^2 * y * f^(n-2)(0)); checked
    exactly on the curve before returning.
    """
    if c != 3:
        raise DomainError("the Mordell model is specific to c = 3")
    if n < 2:
        raise DomainError("need n >= 2")
    orb = orbit(c, n)
    if d * y * y != orb.value(n):
        raise DomainError(f"precondition d*y^2 = f^{n}(0) fails")
    X = (int(orb.value(n - 1)) - 1) * d
    Y = d * d * y * int(orb.value(n - 2)) if n >= 3 else 0
    if Y * Y != X**3 - (2 * d) ** 3:
        raise AssertionError("transcription bug: mapped point off the Mordell curve")
    return (X, Y)


# ---------------------------------------------------------------------------
# the sqrt(-2) endomorphism of the genus-one stage curve at c = -2
# ---------------------------------------------------------------------------
#
# On y^2 = (x-2)(x^2-2) the degree-two endomorphism with kernel {(2,0)} is
#   (x, y) -> ( -(x^2-2)/(2(x-2)) + 2 ,  y*((x-2)^2-2) / (-2*sqrt(-2)*(x-2)^2) )
# and the sign mirror (x-2 -> x+2, +2 -> -2) is the endomorphism of
# y^2 = (x+2)(x^2-2).  Both identities are checked exactly.


def _cm_identity_holds(e: int) -> bool:
    """e = +1: (x-2) model with the map as displayed; e = -1: (x+2) model, mirrored."""
    x2m2 = RatPoly([-2, 0, 1])
    hcurve = RatPoly([-2 * e, 1]) * x2m2          # (x - 2e)(x^2 - 2)
    # X = -(x^2-2)/(2(x-2e)) + 2e  ->  N1 = -(x^2-2) + 2e*2*(x-2e), D1 = 2(x-2e)
    d1 = RatPoly([-4 * e, 2])
    n1 = -x2m2 + Fraction(2 * e) * d1
    shifted = RatPoly([-2 * e, 1]) * RatPoly([-2 * e, 1])  # (x-2e)^2
    n2 = shifted + RatPoly.const(-2)
    d2 = shifted
    # require  (X - 2e)(X^2 - 2) == Y^2  with  Y^2 = h * N2^2 / (-8 D2^2):
    #   h*N2^2*D1^3 + 8*D2^2*(N1 - 2e*D1)(N1^2 - 2*D1^2) == 0
    t1 = n1 + Fraction(-2 * e) * d1
    t2 = n1 * n1 + Fraction(-2) * (d1 * d1)
    lhs = hcurve * (n2 * n2) * (d1 * d1 * d1)
    rhs = Fraction(8) * (d2 * d2) * (t1 * t2)
    return (lhs + rhs).is_zero()


def cm_map_identity() -> bool:
    """Exact rational-function check that the explicit sqrt(-2) endomorphism
    maps each genus-one stage curve at c = -2 back into itself: the displayed
    form on y^2 = (x-2)(x^2-2) and its sign mirror on y^2 = (x+2)(x^2-2).
    """
    return _cm_identity_holds(-1) and _cm_identity_holds(+1)


def cm_map_apply_mod_p(p: int) -> bool:
    """Brute-force the endomorphism on y^2 = (x+2)(x^2-2) over F_p (where -2
    must be a square): every affine point maps onto the curve, poles map to
    infinity.
    """
    s = None
    for t in range(p):
        if t * t % p == (-2) % p:
            s = t
            break
    if s is None:
        raise DomainError(f"-2 is not a square mod {p}")
    curve = lambda x: (x + 2) * (x * x - 2) % p
    sqs = {y * y % p for y in range(p)}
    for x in range(p):
        v = curve(x)
        if v not in sqs:
            continue
        ys = [y for y in range(p) if y * y % p == v]
        for y in ys:
            if (x + 2) % p == 0:
                continue  # pole: image is the point at infinity
            inv = pow(2 * (x + 2) % p, p - 2, p)
            X = (-(x * x - 2) * inv - 2) % p
            n2 = ((x + 2) * (x + 2) - 2) % p
            den = pow((-2 * s) % p * (x + 2) % p * (x + 2) % p, p - 2, p)
            Y = y * n2 % p * den % p
            if Y * Y % p != curve(X):
                return False
    return True


# ---------------------------------------------------------------------------
# reciprocal square-root series and formal integrals
# ---------------------------------------------------------------------------


@dataclass
class SeriesExpansion:
    coefficients: list[Fraction]
    order: int

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i]


def sqrt_recip_series(h: RatPoly, order: int) -> tuple[SeriesExpansion, list[SeriesExpansion]]:
    """Coefficients of h(x)^(-1/2) as exact rationals, for h with h(0) = 1.

    Returns (series, [integral_0, integral_1, integral_2]) where integral_i
    is the term-wise integral of x^i * h^(-1/2) -- vanishing constants, so
    integral_i starts at x^(i+1).
    """
    if h.is_zero() or h[0] != 1:
        raise DomainError("series expansion needs h(0) = 1")
    if order > 64:
        raise DomainError("series order capped at 64")
    hcs = [h[i] for i in range(order)]
    # square root u of h with u(0)=1, then reciprocal v of u
    u = [Fraction(1)] + [Fraction(0)] * (order - 1)
    for k in range(1, order):
        acc = hcs[k]
        for i in range(1, k):
            acc -= u[i] * u[k - i]
        u[k] = acc / 2
    v = [Fraction(1)] + [Fraction(0)] * (order - 1)
    for k in range(1, order):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc -= u[i] * v[k - i]
        v[k] = acc
    # defining identity: v^2 * h == 1 up to the truncation order
    check = (RatPoly(v) * RatPoly(v) * h).coeffs[:order]
    assert check[0] == 1 and not any(check[1:order]), "series inversion drifted"
    series = SeriesExpansion(v, order)
    integrals = []
    for i in range(3):
        coeffs = [Fraction(0)] * (order + i + 1)
        for j, cj in enumerate(v):
            coeffs[i + j + 1] = cj / (i + j + 1)
        integrals.append(SeriesExpansion(coeffs, order + i + 1))
    return series, integrals

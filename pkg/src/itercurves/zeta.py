"""Point counting on hyperelliptic models over F_(p^m), characteristic
polynomials of Frobenius assembled from counts through Newton-style
recurrences, and the finite-field verifiers built on them.

Counts are for the smooth projective model: affine points plus one point at
infinity for odd-degree h, two or zero for even degree as the leading
coefficient is or is not a square in the counting field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import gmpy2

from .curves import HyperCurve, make_curve
from .dynamics import iterate_poly
from .errors import BadReduction, CapExceeded, DomainError, HypothesisViolated
from .exact import is_probable_prime
from .ffield import DEFAULT_Q_WIDTH, make_field
from .ratpoly import discriminant


def reduce_model(curve: HyperCurve, p: int) -> list[int]:
    """Integer coefficients of h mod-p-ready; raises BadReduction when the
    smooth model degenerates at p (denominator, degree drop, or double root).
    """
    coeffs = []
    for c in curve.h.coeffs:
        if c.denominator % p == 0:
            raise BadReduction(p, f"{curve.label}: coefficient denominator divisible by {p}")
        coeffs.append(c.numerator * pow(c.denominator, -1, p) % p if c.denominator > 1 else c.numerator)
    if coeffs[-1] % p == 0:
        raise BadReduction(p, f"{curve.label}: leading coefficient vanishes mod {p}")
    d = discriminant(curve.h)
    if d.numerator % p == 0:
        raise BadReduction(p, f"{curve.label}: discriminant vanishes mod {p}")
    return [c % p for c in coeffs]


def has_good_reduction(curve: HyperCurve, p: int) -> bool:
    try:
        reduce_model(curve, p)
        return True
    except BadReduction:
        return False


def count_points(
    curve: HyperCurve, p: int, m: int = 1, q_width: int = DEFAULT_Q_WIDTH
) -> int:
    """#C(F_(p^m)) on the smooth model, by direct character summation."""
    if p == 2 or not is_probable_prime(p):
        raise DomainError(f"p={p} must be an odd prime")
    q = p**m
    if q > q_width:
        raise CapExceeded(f"q={q} exceeds width {q_width}")
    hbar = reduce_model(curve, p)
    deg = curve.h.degree
    if m == 1:
        sqs = bytearray(p)
        for y in range(p):
            sqs[y * y % p] = 1
        total = 0
        for x in range(p):
            acc = 0
            for c in reversed(hbar):
                acc = (acc * x + c) % p
            if acc == 0:
                total += 1
            elif sqs[acc]:
                total += 2
        lc_square = bool(sqs[hbar[-1] % p])
    else:
        ctx = make_field(p, m, q_width)
        total = 0
        for k in range(q):
            x = ctx.from_index(k)
            ch = ctx.quad_char(ctx.eval_poly(hbar, x))
            total += 1 + ch if ch else 1
        lc_square = ctx.quad_char(ctx.from_int(hbar[-1])) == 1
    if deg % 2 == 1:
        total += 1
    elif lc_square:
        total += 2
    return total


def count_vector(curve: HyperCurve, p: int, upto: int, q_width: int = DEFAULT_Q_WIDTH) -> list[int]:
    counts = [count_points(curve, p, m, q_width) for m in range(1, upto + 1)]
    g = curve.genus
    for m, nm in enumerate(counts, start=1):
        if abs(nm - (p**m + 1)) > 2 * g * math.sqrt(p**m) + 1e-9:
            raise AssertionError(f"count N_{m}={nm} violates the Weil bound")
    return counts


@dataclass
class CharPoly:
    """chi(t) = t^2g + a_1 t^(2g-1) + ... + a_2g, integer coefficients with
    a_(g+i) = p^i a_(g-i); coeffs stored leading-first."""

    coeffs: list[int]
    p: int
    g: int

    def __call__(self, t: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = acc * t + c
        return acc

    def jacobian_order(self) -> int:
        return self(1)

    def power_sums(self, upto: int) -> list[int]:
        """s_m = sum of m-th powers of the Frobenius eigenvalues."""
        a = self.coeffs
        s: list[int] = []
        for m in range(1, upto + 1):
            acc = -m * a[m] if m < len(a) else 0
            for k in range(1, m):
                acc -= a[k] * s[m - k - 1] if k < len(a) else 0
            s.append(acc)
        return s

    def predict_count(self, m: int) -> int:
        return self.p**m + 1 - self.power_sums(m)[-1]

    def roots_on_weil_circle(self, tol: float = 1e-6) -> bool:
        import numpy as np

        rts = np.roots([float(c) for c in self.coeffs])
        return bool(max(abs(abs(rts) - math.sqrt(self.p))) < tol)

    def to_json(self):
        return {"p": self.p, "g": self.g, "coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self):
        terms = []
        n = len(self.coeffs) - 1
        for i, c in enumerate(self.coeffs):
            e = n - i
            if c == 0:
                continue
            base = f"t^{e}" if e > 1 else ("t" if e == 1 else "")
            if e == 0:
                terms.append(f"{c}")
            elif c == 1:
                terms.append(base)
            elif c == -1:
                terms.append(f"-{base}")
            else:
                terms.append(f"{c}*{base}")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def char_poly(curve: HyperCurve, p: int, q_width: int = DEFAULT_Q_WIDTH) -> CharPoly:
    """Characteristic polynomial of Frobenius from the counts N_1..N_g.

    The recurrence i*a_i = sum_k (N_k - p^k - 1) * a_(i-k) determines the
    first half; the functional equation fills the rest.  Whenever p^(g+1)
    fits the width, the resulting polynomial must predict N_(g+1) and the
    prediction is checked against a direct count.
    """
    g = curve.genus
    counts = count_vector(curve, p, g, q_width)
    a = [1]
    for i in range(1, g + 1):
        acc = 0
        for k in range(1, i + 1):
            acc += (counts[k - 1] - p**k - 1) * a[i - k]
        if acc % i:
            raise AssertionError(f"non-integer coefficient a_{i} = {acc}/{i}")
        a.append(acc // i)
    for i in range(1, g + 1):
        a.append(p**i * a[g - i])
    cp = CharPoly(coeffs=a, p=p, g=g)
    if cp.jacobian_order() <= 0:
        raise AssertionError("chi(1) <= 0")
    if not cp.roots_on_weil_circle():
        raise AssertionError("Frobenius eigenvalues stray from |a| = sqrt(p)")
    if p ** (g + 1) <= q_width:
        direct = count_points(curve, p, g + 1, q_width)
        if cp.predict_count(g + 1) != direct:
            raise AssertionError(
                f"functional-equation self-check failed: predicted "
                f"{cp.predict_count(g + 1)}, counted {direct}"
            )
    return cp


def jacobian_order(cp: CharPoly) -> int:
    return cp.jacobian_order()


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------


def verify_chebyshev(n: int, p: int, q_width: int = DEFAULT_Q_WIDTH) -> bool:
    """chi of y^2 = (x+2)*T(x) over F_p equals t^(2^n) + p^(2^(n-1)) exactly,
    T the n-th iterate of x^2 - 2.  (True under p = 5 mod 8 for n >= 1 and
    p = 3 mod 8 for n >= 2; computable and False outside, e.g. (1, 3).)
    """
    if p % 8 not in (3, 5):
        raise HypothesisViolated(f"p={p} is not +/-3 mod 8")
    curve = make_curve("B", c=Fraction(-2), n=n)
    cp = char_poly(curve, p, q_width)
    g = curve.genus
    expected = [1] + [0] * (2 * g - 1) + [p**g]
    return cp.coeffs == expected


def verify_decomposition(c, n: int, p: int, q_width: int = DEFAULT_Q_WIDTH) -> bool:
    """chi(C_n) = prod_(m<n) chi(B_m) exactly over F_p."""
    if n < 2:
        raise DomainError("need n >= 2")
    cq = Fraction(c)
    left = char_poly(make_curve("C", c=cq, n=n), p, q_width).coeffs
    right = [1]
    for m in range(1, n):
        bm = char_poly(make_curve("B", c=cq, n=m), p, q_width).coeffs
        out = [0] * (len(right) + len(bm) - 1)
        for i, x in enumerate(right):
            for j, y in enumerate(bm):
                out[i + j] += x * y
        right = out
    return left == right


def charsum_vanishing(n: int, p: int, q_width: int = DEFAULT_Q_WIDTH) -> bool:
    """#(y^2 = x(x^(2^(n+1))+1))(F_(p^m)) == p^m + 1 for every m < 2^n."""
    if p % 8 not in (3, 5):
        raise HypothesisViolated(f"p={p} is not +/-3 mod 8")
    curve = make_curve("aux", n=n + 1)
    for m in range(1, 2**n):
        if count_points(curve, p, m, q_width) != p**m + 1:
            return False
    return True


def verify_cover(c, n: int, m: int, p: int) -> bool:
    """Push every affine point of C_n(F_p) through
    (x, y) -> (f^(n-m)(x), y*f^(n-m-1)(x)) and check it lands on B_m(F_p)."""
    if not 0 < m < n:
        raise DomainError("need 0 < m < n")
    cq = Fraction(c)
    cn = make_curve("C", c=cq, n=n)
    bm = make_curve("B", c=cq, n=m)
    hn = reduce_model(cn, p)
    hm = reduce_model(bm, p)
    outer = [int(t) % p for t in iterate_poly(cq, n - m).coeffs]
    inner = (
        [int(t) % p for t in iterate_poly(cq, n - m - 1).coeffs]
        if n - m - 1 >= 1
        else [0, 1]
    )

    def ev(poly, x):
        acc = 0
        for t in reversed(poly):
            acc = (acc * x + t) % p
        return acc

    sqrts: dict[int, list[int]] = {}
    for y in range(p):
        sqrts.setdefault(y * y % p, []).append(y)
    for x in range(p):
        v = ev(hn, x)
        for y in sqrts.get(v, ()):
            xi = ev(outer, x)
            yi = y * ev(inner, x) % p
            if yi * yi % p != ev(hm, xi):
                return False
    return True


def gcd_orbit_bound(n: int, primes: list[int]) -> int:
    """gcd over the given primes of p^(2^n) + 1, computed exactly.

    The integers involved have about 2^n * log10(p) digits; GMP keeps this
    feasible into the n = 30 range (minutes of CPU near the top).
    """
    if n > 64:
        raise CapExceeded("n > 64 is not supported")
    if len(primes) < 2:
        raise DomainError("need at least two primes")
    e = 2**n
    g = gmpy2.mpz(primes[0]) ** e + 1
    for p in primes[1:]:
        if g == 1:
            break
        g = gmpy2.gcd(g, gmpy2.mpz(p) ** e + 1)
    return int(g)


def half_density_witness(a: int, b: int, prime_bound: int) -> Optional[int]:
    """Smallest p <= bound, p = +/-3 mod 8, with x^2+ax+b == x^2-2 mod p."""
    for p in range(3, prime_bound + 1, 2):
        if p % 8 in (3, 5) and is_probable_prime(p):
            if a % p == 0 and (b + 2) % p == 0:
                return p
    return None

"""The quadratic family f_c(x) = x^2 + c: critical orbits, iterate
polynomials, the discriminant recurrence, the Chebyshev identity satisfied by
x^2 - 2, and prime supports of cycle resultants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, DomainError
from .exact import FactorBudget, factor_bounded
from .ratpoly import RatPoly, discriminant, resultant

DEFAULT_ORBIT_CAP = 16
DEFAULT_DEGREE_CAP = 4096


@dataclass(frozen=True)
class QuadraticMap:
    """f(x) = x^2 + c; the critical point is always 0."""

    c: Fraction

    @property
    def critical_point(self) -> Fraction:
        return Fraction(0)

    def poly(self) -> RatPoly:
        return RatPoly([self.c, 0, 1])

    def __call__(self, x: Fraction) -> Fraction:
        return x * x + self.c


@dataclass
class Orbit:
    """values[k-1] = f^k(0), computed exactly."""

    c: Fraction
    values: list[Fraction]

    def value(self, m: int) -> Fraction:
        """f^m(0) for 1 <= m <= len."""
        if not 1 <= m <= len(self.values):
            raise CapExceeded(f"orbit value f^{m}(0) not computed (cap {len(self.values)})")
        return self.values[m - 1]


def orbit(c: Fraction | int, n: int, cap: int = DEFAULT_ORBIT_CAP) -> Orbit:
    """The first n values f(0), f^2(0), ..., f^n(0) of the critical orbit."""
    if n < 1:
        raise DomainError("need n >= 1")
    if n > cap:
        raise CapExceeded(f"orbit length {n} exceeds cap {cap}")
    c = Fraction(c)
    vals = []
    x = Fraction(0)
    for _ in range(n):
        x = x * x + c
        vals.append(x)
    return Orbit(c=c, values=vals)


def iterate_poly(c: Fraction | int, n: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> RatPoly:
    """The iterate f_c^n as an explicit polynomial of degree 2^n.

    Built by repeated squaring: f^n = (f^(n-1))^2 + c, one polynomial
    multiplication per step.
    """
    if n < 1:
        raise DomainError("need n >= 1")
    if 2**n > degree_cap:
        raise CapExceeded(f"degree 2^{n} exceeds cap {degree_cap}")
    c = Fraction(c)
    p = RatPoly([c, 0, 1])
    for _ in range(n - 1):
        p = p * p + RatPoly.const(c)
    return p


def disc_recurrence_check(c: Fraction | int, m: int, cap: int = DEFAULT_ORBIT_CAP) -> dict:
    """Check |disc(f^m)| == disc(f^(m-1))^2 * 2^(2^m) * |f^m(0)| directly.

    Both discriminants are computed from scratch via resultants; only the
    magnitude identity is asserted and the observed sign of the ratio is
    reported alongside.
    """
    if m < 2:
        raise DomainError("recurrence starts at m = 2")
    c = Fraction(c)
    orb = orbit(c, m, cap=cap)
    pm = iterate_poly(c, m)
    pm1 = iterate_poly(c, m - 1)
    dm = discriminant(pm)
    dm1 = discriminant(pm1)
    if dm == 0 or dm1 == 0:
        raise DomainError(f"f^{m} is not separable for c={c}")
    predicted = dm1 * dm1 * 2 ** (2**m) * orb.value(m)
    holds = abs(dm) == abs(predicted)
    sign = 1 if (dm > 0) == (predicted > 0) else -1
    return {"holds": holds, "sign": sign, "disc": dm, "predicted_magnitude": abs(predicted)}


def chebyshev_identity_check(n: int) -> bool:
    """Exact Laurent identity for f = x^2 - 2:  f^n(z + 1/z) == z^(2^n) + z^(-2^n).

    Verified as the polynomial identity z^N * f^n((z^2+1)/z) == z^(2N) + 1
    with N = 2^n, which clears all negative powers.
    """
    if not 1 <= n <= 8:
        raise DomainError("supported for 1 <= n <= 8")
    p = iterate_poly(Fraction(-2), n)
    N = 2**n
    num = RatPoly([1, 0, 1])  # z^2 + 1
    acc = RatPoly.zero()
    num_pow = RatPoly.const(1)
    pows = []
    for i in range(N + 1):
        pows.append(num_pow)
        num_pow = num_pow * num
    for i, a in enumerate(p.coeffs):
        if a:
            acc = acc + RatPoly.monomial(N - i, a) * pows[i]
    target = RatPoly.monomial(2 * N, 1) + RatPoly.const(1)
    return acc == target


def cycle_resultant_support(
    g: RatPoly,
    c: Fraction | int,
    N: int,
    budget: FactorBudget | None = None,
    cap: int = DEFAULT_ORBIT_CAP,
) -> tuple[set[int], bool]:
    """Union over n <= N of the prime supports of Res(g, f^n).

    Supports cover both numerator and denominator.  Returns (primes, complete);
    complete is False when some factorization ran out of budget, in which case
    the returned set is only a lower bound.
    """
    if g.degree < 1:
        raise DomainError("g must be nonconstant")
    if N > cap:
        raise CapExceeded(f"N={N} exceeds cap {cap}")
    c = Fraction(c)
    primes: set[int] = set()
    complete = True
    fn = RatPoly([c, 0, 1])
    for n in range(1, N + 1):
        r = resultant(g, fn)
        if r == 0:
            raise DomainError(f"Res(g, f^{n}) = 0: common root")
        for part in (r.numerator, r.denominator):
            if abs(part) == 1:
                continue
            fac = factor_bounded(part, budget)
            primes.update(fac.primes())
            complete = complete and fac.complete
        if n < N:
            fn = fn * fn + RatPoly.const(c)
    return primes, complete
